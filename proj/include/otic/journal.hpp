#pragma once

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "otic/commands.hpp"
#include "otic/hash.hpp"
#include "otic/session.hpp"

namespace otic {

struct JournalEntry {
  std::uint64_t seq = 0;
  std::string timestamp;
  std::string command;
  nlohmann::json payload;
  std::string result_hash;  // hex state hash after the command

  nlohmann::json to_json() const {
    return {{"seq", seq},
            {"timestamp", timestamp},
            {"command", command},
            {"payload", payload},
            {"result_hash", result_hash}};
  }

  static JournalEntry from_json(const nlohmann::json& j) {
    return {j.at("seq").get<std::uint64_t>(), j.at("timestamp").get<std::string>(),
            j.at("command").get<std::string>(), j.at("payload"),
            j.at("result_hash").get<std::string>()};
  }
};

struct Corruption {
  std::uint64_t seq = 0;
  std::string reason;
};

struct ReplayResult {
  explicit ReplayResult(Engine e) : engine(std::move(e)) {}

  Engine engine;
  std::uint64_t last_seq = 0;
  std::optional<Corruption> corrupt;
  bool dropped_partial_tail = false;
  std::uint64_t valid_bytes = 0;  // journal prefix that parsed cleanly
  std::optional<std::uint64_t> snapshot_seq;
};

inline std::string utc_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Files kept under a state directory.
struct StatePaths {
  std::filesystem::path dir;
  std::filesystem::path journal() const { return dir / "journal.jsonl"; }
  std::filesystem::path snapshot() const { return dir / "snapshot.json"; }
  std::filesystem::path config() const { return dir / "config.json"; }
};

inline nlohmann::json read_json_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw Error(Errc::not_found, "cannot open " + p.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::corrupt, p.string() + ": " + ex.what());
  }
}

// Write-then-rename so a crash never leaves a half-written document.
inline void write_json_file(const std::filesystem::path& p, const nlohmann::json& j) {
  auto tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(Errc::invalid_state, "cannot write " + tmp.string());
    out << j.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, p);
}

inline EngineConfig load_engine_config(const StatePaths& paths) {
  EngineConfig cfg;
  if (std::filesystem::exists(paths.config())) {
    auto j = read_json_file(paths.config());
    cfg.vid_first = j.value("vid_first", cfg.vid_first);
    cfg.vid_last = j.value("vid_last", cfg.vid_last);
  }
  return cfg;
}

// Parses a journal stream. A final line without its newline is a torn write
// and is dropped; any other unreadable or inconsistent line stops the replay
// and is reported with its sequence number.
inline ReplayResult replay_entries(std::istream& in, EngineConfig config,
                                   const std::optional<nlohmann::json>& snapshot = std::nullopt) {
  ReplayResult r(Engine{config});
  std::uint64_t resume_after = 0;
  std::string resume_hash;
  if (snapshot) {
    resume_after = snapshot->at("seq").get<std::uint64_t>();
    resume_hash = snapshot->at("state_hash").get<std::string>();
  }
  bool resumed = !snapshot;

  std::string line;
  std::uint64_t offset = 0;
  while (std::getline(in, line)) {
    bool complete = !in.eof();
    if (!complete) {
      if (!line.empty()) r.dropped_partial_tail = true;
      break;
    }
    std::uint64_t next_offset = offset + line.size() + 1;
    if (line.empty()) {
      offset = next_offset;
      r.valid_bytes = offset;
      continue;
    }
    std::uint64_t expected = r.last_seq + 1;
    JournalEntry entry;
    try {
      entry = JournalEntry::from_json(nlohmann::json::parse(line));
    } catch (const std::exception& ex) {
      r.corrupt = Corruption{expected, std::string("unreadable entry: ") + ex.what()};
      break;
    }
    if (entry.seq != expected) {
      r.corrupt = Corruption{entry.seq, "expected seq " + std::to_string(expected)};
      break;
    }
    if (!resumed && entry.seq <= resume_after) {
      // Entries covered by the snapshot only need their ordering checked.
      r.last_seq = entry.seq;
      if (entry.seq == resume_after) {
        if (entry.result_hash != resume_hash) {
          r.corrupt = Corruption{entry.seq, "snapshot does not match the journal"};
          break;
        }
        try {
          r.engine = Engine::from_json(snapshot->at("engine"));
        } catch (const std::exception& ex) {
          r.corrupt = Corruption{entry.seq, std::string("unreadable snapshot: ") + ex.what()};
          break;
        }
        if (hex64(r.engine.state_hash()) != resume_hash) {
          r.corrupt = Corruption{entry.seq, "snapshot body does not match its hash"};
          break;
        }
        r.snapshot_seq = entry.seq;
        resumed = true;
      }
      offset = next_offset;
      r.valid_bytes = offset;
      continue;
    }
    try {
      apply_command(r.engine, entry.command, entry.payload);
    } catch (const std::exception& ex) {
      r.corrupt = Corruption{entry.seq, std::string("command failed on replay: ") + ex.what()};
      break;
    }
    if (hex64(r.engine.state_hash()) != entry.result_hash) {
      r.corrupt = Corruption{entry.seq, "state hash mismatch"};
      break;
    }
    r.last_seq = entry.seq;
    offset = next_offset;
    r.valid_bytes = offset;
  }
  if (!resumed && !r.corrupt)
    r.corrupt = Corruption{resume_after, "journal is shorter than the snapshot"};
  return r;
}

// Rebuilds the engine from a state directory. The snapshot is used only when
// the journal confirms it; otherwise everything is replayed from empty.
inline ReplayResult replay(const std::filesystem::path& dir, bool use_snapshot = true) {
  StatePaths paths{dir};
  EngineConfig config = load_engine_config(paths);
  auto run = [&](const std::optional<nlohmann::json>& snap) {
    std::ifstream in(paths.journal(), std::ios::binary);
    if (!in) return ReplayResult(Engine{config});
    return replay_entries(in, config, snap);
  };
  if (use_snapshot && std::filesystem::exists(paths.snapshot())) {
    std::optional<nlohmann::json> snap;
    try {
      snap = read_json_file(paths.snapshot());
      (void)snap->at("seq");
      (void)snap->at("state_hash");
      (void)snap->at("engine");
    } catch (const std::exception&) {
      snap.reset();
    }
    if (snap) {
      ReplayResult r = run(snap);
      if (!r.corrupt || r.snapshot_seq) return r;
    }
  }
  return run(std::nullopt);
}

struct CommandOutcome {
  nlohmann::json result;
  std::uint64_t seq = 0;
  std::string state_hash;
};

// Single writer over a copy-on-write engine. Readers take the latest committed
// snapshot and never block the writer for longer than a pointer swap.
class Orchestrator {
 public:
  using Clock = std::function<std::string()>;
  static constexpr std::uint64_t kSnapshotInterval = 100;

  // In-memory orchestrator without persistence.
  explicit Orchestrator(EngineConfig config = {}, Clock clock = utc_timestamp)
      : clock_(std::move(clock)), current_(std::make_shared<const Engine>(config)) {}

  // Opens (or creates) a state directory and replays it. A corrupt journal is
  // an error carrying the offending sequence number.
  static std::unique_ptr<Orchestrator> open(const std::filesystem::path& dir,
                                            std::optional<EngineConfig> config = std::nullopt,
                                            Clock clock = utc_timestamp) {
    StatePaths paths{dir};
    std::filesystem::create_directories(dir);
    if (!std::filesystem::exists(paths.config())) {
      EngineConfig cfg = config.value_or(EngineConfig{});
      write_json_file(paths.config(),
                      {{"version", 1}, {"vid_first", cfg.vid_first}, {"vid_last", cfg.vid_last}});
    }
    ReplayResult r = replay(dir);
    if (r.corrupt)
      throw Error(Errc::corrupt, "journal entry " + std::to_string(r.corrupt->seq) + ": " +
                                     r.corrupt->reason);
    if (r.dropped_partial_tail) std::filesystem::resize_file(paths.journal(), r.valid_bytes);
    auto o = std::unique_ptr<Orchestrator>(new Orchestrator(r.engine.config(), std::move(clock)));
    o->paths_ = paths;
    o->seq_ = r.last_seq;
    o->current_ = std::make_shared<const Engine>(std::move(r.engine));
    return o;
  }

  std::shared_ptr<const Engine> snapshot() const {
    std::lock_guard lock(publish_mu_);
    return current_;
  }

  std::uint64_t seq() const {
    std::lock_guard lock(publish_mu_);
    return seq_;
  }

  // Applies one command on a private copy; commits, journals and publishes
  // only if it succeeds. On failure the published state is untouched.
  CommandOutcome execute(const std::string& command, const nlohmann::json& payload) {
    std::lock_guard writer(write_mu_);
    auto base = snapshot();
    auto next = std::make_shared<Engine>(*base);
    nlohmann::json result = apply_command(*next, command, payload);
    std::string hash = hex64(next->state_hash());
    std::uint64_t seq = seq_ + 1;
    if (paths_) {
      JournalEntry entry{seq, clock_(), command, payload, hash};
      {
        std::ofstream out(paths_->journal(), std::ios::app | std::ios::binary);
        out << entry.to_json().dump() << '\n';
        out.flush();
        if (!out) throw Error(Errc::invalid_state, "journal append failed");
      }
      if (seq % kSnapshotInterval == 0) write_snapshot(*next, seq, hash);
    }
    {
      std::lock_guard lock(publish_mu_);
      current_ = std::move(next);
      seq_ = seq;
    }
    return {std::move(result), seq, hash};
  }

  // Forces a snapshot of the current state; returns its path.
  std::filesystem::path write_snapshot() {
    std::lock_guard writer(write_mu_);
    if (!paths_) throw Error(Errc::invalid_state, "orchestrator has no state directory");
    auto e = snapshot();
    write_snapshot(*e, seq(), hex64(e->state_hash()));
    return paths_->snapshot();
  }

  const std::optional<StatePaths>& paths() const { return paths_; }

 private:
  void write_snapshot(const Engine& e, std::uint64_t seq, const std::string& hash) {
    write_json_file(paths_->snapshot(),
                    {{"version", 1}, {"seq", seq}, {"state_hash", hash}, {"engine", e.to_json()}});
  }

  Clock clock_;
  std::optional<StatePaths> paths_;
  std::mutex write_mu_;
  mutable std::mutex publish_mu_;
  std::shared_ptr<const Engine> current_;
  std::uint64_t seq_ = 0;
};

}  // namespace otic
