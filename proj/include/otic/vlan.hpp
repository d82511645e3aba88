#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "otic/error.hpp"
#include "otic/hash.hpp"
#include "otic/ids.hpp"
#include "otic/interface.hpp"

namespace otic {

using Vid = std::uint16_t;

// 0 (priority tag), 1 (default VLAN) and 4095 are never handed out.
inline constexpr Vid kFirstVid = 2;
inline constexpr Vid kLastVid = 4094;
inline constexpr int kVidCapacity = kLastVid - kFirstVid + 1;

constexpr bool is_reserved_vid(int vid) { return vid < kFirstVid || vid > kLastVid; }

// What a VLAN carries: one interface of one session, optionally narrowed to a
// single fronthaul plane when a template asks for plane separation.
struct VlanPurpose {
  InterfaceKind interface = InterfaceKind::F1;
  SessionId session;
  std::optional<Plane> plane;

  auto operator<=>(const VlanPurpose&) const = default;

  std::string str() const {
    std::string s = std::string(name_of(interface)) + "@s" + std::to_string(session.value);
    if (plane) s += ":" + std::string(name_of(*plane));
    return s;
  }
};

inline void to_json(nlohmann::json& j, const VlanPurpose& p) {
  j = {{"interface", p.interface}, {"session", p.session}};
  j["plane"] = p.plane ? nlohmann::json(*p.plane) : nlohmann::json(nullptr);
}

inline void from_json(const nlohmann::json& j, VlanPurpose& p) {
  p.interface = j.at("interface").get<InterfaceKind>();
  p.session = j.at("session").get<SessionId>();
  if (j.contains("plane") && !j.at("plane").is_null())
    p.plane = j.at("plane").get<Plane>();
  else
    p.plane.reset();
}

// Lowest-free 802.1Q VID allocator keyed by purpose.
class VlanPool {
 public:
  static constexpr int kDocumentVersion = 1;

  // The pool hands out VIDs from [first, last]; a site may narrow the range
  // it lets the orchestrator manage.
  explicit VlanPool(Vid first = kFirstVid, Vid last = kLastVid) : first_(first), last_(last) {
    if (is_reserved_vid(first) || is_reserved_vid(last) || first > last)
      throw Error(Errc::invalid_argument, "bad VID range " + std::to_string(first) + ".." +
                                              std::to_string(last));
    for (int v = first; v <= last; ++v) free_.insert(static_cast<Vid>(v));
  }

  Vid first() const { return first_; }
  Vid last() const { return last_; }
  std::size_t capacity() const { return static_cast<std::size_t>(last_ - first_ + 1); }

  Vid allocate_vid(InterfaceKind interface, SessionId session,
                   std::optional<Plane> plane = std::nullopt) {
    return allocate_vid(VlanPurpose{interface, session, plane});
  }

  Vid allocate_vid(const VlanPurpose& purpose) {
    if (is_analog(purpose.interface))
      throw Error(Errc::invalid_argument, "analog interfaces carry no VLAN");
    if (by_purpose_.count(purpose))
      throw Error(Errc::duplicate, "VLAN for " + purpose.str() + " already allocated");
    if (free_.empty())
      throw Error(Errc::exhausted,
                  "VLAN pool exhausted (" + std::to_string(capacity()) + " VIDs)");
    Vid vid = *free_.begin();
    free_.erase(free_.begin());
    by_purpose_[purpose] = vid;
    active_[vid] = purpose;
    return vid;
  }

  void release_vid(int vid) {
    if (is_reserved_vid(vid))
      throw Error(Errc::invalid_argument, "VID " + std::to_string(vid) + " is reserved");
    auto it = active_.find(static_cast<Vid>(vid));
    if (it == active_.end())
      throw Error(Errc::not_found, "VID " + std::to_string(vid) + " is not allocated");
    if (references_.count(it->first))
      throw Error(Errc::still_referenced,
                  "VID " + std::to_string(vid) + " is referenced by port configs");
    by_purpose_.erase(it->second);
    free_.insert(it->first);
    active_.erase(it);
  }

  std::optional<Vid> lookup(const VlanPurpose& purpose) const {
    auto it = by_purpose_.find(purpose);
    if (it == by_purpose_.end()) return std::nullopt;
    return it->second;
  }

  // Port configurations referencing a VID pin it.
  void retain(Vid vid) {
    if (!active_.count(vid))
      throw Error(Errc::not_found, "VID " + std::to_string(vid) + " is not allocated");
    ++references_[vid];
  }

  void drop(Vid vid) {
    auto it = references_.find(vid);
    if (it == references_.end())
      throw Error(Errc::not_found, "VID " + std::to_string(vid) + " holds no references");
    if (--it->second == 0) references_.erase(it);
  }

  bool is_active(int vid) const {
    return !is_reserved_vid(vid) && active_.count(static_cast<Vid>(vid));
  }
  const std::map<Vid, VlanPurpose>& active() const { return active_; }
  std::size_t free_count() const { return free_.size(); }

  nlohmann::json to_json() const {
    nlohmann::json doc;
    doc["version"] = kDocumentVersion;
    doc["range"] = {first_, last_};
    auto arr = nlohmann::json::array();
    for (const auto& [vid, purpose] : active_) {
      nlohmann::json e = {{"vid", vid}, {"purpose", purpose}};
      auto r = references_.find(vid);
      e["references"] = r == references_.end() ? 0 : r->second;
      arr.push_back(e);
    }
    doc["allocations"] = arr;
    return doc;
  }

  static VlanPool from_json(const nlohmann::json& doc) {
    if (doc.value("version", 0) != kDocumentVersion)
      throw Error(Errc::invalid_argument, "unsupported VLAN document version");
    auto range = doc.at("range");
    VlanPool pool(range.at(0).get<Vid>(), range.at(1).get<Vid>());
    for (const auto& e : doc.at("allocations")) {
      int vid = e.at("vid").get<int>();
      auto purpose = e.at("purpose").get<VlanPurpose>();
      if (vid < pool.first_ || vid > pool.last_ || pool.active_.count(static_cast<Vid>(vid)) ||
          pool.by_purpose_.count(purpose))
        throw Error(Errc::invalid_argument, "bad VLAN allocation " + std::to_string(vid));
      pool.free_.erase(static_cast<Vid>(vid));
      pool.active_[static_cast<Vid>(vid)] = purpose;
      pool.by_purpose_[purpose] = static_cast<Vid>(vid);
      if (int refs = e.value("references", 0); refs > 0)
        pool.references_[static_cast<Vid>(vid)] = refs;
    }
    return pool;
  }

  std::uint64_t fingerprint() const { return fnv1a(to_json().dump()); }

  bool operator==(const VlanPool&) const = default;

 private:
  Vid first_;
  Vid last_;
  std::set<Vid> free_;
  std::map<Vid, VlanPurpose> active_;
  std::map<VlanPurpose, Vid> by_purpose_;
  std::map<Vid, int> references_;
};

}  // namespace otic
