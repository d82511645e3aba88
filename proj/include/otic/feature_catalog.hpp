#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace otic {

// Device capabilities: feature name -> the set of values the device supports.
using FeatureSet = std::map<std::string, std::set<std::string>>;

struct CatalogEntry {
  std::string_view key;
  bool iot_mandatory;
  std::array<std::string_view, 8> values;  // empty entries are unused slots
};

// Mirrors data/feature_catalog.json; the unit tests keep the two in sync.
inline constexpr int kFeatureCatalogVersion = 1;

inline constexpr std::array kFeatureCatalog{
    CatalogEntry{"bandwidth_mhz", true, {"10", "20", "40", "50", "60", "80", "100"}},
    CatalogEntry{"scs_khz", true, {"15", "30", "60", "120"}},
    CatalogEntry{"plane_m", false, {"hierarchical", "hybrid"}},
    CatalogEntry{"plane_s_source", true, {"t_gm", "du", "ru"}},
    CatalogEntry{"ofh_compression", false, {"none", "bfp9", "bfp14", "modcomp"}},
};

inline const CatalogEntry* find_catalog_entry(std::string_view key) {
  for (const auto& e : kFeatureCatalog)
    if (e.key == key) return &e;
  return nullptr;
}

// Human-readable warnings for keys or values outside the catalog. Unknown
// entries are kept on the device; they just never take part in matching.
inline std::vector<std::string> catalog_warnings(const FeatureSet& features) {
  std::vector<std::string> out;
  for (const auto& [key, values] : features) {
    const CatalogEntry* entry = find_catalog_entry(key);
    if (!entry) {
      out.push_back("unknown feature key '" + key + "'");
      continue;
    }
    for (const auto& v : values) {
      bool known = false;
      for (auto allowed : entry->values)
        if (!allowed.empty() && allowed == v) known = true;
      if (!known)
        out.push_back("value '" + v + "' not in catalog for '" + key + "'");
    }
  }
  return out;
}

}  // namespace otic
