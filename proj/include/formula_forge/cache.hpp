#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "formula_forge/counting.hpp"

namespace ff {

// On-disk snapshot of a CountTable:
//   {"format": "formula-forge-counts", "version": 1,
//    "entries": [{"n": 1, "family": "am", "root": "all", "count": "1"}, ...],
//    "checksum": "<16 hex digits, FNV-1a 64 over the entry lines>"}
constexpr int kCacheVersion = 1;

nlohmann::json cache_to_json(const CountTable& table);
void cache_from_json(const nlohmann::json& doc, CountTable& table);

void save_cache(const CountTable& table, const std::filesystem::path& path);
// CacheError on any problem; the table is only touched on success.
void load_cache(CountTable& table, const std::filesystem::path& path);

}  // namespace ff
