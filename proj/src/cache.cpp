#include "formula_forge/cache.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "formula_forge/errors.hpp"

namespace ff {

namespace {

constexpr const char* kFormat = "formula-forge-counts";

std::string entry_line(std::uint64_t n, const std::string& family, const std::string& root,
                       const std::string& count) {
    return std::to_string(n) + ' ' + family + ' ' + root + ' ' + count + '\n';
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

bool is_decimal(const std::string& s) {
    if (s.empty() || s.size() > 1'000'000) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return s.size() == 1 || s[0] != '0';
}

}  // namespace

nlohmann::json cache_to_json(const CountTable& table) {
    nlohmann::json entries = nlohmann::json::array();
    std::string text;
    for (const auto& e : table.snapshot()) {
        const auto count = to_decimal(e.count);
        text += entry_line(e.n, e.family, e.root, count);
        entries.push_back({{"n", e.n}, {"family", e.family}, {"root", e.root}, {"count", count}});
    }
    return {{"format", kFormat},
            {"version", kCacheVersion},
            {"entries", std::move(entries)},
            {"checksum", fnv1a_hex(text)}};
}

void cache_from_json(const nlohmann::json& doc, CountTable& table) {
    try {
        if (!doc.is_object() || doc.value("format", "") != kFormat)
            throw CacheError("not a formula-forge count cache");
        if (!doc.contains("version") || !doc["version"].is_number_integer() ||
            doc["version"].get<int>() != kCacheVersion)
            throw CacheError("unsupported cache version");
        const auto& entries = doc.at("entries");
        if (!entries.is_array()) throw CacheError("entries must be an array");
        std::vector<CountTable::Entry> parsed;
        std::string text;
        for (const auto& j : entries) {
            const auto n = j.at("n").get<std::uint64_t>();
            const auto family = j.at("family").get<std::string>();
            const auto root = j.at("root").get<std::string>();
            const auto count = j.at("count").get<std::string>();
            if (!is_decimal(count)) throw CacheError("count is not a decimal string: " + count);
            text += entry_line(n, family, root, count);
            parsed.push_back({n, family, root, BigInt(count)});
        }
        if (doc.at("checksum").get<std::string>() != fnv1a_hex(text))
            throw CacheError("checksum mismatch");
        table.restore(parsed);
    } catch (const nlohmann::json::exception& e) {
        throw CacheError(std::string("malformed cache: ") + e.what());
    }
}

void save_cache(const CountTable& table, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw CacheError("cannot write " + path.string());
    out << cache_to_json(table).dump(1) << '\n';
    if (!out) throw CacheError("write failed for " + path.string());
}

void load_cache(CountTable& table, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CacheError("cannot read " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw CacheError("cache is not valid JSON: " + std::string(e.what()));
    }
    cache_from_json(doc, table);
}

}  // namespace ff
