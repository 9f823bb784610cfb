#pragma once

#include <cstdint>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "formula_forge/ast.hpp"
#include "formula_forge/bigint.hpp"

namespace ff {

// The supported gate sets; Add is always present.
enum class GateSet { A, AM, AME };

enum class Root { Add, Mul, Pow, All };

std::string_view to_string(GateSet g);
std::string_view to_string(Root r);
GateSet parse_gate_set(std::string_view s);  // "a" | "am" | "ame"
Root parse_root(std::string_view s);          // "add" | "mul" | "pow" | "all"

bool contains(GateSet set, Gate g);

// Root-class counts of one n in one gate set.
struct CountRow {
    BigInt add;
    BigInt mul;
    BigInt pow;
    BigInt total;
};

/// Memoized exact counts of formula encodings.
///
/// Rows are filled bottom-up from n = 1, so asking for count(n) populates
/// every smaller entry of the same family. Reads take a shared lock, growth
/// an exclusive one; values never depend on the order of calls.
///
/// Root-specific counts at n = 1: add-rooted = 1 (the bare leaf), mul- and
/// pow-rooted = 0, total = 1.
class CountTable {
public:
    CountTable() = default;
    CountTable(const CountTable&) = delete;
    CountTable& operator=(const CountTable&) = delete;

    CountRow row(GateSet set, std::int64_t n);
    BigInt count(GateSet set, Root root, std::int64_t n);
    BigInt count_lop(std::int64_t n);

    // Number of n values currently memoized per family (for the cache file).
    std::size_t filled(GateSet set) const;
    std::size_t filled_lop() const;

    struct Entry {
        std::uint64_t n;
        std::string family;  // "a", "am", "ame", "lop"
        std::string root;    // "add", "mul", "pow", "all"
        BigInt count;
    };
    std::vector<Entry> snapshot() const;

    /// Replace the table contents. Entries must describe contiguous prefixes
    /// n = 1..m of each family with every root present; otherwise CacheError
    /// and the table is left untouched.
    void restore(const std::vector<Entry>& entries);

    void clear();

private:
    void grow(GateSet set, std::uint64_t n);
    void grow_lop(std::uint64_t n);

    struct Family {
        // index 0 unused, so column[n] is the count for n
        std::vector<BigInt> add, mul, pow, total;
    };

    mutable std::shared_mutex mutex_;
    Family families_[3];
    std::vector<BigInt> lop_;
};

/// Process-wide table used by the free functions and samplers.
CountTable& default_table();

BigInt count_add_only(std::int64_t n);
BigInt count_add_lop(std::int64_t n);
BigInt count_am(std::int64_t n, Root root = Root::All);
BigInt count_ame(std::int64_t n, Root root = Root::All);
BigInt count(GateSet set, Root root, std::int64_t n);

}  // namespace ff
