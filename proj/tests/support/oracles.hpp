#pragma once

// Independent reference implementations used only by the tests.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "formula_forge/ast.hpp"
#include "formula_forge/bigint.hpp"
#include "formula_forge/counting.hpp"

namespace oracle {

inline ff::BigInt catalan(unsigned m) {
    // C(2m, m) / (m + 1)
    ff::BigInt c = 1;
    for (unsigned k = 1; k <= m; ++k) c = c * (m + k) / k;
    return c / (m + 1);
}

struct Valued {
    ff::Tree tree;
    std::uint64_t value;
};

inline bool capped_pow(std::uint64_t b, std::uint64_t e, std::uint64_t cap, std::uint64_t& out) {
    std::uint64_t v = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (v > cap / b) return false;
        v *= b;
    }
    out = v;
    return true;
}

/// Every strict tree over the gate set with value <= max_value, grouped by
/// value. Built by leaf count (strict trees of value v have at most v
/// leaves), so it shares nothing with the value-indexed enumerator.
inline std::map<std::uint64_t, std::vector<ff::Tree>> strict_trees_by_value(std::uint64_t max_value,
                                                                              ff::GateSet set) {
    std::vector<std::vector<Valued>> by_leaves(max_value + 1);
    by_leaves[1].push_back({ff::Tree::leaf(), 1});
    for (std::uint64_t L = 2; L <= max_value; ++L) {
        for (std::uint64_t a = 1; a < L; ++a) {
            for (const auto& l : by_leaves[a]) {
                for (const auto& r : by_leaves[L - a]) {
                    if (l.value + r.value <= max_value)
                        by_leaves[L].push_back({ff::Tree::node(ff::Gate::Add, l.tree, r.tree), l.value + r.value});
                    const bool both_big = l.value > 1 && r.value > 1;
                    if (!both_big) continue;
                    if (set != ff::GateSet::A && l.value * r.value <= max_value)
                        by_leaves[L].push_back({ff::Tree::node(ff::Gate::Mul, l.tree, r.tree), l.value * r.value});
                    std::uint64_t p;
                    if (set == ff::GateSet::AME && capped_pow(l.value, r.value, max_value, p))
                        by_leaves[L].push_back({ff::Tree::node(ff::Gate::Pow, l.tree, r.tree), p});
                }
            }
        }
    }
    std::map<std::uint64_t, std::vector<ff::Tree>> out;
    for (const auto& layer : by_leaves)
        for (const auto& v : layer) out[v.value].push_back(v.tree);
    return out;
}

inline bool is_lop(const ff::Tree& t) {
    if (t.is_leaf()) return true;
    return ff::eval(t.left()) >= ff::eval(t.right()) && is_lop(t.left()) && is_lop(t.right());
}

/// Minimum strict formula size for 1..max_value, found by growing the set
/// of values reachable with exactly s nodes.
inline std::vector<std::uint64_t> min_sizes_by_layers(std::uint64_t max_value) {
    std::vector<std::set<std::uint64_t>> layer(2 * max_value);
    std::vector<std::uint64_t> best(max_value + 1, 0);
    layer[1] = {1};
    best[1] = 1;
    for (std::uint64_t s = 3; s < 2 * max_value; s += 2) {
        for (std::uint64_t a = 1; a + 1 < s; a += 2) {
            const auto b = s - 1 - a;
            for (auto x : layer[a]) {
                for (auto y : layer[b]) {
                    if (x + y <= max_value) layer[s].insert(x + y);
                    if (x > 1 && y > 1) {
                        if (x * y <= max_value) layer[s].insert(x * y);
                        std::uint64_t p;
                        if (capped_pow(x, y, max_value, p)) layer[s].insert(p);
                    }
                }
            }
        }
        for (auto v : layer[s])
            if (best[v] == 0) best[v] = s;
    }
    return best;
}

/// Classical sieve of Eratosthenes.
inline std::vector<std::uint64_t> primes_upto(std::uint64_t n) {
    std::vector<bool> composite(n + 1, false);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

}  // namespace oracle
