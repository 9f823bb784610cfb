#pragma once

#include <cstdint>
#include <shared_mutex>
#include <vector>

#include "formula_forge/ast.hpp"
#include "formula_forge/kernels.hpp"

namespace ff {

struct ShortestEntry {
    std::uint64_t n;
    std::uint64_t size;
    Tree witness;
};

/// Table of minimum formula sizes over {+, *, ^}, filled from 1 upward by
///   S(1) = 1,
///   S(n) = min( 1 + S(i) + S(n-i)          for 1 <= i < n,
///               1 + S(d) + S(n/d)          for 2 <= d <= n/2, d | n,
///               1 + S(b) + S(i)            for n = b^i, i >= 2 ).
/// Ties prefer + over * over ^, then the smaller split index. In witnesses
/// the smaller-valued operand of + and * is on the left; for ^ the base is.
class ShortestTable {
public:
    explicit ShortestTable(kernels::Exec exec = kernels::Exec::Parallel) : exec_(exec) {}
    ShortestTable(const ShortestTable&) = delete;
    ShortestTable& operator=(const ShortestTable&) = delete;

    ShortestEntry get(std::int64_t n);
    std::uint64_t size_of(std::int64_t n);
    void fill(std::uint64_t n);

    // Raw size column (index 0 unused); for tests and benchmarks.
    std::vector<std::uint32_t> sizes(std::uint64_t n);

private:
    struct Choice {
        Gate gate;
        std::uint32_t left;   // value of the left operand
        std::uint32_t right;  // value of the right operand
    };
    Tree witness_locked(std::uint64_t n) const;

    kernels::Exec exec_;
    mutable std::shared_mutex mutex_;
    std::vector<std::uint32_t> size_{0};
    std::vector<Choice> choice_{Choice{Gate::Add, 0, 0}};
};

ShortestEntry shortest(std::int64_t n);

}  // namespace ff
