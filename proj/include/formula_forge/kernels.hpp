#pragma once

#include <cstdint>
#include <span>

#include "formula_forge/bigint.hpp"

// Data-parallel inner loops. Every kernel has a serial reference that the
// tests compare against and the benchmarks time it against.
namespace ff::kernels {

enum class Exec { Serial, Parallel };

int thread_count();

/// sum_{i=1}^{n-1} totals[i] * totals[n-i]; totals[0] is ignored.
BigInt convolve_serial(std::span<const BigInt> totals, std::uint64_t n);
BigInt convolve_parallel(std::span<const BigInt> totals, std::uint64_t n);
BigInt convolve(std::span<const BigInt> totals, std::uint64_t n, Exec exec);

// Best additive split of n: minimal 1 + S(i) + S(n-i), smallest i on ties.
struct Split {
    std::uint32_t size;
    std::uint32_t index;
};

Split additive_min_serial(std::span<const std::uint32_t> sizes, std::uint64_t n);
Split additive_min_parallel(std::span<const std::uint32_t> sizes, std::uint64_t n);
Split additive_min(std::span<const std::uint32_t> sizes, std::uint64_t n, Exec exec);

}  // namespace ff::kernels
