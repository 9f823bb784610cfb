#include "formula_forge/bigint.hpp"

#include <bit>
#include <cmath>

namespace ff {

namespace {

// b^k compared against n without overflow: -1 below, 0 equal, 1 above.
int compare_power(std::uint64_t b, unsigned k, std::uint64_t n) {
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < k; ++i) {
        acc *= b;
        if (acc > n) return 1;
    }
    return acc == n ? 0 : -1;
}

}  // namespace

unsigned floor_log2(std::uint64_t n) { return 63u - static_cast<unsigned>(std::countl_zero(n)); }

std::uint64_t integer_root_floor(std::uint64_t n, unsigned k) {
    if (k <= 1 || n <= 1) return n;
    if (k >= 64) return 1;
    auto guess = static_cast<std::uint64_t>(std::pow(static_cast<double>(n), 1.0 / k));
    // Float seed, then exact correction.
    while (guess > 0 && compare_power(guess, k, n) > 0) --guess;
    while (compare_power(guess + 1, k, n) <= 0) ++guess;
    return guess;
}

std::optional<std::uint64_t> exact_root(std::uint64_t n, unsigned k) {
    auto b = integer_root_floor(n, k);
    if (compare_power(b, k, n) == 0) return b;
    return std::nullopt;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

}  // namespace ff
