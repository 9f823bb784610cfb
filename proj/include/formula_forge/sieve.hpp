#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "formula_forge/bigint.hpp"
#include "formula_forge/canonical.hpp"

namespace ff {

/// Tower-encoding prime sieve state.
///
/// integers[v-1] encodes v for v = 1..max (gap free); primes lists the
/// encodings of all primes <= max in ascending order. Composites are
/// products of prime powers over increasing prime bases whose exponents are
/// taken from this same integer table; each prime p > 2 is encoded as
/// (p-1) + 1.
struct SieveState {
    std::vector<SymExpr> integers;
    std::vector<std::uint64_t> prime_values;
    std::vector<SymExpr> primes;
    unsigned level = 0;  // number of dyadic ranges completed

    std::uint64_t max() const { return integers.size(); }
    const SymExpr& encoding(std::uint64_t v) const { return integers.at(v - 1); }
};

// Per-range report of one completion step.
struct SieveLevelReport {
    unsigned k;
    std::uint64_t lower;  // exclusive
    std::uint64_t upper;  // inclusive
    std::uint64_t composites;
    std::vector<std::uint64_t> new_primes;
};

constexpr unsigned kMaxSieveLevels = 14;

SieveState initial_sieve_state();

/// q^e for known primes q and e >= 1, with value in (2^{k+1}, 2^{k+2}].
std::vector<SymExpr> prime_power_range(const SieveState& state, unsigned k);

/// Products of exactly `factors` prime powers over strictly increasing prime
/// bases with value in (2^{k+1}, 2^{k+2}].
std::vector<SymExpr> multi_factor_products(const SieveState& state, unsigned k,
                                           unsigned factors);

/// Completes the next dyadic range (2^{k+1}, 2^{k+2}], k = state.level.
/// Requires state.max() == 2^{k+1}.
SieveState zeta_step(const SieveState& state, SieveLevelReport* report = nullptr);

/// levels = 0 returns the initial state [1, x] / [x]; otherwise ranges
/// k = 0..levels are completed, covering 1..2^{levels+2}. LevelTooLarge
/// above kMaxSieveLevels unless `unsafe`.
SieveState run_sieve(unsigned levels, bool unsafe = false,
                     std::vector<SieveLevelReport>* reports = nullptr);

/// Coarse variant: outer ranges end at the tower bounds 4, 16, 65536, each
/// subdivided dyadically; composites of one outer range only use exponent
/// encodings known when the range began. levels <= 2.
SieveState scf_coarse(unsigned levels);

// p1^{±e1} * ... over distinct primes.
struct RationalExpr {
    struct Factor {
        SymExpr prime;
        SymExpr exponent;
        bool inverse;
    };
    std::vector<Factor> factors;  // empty = 1
    BigInt numerator = 1;
    BigInt denominator = 1;

    std::string str() const;
};

/// Products over at most `factor_bound` distinct known primes of p^{±e}
/// with 1 <= e <= exponent_bound (e encoded from the integer table). The
/// empty product 1 comes first. SizeGuard beyond `max_items`.
std::vector<RationalExpr> rational_set(const SieveState& state, std::uint64_t exponent_bound,
                                       unsigned factor_bound,
                                       std::size_t max_items = 1'000'000);

}  // namespace ff
