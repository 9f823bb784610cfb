#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "formula_forge/ast.hpp"
#include "formula_forge/bigint.hpp"
#include "formula_forge/counting.hpp"

namespace ff {

/// Seedable source of uniform big integers. Built on std::mt19937_64, whose
/// output sequence is fixed by the standard, so a seed reproduces the same
/// samples on every platform.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed = 0) : engine_(seed) {}

    // Uniform on [lo, hi], inclusive; requires lo <= hi.
    BigInt uniform_int(const BigInt& lo, const BigInt& hi);
    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// Loaded die: returns the 1-based face i with probability w[i]/sum(w).
/// Draws r uniform in [1, sum] and returns the first face whose prefix sum
/// reaches r. DomainError when the list is empty or all weights are zero.
std::size_t roll_loaded_die(std::span<const BigInt> weights, RandomSource& rng);

// One way of splitting n at the root: (gate left right) with the operand
// values and the number of trees realizing it.
struct Branch {
    Gate gate;
    std::uint64_t left;
    std::uint64_t right;
    BigInt weight;
};

// The weighted root choices used by the samplers. For the A and LOP
// universes these are the additive splits; for AM/AME the splits of one
// root class (Root::Add, Root::Mul or Root::Pow).
std::vector<Branch> add_only_branches(std::uint64_t n);
std::vector<Branch> lop_branches(std::uint64_t n);
std::vector<Branch> rooted_branches(GateSet set, Root root, std::uint64_t n);

Tree sample_add(std::int64_t n, RandomSource& rng);
Tree sample_add_lop(std::int64_t n, RandomSource& rng);

/// Uniform over enumerate_am(n): root class drawn with weights
/// (Cama(n), Camm(n)), then the split within the class.
Tree sample_am(std::int64_t n, RandomSource& rng);

/// Uniform over enumerate_ame(n) by the same construction with Came weights.
Tree sample_ame(std::int64_t n, RandomSource& rng);

/// Uniform over the trees of the given root class. Forcing Mul (or Pow)
/// where no such split exists (n = 1, n prime, n not a perfect power)
/// throws NoMultiplicativeSplit.
Tree sample_rooted(GateSet set, Root root, std::int64_t n, RandomSource& rng);

Tree sample(GateSet set, std::int64_t n, RandomSource& rng, bool lop = false);

}  // namespace ff
