#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/multiprecision/gmp.hpp>

#include "formula_forge/counting.hpp"
#include "formula_forge/enumeration.hpp"
#include "formula_forge/errors.hpp"
#include "formula_forge/sampling.hpp"

using namespace ff;
using Rational = boost::multiprecision::mpq_rational;

namespace {

double chi2_pvalue(const std::map<std::string, std::size_t>& freq, std::size_t categories,
                   std::size_t draws) {
    const double expected = static_cast<double>(draws) / categories;
    double stat = 0;
    std::size_t seen = 0;
    for (const auto& [_, c] : freq) {
        stat += (c - expected) * (c - expected) / expected;
        ++seen;
    }
    stat += (categories - seen) * expected;  // categories never drawn
    boost::math::chi_squared dist(static_cast<double>(categories - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

template <class Draw>
double uniformity(const std::vector<Tree>& universe, std::size_t draws, Draw draw) {
    std::map<std::string, std::size_t> freq;
    for (std::size_t i = 0; i < draws; ++i) ++freq[to_prefix(draw())];
    std::set<std::string> allowed;
    for (const auto& t : universe) allowed.insert(to_prefix(t));
    for (const auto& [k, _] : freq) REQUIRE(allowed.count(k) == 1);
    return chi2_pvalue(freq, universe.size(), draws);
}

// Probability that the sampler emits t, from the branch weights.
Rational probability(GateSet set, const Tree& t) {
    if (t.is_leaf()) return 1;
    const auto n = static_cast<std::uint64_t>(eval(t));
    const std::uint64_t l = static_cast<std::uint64_t>(eval(t.left()));
    const std::uint64_t r = static_cast<std::uint64_t>(eval(t.right()));
    Root root = t.gate() == Gate::Add ? Root::Add : t.gate() == Gate::Mul ? Root::Mul : Root::Pow;
    auto row = default_table().row(set, static_cast<std::int64_t>(n));
    Rational p = 1;
    BigInt class_weight = row.total;
    if (set != GateSet::A) {
        class_weight = root == Root::Add ? row.add : root == Root::Mul ? row.mul : row.pow;
        p *= Rational(class_weight, row.total);
    }
    const auto branches = set == GateSet::A ? add_only_branches(n) : rooted_branches(set, root, n);
    BigInt sum = 0;
    for (const auto& b : branches) sum += b.weight;
    CHECK(sum == class_weight);
    bool found = false;
    for (const auto& b : branches) {
        if (b.gate == t.gate() && b.left == l && b.right == r) {
            p *= Rational(b.weight, sum);
            found = true;
        }
    }
    REQUIRE(found);
    return p * probability(set, t.left()) * probability(set, t.right());
}

}  // namespace

TEST_CASE("loaded die") {
    RandomSource rng(7);
    std::vector<BigInt> one{5};
    CHECK(roll_loaded_die(one, rng) == 1);
    std::vector<BigInt> zero_first{0, 7};
    for (int i = 0; i < 100; ++i) CHECK(roll_loaded_die(zero_first, rng) == 2);
    std::vector<BigInt> empty;
    CHECK_THROWS_AS(roll_loaded_die(empty, rng), DomainError);
    std::vector<BigInt> zeros{0, 0};
    CHECK_THROWS_AS(roll_loaded_die(zeros, rng), DomainError);
}

TEST_CASE("loaded die frequencies") {
    RandomSource rng(11);
    std::vector<BigInt> w{1, 2, 3};
    std::size_t counts[3] = {0, 0, 0};
    const std::size_t draws = 60000;
    for (std::size_t i = 0; i < draws; ++i) ++counts[roll_loaded_die(w, rng) - 1];
    double stat = 0;
    for (int i = 0; i < 3; ++i) {
        const double e = draws * (i + 1) / 6.0;
        stat += (counts[i] - e) * (counts[i] - e) / e;
    }
    boost::math::chi_squared dist(2);
    CHECK(boost::math::cdf(boost::math::complement(dist, stat)) > 0.01);
}

TEST_CASE("big weights stay exact") {
    RandomSource rng(3);
    std::vector<BigInt> w{BigInt(1) << 200, BigInt(1) << 200};
    std::size_t first = 0;
    for (int i = 0; i < 2000; ++i) first += roll_loaded_die(w, rng) == 1;
    CHECK(first > 850);
    CHECK(first < 1150);
}

TEST_CASE("trivial samples") {
    RandomSource rng(1);
    CHECK(sample_add(1, rng) == Tree::leaf());
    CHECK(to_prefix(sample_add(2, rng)) == "+11");
    CHECK(to_prefix(sample_add_lop(3, rng)) == "++111");
    CHECK(sample_add_lop(1, rng) == Tree::leaf());
    CHECK(sample_am(1, rng) == Tree::leaf());
    CHECK_THROWS_AS(sample_add(0, rng), DomainError);
}

TEST_CASE("forced roots without a split") {
    RandomSource rng(1);
    CHECK_THROWS_AS(sample_rooted(GateSet::AM, Root::Mul, 7, rng), NoMultiplicativeSplit);
    CHECK_THROWS_AS(sample_rooted(GateSet::AME, Root::Pow, 6, rng), NoMultiplicativeSplit);
    CHECK_THROWS_AS(sample_rooted(GateSet::AM, Root::Mul, 1, rng), NoMultiplicativeSplit);
    CHECK(eval(sample_rooted(GateSet::AME, Root::Pow, 9, rng)) == 9);
}

TEST_CASE("determinism under a seed") {
    RandomSource a(42);
    RandomSource b(42);
    for (int i = 0; i < 50; ++i) CHECK(sample_ame(17, a) == sample_ame(17, b));
}

TEST_CASE("samples evaluate to n") {
    RandomSource rng(5);
    for (std::int64_t n = 1; n <= 60; ++n) {
        CHECK(eval(sample_ame(n, rng)) == n);
        CHECK(eval(sample_am(n, rng)) == n);
        auto lop = sample_add_lop(n, rng);
        CHECK(eval(lop) == n);
    }
}

TEST_CASE("uniformity over add-only trees of 5") {
    RandomSource rng(2024);
    auto universe = enumerate_add(5);
    std::map<std::string, std::size_t> freq;
    const std::size_t draws = 14000;
    for (std::size_t i = 0; i < draws; ++i) ++freq[to_prefix(sample_add(5, rng))];
    REQUIRE(freq.size() == 14);
    const double p = 1.0 / 14;
    const double sigma = std::sqrt(draws * p * (1 - p));
    for (const auto& [_, c] : freq) CHECK(std::abs(c - draws * p) < 5 * sigma);
}

TEST_CASE("uniformity over lop trees of 6") {
    RandomSource rng(99);
    auto universe = enumerate_add_lop(6);
    CHECK(uniformity(universe, 2000 * universe.size(), [&] { return sample_add_lop(6, rng); }) > 0.001);
}

TEST_CASE("mul root frequency at 4") {
    RandomSource rng(4);
    std::size_t mul = 0;
    const std::size_t draws = 60000;
    for (std::size_t i = 0; i < draws; ++i) mul += sample_am(4, rng).gate() == Gate::Mul;
    const double p = 1.0 / 6;
    CHECK(std::abs(mul - draws * p) < 5 * std::sqrt(draws * p * (1 - p)));
}

TEST_CASE("uniformity over am and ame trees") {
    RandomSource rng(6);
    auto am6 = enumerate_am(6);
    CHECK(uniformity(am6, 2000 * am6.size(), [&] { return sample_am(6, rng); }) > 0.001);
    auto ame6 = enumerate_ame(6);
    CHECK(uniformity(ame6, 2000 * ame6.size(), [&] { return sample_ame(6, rng); }) > 0.001);
}

TEST_CASE("exact branch probabilities are uniform") {
    for (auto set : {GateSet::A, GateSet::AM, GateSet::AME}) {
        for (std::int64_t n = 1; n <= 8; ++n) {
            Enumerator e;
            const auto trees = e.collect({n, set, std::nullopt, false});
            const Rational expect(BigInt(1), count(set, Root::All, n));
            for (const auto& t : trees) CHECK(probability(set, t) == expect);
        }
    }
}
