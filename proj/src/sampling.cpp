#include "formula_forge/sampling.hpp"

#include "formula_forge/errors.hpp"

namespace ff {

BigInt RandomSource::uniform_int(const BigInt& lo, const BigInt& hi) {
    if (hi < lo) throw DomainError("uniform_int: empty range");
    const BigInt range = hi - lo;
    if (range == 0) return lo;
    const auto bits = msb(range) + 1;
    const auto words = (bits + 63) / 64;
    const BigInt mask = (BigInt(1) << bits) - 1;
    // Rejection sampling keeps the draw exactly uniform.
    for (;;) {
        BigInt r = 0;
        for (std::size_t w = 0; w < words; ++w) {
            r <<= 64;
            r |= BigInt(engine_());
        }
        r &= mask;
        if (r <= range) return lo + r;
    }
}

std::size_t roll_loaded_die(std::span<const BigInt> weights, RandomSource& rng) {
    if (weights.empty()) throw DomainError("loaded die needs at least one face");
    BigInt total = 0;
    for (const auto& w : weights) {
        if (w < 0) throw DomainError("loaded die weights must be nonnegative");
        total += w;
    }
    if (total == 0) throw DomainError("loaded die needs a positive weight");
    const BigInt r = rng.uniform_int(1, total);
    BigInt prefix = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        prefix += weights[i];
        if (prefix >= r) return i + 1;
    }
    return weights.size();  // unreachable: prefix reaches total
}

namespace {

std::uint64_t checked_n(std::int64_t n) {
    if (n <= 0) throw DomainError("n must be a positive integer, got " + std::to_string(n));
    return static_cast<std::uint64_t>(n);
}

const Branch& pick(const std::vector<Branch>& branches, RandomSource& rng) {
    std::vector<BigInt> weights;
    weights.reserve(branches.size());
    for (const auto& b : branches) weights.push_back(b.weight);
    return branches[roll_loaded_die(weights, rng) - 1];
}

Tree sample_universe(GateSet set, std::uint64_t n, RandomSource& rng);

Tree sample_class(GateSet set, Root root, std::uint64_t n, RandomSource& rng) {
    auto branches = rooted_branches(set, root, n);
    if (branches.empty()) {
        const char* what = root == Root::Pow ? "exponential" : "multiplicative";
        throw NoMultiplicativeSplit(std::to_string(n) + " has no " + what + " split");
    }
    const auto& b = pick(branches, rng);
    return Tree::node(b.gate, sample_universe(set, b.left, rng), sample_universe(set, b.right, rng));
}

Tree sample_universe(GateSet set, std::uint64_t n, RandomSource& rng) {
    if (n == 1) return Tree::leaf();
    if (set == GateSet::A) return sample_class(set, Root::Add, n, rng);
    auto row = default_table().row(set, static_cast<std::int64_t>(n));
    std::vector<BigInt> classes{row.add, row.mul};
    if (set == GateSet::AME) classes.push_back(row.pow);
    static constexpr Root kRoots[] = {Root::Add, Root::Mul, Root::Pow};
    auto face = roll_loaded_die(classes, rng);
    return sample_class(set, kRoots[face - 1], n, rng);
}

Tree sample_lop(std::uint64_t n, RandomSource& rng) {
    if (n == 1) return Tree::leaf();
    const auto branches = lop_branches(n);
    const auto& b = pick(branches, rng);
    return Tree::node(Gate::Add, sample_lop(b.left, rng), sample_lop(b.right, rng));
}

}  // namespace

std::vector<Branch> add_only_branches(std::uint64_t n) {
    return rooted_branches(GateSet::A, Root::Add, n);
}

std::vector<Branch> lop_branches(std::uint64_t n) {
    std::vector<Branch> out;
    auto& table = default_table();
    for (std::uint64_t j = 1; j <= n / 2; ++j) {
        auto l = static_cast<std::int64_t>(n - j);
        auto r = static_cast<std::int64_t>(j);
        out.push_back({Gate::Add, n - j, j, table.count_lop(l) * table.count_lop(r)});
    }
    return out;
}

std::vector<Branch> rooted_branches(GateSet set, Root root, std::uint64_t n) {
    std::vector<Branch> out;
    auto& table = default_table();
    auto total = [&](std::uint64_t m) {
        return table.count(set, Root::All, static_cast<std::int64_t>(m));
    };
    switch (root) {
    case Root::Add:
        for (std::uint64_t j = 1; j < n; ++j) out.push_back({Gate::Add, j, n - j, total(j) * total(n - j)});
        break;
    case Root::Mul:
        if (!contains(set, Gate::Mul)) throw DomainError("gate set has no multiplication");
        for (std::uint64_t d = 2; d <= n / 2; ++d)
            if (n % d == 0) out.push_back({Gate::Mul, d, n / d, total(d) * total(n / d)});
        break;
    case Root::Pow:
        if (!contains(set, Gate::Pow)) throw DomainError("gate set has no exponentiation");
        for (unsigned i = 2; n > 1 && i <= floor_log2(n); ++i)
            if (auto b = exact_root(n, i)) out.push_back({Gate::Pow, *b, i, total(*b) * total(i)});
        break;
    case Root::All:
        for (auto r : {Root::Add, Root::Mul, Root::Pow}) {
            if (r == Root::Mul && !contains(set, Gate::Mul)) continue;
            if (r == Root::Pow && !contains(set, Gate::Pow)) continue;
            auto part = rooted_branches(set, r, n);
            out.insert(out.end(), part.begin(), part.end());
        }
        break;
    }
    return out;
}

Tree sample_add(std::int64_t n, RandomSource& rng) {
    return sample_universe(GateSet::A, checked_n(n), rng);
}

Tree sample_add_lop(std::int64_t n, RandomSource& rng) { return sample_lop(checked_n(n), rng); }

Tree sample_am(std::int64_t n, RandomSource& rng) {
    return sample_universe(GateSet::AM, checked_n(n), rng);
}

Tree sample_ame(std::int64_t n, RandomSource& rng) {
    return sample_universe(GateSet::AME, checked_n(n), rng);
}

Tree sample_rooted(GateSet set, Root root, std::int64_t n, RandomSource& rng) {
    auto m = checked_n(n);
    if (root == Root::All) return sample_universe(set, m, rng);
    if (root == Root::Mul && !contains(set, Gate::Mul))
        throw DomainError("gate set has no multiplication");
    if (root == Root::Pow && !contains(set, Gate::Pow))
        throw DomainError("gate set has no exponentiation");
    if (m == 1) {
        if (root == Root::Add) return Tree::leaf();
        throw NoMultiplicativeSplit(std::string("1 has no ") +
                                    (root == Root::Pow ? "exponential" : "multiplicative") + " split");
    }
    return sample_class(set, root, m, rng);
}

Tree sample(GateSet set, std::int64_t n, RandomSource& rng, bool lop) {
    if (lop) {
        if (set != GateSet::A)
            throw DomainError("the left-operand restriction is defined for addition-only formulas");
        return sample_add_lop(n, rng);
    }
    return sample_universe(set, checked_n(n), rng);
}

}  // namespace ff
