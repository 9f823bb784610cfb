#include "formula_forge/sieve.hpp"

#include <cmath>
#include <functional>
#include <optional>

#include "formula_forge/errors.hpp"

namespace ff {

namespace {

constexpr unsigned kHardSieveLimit = 22;

// Generates prod p_j^{e_j} over strictly increasing prime indices with
// factor count in [min_factors, max_factors] and value in (lo, hi].
// Exponents are encoded from state.integers and must be <= exp_limit.
void products_in_range(const SieveState& state, std::uint64_t lo, std::uint64_t hi,
                       unsigned min_factors, unsigned max_factors, std::uint64_t exp_limit,
                       const std::function<void(std::uint64_t, SymExpr)>& emit) {
    const auto& pv = state.prime_values;
    std::vector<SymExpr> factors;
    std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t from, std::uint64_t value) {
        const auto used = static_cast<unsigned>(factors.size());
        if (used >= min_factors && value > lo) {
            emit(value, factors.size() == 1 ? factors.front() : SymExpr::prod(factors));
        }
        if (used == max_factors) return;
        for (std::size_t j = from; j < pv.size(); ++j) {
            const auto p = pv[j];
            if (value > hi / p) break;  // primes ascend: no later base fits either
            std::uint64_t v = value * p;
            for (std::uint64_t e = 1;; ++e) {
                if (e > exp_limit) break;
                factors.push_back(e == 1 ? state.primes[j]
                                         : SymExpr::pow(state.primes[j], state.encoding(e)));
                rec(j + 1, v);
                factors.pop_back();
                if (v > hi / p) break;
                v *= p;
            }
        }
    };
    rec(0, 1);
}

std::uint64_t pow2(unsigned e) {
    if (e > 62) throw SizeGuard("sieve range exceeds 2^62");
    return std::uint64_t{1} << e;
}

void require_coverage(const SieveState& state, unsigned k) {
    if (state.max() < pow2(k + 1))
        throw DomainError("sieve state covers 1.." + std::to_string(state.max()) +
                          ", range k = " + std::to_string(k) + " needs 1.." +
                          std::to_string(pow2(k + 1)));
}

// Completes (lo, hi] given every composite in it, adjoining (v-1)+1 for each
// value that was not generated.
SieveState complete_range(const SieveState& state, std::uint64_t lo, std::uint64_t hi,
                          const std::vector<std::pair<std::uint64_t, SymExpr>>& composites,
                          SieveLevelReport* report) {
    if (state.max() != lo)
        throw InternalGapError("completion of (" + std::to_string(lo) + ", " + std::to_string(hi) +
                               "] needs a table ending at " + std::to_string(lo));
    std::vector<std::optional<SymExpr>> slots(hi - lo);
    for (const auto& [v, e] : composites) {
        if (v <= lo || v > hi) throw InternalGapError("composite " + std::to_string(v) + " outside range");
        auto& slot = slots[v - lo - 1];
        if (slot)
            throw InternalGapError("value " + std::to_string(v) + " generated twice");
        slot = e;
    }
    SieveState next = state;
    std::vector<std::uint64_t> found;
    bool previous_gap = false;
    for (std::uint64_t v = lo + 1; v <= hi; ++v) {
        auto& slot = slots[v - lo - 1];
        if (slot) {
            next.integers.push_back(*slot);
            previous_gap = false;
            continue;
        }
        if (previous_gap && v > 3)
            throw InternalGapError("consecutive values " + std::to_string(v - 1) + " and " +
                                   std::to_string(v) + " were both left unfilled");
        auto encoding = SymExpr::sum({next.integers.back(), SymExpr::one()});
        next.integers.push_back(encoding);
        next.primes.push_back(encoding);
        next.prime_values.push_back(v);
        found.push_back(v);
        previous_gap = true;
    }
    if (report) {
        report->lower = lo;
        report->upper = hi;
        report->composites = composites.size();
        report->new_primes = std::move(found);
    }
    return next;
}

std::vector<std::pair<std::uint64_t, SymExpr>> composites_in(const SieveState& state,
                                                              std::uint64_t lo, std::uint64_t hi,
                                                              std::uint64_t exp_limit) {
    // Loop guard: c distinct factors fit only while the product of the c
    // smallest primes stays within hi.
    unsigned max_factors = 0;
    std::uint64_t primorial = 1;
    for (auto p : state.prime_values) {
        if (primorial > hi / p) break;
        primorial *= p;
        ++max_factors;
    }
    std::vector<std::pair<std::uint64_t, SymExpr>> out;
    if (max_factors == 0) return out;
    products_in_range(state, lo, hi, 1, max_factors, exp_limit,
                      [&](std::uint64_t v, SymExpr e) {
                          // single factors with exponent 1 are the primes themselves
                          if (e.kind() == SymExpr::Kind::Prod || e.kind() == SymExpr::Kind::Pow)
                              out.emplace_back(v, std::move(e));
                      });
    return out;
}

}  // namespace

SieveState initial_sieve_state() {
    SieveState s;
    s.integers = {SymExpr::one(), SymExpr::x()};
    s.primes = {SymExpr::x()};
    s.prime_values = {2};
    s.level = 0;
    return s;
}

std::vector<SymExpr> prime_power_range(const SieveState& state, unsigned k) {
    require_coverage(state, k);
    const auto lo = pow2(k + 1);
    const auto hi = pow2(k + 2);
    std::vector<SymExpr> out;
    for (std::size_t j = 0; j < state.prime_values.size(); ++j) {
        const auto q = state.prime_values[j];
        std::uint64_t v = q;
        for (std::uint64_t e = 1; v <= hi; ++e) {
            if (v > lo) out.push_back(SymExpr::pow(state.primes[j], state.encoding(e)));
            if (v > hi / q) break;
            v *= q;
        }
    }
    return out;
}

std::vector<SymExpr> multi_factor_products(const SieveState& state, unsigned k, unsigned factors) {
    if (factors < 2) throw DomainError("multi_factor_products needs at least two factors");
    require_coverage(state, k);
    std::vector<SymExpr> out;
    products_in_range(state, pow2(k + 1), pow2(k + 2), factors, factors, state.max(),
                      [&](std::uint64_t, SymExpr e) { out.push_back(std::move(e)); });
    return out;
}

SieveState zeta_step(const SieveState& state, SieveLevelReport* report) {
    const unsigned k = state.level;
    const auto lo = pow2(k + 1);
    const auto hi = pow2(k + 2);
    if (state.max() != lo)
        throw DomainError("zeta_step expects a table covering exactly 1.." + std::to_string(lo));
    auto composites = composites_in(state, lo, hi, state.max());
    if (report) report->k = k;
    auto next = complete_range(state, lo, hi, composites, report);
    next.level = k + 1;
    return next;
}

SieveState run_sieve(unsigned levels, bool unsafe, std::vector<SieveLevelReport>* reports) {
    if (levels > kMaxSieveLevels && !unsafe)
        throw LevelTooLarge("sieve levels " + std::to_string(levels) + " exceed the limit of " +
                            std::to_string(kMaxSieveLevels));
    if (levels > kHardSieveLimit)
        throw SizeGuard("sieve levels above " + std::to_string(kHardSieveLimit) +
                        " exhaust memory even with --unsafe");
    auto state = initial_sieve_state();
    if (levels == 0) return state;
    for (unsigned k = 0; k <= levels; ++k) {
        SieveLevelReport report{};
        state = zeta_step(state, &report);
        if (reports) reports->push_back(std::move(report));
    }
    return state;
}

SieveState scf_coarse(unsigned levels) {
    if (levels > 2)
        throw LevelTooLarge("coarse SCF sieve is limited to 2 levels (the next tower bound is 2^65536)");
    auto state = initial_sieve_state();
    unsigned lower_log = 1;  // log2 of the lower tower bound
    unsigned upper_log = 2;
    for (unsigned it = 0; it < levels; ++it) {
        // Exponents come from the integers known when the outer range began.
        const auto exp_limit = state.max();
        for (unsigned j = lower_log; j < upper_log; ++j) {
            const auto lo = pow2(j);
            const auto hi = pow2(j + 1);
            auto composites = composites_in(state, lo, hi, exp_limit);
            state = complete_range(state, lo, hi, composites, nullptr);
            ++state.level;
        }
        lower_log = upper_log;
        upper_log = static_cast<unsigned>(pow2(upper_log) <= 62 ? pow2(upper_log) : 63);
    }
    return state;
}

std::string RationalExpr::str() const {
    if (factors.empty()) return "1";
    auto atom = [](const SymExpr& e) {
        return e.kind() == SymExpr::Kind::One || e.kind() == SymExpr::Kind::X;
    };
    auto wrap = [&](const SymExpr& e) { return atom(e) ? e.str() : "(" + e.str() + ")"; };
    if (factors.size() == 1 && !factors[0].inverse && factors[0].exponent.kind() == SymExpr::Kind::One)
        return factors[0].prime.str();
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const auto& f = factors[i];
        if (i) out += "*";
        out += wrap(f.prime);
        if (f.inverse) {
            out += "^(-" + wrap(f.exponent) + ")";
        } else if (f.exponent.kind() != SymExpr::Kind::One) {
            out += "^" + wrap(f.exponent);
        }
    }
    return out;
}

std::vector<RationalExpr> rational_set(const SieveState& state, std::uint64_t exponent_bound,
                                       unsigned factor_bound, std::size_t max_items) {
    if (exponent_bound == 0) throw DomainError("exponent bound must be at least 1");
    if (exponent_bound > state.max())
        throw DomainError("exponent bound " + std::to_string(exponent_bound) +
                          " exceeds the encoded integers 1.." + std::to_string(state.max()));
    // Size: sum_{j <= F} C(P, j) (2E)^j.
    {
        long double total = 0;
        long double binom = 1;
        const auto primes = static_cast<long double>(state.primes.size());
        for (unsigned j = 0; j <= factor_bound && j <= state.primes.size(); ++j) {
            if (j > 0) binom = binom * (primes - (j - 1)) / j;
            total += binom * std::pow(2.0L * exponent_bound, static_cast<long double>(j));
        }
        if (total > static_cast<long double>(max_items))
            throw SizeGuard("rational set would have about " + std::to_string(static_cast<double>(total)) +
                            " elements (limit " + std::to_string(max_items) + ")");
    }
    std::vector<RationalExpr> out{RationalExpr{}};
    for (std::size_t j = 0; j < state.primes.size(); ++j) {
        const auto existing = out.size();
        const BigInt p = state.prime_values[j];
        for (std::size_t i = 0; i < existing; ++i) {
            if (out[i].factors.size() >= factor_bound) continue;
            BigInt pe = 1;
            for (std::uint64_t e = 1; e <= exponent_bound; ++e) {
                pe *= p;
                for (bool inverse : {false, true}) {
                    RationalExpr r = out[i];
                    r.factors.push_back({state.primes[j], state.encoding(e), inverse});
                    if (inverse)
                        r.denominator *= pe;
                    else
                        r.numerator *= pe;
                    out.push_back(std::move(r));
                }
            }
        }
    }
    return out;
}

}  // namespace ff
