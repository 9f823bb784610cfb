#include "formula_forge/asymptotics.hpp"

#include <cmath>
#include <string>

#include <boost/math/constants/constants.hpp>

#include "formula_forge/errors.hpp"

namespace ff {

namespace {

unsigned digits10_for(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

std::vector<Real> coefficients(CountFamily family, std::size_t terms) {
    std::vector<Real> c(terms);
    c[0] = 0;
    for (std::size_t n = 1; n < terms; ++n) {
        const auto v = family == CountFamily::Am ? count_am(static_cast<std::int64_t>(n))
                                                 : count_ame(static_cast<std::int64_t>(n));
        c[n] = Real(v);
    }
    return c;
}

// (coefficient, exponent) pairs of the exponentiation-rooted term.
std::vector<std::pair<Real, std::uint64_t>> pow_terms(const std::vector<Real>& c) {
    std::vector<std::pair<Real, std::uint64_t>> out;
    const std::uint64_t t = c.size();
    const std::uint64_t cap = (t - 1) * (t - 1);
    for (std::uint64_t i = 2; i < t; ++i) {
        for (std::uint64_t b = 2; b < t; ++b) {
            std::uint64_t e = 1;
            bool fits = true;
            for (std::uint64_t k = 0; k < i; ++k) {
                if (e > cap / b) {
                    fits = false;
                    break;
                }
                e *= b;
            }
            if (!fits) break;
            out.emplace_back(c[i] * c[b], e);
        }
    }
    return out;
}

void check_params(std::size_t terms, std::size_t iterations, unsigned bits) {
    if (terms < 8) throw DomainError("terms must be at least 8");
    if (iterations < 1) throw DomainError("iterations must be at least 1");
    if (bits < 53) throw DomainError("precision must be at least 53 bits");
}

struct Map {
    CountFamily family;
    std::vector<Real> c;
    std::vector<std::pair<Real, std::uint64_t>> extra;

    Map(CountFamily f, std::size_t terms) : family(f), c(coefficients(f, terms)) {
        if (f == CountFamily::Ame) extra = pow_terms(c);
    }

    Real f_at(const Real& y) const {
        Real acc = 0;
        for (std::size_t n = c.size() - 1; n >= 1; --n) acc = (acc + c[n]) * y;
        return acc;
    }

    Real correction(const Real& x) const {
        Real s = 0;
        Real xd = x;
        for (std::size_t d = 2; d < c.size(); ++d) {
            xd *= x;
            s += c[d] * (f_at(xd) - xd);
        }
        for (const auto& [coef, e] : extra) s += coef * pow(x, static_cast<unsigned long>(e));
        return s;
    }

    Real g(const Real& x) const { return Real(1) / 4 - correction(x); }
};

RhoEstimate iterate(const Map& map, std::size_t terms, std::size_t iterations, unsigned bits) {
    const Real quarter = Real(1) / 4;
    const Real tol = ldexp(Real(1), -static_cast<int>(bits - 8));
    const std::size_t cap = iterations + 512;
    Real x = Real(1) / Real(map.family == CountFamily::Am ? "4.077" : "4.131");
    std::size_t k = 0;
    while (true) {
        Real next = map.g(x);
        ++k;
        if (!(next > 0) || next > quarter)
            throw NonConvergence("iterate " + std::to_string(k) + " left (0, 1/4]");
        Real step = abs(next - x);
        x = next;
        if (k >= iterations && step < tol) break;
        if (k >= cap)
            throw NonConvergence("no convergence to 2^-" + std::to_string(bits - 8) + " within " +
                                 std::to_string(cap) + " iterations (last step " +
                                 step.str(6, std::ios::scientific) + ")");
    }
    RhoEstimate out;
    out.fixed_point = x;
    out.rho = 1 / x;
    out.residual = abs(map.g(x) - x);
    out.terms = terms;
    out.iterations = k;
    out.precision_bits = bits;
    return out;
}

}  // namespace

PrecisionGuard::PrecisionGuard(unsigned bits) : saved_(Real::default_precision()) {
    Real::default_precision(digits10_for(bits));
}

PrecisionGuard::~PrecisionGuard() { Real::default_precision(saved_); }

TruncatedSeries::TruncatedSeries(std::size_t order) : coeffs_(order, Real(0)) {}

TruncatedSeries::TruncatedSeries(std::size_t order, std::vector<Real> coefficients)
    : coeffs_(std::move(coefficients)) {
    coeffs_.resize(order, Real(0));
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
    for (std::size_t i = 0; i < order() && i < o.order(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
    for (std::size_t i = 0; i < order() && i < o.order(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const Real& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    const auto t = std::min(a.order(), b.order());
    TruncatedSeries out(t);
    for (std::size_t i = 0; i < t; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; i + j < t; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

TruncatedSeries TruncatedSeries::substitute_power(std::size_t d) const {
    if (d == 0) throw DomainError("substitute_power needs d >= 1");
    TruncatedSeries out(order());
    for (std::size_t i = 0; i * d < order(); ++i) out[i * d] = coeffs_[i];
    return out;
}

TruncatedSeries TruncatedSeries::rescale(const Real& r) const {
    TruncatedSeries out(order());
    Real p = 1;
    for (std::size_t i = 0; i < order(); ++i) {
        out[i] = coeffs_[i] * p;
        p *= r;
    }
    return out;
}

Real TruncatedSeries::evaluate(const Real& x) const {
    Real acc = 0;
    for (std::size_t i = order(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
}

Real correction_at(CountFamily family, std::size_t terms, const Real& x) {
    if (terms < 8) throw DomainError("terms must be at least 8");
    return Map(family, terms).correction(x);
}

Real iteration_map(CountFamily family, std::size_t terms, const Real& x) {
    if (terms < 8) throw DomainError("terms must be at least 8");
    return Map(family, terms).g(x);
}

RhoEstimate rho_estimate(CountFamily family, std::size_t terms, std::size_t iterations,
                         unsigned precision_bits) {
    check_params(terms, iterations, precision_bits);
    PrecisionGuard guard(precision_bits);
    Map map(family, terms);
    return iterate(map, terms, iterations, precision_bits);
}

ConstantEstimate constant_estimate(std::size_t terms, std::size_t iterations, unsigned precision_bits,
                                   CountFamily family) {
    check_params(terms, iterations, precision_bits);
    PrecisionGuard guard(precision_bits);
    Map map(family, terms);
    ConstantEstimate out;
    out.rho = iterate(map, terms, iterations, precision_bits);
    const Real& r = out.rho.fixed_point;

    // h = x + correction, as a polynomial
    TruncatedSeries h(terms);
    h[1] = 1;
    for (std::size_t d = 2; d < terms; ++d)
        for (std::size_t n = 2; d * n < terms; ++n) h[d * n] += map.c[d] * map.c[n];
    for (const auto& [coef, e] : map.extra)
        if (e < terms) h[e] += coef;

    TruncatedSeries one_minus(terms);
    one_minus[0] = 1;
    one_minus -= h * Real(4);
    TruncatedSeries geometric(terms);
    Real inv = 1 / r;
    Real p = 1;
    for (std::size_t j = 0; j < terms; ++j) {
        geometric[j] = p;
        p *= inv;
    }
    const Real g_at_r = (one_minus * geometric).evaluate(r);
    if (g_at_r < 0)
        throw NegativeRadicand("truncated G(r) = " + g_at_r.str(6, std::ios::scientific) +
                               " is negative; increase terms");
    const Real pi = boost::math::constants::pi<Real>();
    out.constant = sqrt(g_at_r) / (4 * sqrt(pi));

    Real rho_pow = 1;
    for (std::size_t n = 1; n < terms; ++n) {
        rho_pow *= out.rho.rho;
        if (n < 2) continue;
        const Real nn(static_cast<unsigned long>(n));
        out.ratios.emplace_back(n, map.c[n] * nn * sqrt(nn) / (out.constant * rho_pow));
    }
    return out;
}

}  // namespace ff
