#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "formula_forge/counting.hpp"

namespace ff {

using Real = boost::multiprecision::mpfr_float;

/// Sets the working precision of Real for the lifetime of the guard.
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned bits);
    ~PrecisionGuard();
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

/// Power series truncated to order T (coefficients of x^0..x^{T-1}).
class TruncatedSeries {
public:
    explicit TruncatedSeries(std::size_t order);
    TruncatedSeries(std::size_t order, std::vector<Real> coefficients);

    std::size_t order() const { return coeffs_.size(); }
    const Real& operator[](std::size_t i) const { return coeffs_[i]; }
    Real& operator[](std::size_t i) { return coeffs_[i]; }

    TruncatedSeries& operator+=(const TruncatedSeries& o);
    TruncatedSeries& operator-=(const TruncatedSeries& o);
    TruncatedSeries& operator*=(const Real& s);
    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(TruncatedSeries a, const Real& s) { return a *= s; }

    // x -> x^d, truncated.
    TruncatedSeries substitute_power(std::size_t d) const;
    // x -> x*r: coefficient i scaled by r^i.
    TruncatedSeries rescale(const Real& r) const;
    // Horner evaluation of the truncated polynomial.
    Real evaluate(const Real& x) const;

private:
    std::vector<Real> coeffs_;
};

enum class CountFamily { Am, Ame };

struct RhoEstimate {
    Real rho;
    Real fixed_point;
    Real residual;  // |g(x*) - x*|
    std::size_t terms;
    std::size_t iterations;  // actually performed
    unsigned precision_bits;
};

/// Correction sum subtracted from 1/4 by the fixed-point map:
///   sum_{2<=d<T} C(d) (f(x^d) - x^d)              (multiplicative roots)
///   + sum_{2<=i<T} C(i) sum_{2<=b<T, b^i<=(T-1)^2} C(b) x^{b^i}   (Ame only)
/// with f(x) = sum_{1<=n<T} C(n) x^n.
Real correction_at(CountFamily family, std::size_t terms, const Real& x);

/// g(x) = 1/4 - correction_at(x).
Real iteration_map(CountFamily family, std::size_t terms, const Real& x);

/// Growth base rho from the fixed point of x = g(x), started at 1/4.077
/// (Am) or 1/4.131 (Ame). Performs at least `iterations` steps and keeps
/// going until |x_{k+1} - x_k| < 2^-(precision_bits-8), at most
/// iterations + 512 steps. NonConvergence if an iterate leaves (0, 1/4] or
/// the tolerance is not reached.
RhoEstimate rho_estimate(CountFamily family, std::size_t terms = 100,
                         std::size_t iterations = 20, unsigned precision_bits = 100);

struct ConstantEstimate {
    RhoEstimate rho;
    Real constant;
    std::vector<std::pair<std::size_t, Real>> ratios;  // (n, C(n) n^{3/2} / (C rho^n))
};

/// Leading constant c of c rho^n / n^{3/2} from the truncated series
/// G(x) = (1 - 4h(x)) * sum_{j<T} (x/r)^j, h = x + correction, r = x*:
/// c = sqrt(G(r)) / (4 sqrt(pi)). NegativeRadicand when G(r) < 0.
ConstantEstimate constant_estimate(std::size_t terms = 100, std::size_t iterations = 20,
                                   unsigned precision_bits = 100,
                                   CountFamily family = CountFamily::Am);

}  // namespace ff
