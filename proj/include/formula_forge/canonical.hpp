#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "formula_forge/ast.hpp"
#include "formula_forge/bigint.hpp"

namespace ff {

/// Symbolic expression in x, where x stands for the formula 1+1.
///
/// Sum terms are flattened and ordered by value descending; Prod factors are
/// flattened and keep construction order. x^1 collapses to x and Sum/Prod of
/// a single element collapse to that element.
class SymExpr {
public:
    enum class Kind { One, X, Sum, Prod, Pow };

    SymExpr();  // One

    static SymExpr one();
    static SymExpr x();
    static SymExpr sum(std::vector<SymExpr> terms);
    static SymExpr prod(std::vector<SymExpr> factors);
    static SymExpr pow(SymExpr base, SymExpr exponent);

    Kind kind() const;
    const std::vector<SymExpr>& operands() const;  // Sum terms / Prod factors
    const SymExpr& base() const;
    const SymExpr& exponent() const;

    /// Value at x = 2, cached at construction. MagnitudeError if a tower
    /// would exceed 2^24 bits.
    const BigInt& value() const;

    std::string str() const;

    friend bool operator==(const SymExpr& a, const SymExpr& b);
    friend bool operator!=(const SymExpr& a, const SymExpr& b) { return !(a == b); }

private:
    struct Node;
    explicit SymExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

inline SymExpr operator+(const SymExpr& a, const SymExpr& b) { return SymExpr::sum({a, b}); }
inline SymExpr operator*(const SymExpr& a, const SymExpr& b) { return SymExpr::prod({a, b}); }
inline SymExpr operator^(const SymExpr& a, const SymExpr& b) { return SymExpr::pow(a, b); }

BigInt sym_value(const SymExpr& e);

/// Parses the text form ("x^x + x + 1", "x*(x + 1)", "(x + 1)^x", ...).
/// ^ is right-associative and binds tighter than *, which binds tighter
/// than +. Only the literals 1 and x are allowed. MalformedString otherwise.
SymExpr parse_sym(std::string_view text);

/// Replaces x by (+ 1 1) and folds Sum/Prod left-associatively.
Tree expand_x(const SymExpr& e);

/// Hereditary base-2 normal form: sum of x^e over a strictly descending list
/// of distinct exponents, each itself a normal form. The empty list is 0,
/// [0] is 1 and [[0]] is x.
class GoodsteinForm {
public:
    GoodsteinForm() = default;  // zero
    explicit GoodsteinForm(std::vector<GoodsteinForm> exponents);

    static GoodsteinForm zero() { return {}; }
    static GoodsteinForm one();
    static GoodsteinForm x_pow(GoodsteinForm exponent);

    const std::vector<GoodsteinForm>& exponents() const { return exponents_; }
    bool is_zero() const { return exponents_.empty(); }

    BigInt value(std::size_t max_bits = std::size_t{1} << 24) const;
    // Bit length of the value without materializing it; nullopt if the
    // bit length itself does not fit in 64 bits.
    std::optional<std::uint64_t> bit_length() const;

    SymExpr to_sym() const;
    std::string str() const { return to_sym().str(); }

    // Numeric order, decided structurally.
    friend std::strong_ordering operator<=>(const GoodsteinForm& a, const GoodsteinForm& b);
    friend bool operator==(const GoodsteinForm& a, const GoodsteinForm& b);

private:
    std::vector<GoodsteinForm> exponents_;
};

GoodsteinForm encode_goodstein(const BigInt& n);
GoodsteinForm encode_goodstein_nonneg(const BigInt& n);  // accepts 0

/// Normal form of a symbolic expression, computed with g_add/g_mul/g_pow.
GoodsteinForm goodstein_of(const SymExpr& e, std::uint64_t max_bits = std::uint64_t{1} << 20);

GoodsteinForm g_add(const GoodsteinForm& a, const GoodsteinForm& b);
GoodsteinForm g_mul(const GoodsteinForm& a, const GoodsteinForm& b);

/// a^b in normal form by square-and-multiply over the binary digits of b
/// (which are b's exponents). MagnitudeError when the result would need more
/// than `max_bits` bits; powers of x are exempt since x^e ^ b = x^(e*b).
GoodsteinForm g_pow(const GoodsteinForm& a, const GoodsteinForm& b,
                    std::uint64_t max_bits = std::uint64_t{1} << 20);

constexpr unsigned kMaxGoodsteinLevel = 2;
constexpr unsigned kMaxHornerLevel = 3;

/// N_t of the Goodstein set recurrence: start from [1, x], then per level
/// N <- [1] ++ [x^n for n in N] followed by all nonempty subset sums.
/// LevelTooLarge for t > kMaxGoodsteinLevel unless `unsafe`.
std::vector<SymExpr> goodstein_levels(unsigned t, bool unsafe = false);

/// Recursive Horner sets; returns the accumulated list after t rounds.
std::vector<SymExpr> horner_levels(unsigned t, bool unsafe = false);

SymExpr encode_horner(const BigInt& n);

}  // namespace ff
