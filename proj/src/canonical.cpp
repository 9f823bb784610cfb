#include "formula_forge/canonical.hpp"

#include <algorithm>
#include <cctype>

#include "formula_forge/errors.hpp"

namespace ff {

namespace {
constexpr std::size_t kSymValueBits = std::size_t{1} << 24;
}  // namespace

struct SymExpr::Node {
    Kind kind;
    std::vector<SymExpr> operands;  // Sum/Prod elements, or {base, exponent}
    BigInt value;
};

namespace {

BigInt power_value(const BigInt& base, const BigInt& exponent) {
    if (base == 1 || exponent == 0) return 1;
    if (exponent > kSymValueBits) throw MagnitudeError("symbolic expression value exceeds 2^24 bits");
    auto e = exponent.convert_to<unsigned long>();
    auto bits = msb(base) + 1;
    if (static_cast<double>(bits - 1) * static_cast<double>(e) > static_cast<double>(kSymValueBits))
        throw MagnitudeError("symbolic expression value exceeds 2^24 bits");
    return boost::multiprecision::pow(base, static_cast<unsigned>(e));
}

}  // namespace

SymExpr::SymExpr() : SymExpr(one()) {}

SymExpr SymExpr::one() {
    static const SymExpr value(std::make_shared<const Node>(Node{Kind::One, {}, 1}));
    return value;
}

SymExpr SymExpr::x() {
    static const SymExpr value(std::make_shared<const Node>(Node{Kind::X, {}, 2}));
    return value;
}

SymExpr SymExpr::sum(std::vector<SymExpr> terms) {
    if (terms.empty()) throw DomainError("empty sum");
    std::vector<SymExpr> flat;
    for (auto& t : terms) {
        if (t.kind() == Kind::Sum)
            flat.insert(flat.end(), t.operands().begin(), t.operands().end());
        else
            flat.push_back(std::move(t));
    }
    if (flat.size() == 1) return flat.front();
    std::stable_sort(flat.begin(), flat.end(),
                     [](const SymExpr& a, const SymExpr& b) { return a.value() > b.value(); });
    BigInt v = 0;
    for (const auto& t : flat) v += t.value();
    return SymExpr(std::make_shared<const Node>(Node{Kind::Sum, std::move(flat), std::move(v)}));
}

SymExpr SymExpr::prod(std::vector<SymExpr> factors) {
    if (factors.empty()) throw DomainError("empty product");
    std::vector<SymExpr> flat;
    for (auto& f : factors) {
        if (f.kind() == Kind::Prod)
            flat.insert(flat.end(), f.operands().begin(), f.operands().end());
        else
            flat.push_back(std::move(f));
    }
    if (flat.size() == 1) return flat.front();
    BigInt v = 1;
    for (const auto& f : flat) v *= f.value();
    return SymExpr(std::make_shared<const Node>(Node{Kind::Prod, std::move(flat), std::move(v)}));
}

SymExpr SymExpr::pow(SymExpr base, SymExpr exponent) {
    if (exponent.kind() == Kind::One) return base;
    BigInt v = power_value(base.value(), exponent.value());
    return SymExpr(std::make_shared<const Node>(
        Node{Kind::Pow, {std::move(base), std::move(exponent)}, std::move(v)}));
}

SymExpr::Kind SymExpr::kind() const { return node_->kind; }
const std::vector<SymExpr>& SymExpr::operands() const { return node_->operands; }

const SymExpr& SymExpr::base() const {
    if (node_->kind != Kind::Pow) throw DomainError("not a power");
    return node_->operands[0];
}

const SymExpr& SymExpr::exponent() const {
    if (node_->kind != Kind::Pow) throw DomainError("not a power");
    return node_->operands[1];
}

const BigInt& SymExpr::value() const { return node_->value; }

bool operator==(const SymExpr& a, const SymExpr& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->kind != b.node_->kind || a.node_->value != b.node_->value) return false;
    return a.node_->operands == b.node_->operands;
}

std::string SymExpr::str() const {
    auto atom = [](const SymExpr& e) { return e.kind() == Kind::One || e.kind() == Kind::X; };
    switch (kind()) {
    case Kind::One:
        return "1";
    case Kind::X:
        return "x";
    case Kind::Sum: {
        std::string out;
        for (std::size_t i = 0; i < operands().size(); ++i) {
            if (i) out += " + ";
            out += operands()[i].str();
        }
        return out;
    }
    case Kind::Prod: {
        std::string out;
        for (std::size_t i = 0; i < operands().size(); ++i) {
            if (i) out += "*";
            const auto& f = operands()[i];
            out += f.kind() == Kind::Sum ? "(" + f.str() + ")" : f.str();
        }
        return out;
    }
    case Kind::Pow: {
        const auto& b = base();
        const auto& e = exponent();
        std::string out = atom(b) ? b.str() : "(" + b.str() + ")";
        out += "^";
        out += atom(e) ? e.str() : "(" + e.str() + ")";
        return out;
    }
    }
    return {};
}

BigInt sym_value(const SymExpr& e) { return e.value(); }

namespace {

class SymParser {
public:
    explicit SymParser(std::string_view text) : text_(text) {}

    SymExpr parse() {
        auto e = expr();
        skip();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw MalformedString("symbolic expression, position " + std::to_string(pos_) + ": " + what);
    }

    SymExpr expr() {
        std::vector<SymExpr> terms{term()};
        while (accept('+')) terms.push_back(term());
        return terms.size() == 1 ? terms.front() : SymExpr::sum(std::move(terms));
    }
    SymExpr term() {
        std::vector<SymExpr> factors{factor()};
        while (accept('*')) factors.push_back(factor());
        return factors.size() == 1 ? factors.front() : SymExpr::prod(std::move(factors));
    }
    SymExpr factor() {
        auto base = primary();
        if (accept('^')) return SymExpr::pow(base, factor());
        return base;
    }
    SymExpr primary() {
        skip();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '1') {
            ++pos_;
            return SymExpr::one();
        }
        if (c == 'x') {
            ++pos_;
            return SymExpr::x();
        }
        if (c == '(') {
            ++pos_;
            auto e = expr();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        fail("unexpected '" + std::string(1, c) + "' (only 1, x, +, *, ^ and parentheses)");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

SymExpr parse_sym(std::string_view text) { return SymParser(text).parse(); }

Tree expand_x(const SymExpr& e) {
    switch (e.kind()) {
    case SymExpr::Kind::One:
        return Tree::leaf();
    case SymExpr::Kind::X:
        return Tree::node(Gate::Add, Tree::leaf(), Tree::leaf());
    case SymExpr::Kind::Sum:
    case SymExpr::Kind::Prod: {
        Gate g = e.kind() == SymExpr::Kind::Sum ? Gate::Add : Gate::Mul;
        Tree acc = expand_x(e.operands().front());
        for (std::size_t i = 1; i < e.operands().size(); ++i)
            acc = Tree::node(g, acc, expand_x(e.operands()[i]));
        return acc;
    }
    case SymExpr::Kind::Pow:
        return Tree::node(Gate::Pow, expand_x(e.base()), expand_x(e.exponent()));
    }
    return Tree::leaf();
}

// ---------------------------------------------------------------------------
// Goodstein forms

namespace {

// Adds x^e to a descending exponent list, carrying x^e + x^e -> x^(e+1).
void insert_power(std::vector<GoodsteinForm>& exps, GoodsteinForm e) {
    for (;;) {
        auto it = std::lower_bound(exps.begin(), exps.end(), e,
                                   [](const GoodsteinForm& a, const GoodsteinForm& b) { return a > b; });
        if (it == exps.end() || *it != e) {
            exps.insert(it, std::move(e));
            return;
        }
        exps.erase(it);
        e = g_add(e, GoodsteinForm::one());
    }
}

}  // namespace

GoodsteinForm::GoodsteinForm(std::vector<GoodsteinForm> exponents) {
    for (auto& e : exponents) insert_power(exponents_, std::move(e));
}

GoodsteinForm GoodsteinForm::one() {
    GoodsteinForm f;
    f.exponents_.emplace_back();
    return f;
}

GoodsteinForm GoodsteinForm::x_pow(GoodsteinForm exponent) {
    GoodsteinForm f;
    f.exponents_.push_back(std::move(exponent));
    return f;
}

std::strong_ordering operator<=>(const GoodsteinForm& a, const GoodsteinForm& b) {
    const auto& ea = a.exponents_;
    const auto& eb = b.exponents_;
    for (std::size_t i = 0; i < ea.size() && i < eb.size(); ++i) {
        auto c = ea[i] <=> eb[i];
        if (c != std::strong_ordering::equal) return c;
    }
    return ea.size() <=> eb.size();
}

bool operator==(const GoodsteinForm& a, const GoodsteinForm& b) { return a.exponents_ == b.exponents_; }

BigInt GoodsteinForm::value(std::size_t max_bits) const {
    BigInt v = 0;
    for (const auto& e : exponents_) {
        BigInt p = e.value(max_bits);
        if (p >= max_bits) throw MagnitudeError("Goodstein form value exceeds the bit budget");
        bit_set(v, p.convert_to<unsigned long>());
    }
    return v;
}

std::optional<std::uint64_t> GoodsteinForm::bit_length() const {
    if (exponents_.empty()) return 0;
    const auto& top = exponents_.front();
    auto top_bits = top.bit_length();
    if (!top_bits || *top_bits > 62) return std::nullopt;
    auto v = top.value();
    if (v >= (BigInt(1) << 63)) return std::nullopt;
    return v.convert_to<std::uint64_t>() + 1;
}

SymExpr GoodsteinForm::to_sym() const {
    if (exponents_.empty()) throw DomainError("the zero form has no symbolic encoding");
    std::vector<SymExpr> terms;
    for (const auto& e : exponents_) {
        if (e.is_zero())
            terms.push_back(SymExpr::one());
        else
            terms.push_back(SymExpr::pow(SymExpr::x(), e.to_sym()));
    }
    return terms.size() == 1 ? terms.front() : SymExpr::sum(std::move(terms));
}

GoodsteinForm encode_goodstein_nonneg(const BigInt& n) {
    if (n < 0) throw DomainError("cannot encode a negative integer");
    GoodsteinForm f;
    if (n == 0) return f;
    std::vector<GoodsteinForm> exps;
    for (auto bit = msb(n) + 1; bit-- > 0;)
        if (bit_test(n, bit)) exps.push_back(encode_goodstein_nonneg(BigInt(bit)));
    // Already distinct and descending; the constructor keeps them as is.
    return GoodsteinForm(std::move(exps));
}

GoodsteinForm encode_goodstein(const BigInt& n) {
    if (n <= 0) throw DomainError("n must be a positive integer");
    return encode_goodstein_nonneg(n);
}

GoodsteinForm g_add(const GoodsteinForm& a, const GoodsteinForm& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return b;
    std::vector<GoodsteinForm> exps = a.exponents();
    for (const auto& e : b.exponents()) insert_power(exps, e);
    return GoodsteinForm(std::move(exps));
}

GoodsteinForm g_mul(const GoodsteinForm& a, const GoodsteinForm& b) {
    std::vector<GoodsteinForm> exps;
    for (const auto& ea : a.exponents())
        for (const auto& eb : b.exponents()) insert_power(exps, g_add(ea, eb));
    return GoodsteinForm(std::move(exps));
}

GoodsteinForm g_pow(const GoodsteinForm& a, const GoodsteinForm& b, std::uint64_t max_bits) {
    if (b.is_zero()) return GoodsteinForm::one();
    if (a.is_zero()) return GoodsteinForm{};
    if (a == GoodsteinForm::one()) return a;
    if (a.exponents().size() == 1) return GoodsteinForm::x_pow(g_mul(a.exponents().front(), b));

    // a >= 3 here, so a^b has at least (bits(a) - 1) * b + 1 bits.
    auto a_bits = a.bit_length();
    auto b_bits = b.bit_length();
    if (!a_bits || !b_bits || *b_bits > 40)
        throw MagnitudeError("power exceeds the bit budget of " + std::to_string(max_bits) + " bits");
    auto b_value = b.value().convert_to<std::uint64_t>();
    if (static_cast<long double>(*a_bits - 1) * b_value > static_cast<long double>(max_bits))
        throw MagnitudeError("power exceeds the bit budget of " + std::to_string(max_bits) + " bits");

    // b = sum of 2^d over its digits d; a^b = prod a^(2^d).
    std::vector<std::uint64_t> digits;
    for (const auto& e : b.exponents()) digits.push_back(e.value().convert_to<std::uint64_t>());
    std::sort(digits.begin(), digits.end());
    GoodsteinForm result = GoodsteinForm::one();
    GoodsteinForm square = a;
    std::uint64_t level = 0;
    for (auto d : digits) {
        for (; level < d; ++level) square = g_mul(square, square);
        result = g_mul(result, square);
    }
    return result;
}

GoodsteinForm goodstein_of(const SymExpr& e, std::uint64_t max_bits) {
    switch (e.kind()) {
    case SymExpr::Kind::One:
        return GoodsteinForm::one();
    case SymExpr::Kind::X:
        return GoodsteinForm::x_pow(GoodsteinForm::one());
    case SymExpr::Kind::Sum: {
        GoodsteinForm acc;
        for (const auto& t : e.operands()) acc = g_add(acc, goodstein_of(t, max_bits));
        return acc;
    }
    case SymExpr::Kind::Prod: {
        GoodsteinForm acc = GoodsteinForm::one();
        for (const auto& f : e.operands()) acc = g_mul(acc, goodstein_of(f, max_bits));
        return acc;
    }
    case SymExpr::Kind::Pow:
        return g_pow(goodstein_of(e.base(), max_bits), goodstein_of(e.exponent(), max_bits), max_bits);
    }
    return {};
}

// ---------------------------------------------------------------------------
// Level sets

std::vector<SymExpr> goodstein_levels(unsigned t, bool unsafe) {
    if (t > kMaxGoodsteinLevel && !unsafe)
        throw LevelTooLarge("Goodstein level " + std::to_string(t) + " exceeds the limit of " +
                            std::to_string(kMaxGoodsteinLevel) + " (level 3 has 2^257-1 elements)");
    std::vector<SymExpr> level{SymExpr::one(), SymExpr::x()};
    for (unsigned it = 0; it < t; ++it) {
        std::vector<SymExpr> generators{SymExpr::one()};
        for (const auto& n : level) generators.push_back(SymExpr::pow(SymExpr::x(), n));
        if (generators.size() > 24)
            throw SizeGuard("Goodstein level " + std::to_string(it + 1) + " would have 2^" +
                            std::to_string(generators.size()) + "-1 elements");
        std::vector<SymExpr> next;
        const std::uint64_t subsets = std::uint64_t{1} << generators.size();
        next.reserve(subsets - 1);
        for (std::uint64_t mask = 1; mask < subsets; ++mask) {
            std::vector<SymExpr> terms;
            for (std::size_t i = 0; i < generators.size(); ++i)
                if (mask >> i & 1) terms.push_back(generators[i]);
            next.push_back(terms.size() == 1 ? terms.front() : SymExpr::sum(std::move(terms)));
        }
        level = std::move(next);
    }
    return level;
}

std::vector<SymExpr> horner_levels(unsigned t, bool unsafe) {
    if (t > kMaxHornerLevel && !unsafe)
        throw LevelTooLarge("Horner level " + std::to_string(t) + " exceeds the limit of " +
                            std::to_string(kMaxHornerLevel));
    const auto one = SymExpr::one();
    const auto x = SymExpr::x();
    std::vector<SymExpr> all{one, x, x + one, x ^ x};
    std::vector<SymExpr> even{x ^ x};
    std::vector<SymExpr> odd{x + one};
    std::vector<SymExpr> powers{x, x ^ x};
    for (unsigned it = 0; it < t; ++it) {
        std::vector<SymExpr> next_even;
        for (const auto& m : powers)
            for (const auto& n : odd) next_even.push_back(m * n);
        std::vector<SymExpr> towers;
        for (const auto& m : even) towers.push_back(x ^ m);
        for (const auto& m : odd) towers.push_back(x ^ m);
        next_even.insert(next_even.end(), towers.begin(), towers.end());
        std::vector<SymExpr> next_odd;
        for (const auto& n : even) next_odd.push_back(n + one);
        powers.insert(powers.end(), towers.begin(), towers.end());
        all.insert(all.end(), next_even.begin(), next_even.end());
        all.insert(all.end(), next_odd.begin(), next_odd.end());
        even = std::move(next_even);
        odd = std::move(next_odd);
    }
    return all;
}

SymExpr encode_horner(const BigInt& n) {
    if (n <= 0) throw DomainError("n must be a positive integer");
    if (n == 1) return SymExpr::one();
    if (bit_test(n, 0)) return SymExpr::sum({encode_horner(n - 1), SymExpr::one()});
    auto a = lsb(n);
    BigInt odd = n >> a;
    auto power = SymExpr::pow(SymExpr::x(), encode_horner(BigInt(a)));
    if (odd == 1) return power;
    return SymExpr::prod({power, encode_horner(odd)});
}

}  // namespace ff
