#include "formula_forge/ast.hpp"

#include <algorithm>
#include <vector>

#include "formula_forge/errors.hpp"

namespace ff {

Tree Tree::node(Gate gate, Tree left, Tree right) {
    auto s = 1 + left.size() + right.size();
    auto d = 1 + std::max(left.depth(), right.depth());
    return Tree(std::make_shared<const Node>(Node{gate, std::move(left), std::move(right), s, d}));
}

Gate Tree::gate() const {
    if (!node_) throw DomainError("leaf has no gate");
    return node_->gate;
}

const Tree& Tree::left() const {
    if (!node_) throw DomainError("leaf has no children");
    return node_->left;
}

const Tree& Tree::right() const {
    if (!node_) throw DomainError("leaf has no children");
    return node_->right;
}

std::size_t Tree::size() const noexcept { return node_ ? node_->size : 1; }
std::size_t Tree::depth() const noexcept { return node_ ? node_->depth : 0; }

bool operator==(const Tree& a, const Tree& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    if (a.node_->gate != b.node_->gate || a.node_->size != b.node_->size) return false;
    return a.node_->left == b.node_->left && a.node_->right == b.node_->right;
}

BigInt eval(const Tree& t, std::size_t max_bits) {
    if (t.is_leaf()) return 1;
    BigInt l = eval(t.left(), max_bits);
    BigInt r = eval(t.right(), max_bits);
    switch (t.gate()) {
    case Gate::Add:
        return l + r;
    case Gate::Mul:
        return l * r;
    case Gate::Pow: {
        if (l == 1) return 1;
        if (r > max_bits) throw MagnitudeError("formula value exceeds the bit budget");
        auto e = r.convert_to<unsigned long>();
        auto bits = msb(l) + 1;
        if (static_cast<double>(bits) * static_cast<double>(e) > static_cast<double>(max_bits) + 64)
            throw MagnitudeError("formula value exceeds the bit budget");
        return boost::multiprecision::pow(l, static_cast<unsigned>(e));
    }
    }
    return 0;
}

namespace {

void emit_prefix(const Tree& t, std::string& out) {
    if (t.is_leaf()) {
        out.push_back('1');
        return;
    }
    out.push_back(gate_symbol(t.gate()));
    emit_prefix(t.left(), out);
    emit_prefix(t.right(), out);
}

Gate gate_from_symbol(char c, std::size_t pos) {
    switch (c) {
    case '+':
        return Gate::Add;
    case '*':
        return Gate::Mul;
    case '^':
        return Gate::Pow;
    case '-':
        throw MalformedString("token '-' at position " + std::to_string(pos) +
                              ": the (-1) leaf is not supported");
    default:
        throw MalformedString("unknown symbol '" + std::string(1, c) + "' at position " +
                              std::to_string(pos));
    }
}

}  // namespace

std::string to_prefix(const Tree& t) {
    std::string out;
    out.reserve(t.size());
    emit_prefix(t, out);
    return out;
}

std::string to_postfix(const Tree& t) {
    auto s = to_prefix(t);
    std::reverse(s.begin(), s.end());
    return s;
}

Tree parse_prefix(std::string_view s) {
    if (s.empty()) throw MalformedString("empty formula string");
    // Scan right to left: operands are pushed, a gate pops (left, right).
    std::vector<Tree> stack;
    for (std::size_t k = s.size(); k-- > 0;) {
        char c = s[k];
        if (c == '1') {
            stack.push_back(Tree::leaf());
            continue;
        }
        Gate g = gate_from_symbol(c, k);
        if (stack.size() < 2)
            throw MalformedString("operator '" + std::string(1, c) + "' at position " +
                                  std::to_string(k) + " lacks operands");
        Tree left = std::move(stack.back());
        stack.pop_back();
        Tree right = std::move(stack.back());
        stack.pop_back();
        stack.push_back(Tree::node(g, std::move(left), std::move(right)));
    }
    if (stack.size() != 1)
        throw MalformedString("leftover tokens: " + std::to_string(stack.size()) + " formulas");
    return stack.back();
}

Tree parse_postfix(std::string_view s) {
    // The postfix string is the reversed prefix string.
    std::string rev(s.rbegin(), s.rend());
    try {
        return parse_prefix(rev);
    } catch (const MalformedString&) {
        // Re-scan forwards so positions in the message refer to the input.
        for (std::size_t k = 0; k < s.size(); ++k)
            if (s[k] != '1') gate_from_symbol(s[k], k);
        throw;
    }
}

nlohmann::json to_json(const Tree& t) {
    if (t.is_leaf()) return 1;
    return nlohmann::json::array(
        {std::string(1, gate_symbol(t.gate())), to_json(t.left()), to_json(t.right())});
}

Tree tree_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) {
        if (j.get<long long>() != 1) throw MalformedString("leaf must be 1");
        return Tree::leaf();
    }
    if (!j.is_array() || j.size() != 3 || !j[0].is_string())
        throw MalformedString("expected [gate, left, right]");
    auto sym = j[0].get<std::string>();
    if (sym.size() != 1) throw MalformedString("gate must be one of + * ^");
    return Tree::node(gate_from_symbol(sym[0], 0), tree_from_json(j[1]), tree_from_json(j[2]));
}

bool is_strict(const Tree& t) {
    if (t.is_leaf()) return true;
    if (t.gate() != Gate::Add && (t.left().is_leaf() || t.right().is_leaf())) return false;
    return is_strict(t.left()) && is_strict(t.right());
}

std::size_t TreeHash::operator()(const Tree& t) const {
    return std::hash<std::string>{}(to_prefix(t));
}

bool TreeLess::operator()(const Tree& a, const Tree& b) const {
    return to_prefix(a) < to_prefix(b);
}

}  // namespace ff
