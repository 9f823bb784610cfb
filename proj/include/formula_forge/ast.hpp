#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include <json.hpp>

#include "formula_forge/bigint.hpp"

namespace ff {

enum class Gate : char { Add = '+', Mul = '*', Pow = '^' };

inline char gate_symbol(Gate g) { return static_cast<char>(g); }

/// Immutable binary formula tree over {+, *, ^} with unit leaves.
///
/// Nodes are shared between trees, so copies are cheap and enumeration can
/// build many trees that reuse the same subtrees. For Pow the left child is
/// the base and the right child the exponent.
class Tree {
public:
    Tree() = default;  // the leaf 1

    static Tree leaf() { return Tree{}; }
    static Tree node(Gate gate, Tree left, Tree right);

    bool is_leaf() const noexcept { return node_ == nullptr; }
    Gate gate() const;
    const Tree& left() const;
    const Tree& right() const;

    // Cached at construction.
    std::size_t size() const noexcept;
    std::size_t depth() const noexcept;
    std::size_t leaf_count() const noexcept { return (size() + 1) / 2; }

    friend bool operator==(const Tree& a, const Tree& b);
    friend bool operator!=(const Tree& a, const Tree& b) { return !(a == b); }

private:
    struct Node;
    explicit Tree(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct Tree::Node {
    Gate gate;
    Tree left;
    Tree right;
    std::size_t size;
    std::size_t depth;
};

/// Value of the formula. Throws MagnitudeError when an exponent does not fit
/// in 64 bits or the result would exceed `max_bits`.
BigInt eval(const Tree& t, std::size_t max_bits = std::size_t{1} << 24);

inline std::size_t size(const Tree& t) { return t.size(); }
inline std::size_t depth(const Tree& t) { return t.depth(); }

std::string to_prefix(const Tree& t);
std::string to_postfix(const Tree& t);

/// Inverse of to_prefix. Throws MalformedString on unknown symbols (including
/// the reserved '-' of the non-monotone alphabet), underflow, or leftovers.
Tree parse_prefix(std::string_view s);
Tree parse_postfix(std::string_view s);

/// Bracket notation: 1 for the leaf, ["+", left, right] for a node.
nlohmann::json to_json(const Tree& t);
Tree tree_from_json(const nlohmann::json& j);

/// Strict formulas have no 1 operand under * or ^.
bool is_strict(const Tree& t);

struct TreeHash {
    std::size_t operator()(const Tree& t) const;
};

/// Total order on trees (prefix-string order); used for std::set/map keys.
struct TreeLess {
    bool operator()(const Tree& a, const Tree& b) const;
};

}  // namespace ff
