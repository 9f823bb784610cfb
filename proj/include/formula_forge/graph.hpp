#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "formula_forge/ast.hpp"
#include "formula_forge/kernels.hpp"

namespace ff {

enum class RewriteRule {
    CommAdd,             // f+g <-> g+f
    CommMul,             // f*g <-> g*f
    AssocAdd,            // (f+g)+h <-> f+(g+h)
    AssocMul,            // (f*g)*h <-> f*(g*h)
    DistMulOverAdd,      // f*(g+h) <-> f*g + f*h
    DistPowOverAddExp,   // f^(g+h) <-> f^g * f^h
    DistPowOverMulBase,  // (f*g)^h <-> f^h * g^h
};

std::string_view to_string(RewriteRule r);

struct Neighbor {
    Tree tree;
    RewriteRule rule;
};

/// Every tree reachable from t by one rule application (either direction)
/// at one position, keeping only strict trees of size <= 2n-1 that differ
/// from t. Sorted by (prefix string, rule), duplicates removed.
std::vector<Neighbor> neighbors(const Tree& t, std::uint64_t n);

constexpr std::uint64_t kMaxGraphN = 9;

/// The arithmeticahedron G_n. Vertices are the strict formulas of value n,
/// sorted by prefix string; an edge joins two vertices related by one
/// rewrite. Multiple rules between the same pair are kept as separate
/// labels on one edge.
struct Arithmeticahedron {
    std::uint64_t n = 0;
    std::vector<Tree> vertices;
    std::vector<std::string> labels;  // prefix strings, parallel to vertices
    struct Edge {
        std::size_t u;
        std::size_t v;  // u < v
        std::vector<RewriteRule> rules;
    };
    std::vector<Edge> edges;

    std::size_t component_count() const;
    std::map<std::size_t, std::size_t> degree_histogram() const;
    std::string to_dot() const;
};

/// SizeGuard for n > kMaxGraphN unless `unsafe`.
Arithmeticahedron build_graph(std::int64_t n, bool unsafe = false,
                              kernels::Exec exec = kernels::Exec::Parallel);

}  // namespace ff
