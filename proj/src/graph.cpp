#include "formula_forge/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "formula_forge/enumeration.hpp"
#include "formula_forge/errors.hpp"

namespace ff {

namespace {

using Out = std::vector<Neighbor>;

bool has(const Tree& t, Gate g) { return !t.is_leaf() && t.gate() == g; }

Tree mk(Gate g, const Tree& l, const Tree& r) { return Tree::node(g, l, r); }

void root_rewrites(const Tree& t, Out& out) {
    if (t.is_leaf()) return;
    const Gate g = t.gate();
    const Tree& l = t.left();
    const Tree& r = t.right();
    auto push = [&](Tree x, RewriteRule rule) { out.push_back({std::move(x), rule}); };

    if (g == Gate::Add || g == Gate::Mul) {
        const auto comm = g == Gate::Add ? RewriteRule::CommAdd : RewriteRule::CommMul;
        const auto assoc = g == Gate::Add ? RewriteRule::AssocAdd : RewriteRule::AssocMul;
        push(mk(g, r, l), comm);
        if (has(l, g)) push(mk(g, l.left(), mk(g, l.right(), r)), assoc);
        if (has(r, g)) push(mk(g, mk(g, l, r.left()), r.right()), assoc);
    }
    switch (g) {
        case Gate::Mul:
            // f*(g+h) -> f*g + f*h
            if (has(r, Gate::Add))
                push(mk(Gate::Add, mk(Gate::Mul, l, r.left()), mk(Gate::Mul, l, r.right())),
                     RewriteRule::DistMulOverAdd);
            if (has(l, Gate::Pow) && has(r, Gate::Pow)) {
                // f^g * f^h -> f^(g+h)
                if (l.left() == r.left())
                    push(mk(Gate::Pow, l.left(), mk(Gate::Add, l.right(), r.right())),
                         RewriteRule::DistPowOverAddExp);
                // f^h * g^h -> (f*g)^h
                if (l.right() == r.right())
                    push(mk(Gate::Pow, mk(Gate::Mul, l.left(), r.left()), l.right()),
                         RewriteRule::DistPowOverMulBase);
            }
            break;
        case Gate::Add:
            // f*g + f*h -> f*(g+h)
            if (has(l, Gate::Mul) && has(r, Gate::Mul) && l.left() == r.left())
                push(mk(Gate::Mul, l.left(), mk(Gate::Add, l.right(), r.right())),
                     RewriteRule::DistMulOverAdd);
            break;
        case Gate::Pow:
            if (has(r, Gate::Add))
                push(mk(Gate::Mul, mk(Gate::Pow, l, r.left()), mk(Gate::Pow, l, r.right())),
                     RewriteRule::DistPowOverAddExp);
            if (has(l, Gate::Mul))
                push(mk(Gate::Mul, mk(Gate::Pow, l.left(), r), mk(Gate::Pow, l.right(), r)),
                     RewriteRule::DistPowOverMulBase);
            break;
    }
}

void all_rewrites(const Tree& t, Out& out) {
    if (t.is_leaf()) return;
    root_rewrites(t, out);
    Out sub;
    all_rewrites(t.left(), sub);
    for (auto& s : sub) out.push_back({mk(t.gate(), s.tree, t.right()), s.rule});
    sub.clear();
    all_rewrites(t.right(), sub);
    for (auto& s : sub) out.push_back({mk(t.gate(), t.left(), s.tree), s.rule});
}

struct Dsu {
    std::vector<std::size_t> parent;
    explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

std::string_view to_string(RewriteRule r) {
    switch (r) {
        case RewriteRule::CommAdd: return "CommAdd";
        case RewriteRule::CommMul: return "CommMul";
        case RewriteRule::AssocAdd: return "AssocAdd";
        case RewriteRule::AssocMul: return "AssocMul";
        case RewriteRule::DistMulOverAdd: return "DistMulOverAdd";
        case RewriteRule::DistPowOverAddExp: return "DistPowOverAddExp";
        case RewriteRule::DistPowOverMulBase: return "DistPowOverMulBase";
    }
    return "?";
}

std::vector<Neighbor> neighbors(const Tree& t, std::uint64_t n) {
    Out raw;
    all_rewrites(t, raw);
    const std::size_t max_size = n == 0 ? 0 : 2 * n - 1;
    std::vector<std::pair<std::string, Neighbor>> keyed;
    for (auto& nb : raw) {
        if (nb.tree.size() > max_size || !is_strict(nb.tree) || nb.tree == t) continue;
        keyed.emplace_back(to_prefix(nb.tree), std::move(nb));
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first < b.first : a.second.rule < b.second.rule;
    });
    keyed.erase(std::unique(keyed.begin(), keyed.end(),
                            [](const auto& a, const auto& b) {
                                return a.first == b.first && a.second.rule == b.second.rule;
                            }),
                keyed.end());
    std::vector<Neighbor> out;
    out.reserve(keyed.size());
    for (auto& [_, nb] : keyed) out.push_back(std::move(nb));
    return out;
}

std::size_t Arithmeticahedron::component_count() const {
    Dsu dsu(vertices.size());
    for (const auto& e : edges) dsu.unite(e.u, e.v);
    std::size_t count = 0;
    for (std::size_t i = 0; i < vertices.size(); ++i) count += dsu.find(i) == i;
    return count;
}

std::map<std::size_t, std::size_t> Arithmeticahedron::degree_histogram() const {
    std::vector<std::size_t> degree(vertices.size(), 0);
    for (const auto& e : edges) {
        ++degree[e.u];
        ++degree[e.v];
    }
    std::map<std::size_t, std::size_t> hist;
    for (auto d : degree) ++hist[d];
    return hist;
}

std::string Arithmeticahedron::to_dot() const {
    std::ostringstream os;
    os << "graph G" << n << " {\n";
    for (std::size_t i = 0; i < labels.size(); ++i)
        os << "  v" << i << " [label=\"" << labels[i] << "\"];\n";
    for (const auto& e : edges) {
        os << "  v" << e.u << " -- v" << e.v << " [label=\"";
        for (std::size_t k = 0; k < e.rules.size(); ++k) os << (k ? "," : "") << to_string(e.rules[k]);
        os << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

Arithmeticahedron build_graph(std::int64_t n, bool unsafe, kernels::Exec exec) {
    if (n <= 0) throw DomainError("graph needs n >= 1");
    if (static_cast<std::uint64_t>(n) > kMaxGraphN && !unsafe)
        throw SizeGuard("graph for n = " + std::to_string(n) + " exceeds the limit of " +
                        std::to_string(kMaxGraphN));
    Arithmeticahedron g;
    g.n = static_cast<std::uint64_t>(n);
    auto trees = enumerate_ame(n);
    std::vector<std::pair<std::string, Tree>> keyed;
    keyed.reserve(trees.size());
    for (auto& t : trees) keyed.emplace_back(to_prefix(t), std::move(t));
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::unordered_map<std::string, std::size_t> index;
    for (auto& [label, t] : keyed) {
        index.emplace(label, g.vertices.size());
        g.labels.push_back(label);
        g.vertices.push_back(std::move(t));
    }

    const auto count = static_cast<std::int64_t>(g.vertices.size());
    std::vector<std::vector<Neighbor>> adjacency(g.vertices.size());
    if (exec == kernels::Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::int64_t i = 0; i < count; ++i) adjacency[i] = neighbors(g.vertices[i], g.n);
    } else {
        for (std::int64_t i = 0; i < count; ++i) adjacency[i] = neighbors(g.vertices[i], g.n);
    }

    std::map<std::pair<std::size_t, std::size_t>, std::vector<RewriteRule>> merged;
    for (std::size_t u = 0; u < adjacency.size(); ++u) {
        for (const auto& nb : adjacency[u]) {
            auto it = index.find(to_prefix(nb.tree));
            if (it == index.end())
                throw std::logic_error("rewrite left the vertex set: " + to_prefix(nb.tree));
            const auto v = it->second;
            if (v < u) continue;  // each pair is seen from both ends
            auto& rules = merged[{u, v}];
            if (std::find(rules.begin(), rules.end(), nb.rule) == rules.end()) rules.push_back(nb.rule);
        }
    }
    for (auto& [key, rules] : merged) {
        std::sort(rules.begin(), rules.end());
        g.edges.push_back({key.first, key.second, std::move(rules)});
    }
    return g;
}

}  // namespace ff
