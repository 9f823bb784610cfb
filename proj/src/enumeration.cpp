#include "formula_forge/enumeration.hpp"

#include "formula_forge/errors.hpp"

namespace ff {

namespace {

// Every (left, right) pair of two streams, left outer; right is regenerated
// for each left tree.
template <class LeftWalk, class RightWalk>
bool cross(Gate gate, LeftWalk&& left, RightWalk&& right, const TreeVisitor& visit) {
    return left([&](const Tree& l) {
        return right([&](const Tree& r) { return visit(Tree::node(gate, l, r)); });
    });
}

}  // namespace

bool Enumerator::walk(GateSet set, Kind kind, std::uint64_t n, const TreeVisitor& visit) {
    if (cached_) return walk_cached(set, kind, n, visit);

    auto sub = [&](Kind k, std::uint64_t m) {
        return [this, set, k, m](const TreeVisitor& v) { return walk(set, k, m, v); };
    };
    if (n == 1) {
        if (kind == Kind::MulRoot || kind == Kind::PowRoot) return true;
        return visit(Tree::leaf());
    }
    switch (kind) {
    case Kind::Add:
        for (std::uint64_t i = 1; i < n; ++i)
            if (!cross(Gate::Add, sub(Kind::Add, i), sub(Kind::Add, n - i), visit)) return false;
        return true;
    case Kind::Lop:
        for (std::uint64_t i = 1; i <= n / 2; ++i)
            if (!cross(Gate::Add, sub(Kind::Lop, n - i), sub(Kind::Lop, i), visit)) return false;
        return true;
    case Kind::AddRoot:
        for (std::uint64_t i = 1; i < n; ++i)
            if (!cross(Gate::Add, sub(Kind::All, i), sub(Kind::All, n - i), visit)) return false;
        return true;
    case Kind::MulRoot:
        for (std::uint64_t d = 2; d <= n / 2; ++d)
            if (n % d == 0 && !cross(Gate::Mul, sub(Kind::All, d), sub(Kind::All, n / d), visit))
                return false;
        return true;
    case Kind::PowRoot:
        for (unsigned i = 2; i <= floor_log2(n); ++i)
            if (auto b = exact_root(n, i))
                if (!cross(Gate::Pow, sub(Kind::All, *b), sub(Kind::All, i), visit)) return false;
        return true;
    case Kind::All:
        if (set == GateSet::A) return walk(set, Kind::Add, n, visit);
        if (!walk(set, Kind::AddRoot, n, visit)) return false;
        if (!walk(set, Kind::MulRoot, n, visit)) return false;
        if (set == GateSet::AME) return walk(set, Kind::PowRoot, n, visit);
        return true;
    }
    return true;
}

const std::vector<Tree>& Enumerator::cached_list(GateSet set, Kind kind, std::uint64_t n) {
    auto key = std::make_tuple(static_cast<int>(set), static_cast<int>(kind), n);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    // std::map nodes are stable, so references to memoized children stay
    // valid while this entry is being built.
    auto sub = [this, set](Kind k, std::uint64_t m) {
        return [this, set, k, m](const TreeVisitor& v) {
            for (const auto& t : cached_list(set, k, m))
                if (!v(t)) return false;
            return true;
        };
    };
    std::vector<Tree> out;
    auto push = [&out](const Tree& t) {
        out.push_back(t);
        return true;
    };
    if (n == 1) {
        if (kind != Kind::MulRoot && kind != Kind::PowRoot) out.push_back(Tree::leaf());
    } else {
        switch (kind) {
        case Kind::Add:
            for (std::uint64_t i = 1; i < n; ++i)
                cross(Gate::Add, sub(Kind::Add, i), sub(Kind::Add, n - i), push);
            break;
        case Kind::Lop:
            for (std::uint64_t i = 1; i <= n / 2; ++i)
                cross(Gate::Add, sub(Kind::Lop, n - i), sub(Kind::Lop, i), push);
            break;
        case Kind::AddRoot:
            for (std::uint64_t i = 1; i < n; ++i)
                cross(Gate::Add, sub(Kind::All, i), sub(Kind::All, n - i), push);
            break;
        case Kind::MulRoot:
            for (std::uint64_t d = 2; d <= n / 2; ++d)
                if (n % d == 0) cross(Gate::Mul, sub(Kind::All, d), sub(Kind::All, n / d), push);
            break;
        case Kind::PowRoot:
            for (unsigned i = 2; i <= floor_log2(n); ++i)
                if (auto b = exact_root(n, i))
                    cross(Gate::Pow, sub(Kind::All, *b), sub(Kind::All, i), push);
            break;
        case Kind::All:
            if (set == GateSet::A) {
                out = cached_list(set, Kind::Add, n);
                break;
            }
            for (auto k : {Kind::AddRoot, Kind::MulRoot, Kind::PowRoot}) {
                if (k == Kind::PowRoot && set != GateSet::AME) continue;
                const auto& part = cached_list(set, k, n);
                out.insert(out.end(), part.begin(), part.end());
            }
            break;
        }
    }
    return memo_.emplace(key, std::move(out)).first->second;
}

bool Enumerator::walk_cached(GateSet set, Kind kind, std::uint64_t n, const TreeVisitor& visit) {
    for (const auto& t : cached_list(set, kind, n))
        if (!visit(t)) return false;
    return true;
}

bool Enumerator::stream(const EnumerationRequest& req, const TreeVisitor& visit) {
    if (req.n <= 0) throw DomainError("n must be a positive integer, got " + std::to_string(req.n));
    if (req.lop && req.gate_set != GateSet::A)
        throw DomainError("the left-operand restriction is defined for addition-only formulas");
    if (req.root_filter && !contains(req.gate_set, *req.root_filter))
        throw DomainError(std::string("root gate '") + gate_symbol(*req.root_filter) +
                          "' is not in gate set " + std::string(to_string(req.gate_set)));
    if (cached_ && req.n > kMaxCachedN)
        throw SizeGuard("cached enumeration is limited to n <= " + std::to_string(kMaxCachedN));
    if (req.lop && req.root_filter && *req.root_filter != Gate::Add)
        throw DomainError("the left-operand restriction only has add-rooted formulas");

    const auto n = static_cast<std::uint64_t>(req.n);
    Kind kind = Kind::All;
    if (req.lop) {
        kind = Kind::Lop;
    } else if (req.gate_set == GateSet::A) {
        kind = Kind::Add;
    } else if (req.root_filter) {
        switch (*req.root_filter) {
        case Gate::Add:
            kind = Kind::AddRoot;
            break;
        case Gate::Mul:
            kind = Kind::MulRoot;
            break;
        case Gate::Pow:
            kind = Kind::PowRoot;
            break;
        }
    }
    return walk(req.gate_set, kind, n, visit);
}

bool Enumerator::stream_strings(const EnumerationRequest& req, Notation notation,
                                const StringVisitor& visit) {
    return stream(req, [&](const Tree& t) {
        return visit(notation == Notation::Prefix ? to_prefix(t) : to_postfix(t));
    });
}

std::vector<Tree> Enumerator::collect(const EnumerationRequest& req, std::size_t limit) {
    std::vector<Tree> out;
    if (limit == 0) return out;
    stream(req, [&](const Tree& t) {
        out.push_back(t);
        return out.size() < limit;
    });
    return out;
}

std::vector<Tree> enumerate_add(std::int64_t n) {
    return Enumerator{}.collect({n, GateSet::A, std::nullopt, false});
}

std::vector<Tree> enumerate_add_lop(std::int64_t n) {
    return Enumerator{}.collect({n, GateSet::A, std::nullopt, true});
}

std::vector<Tree> enumerate_am(std::int64_t n, std::optional<Gate> root) {
    return Enumerator{}.collect({n, GateSet::AM, root, false});
}

std::vector<Tree> enumerate_ame(std::int64_t n, std::optional<Gate> root) {
    return Enumerator{}.collect({n, GateSet::AME, root, false});
}

std::vector<std::string> enumerate_strings(const EnumerationRequest& req, Notation notation) {
    std::vector<std::string> out;
    Enumerator{}.stream_strings(req, notation, [&](const std::string& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

}  // namespace ff
