#include "formula_forge/counting.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "formula_forge/errors.hpp"
#include "formula_forge/kernels.hpp"

namespace ff {

std::string_view to_string(GateSet g) {
    switch (g) {
    case GateSet::A:
        return "a";
    case GateSet::AM:
        return "am";
    case GateSet::AME:
        return "ame";
    }
    return "?";
}

std::string_view to_string(Root r) {
    switch (r) {
    case Root::Add:
        return "add";
    case Root::Mul:
        return "mul";
    case Root::Pow:
        return "pow";
    case Root::All:
        return "all";
    }
    return "?";
}

GateSet parse_gate_set(std::string_view s) {
    if (s == "a") return GateSet::A;
    if (s == "am") return GateSet::AM;
    if (s == "ame") return GateSet::AME;
    throw DomainError("unknown gate set '" + std::string(s) + "' (expected a, am or ame)");
}

Root parse_root(std::string_view s) {
    if (s == "add" || s == "+") return Root::Add;
    if (s == "mul" || s == "*") return Root::Mul;
    if (s == "pow" || s == "^") return Root::Pow;
    if (s == "all") return Root::All;
    throw DomainError("unknown root '" + std::string(s) + "' (expected add, mul, pow or all)");
}

bool contains(GateSet set, Gate g) {
    switch (g) {
    case Gate::Add:
        return true;
    case Gate::Mul:
        return set != GateSet::A;
    case Gate::Pow:
        return set == GateSet::AME;
    }
    return false;
}

namespace {

std::uint64_t checked_n(std::int64_t n) {
    if (n <= 0) throw DomainError("n must be a positive integer, got " + std::to_string(n));
    return static_cast<std::uint64_t>(n);
}

int family_index(GateSet s) { return static_cast<int>(s); }

}  // namespace

void CountTable::grow(GateSet set, std::uint64_t n) {
    auto& fam = families_[family_index(set)];
    if (fam.total.empty()) {
        // index 0 is a placeholder so that totals[i] is the count of i
        fam.add = {0, 1};
        fam.mul = {0, 0};
        fam.pow = {0, 0};
        fam.total = {0, 1};
    }
    for (std::uint64_t m = fam.total.size(); m <= n; ++m) {
        BigInt add = kernels::convolve(fam.total, m, kernels::Exec::Parallel);
        BigInt mul = 0;
        BigInt pow = 0;
        if (set != GateSet::A) {
            for (std::uint64_t d = 2; d <= m / 2; ++d)
                if (m % d == 0) mul += fam.total[d] * fam.total[m / d];
        }
        if (set == GateSet::AME) {
            for (unsigned i = 2; i <= floor_log2(m); ++i)
                if (auto b = exact_root(m, i)) pow += fam.total[*b] * fam.total[i];
        }
        BigInt total = add + mul + pow;
        fam.add.push_back(std::move(add));
        fam.mul.push_back(std::move(mul));
        fam.pow.push_back(std::move(pow));
        fam.total.push_back(std::move(total));
    }
}

void CountTable::grow_lop(std::uint64_t n) {
    if (lop_.empty()) lop_ = {0, 1};
    for (std::uint64_t m = lop_.size(); m <= n; ++m) {
        BigInt acc = 0;
        for (std::uint64_t i = 1; i <= m / 2; ++i) acc += lop_[i] * lop_[m - i];
        lop_.push_back(std::move(acc));
    }
}

CountRow CountTable::row(GateSet set, std::int64_t n) {
    auto m = checked_n(n);
    const auto idx = family_index(set);
    {
        std::shared_lock lock(mutex_);
        const auto& fam = families_[idx];
        if (m < fam.total.size()) return {fam.add[m], fam.mul[m], fam.pow[m], fam.total[m]};
    }
    std::unique_lock lock(mutex_);
    grow(set, m);
    const auto& fam = families_[idx];
    return {fam.add[m], fam.mul[m], fam.pow[m], fam.total[m]};
}

BigInt CountTable::count(GateSet set, Root root, std::int64_t n) {
    auto r = row(set, n);
    switch (root) {
    case Root::Add:
        return r.add;
    case Root::Mul:
        return r.mul;
    case Root::Pow:
        return r.pow;
    case Root::All:
        return r.total;
    }
    return 0;
}

BigInt CountTable::count_lop(std::int64_t n) {
    auto m = checked_n(n);
    {
        std::shared_lock lock(mutex_);
        if (m < lop_.size()) return lop_[m];
    }
    std::unique_lock lock(mutex_);
    grow_lop(m);
    return lop_[m];
}

std::size_t CountTable::filled(GateSet set) const {
    std::shared_lock lock(mutex_);
    auto s = families_[family_index(set)].total.size();
    return s == 0 ? 0 : s - 1;
}

std::size_t CountTable::filled_lop() const {
    std::shared_lock lock(mutex_);
    return lop_.empty() ? 0 : lop_.size() - 1;
}

std::vector<CountTable::Entry> CountTable::snapshot() const {
    std::shared_lock lock(mutex_);
    std::vector<Entry> out;
    for (auto set : {GateSet::A, GateSet::AM, GateSet::AME}) {
        const auto& fam = families_[family_index(set)];
        std::string family(to_string(set));
        for (std::uint64_t m = 1; m < fam.total.size(); ++m) {
            out.push_back({m, family, "add", fam.add[m]});
            out.push_back({m, family, "mul", fam.mul[m]});
            out.push_back({m, family, "pow", fam.pow[m]});
            out.push_back({m, family, "all", fam.total[m]});
        }
    }
    for (std::uint64_t m = 1; m < lop_.size(); ++m) out.push_back({m, "lop", "all", lop_[m]});
    return out;
}

void CountTable::restore(const std::vector<Entry>& entries) {
    Family fams[3];
    std::vector<BigInt> lop;
    // (family, root) -> n -> count
    std::map<std::pair<std::string, std::string>, std::map<std::uint64_t, BigInt>> by_key;
    for (const auto& e : entries) {
        if (e.n == 0) throw CacheError("cache entry with n = 0");
        if (e.count < 0) throw CacheError("cache entry with negative count");
        auto [it, inserted] = by_key[{e.family, e.root}].emplace(e.n, e.count);
        if (!inserted) throw CacheError("duplicate cache entry for n = " + std::to_string(e.n));
    }
    auto column = [&](const std::string& family, const std::string& root) {
        std::vector<BigInt> col{0};
        auto it = by_key.find({family, root});
        if (it == by_key.end()) return col;
        std::uint64_t expect = 1;
        for (const auto& [n, c] : it->second) {
            if (n != expect) throw CacheError("cache entries for " + family + "/" + root +
                                              " are not contiguous from n = 1");
            col.push_back(c);
            ++expect;
        }
        by_key.erase(it);
        return col;
    };
    for (auto set : {GateSet::A, GateSet::AM, GateSet::AME}) {
        std::string family(to_string(set));
        auto& fam = fams[family_index(set)];
        fam.add = column(family, "add");
        fam.mul = column(family, "mul");
        fam.pow = column(family, "pow");
        fam.total = column(family, "all");
        auto len = fam.total.size();
        if (fam.add.size() != len || fam.mul.size() != len || fam.pow.size() != len)
            throw CacheError("cache family " + family + " has mismatched root columns");
        for (std::size_t m = 1; m < len; ++m)
            if (fam.add[m] + fam.mul[m] + fam.pow[m] != fam.total[m])
                throw CacheError("cache family " + family + " violates total = add + mul + pow at n = " +
                                 std::to_string(m));
        if (len == 1) fam = Family{};
    }
    lop = column("lop", "all");
    if (lop.size() == 1) lop.clear();
    if (!by_key.empty())
        throw CacheError("unknown cache family/root '" + by_key.begin()->first.first + "/" +
                         by_key.begin()->first.second + "'");

    std::unique_lock lock(mutex_);
    for (int i = 0; i < 3; ++i) families_[i] = std::move(fams[i]);
    lop_ = std::move(lop);
}

void CountTable::clear() {
    std::unique_lock lock(mutex_);
    for (auto& f : families_) f = Family{};
    lop_.clear();
}

CountTable& default_table() {
    static CountTable table;
    return table;
}

BigInt count_add_only(std::int64_t n) { return default_table().count(GateSet::A, Root::All, n); }
BigInt count_add_lop(std::int64_t n) { return default_table().count_lop(n); }
BigInt count_am(std::int64_t n, Root root) { return default_table().count(GateSet::AM, root, n); }
BigInt count_ame(std::int64_t n, Root root) { return default_table().count(GateSet::AME, root, n); }
BigInt count(GateSet set, Root root, std::int64_t n) { return default_table().count(set, root, n); }

}  // namespace ff
