#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "formula_forge/ast.hpp"
#include "formula_forge/counting.hpp"

namespace ff {

struct EnumerationRequest {
    std::int64_t n = 1;
    GateSet gate_set = GateSet::A;
    std::optional<Gate> root_filter;
    bool lop = false;  // left operand >= right operand at every + (A only)
};

enum class Notation { Prefix, Postfix };

// Return false to stop the stream.
using TreeVisitor = std::function<bool(const Tree&)>;
using StringVisitor = std::function<bool(const std::string&)>;

/// Streaming generator of every formula tree evaluating to n.
///
/// Order: split/divisor/exponent index
/// ascending, left operand stream outer, and for the full stream the
/// add-rooted trees, then mul-rooted, then pow-rooted. Pow trees are
/// emitted as (^ base exponent).
///
/// Streaming mode regenerates subtrees on demand and keeps memory bounded
/// by the recursion depth. Cached mode memoizes whole subtree lists and is
/// limited to n <= 12.
class Enumerator {
public:
    static constexpr std::int64_t kMaxCachedN = 12;

    explicit Enumerator(bool cached = false) : cached_(cached) {}

    /// Validates the request (DomainError on n <= 0, lop with a gate set
    /// other than A, or a root outside the gate set) and streams. Returns
    /// false if the visitor stopped early.
    bool stream(const EnumerationRequest& req, const TreeVisitor& visit);
    bool stream_strings(const EnumerationRequest& req, Notation notation,
                        const StringVisitor& visit);

    std::vector<Tree> collect(const EnumerationRequest& req,
                              std::size_t limit = static_cast<std::size_t>(-1));

private:
    enum class Kind { Add, Lop, AddRoot, MulRoot, PowRoot, All };
    bool walk(GateSet set, Kind kind, std::uint64_t n, const TreeVisitor& visit);
    bool walk_cached(GateSet set, Kind kind, std::uint64_t n, const TreeVisitor& visit);
    const std::vector<Tree>& cached_list(GateSet set, Kind kind, std::uint64_t n);

    bool cached_;
    std::map<std::tuple<int, int, std::uint64_t>, std::vector<Tree>> memo_;
};

std::vector<Tree> enumerate_add(std::int64_t n);
std::vector<Tree> enumerate_add_lop(std::int64_t n);
std::vector<Tree> enumerate_am(std::int64_t n, std::optional<Gate> root = std::nullopt);
std::vector<Tree> enumerate_ame(std::int64_t n, std::optional<Gate> root = std::nullopt);
std::vector<std::string> enumerate_strings(const EnumerationRequest& req, Notation notation);

}  // namespace ff
