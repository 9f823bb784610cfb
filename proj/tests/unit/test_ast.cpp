#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "formula_forge/ast.hpp"
#include "formula_forge/enumeration.hpp"
#include "formula_forge/errors.hpp"

using namespace ff;

namespace {
Tree two() { return Tree::node(Gate::Add, Tree::leaf(), Tree::leaf()); }
Tree three() { return Tree::node(Gate::Add, Tree::leaf(), two()); }
Tree six() { return Tree::node(Gate::Mul, two(), three()); }
}  // namespace

TEST_CASE("eval") {
    CHECK(eval(Tree::leaf()) == 1);
    CHECK(eval(two()) == 2);
    CHECK(eval(six()) == 6);
    CHECK(eval(Tree::node(Gate::Pow, two(), three())) == 8);
}

TEST_CASE("eval guards huge towers") {
    Tree t = two();
    for (int i = 0; i < 6; ++i) t = Tree::node(Gate::Pow, two(), t);
    CHECK_THROWS_AS(eval(t), MagnitudeError);
}

TEST_CASE("size and depth") {
    CHECK(size(Tree::leaf()) == 1);
    CHECK(size(two()) == 3);
    CHECK(size(six()) == 9);
    CHECK(depth(Tree::leaf()) == 0);
    CHECK(depth(two()) == 1);
    CHECK(depth(three()) == 2);
    CHECK(six().leaf_count() == 5);
}

TEST_CASE("prefix and postfix printing") {
    CHECK(to_prefix(two()) == "+11");
    CHECK(to_prefix(three()) == "+1+11");
    CHECK(to_prefix(Tree::leaf()) == "1");
    CHECK(to_postfix(two()) == "11+");
    CHECK(to_postfix(three()) == "11+1+");
    CHECK(to_postfix(Tree::leaf()) == "1");
    CHECK(to_prefix(six()) == "*+11+1+11");
}

TEST_CASE("parsing") {
    CHECK(parse_prefix("+11") == two());
    CHECK(parse_prefix("1") == Tree::leaf());
    CHECK(parse_prefix("++111") == Tree::node(Gate::Add, two(), Tree::leaf()));
    CHECK(parse_postfix("11+") == two());
    CHECK(parse_postfix("1") == Tree::leaf());
    // postfix is the reversed prefix string, so "111++" mirrors "++111"
    CHECK(parse_postfix("111++") == Tree::node(Gate::Add, two(), Tree::leaf()));
    CHECK(parse_postfix("11+1+") == three());
}

TEST_CASE("malformed strings") {
    for (const char* bad : {"", "+1", "11", "+1a", "-11", "+11+", "2"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_prefix(bad), MalformedString);
        CHECK_THROWS_AS(parse_postfix(bad), MalformedString);
    }
}

TEST_CASE("json bracket notation round trip") {
    auto j = to_json(six());
    CHECK(j.dump() == R"(["*",["+",1,1],["+",1,["+",1,1]]])");
    CHECK(tree_from_json(j) == six());
    CHECK(tree_from_json(nlohmann::json(1)) == Tree::leaf());
    CHECK_THROWS_AS(tree_from_json(nlohmann::json::parse(R"(["-",1,1])")), MalformedString);
}

TEST_CASE("strictness") {
    CHECK(is_strict(six()));
    CHECK_FALSE(is_strict(Tree::node(Gate::Mul, Tree::leaf(), two())));
    CHECK_FALSE(is_strict(Tree::node(Gate::Pow, two(), Tree::leaf())));
    CHECK(is_strict(Tree::node(Gate::Add, Tree::leaf(), Tree::leaf())));
}

TEST_CASE("property: codecs round trip over enumerated trees") {
    for (std::int64_t n = 1; n <= 7; ++n) {
        for (const auto& t : enumerate_ame(n)) {
            const auto pre = to_prefix(t);
            const auto post = to_postfix(t);
            std::string rev(pre.rbegin(), pre.rend());
            CHECK(post == rev);
            CHECK(parse_prefix(pre) == t);
            CHECK(parse_postfix(post) == t);
            CHECK(tree_from_json(to_json(t)) == t);
            CHECK(pre.size() == t.size());
        }
    }
}
