// formula-forge: command-line front end.
//
// Exit codes: 0 ok, 2 usage, 3 domain error, 4 resource guard, 1 internal.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "formula_forge/asymptotics.hpp"
#include "formula_forge/cache.hpp"
#include "formula_forge/canonical.hpp"
#include "formula_forge/counting.hpp"
#include "formula_forge/enumeration.hpp"
#include "formula_forge/errors.hpp"
#include "formula_forge/graph.hpp"
#include "formula_forge/sampling.hpp"
#include "formula_forge/shortest.hpp"
#include "formula_forge/sieve.hpp"

namespace {

using ff::BigInt;
using Json = nlohmann::ordered_json;

constexpr std::size_t kDefaultListLimit = 1'000'000;

void emit(const Json& j) { std::cout << j.dump() << '\n'; }

std::string dec(const BigInt& v) { return ff::to_decimal(v); }

std::string real_text(const ff::Real& r, unsigned bits) {
    const auto digits = static_cast<std::streamsize>(bits * 0.30103);
    return r.str(digits, std::ios::fixed);
}

std::optional<ff::Gate> root_gate(ff::Root r) {
    switch (r) {
        case ff::Root::Add: return ff::Gate::Add;
        case ff::Root::Mul: return ff::Gate::Mul;
        case ff::Root::Pow: return ff::Gate::Pow;
        case ff::Root::All: return std::nullopt;
    }
    return std::nullopt;
}

// Integers or symbolic text ("x^x + 1").
ff::GoodsteinForm goodstein_arg(const std::string& s) {
    if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos)
        return ff::encode_goodstein_nonneg(BigInt(s));
    return ff::goodstein_of(ff::parse_sym(s));
}

BigInt positive_arg(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw ff::DomainError("expected a positive integer, got '" + s + "'");
    BigInt v(s);
    if (v == 0) throw ff::DomainError("expected a positive integer, got 0");
    return v;
}

struct Options {
    std::string cache_path;

    std::int64_t n = 1;
    std::string gates = "ame";
    std::string root = "all";
    bool lop = false;
    bool unsafe = false;

    std::string format = "prefix";
    std::size_t limit = kDefaultListLimit;

    std::uint64_t seed = 0;
    std::size_t count = 1;

    std::optional<std::int64_t> upto;

    unsigned level = 0;
    std::string value_text;
    std::string pow_a, pow_b;

    unsigned sieve_levels = 3;
    bool coarse = false;
    bool dump = false;
    bool rationals = false;
    std::uint64_t exponent_bound = 1;
    unsigned factor_bound = 1;

    std::size_t terms = 100;
    std::size_t iterations = 20;
    unsigned precision = 100;
    bool summary = false;

    std::string dot_path;

    std::string save_path;
    std::string load_path;
    std::int64_t fill_upto = 0;
};

int run_count(const Options& o) {
    if (o.lop) {
        if (o.gates != "a") throw ff::DomainError("--lop applies to the add-only gate set (--gates a)");
        emit(Json{{"n", o.n}, {"gates", "a"}, {"lop", true}, {"total", dec(ff::count_add_lop(o.n))}});
        return 0;
    }
    const auto set = ff::parse_gate_set(o.gates);
    const auto root = ff::parse_root(o.root);
    if (auto g = root_gate(root); g && !ff::contains(set, *g))
        throw ff::DomainError("root " + o.root + " is not in gate set " + o.gates);
    if (root != ff::Root::All) {
        emit(Json{{"n", o.n}, {"gates", o.gates}, {"root", o.root}, {"count", dec(ff::count(set, root, o.n))}});
        return 0;
    }
    const auto row = ff::default_table().row(set, o.n);
    Json j{{"n", o.n}, {"gates", o.gates}, {"total", dec(row.total)}, {"add", dec(row.add)}};
    if (set != ff::GateSet::A) j["mul"] = dec(row.mul);
    if (set == ff::GateSet::AME) j["pow"] = dec(row.pow);
    emit(j);
    return 0;
}

int run_list(const Options& o) {
    if (o.limit > kDefaultListLimit && !o.unsafe)
        throw ff::SizeGuard("list limit above " + std::to_string(kDefaultListLimit) + " needs --unsafe");
    ff::EnumerationRequest req;
    req.n = o.n;
    req.gate_set = ff::parse_gate_set(o.gates);
    req.root_filter = root_gate(ff::parse_root(o.root));
    req.lop = o.lop;
    std::size_t printed = 0;
    ff::Enumerator e;
    if (o.format == "tree") {
        e.stream(req, [&](const ff::Tree& t) {
            if (printed == o.limit) return false;
            std::cout << ff::to_json(t).dump() << '\n';
            return ++printed < o.limit;
        });
    } else {
        const auto notation = o.format == "postfix" ? ff::Notation::Postfix : ff::Notation::Prefix;
        e.stream_strings(req, notation, [&](const std::string& s) {
            if (printed == o.limit) return false;
            std::cout << s << '\n';
            return ++printed < o.limit;
        });
    }
    return 0;
}

int run_sample(const Options& o) {
    ff::RandomSource rng(o.seed);
    const auto set = ff::parse_gate_set(o.gates);
    const auto root = ff::parse_root(o.root);
    if (o.lop && set != ff::GateSet::A) throw ff::DomainError("--lop applies to the add-only gate set (--gates a)");
    for (std::size_t i = 0; i < o.count; ++i) {
        ff::Tree t = root == ff::Root::All ? ff::sample(set, o.n, rng, o.lop)
                                           : ff::sample_rooted(set, root, o.n, rng);
        std::cout << (o.format == "tree" ? ff::to_json(t).dump()
                      : o.format == "postfix" ? ff::to_postfix(t)
                                              : ff::to_prefix(t))
                  << '\n';
    }
    return 0;
}

int run_shortest(const Options& o) {
    auto line = [](const ff::ShortestEntry& e) {
        emit(Json{{"n", e.n}, {"size", e.size}, {"witness", ff::to_prefix(e.witness)}});
    };
    if (o.upto) {
        if (*o.upto <= 0) throw ff::DomainError("--upto needs a positive bound");
        ff::ShortestTable table;
        for (std::int64_t n = 1; n <= *o.upto; ++n) line(table.get(n));
    } else {
        line(ff::shortest(o.n));
    }
    return 0;
}

int run_graph(const Options& o) {
    auto g = ff::build_graph(o.n, o.unsafe);
    Json hist = Json::object();
    for (const auto& [d, c] : g.degree_histogram()) hist[std::to_string(d)] = c;
    emit(Json{{"n", g.n},
              {"vertices", g.vertices.size()},
              {"edges", g.edges.size()},
              {"components", g.component_count()},
              {"degree_histogram", hist}});
    if (!o.dot_path.empty()) {
        std::ofstream out(o.dot_path);
        if (!out) throw ff::DomainError("cannot write " + o.dot_path);
        out << g.to_dot();
    }
    return 0;
}

int run_sieve(const Options& o) {
    std::vector<ff::SieveLevelReport> reports;
    auto state = o.coarse ? ff::scf_coarse(o.sieve_levels) : ff::run_sieve(o.sieve_levels, o.unsafe, &reports);
    if (o.rationals) {
        for (const auto& r : ff::rational_set(state, o.exponent_bound, o.factor_bound))
            emit(Json{{"expr", r.str()}, {"numerator", dec(r.numerator)}, {"denominator", dec(r.denominator)}});
        return 0;
    }
    if (o.dump) {
        for (std::uint64_t v = 1; v <= state.max(); ++v)
            std::cout << v << '\t' << state.encoding(v).str() << '\n';
        return 0;
    }
    Json levels = Json::array();
    for (const auto& r : reports)
        levels.push_back(Json{{"k", r.k},
                              {"lower", r.lower},
                              {"upper", r.upper},
                              {"composites", r.composites},
                              {"new_primes", r.new_primes}});
    emit(Json{{"levels", o.sieve_levels},
              {"max", state.max()},
              {"prime_count", state.prime_values.size()},
              {"primes", state.prime_values},
              {"ranges", levels}});
    return 0;
}

int run_rho(const Options& o) {
    ff::CountFamily fam;
    if (o.gates == "am")
        fam = ff::CountFamily::Am;
    else if (o.gates == "ame")
        fam = ff::CountFamily::Ame;
    else
        throw ff::DomainError("rho supports --gates am or ame");
    auto r = ff::rho_estimate(fam, o.terms, o.iterations, o.precision);
    ff::PrecisionGuard guard(o.precision);
    emit(Json{{"gates", o.gates},
              {"rho", real_text(r.rho, o.precision)},
              {"fixed_point", real_text(r.fixed_point, o.precision)},
              {"residual", r.residual.str(6, std::ios::scientific)},
              {"terms", r.terms},
              {"iterations", r.iterations},
              {"precision_bits", r.precision_bits}});
    return 0;
}

int run_constant(const Options& o) {
    auto c = ff::constant_estimate(o.terms, o.iterations, o.precision);
    ff::PrecisionGuard guard(o.precision);
    if (o.summary) {
        emit(Json{{"rho", real_text(c.rho.rho, o.precision)},
                  {"C", real_text(c.constant, o.precision)},
                  {"terms", c.rho.terms},
                  {"iterations", c.rho.iterations},
                  {"precision_bits", c.rho.precision_bits}});
        return 0;
    }
    std::cout << "n,ratio\n";
    for (const auto& [n, r] : c.ratios) std::cout << n << ',' << r.str(20, std::ios::fixed) << '\n';
    return 0;
}

int run_cache(const Options& o) {
    auto& table = ff::default_table();
    if (!o.load_path.empty()) {
        ff::load_cache(table, o.load_path);
    }
    if (o.fill_upto > 0) {
        for (auto set : {ff::GateSet::A, ff::GateSet::AM, ff::GateSet::AME}) table.row(set, o.fill_upto);
        table.count_lop(o.fill_upto);
    }
    if (!o.save_path.empty()) ff::save_cache(table, o.save_path);
    emit(Json{{"a", table.filled(ff::GateSet::A)},
              {"am", table.filled(ff::GateSet::AM)},
              {"ame", table.filled(ff::GateSet::AME)},
              {"lop", table.filled_lop()}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monotone integer formula encodings: counting, enumeration, sampling and canonical forms"};
    app.require_subcommand(1);
    Options o;
    if (const char* env = std::getenv("FORMULA_FORGE_CACHE")) o.cache_path = env;
    app.add_option("--cache", o.cache_path, "Count cache to warm-start from (default $FORMULA_FORGE_CACHE)");

    const std::vector<std::string> gate_names{"a", "am", "ame"};
    const std::vector<std::string> root_names{"add", "mul", "pow", "all"};
    const std::vector<std::string> formats{"tree", "prefix", "postfix"};

    auto* count = app.add_subcommand("count", "Exact number of formulas for n");
    count->add_option("n", o.n)->required();
    count->add_option("--gates", o.gates)->check(CLI::IsMember(gate_names));
    count->add_option("--root", o.root)->check(CLI::IsMember(root_names));
    count->add_flag("--lop", o.lop, "Left operand >= right operand at every +");

    auto* list = app.add_subcommand("list", "Enumerate every formula for n");
    list->add_option("n", o.n)->required();
    list->add_option("--gates", o.gates)->check(CLI::IsMember(gate_names));
    list->add_option("--root", o.root)->check(CLI::IsMember(root_names));
    list->add_flag("--lop", o.lop);
    list->add_option("--format", o.format)->check(CLI::IsMember(formats));
    list->add_option("--limit", o.limit, "Stop after this many formulas");
    list->add_flag("--unsafe", o.unsafe, "Allow limits above 10^6");

    auto* sample = app.add_subcommand("sample", "Uniformly random formulas for n");
    sample->add_option("n", o.n)->required();
    sample->add_option("--gates", o.gates)->check(CLI::IsMember(gate_names));
    sample->add_option("--root", o.root)->check(CLI::IsMember(root_names));
    sample->add_flag("--lop", o.lop);
    sample->add_option("--seed", o.seed);
    sample->add_option("--count", o.count);
    sample->add_option("--format", o.format)->check(CLI::IsMember(formats));

    auto* shortest = app.add_subcommand("shortest", "Minimum-size formula for n (JSON lines)");
    shortest->add_option("n", o.n);
    shortest->add_option("--upto", o.upto, "Every n from 1 to N");

    auto* goodstein = app.add_subcommand("goodstein", "Hereditary base-2 encodings");
    goodstein->require_subcommand(1);
    auto* g_levels = goodstein->add_subcommand("levels", "Level-t encoding set");
    g_levels->add_option("t", o.level)->required();
    g_levels->add_flag("--unsafe", o.unsafe);
    auto* g_encode = goodstein->add_subcommand("encode", "Normal form of n");
    g_encode->add_option("n", o.value_text)->required();
    auto* g_pow = goodstein->add_subcommand("pow", "A^B computed on normal forms");
    g_pow->add_option("A", o.pow_a)->required();
    g_pow->add_option("B", o.pow_b)->required();

    auto* horner = app.add_subcommand("horner", "Recursive Horner encodings");
    horner->require_subcommand(1);
    auto* h_levels = horner->add_subcommand("levels", "Accumulated set after t rounds");
    h_levels->add_option("t", o.level)->required();
    h_levels->add_flag("--unsafe", o.unsafe);
    auto* h_encode = horner->add_subcommand("encode", "Horner encoding of n");
    h_encode->add_option("n", o.value_text)->required();

    auto* sieve = app.add_subcommand("sieve", "Tower-encoding prime sieve");
    sieve->add_option("--levels", o.sieve_levels);
    sieve->add_flag("--coarse", o.coarse, "Tower-bound ranges (levels <= 2)");
    sieve->add_flag("--unsafe", o.unsafe);
    sieve->add_flag("--dump", o.dump, "Print every integer encoding");
    sieve->add_flag("--rationals", o.rationals, "Print the rational set instead");
    sieve->add_option("--exponent-bound", o.exponent_bound);
    sieve->add_option("--factor-bound", o.factor_bound);

    auto* rho = app.add_subcommand("rho", "Growth base of the formula counts");
    rho->add_option("--gates", o.gates)->check(CLI::IsMember(std::vector<std::string>{"am", "ame"}));
    rho->add_option("--terms", o.terms);
    rho->add_option("--iters", o.iterations);
    rho->add_option("--prec", o.precision, "Working precision in bits");

    auto* constant = app.add_subcommand("constant", "Leading constant and ratio table (CSV)");
    constant->add_option("--terms", o.terms);
    constant->add_option("--iters", o.iterations);
    constant->add_option("--prec", o.precision);
    constant->add_flag("--summary", o.summary, "JSON summary instead of CSV");

    auto* graph = app.add_subcommand("graph", "Rewrite graph of the formulas for n");
    graph->add_option("n", o.n)->required();
    graph->add_option("--dot", o.dot_path, "Write Graphviz output to PATH");
    graph->add_flag("--unsafe", o.unsafe);

    auto* cache = app.add_subcommand("cache", "Save or load the count cache");
    cache->add_option("--save", o.save_path);
    cache->add_option("--load", o.load_path);
    cache->add_option("--fill", o.fill_upto, "Compute counts up to N before saving");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!o.cache_path.empty() && std::filesystem::exists(o.cache_path))
            ff::load_cache(ff::default_table(), o.cache_path);

        if (*count) return run_count(o);
        if (*list) return run_list(o);
        if (*sample) return run_sample(o);
        if (*shortest) {
            if (!o.upto && shortest->count("n") == 0) {
                std::cerr << "shortest: give n or --upto N\n";
                return 2;
            }
            return run_shortest(o);
        }
        if (*g_levels) {
            for (const auto& e : ff::goodstein_levels(o.level, o.unsafe)) std::cout << e.str() << '\n';
            return 0;
        }
        if (*g_encode) {
            auto v = positive_arg(o.value_text);
            emit(Json{{"n", dec(v)}, {"form", ff::encode_goodstein(v).str()}});
            return 0;
        }
        if (*g_pow) {
            auto p = ff::g_pow(goodstein_arg(o.pow_a), goodstein_arg(o.pow_b));
            Json j{{"form", p.str()}};
            if (auto bits = p.bit_length(); bits && *bits <= 4096) j["value"] = dec(p.value());
            emit(j);
            return 0;
        }
        if (*h_levels) {
            for (const auto& e : ff::horner_levels(o.level, o.unsafe)) std::cout << e.str() << '\n';
            return 0;
        }
        if (*h_encode) {
            auto v = positive_arg(o.value_text);
            emit(Json{{"n", dec(v)}, {"form", ff::encode_horner(v).str()}});
            return 0;
        }
        if (*sieve) return run_sieve(o);
        if (*rho) return run_rho(o);
        if (*constant) return run_constant(o);
        if (*graph) return run_graph(o);
        if (*cache) return run_cache(o);
    } catch (const ff::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const ff::ResourceGuard& e) {
        std::cerr << "guard: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
