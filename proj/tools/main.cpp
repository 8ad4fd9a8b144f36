// fixcofe: fixed points of recursive definitions via step-indexed iteration,
// plus finite-depth property checkers. See README.md for usage.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fixcofe/checkers.hpp"
#include "fixcofe/cofe.hpp"
#include "fixcofe/dsl.hpp"
#include "fixcofe/fixpoint.hpp"
#include "fixcofe/natfun.hpp"
#include "fixcofe/samplers.hpp"
#include "fixcofe/stream.hpp"

using json = nlohmann::ordered_json;
using namespace fixcofe;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitParseError = 2;
constexpr int kExitRuntimeError = 3;
constexpr int kExitUnknownDemo = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

dsl::DefAst parse_file(const std::string& path) { return dsl::parse_def(read_file(path)); }

NatFun::Elem make_seed(const std::string& spec) {
    if (spec == "zero") return NatFun::zero();
    if (spec == "id") return NatFun::identity();
    if (spec.rfind("const:", 0) == 0) {
        Value c = std::stoull(spec.substr(6));
        return NatFun::constant(c);
    }
    throw std::runtime_error("unknown seed function '" + spec + "' (want zero|id|const:C)");
}

json table_to_json(const NatFun::Table& t) {
    return json{{"prefix", t.prefix}, {"default", t.def}};
}

NatFun::Table table_from_json(const json& j) {
    NatFun::Table t;
    t.prefix = j.at("prefix").get<std::vector<Value>>();
    t.def = j.at("default").get<Value>();
    return t;
}

// Exact snapshot of a sampler-produced element: everything from `len` on is
// the table default.
NatFun::Table snapshot_table(const NatFun::Elem& e, Level len) {
    NatFun::Table t;
    t.prefix = NatFun::truncate(len, e);
    t.def = e(len);
    return t;
}

struct SolveOptions {
    std::string def_path;
    Level depth = 16;
    std::string seed_fn = "zero";
    std::string format = "text";
};

int run_solve(const SolveOptions& opt) {
    dsl::DefAst ast = parse_file(opt.def_path);
    auto op = dsl::compile(ast);
    auto seed = make_seed(opt.seed_fn);
    auto handle = fix(op, seed, /*override_unverified=*/true);

    auto prefix = handle.query(opt.depth);

    // Informational only: the least iteration from which the depth-N prefix
    // of the iterates no longer changes. Never short-circuits iteration.
    Level stabilized = opt.depth;
    auto final_obs = NatFun::truncate(opt.depth, handle.iterate_at(opt.depth));
    for (Level j = opt.depth; j-- > 0;) {
        if (NatFun::truncate(opt.depth, handle.iterate_at(j)) != final_obs) break;
        stabilized = j;
    }

    if (opt.format == "json") {
        json out{{"name", ast.name},
                 {"depth", opt.depth},
                 {"prefix", prefix},
                 {"seed", opt.seed_fn},
                 {"stabilized_at", stabilized}};
        std::cout << out.dump() << "\n";
    } else if (opt.format == "csv") {
        for (Value v : prefix) std::cout << v << "\n";
    } else {
        std::cout << "name: " << ast.name << "\n"
                  << "depth: " << opt.depth << "\n"
                  << "prefix: " << NatFun::show(prefix) << "\n"
                  << "seed: " << opt.seed_fn << "\n"
                  << "stabilized_at: " << stabilized << "\n";
    }
    return kExitPass;
}

struct CheckOptions {
    std::string kind;
    std::string def_path;
    Level depth = 8;
    std::size_t samples = 1000;
    std::uint64_t rng_seed = 1;
    Level enum_len = 0;  // 0 disables enumeration (except for lemma)
    Value enum_max = 0;
    std::string format = "text";
    std::string replay_path;
};

json report_to_json(const CheckOptions& opt, const CheckReport& r) {
    json out{{"command", "check"},
             {"kind", opt.kind},
             {"verdict", r.passed ? "pass" : "counterexample"},
             {"depth", opt.depth},
             {"samples", r.samples},
             {"premise_hits", r.premise_hits},
             {"rng_seed", r.rng_seed},
             {"note", "pass is finite-depth evidence, not a proof"}};
    if (!r.passed) {
        out["property"] = r.property;
        out["level"] = r.level;
        out["witness_a"] = r.witness_a;
        out["witness_b"] = r.witness_b;
        json cx;
        if (const auto* w = std::any_cast<NatFunPairWitness>(&r.witness_data)) {
            cx = json{{"kind", "pair"},
                      {"level", w->level},
                      {"a", table_to_json(w->a)},
                      {"b", table_to_json(w->b)}};
        } else if (const auto* w = std::any_cast<NatFunLemmaWitness>(&r.witness_data)) {
            cx = json{{"kind", "lemma"},
                      {"level", w->level},
                      {"arg", w->arg},
                      {"f", table_to_json(w->f)}};
        }
        if (!cx.is_null()) out["counterexample"] = cx;
        if (r.replay) out["replay_verified"] = r.replay();
    }
    return out;
}

void print_report(const CheckOptions& opt, const CheckReport& r) {
    if (opt.format == "json") {
        std::cout << report_to_json(opt, r).dump() << "\n";
        return;
    }
    std::cout << "check " << opt.kind << ": " << (r.passed ? "pass" : "COUNTEREXAMPLE") << "\n"
              << "samples: " << r.samples << "  premise hits: " << r.premise_hits
              << "  rng seed: " << r.rng_seed << "\n";
    if (!r.passed) {
        std::cout << "property: " << r.property << "  level: " << r.level << "\n"
                  << "witness a: " << r.witness_a << "\n"
                  << "witness b: " << r.witness_b << "\n";
        if (r.replay)
            std::cout << "replay verified: " << (r.replay() ? "yes" : "NO") << "\n";
    } else {
        std::cout << "note: pass is finite-depth evidence, not a proof\n";
    }
}

// Moves witness data of a sampled NatFun counterexample into serializable
// table form.
void attach_sampled_witness(CheckReport& r, const Sampler<NatFun>&, Level snapshot_len) {
    if (r.passed) return;
    if (const auto* w = std::any_cast<std::pair<NatFun::Elem, NatFun::Elem>>(&r.witness_data)) {
        NatFunPairWitness pw{snapshot_table(w->first, snapshot_len),
                             snapshot_table(w->second, snapshot_len), r.level};
        r.witness_data = pw;
    }
}

int run_replay(const CheckOptions& opt, const Operator<NatFun>& op) {
    json rep = json::parse(read_file(opt.replay_path));
    const json& cx = rep.at("counterexample");
    bool reproduced = false;
    std::string detail;
    if (cx.at("kind") == "pair") {
        auto a = table_from_json(cx.at("a")).to_elem();
        auto b = table_from_json(cx.at("b")).to_elem();
        Level n = cx.at("level").get<Level>();
        auto fa = op.apply(a);
        auto fb = op.apply(b);
        if (rep.at("kind") == "cfp") {
            reproduced = approx_eq<NatFun>(n, a, b) && approx_eq<NatFun>(n, a, fa) &&
                         approx_eq<NatFun>(n, b, fb) && !approx_eq<NatFun>(n + 1, fa, fb);
        } else {
            reproduced = approx_eq<NatFun>(n, a, b) && !approx_eq<NatFun>(n + 1, fa, fb);
        }
        detail = "pair at level " + std::to_string(n);
    } else if (cx.at("kind") == "lemma") {
        auto f = table_from_json(cx.at("f")).to_elem();
        Level n = cx.at("level").get<Level>();
        Value k = cx.at("arg").get<Value>();
        reproduced = approx_eq<NatFun>(n, op.apply(f), f) && f(k) != 0;
        detail = "lemma witness at level " + std::to_string(n);
    } else {
        throw std::runtime_error("unknown counterexample kind in replay file");
    }
    if (opt.format == "json") {
        std::cout << json{{"command", "replay"}, {"kind", opt.kind}, {"reproduced", reproduced}}
                         .dump()
                  << "\n";
    } else {
        std::cout << "replay (" << detail << "): "
                  << (reproduced ? "failure reproduces" : "failure does NOT reproduce") << "\n";
    }
    return reproduced ? kExitCounterexample : kExitPass;
}

int run_check(const CheckOptions& opt) {
    dsl::DefAst ast = parse_file(opt.def_path);
    auto op = dsl::compile(ast);

    if (!opt.replay_path.empty()) return run_replay(opt, op);

    auto sampler = natfun_sampler(opt.rng_seed);
    Level snapshot_len = 8 + opt.depth;  // sampler prefix length + depth

    CheckReport r;
    if (opt.kind == "ofe-laws") {
        r = check_ofe_laws(sampler, opt.depth, opt.samples);
        attach_sampled_witness(r, sampler, snapshot_len);
    } else if (opt.kind == "contractive") {
        if (opt.enum_len > 0) r = check_contractive_exhaustive(op, opt.enum_len, opt.enum_max, opt.depth);
        if (opt.enum_len == 0 || r.passed) {
            auto sampled = check_contractive(op, sampler, opt.depth, opt.samples);
            attach_sampled_witness(sampled, sampler, snapshot_len);
            sampled.samples += r.samples;
            sampled.premise_hits += r.premise_hits;
            r = sampled;
        }
    } else if (opt.kind == "cfp") {
        if (opt.enum_len > 0) r = check_cfp_exhaustive(op, opt.enum_len, opt.enum_max, opt.depth);
        if (opt.enum_len == 0 || r.passed) {
            auto sampled = check_cfp(op, sampler, opt.depth, opt.samples);
            attach_sampled_witness(sampled, sampler, snapshot_len);
            sampled.samples += r.samples;
            sampled.premise_hits += r.premise_hits;
            r = sampled;
        }
    } else if (opt.kind == "lemma") {
        Level len = opt.enum_len > 0 ? opt.enum_len : 4;
        Value vmax = opt.enum_len > 0 ? opt.enum_max : 3;
        r = check_partial_fixpoint_lemma(op, len, vmax, std::min(opt.depth, len));
    } else {
        throw std::runtime_error("unknown check kind '" + opt.kind + "'");
    }
    print_report(opt, r);
    return r.passed ? kExitPass : kExitCounterexample;
}

const char* kNestedZeroSource = "f(x) = if x = 0 then 0 else f(f(x - 1))";

Operator<Stream> naturals_operator() {
    return {.apply = [](const Stream::Elem& s) {
                return stream_cons(0, stream_map([](Value v) { return add_checked(v, 1); }, s));
            },
            .mode = Mode::Contractive};
}

Operator<Stream> fib_operator() {
    return {.apply = [](const Stream::Elem& s) {
                return stream_cons(
                    0, stream_cons(1, stream_zip([](Value a, Value b) { return add_checked(a, b); },
                                                 s, stream_tail(s))));
            },
            .mode = Mode::Contractive};
}

int run_demo(const std::string& name, Level depth, const std::string& format) {
    bool as_json = format == "json";
    json out{{"command", "demo"}, {"name", name}};

    if (name == "nested-zero") {
        // the nested recursion example end to end: solve, cfp pass,
        // contractiveness counterexample
        Level d = depth ? depth : 32;
        auto ast = dsl::parse_def(kNestedZeroSource);
        auto op = dsl::compile(ast);
        auto prefix = fix(op, NatFun::zero(), true).query(d);
        bool all_zero = std::all_of(prefix.begin(), prefix.end(), [](Value v) { return v == 0; });

        auto cfp = check_cfp(op, natfun_sampler(7), 8, 500);
        auto contr = check_contractive_exhaustive(op, 4, 2, 4);
        bool ok = all_zero && cfp.passed && cfp.premise_hits > 0 && !contr.passed &&
                  contr.replay && contr.replay();
        if (as_json) {
            out["definition"] = dsl::print_def(ast);
            out["prefix"] = prefix;
            out["cfp"] = cfp.passed ? "pass" : "counterexample";
            out["cfp_premise_hits"] = cfp.premise_hits;
            out["contractive"] = contr.passed ? "pass" : "counterexample";
            out["contractive_witness_a"] = contr.witness_a;
            out["contractive_witness_b"] = contr.witness_b;
            out["ok"] = ok;
            std::cout << out.dump() << "\n";
        } else {
            std::cout << "definition: " << dsl::print_def(ast) << "\n"
                      << "prefix: " << NatFun::show(prefix) << "\n"
                      << "check cfp: " << (cfp.passed ? "pass" : "counterexample")
                      << " (premise hits: " << cfp.premise_hits << ")\n"
                      << "check contractive: "
                      << (contr.passed ? "pass" : "counterexample") << "\n"
                      << "  witness a: " << contr.witness_a << "\n"
                      << "  witness b: " << contr.witness_b << "\n"
                      << "  level: " << contr.level << ", replays: "
                      << (contr.replay && contr.replay() ? "yes" : "no") << "\n";
        }
        return ok ? kExitPass : kExitCounterexample;
    }

    if (name == "naturals-stream" || name == "fib-stream") {
        Level d = depth ? depth : (name == "fib-stream" ? 8 : 10);
        auto op = name == "fib-stream" ? fib_operator() : naturals_operator();
        auto prefix = fix(op, stream_const(0)).query(d);
        auto contr = check_contractive(op, stream_sampler(11), 8, 500);
        if (as_json) {
            out["prefix"] = prefix;
            out["contractive"] = contr.passed ? "pass" : "counterexample";
            std::cout << out.dump() << "\n";
        } else {
            std::cout << "prefix: " << Stream::show(prefix) << "\n"
                      << "check contractive: " << (contr.passed ? "pass" : "counterexample")
                      << "\n";
        }
        return contr.passed ? kExitPass : kExitCounterexample;
    }

    if (name == "cauchy-coherent") {
        Level d = depth ? depth : 16;
        // Cauchy but not coherent: s(i) is 0 below i and 9 beyond, with
        // explicit modulus m(n) = n. Convergence point is the zero function.
        Seq<NatFun> s = [](Level i) {
            return NatFun::Elem([i](Value x) -> Value { return x < i ? 0 : 9; });
        };
        Modulus m([](Level n) { return static_cast<std::uint64_t>(n); });
        auto y = coherent_of_cauchy<NatFun>(s, m);
        auto coh = coherence_check<NatFun>(y, d);
        auto lim = limit_of<NatFun>(y);
        auto conv = NatFun::zero();
        bool limits_agree = true;
        for (Level n = 0; n <= d; ++n)
            limits_agree = limits_agree && approx_eq<NatFun>(n, lim, conv);
        bool ok = coh.passed && limits_agree;
        if (as_json) {
            out["coherence"] = coh.passed ? "pass" : "counterexample";
            out["limit_prefix"] = NatFun::truncate(d, lim);
            out["limits_agree"] = limits_agree;
            std::cout << out.dump() << "\n";
        } else {
            std::cout << "coherence of extracted subsequence: "
                      << (coh.passed ? "pass" : "counterexample") << "\n"
                      << "limit prefix: " << NatFun::show(NatFun::truncate(d, lim)) << "\n"
                      << "limit agrees with convergence point: " << (limits_agree ? "yes" : "no")
                      << "\n";
        }
        return ok ? kExitPass : kExitCounterexample;
    }

    std::cerr << "unknown demo '" << name
              << "' (want nested-zero|naturals-stream|fib-stream|cauchy-coherent)\n";
    return kExitUnknownDemo;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fixed points of recursive definitions via step-indexed iteration"};
    app.require_subcommand(1);

    SolveOptions solve_opt;
    auto* solve_cmd = app.add_subcommand("solve", "iterate a definition and print its observation");
    solve_cmd->add_option("--def", solve_opt.def_path, "definition file (.fixdef)")->required();
    solve_cmd->add_option("--depth", solve_opt.depth, "iteration count = observation level");
    solve_cmd->add_option("--seed-fn", solve_opt.seed_fn, "zero|id|const:C");
    solve_cmd->add_option("--format", solve_opt.format, "text|json|csv");

    CheckOptions check_opt;
    auto* check_cmd = app.add_subcommand("check", "run a property checker");
    check_cmd->add_option("kind", check_opt.kind, "ofe-laws|contractive|cfp|lemma")->required();
    check_cmd->add_option("--def", check_opt.def_path, "definition file (.fixdef)")->required();
    check_cmd->add_option("--depth", check_opt.depth, "maximum level");
    check_cmd->add_option("--samples", check_opt.samples, "sample count");
    check_cmd->add_option("--rng-seed", check_opt.rng_seed, "sampler seed");
    check_cmd->add_option("--enum-len", check_opt.enum_len, "exhaustive table length");
    check_cmd->add_option("--enum-max", check_opt.enum_max, "exhaustive value bound");
    check_cmd->add_option("--format", check_opt.format, "text|json");
    check_cmd->add_option("--replay", check_opt.replay_path,
                          "re-verify a stored counterexample report (JSON)");

    std::string demo_name;
    Level demo_depth = 0;
    std::string demo_format = "text";
    auto* demo_cmd = app.add_subcommand("demo", "run a canned scenario");
    demo_cmd->add_option("name", demo_name, "demo name")->required();
    demo_cmd->add_option("--depth", demo_depth, "observation depth");
    demo_cmd->add_option("--format", demo_format, "text|json");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_cmd->parsed()) return run_solve(solve_opt);
        if (check_cmd->parsed()) return run_check(check_opt);
        return run_demo(demo_name, demo_depth, demo_format);
    } catch (const dsl::ParseError& e) {
        std::cerr << "parse error at bytes " << e.span.begin << ".." << e.span.end << ": "
                  << e.what() << "\n";
        return kExitParseError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
}
