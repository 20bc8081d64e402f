// qflag: reduce expressions in the deformed coordinate algebra, run the
// verification suites, and tabulate the interval-metric quantities.
//
// exit codes: 0 ok, 1 failed checks or assertions, 2 usage/parse errors,
// 3 completion-bound exceeded

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <functional>
#include <future>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "qflag/interval_suite.hpp"
#include "qflag/parser.hpp"
#include "qflag/verify.hpp"

using namespace qflag;

namespace {

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

Rat parse_rat(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        long num = std::stol(text.substr(0, slash));
        long den = std::stol(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rat(std::stol(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    long scale = 1;
    for (size_t k = dot + 1; k < text.size(); ++k) scale *= 10;
    return Rat(std::stol(digits), scale);
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out << content;
}

// shared registry when the bound is the per-rank default, local otherwise
const AlgebraContext& make_context(int n, int bound, std::optional<AlgebraContext>& local) {
    int def = n <= 2 ? 8 : 9;
    if (bound == 0 || bound == def) return get_context(n);
    local.emplace(n, bound);
    return *local;
}

int run_reduce(int n, int bound, const std::string& text, const std::string& out_path) {
    std::optional<AlgebraContext> local;
    const AlgebraContext& ctx = make_context(n, bound, local);
    ExprPtr e;
    try {
        e = parse_expr(text, n);
    } catch (const ParseError& err) {
        std::cerr << "parse error: " << err.what() << "\n";
        return 2;
    }
    try {
        Value v = eval(e, ctx);
        write_output(out_path, to_string(value_poly(v, ctx)) + "\n");
    } catch (const BoundExceeded& err) {
        std::cerr << "bound exceeded: " << err.what() << "\n";
        return 3;
    } catch (const EvalError& err) {
        std::cerr << "evaluation error: " << err.what() << "\n";
        return 2;
    }
    return 0;
}

int emit_report(const std::vector<CheckResult>& results, const std::string& suite,
                std::optional<int> rank, const std::string& out_path) {
    nlohmann::json report;
    if (rank) report["rank"] = *rank;
    report["suite"] = suite;
    int pass = 0, failed = 0, skipped = 0;
    for (const CheckResult& r : results) {
        if (r.status == CheckStatus::Pass) ++pass;
        if (r.status == CheckStatus::Fail) ++failed;
        if (r.status == CheckStatus::Skipped) ++skipped;
    }
    report["summary"] = {{"pass", pass}, {"fail", failed}, {"skipped", skipped}};
    report["checks"] = to_json(results);
    write_output(out_path, report.dump(2) + "\n");
    return failed == 0 ? 0 : 1;
}

int run_verify(int n, int bound, int T, const std::string& suite, unsigned seed,
               const std::string& out_path) {
    static const std::set<std::string> symbolic = {
        "hopf", "unitarity", "sphere", "action",    "rmatrix",
        "forms", "gradient",  "haar",   "transpose", "confluence"};
    if (suite != "all" && suite != "interval" && !symbolic.count(suite)) {
        std::cerr << "unknown suite '" << suite << "'\n";
        return 2;
    }
    std::vector<CheckResult> results;
    auto extend = [&](std::vector<CheckResult> r) {
        for (auto& x : r) results.push_back(std::move(x));
    };
    if (suite == "interval" || suite == "all") extend(suite_interval(T, seed));
    if (suite == "interval") return emit_report(results, suite, std::nullopt, out_path);

    std::optional<AlgebraContext> local;
    const AlgebraContext& ctx = make_context(n, bound, local);
    using SuiteFn = std::function<std::vector<CheckResult>()>;
    std::vector<std::pair<std::string, SuiteFn>> table = {
        {"hopf", [&] { return suite_hopf(ctx); }},
        {"unitarity", [&] { return suite_unitarity(ctx); }},
        {"sphere", [&] { return suite_sphere(ctx); }},
        {"action", [&] { return suite_action(ctx, seed); }},
        {"rmatrix", [&] { return suite_rmatrix(n); }},
        {"forms", [&] { return suite_forms(ctx, n == 2 ? 3 : 2); }},
        {"gradient", [&] { return suite_gradient(ctx); }},
        {"transpose", [&] { return suite_transpose(ctx, seed); }},
        {"haar", [&] { return suite_haar(ctx, seed); }},
        {"confluence", [&] { return suite_confluence(ctx, seed); }},
    };
    if (suite == "all") {
        // independent suites fan out; assembly stays in table order
        std::vector<std::future<std::vector<CheckResult>>> jobs;
        for (auto& entry : table)
            jobs.push_back(std::async(std::launch::async, entry.second));
        for (auto& job : jobs) extend(job.get());
    } else {
        for (auto& entry : table)
            if (entry.first == suite) extend(entry.second());
    }
    return emit_report(results, suite, n, out_path);
}

struct StateSpec {
    bool is_counit;
    int k;
    std::string label;
};

std::vector<StateSpec> parse_states(const std::string& text) {
    std::vector<StateSpec> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        if (tok == "eps") {
            out.push_back({true, 0, tok});
        } else if (tok.size() > 1 && tok[0] == 'h') {
            out.push_back({false, std::stoi(tok.substr(1)), tok});
        } else {
            throw std::invalid_argument("bad state token '" + tok + "'");
        }
    }
    return out;
}

// weights file: whitespace-separated values w_0 .. w_T followed by the atom
QState load_weights(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open weights file " + path);
    std::vector<double> vals;
    double v;
    while (in >> v) vals.push_back(v);
    if (vals.size() < 2) throw std::runtime_error("weights file needs weights plus an atom");
    double atom = vals.back();
    vals.pop_back();
    return state_from_weights(std::move(vals), atom);
}

int run_mk(const std::string& q_text, int T, const std::string& states_text,
           const std::string& mode, bool assert_monotone, bool assert_envelope,
           const std::string& weights_path, const std::string& out_path) {
    Rat qr = parse_rat(q_text);
    double q = rat_to_double(qr);
    if (!(q > 0.0 && q < 1.0)) {
        std::cerr << "q must lie in (0,1)\n";
        return 2;
    }
    std::vector<StateSpec> specs;
    try {
        specs = parse_states(states_text);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    if (mode != "float" && mode != "exact") {
        std::cerr << "mode must be float or exact\n";
        return 2;
    }
    bool exact = mode == "exact";
    QState base;
    QStateR base_e = haar_state_iq_exact(qr, T);
    if (weights_path.empty()) {
        base = haar_state_iq(q, T);
    } else {
        base = load_weights(weights_path);
        if (base.T != T) {
            std::cerr << "weights file truncation " << base.T << " does not match -T " << T
                      << "\n";
            return 2;
        }
        if (exact) {
            std::cerr << "exact mode requires the built-in base measure\n";
            return 2;
        }
    }
    auto build = [&](const StateSpec& s) {
        return s.is_counit ? counit_state(T) : hk_state(s.k, base, q);
    };
    auto build_e = [&](const StateSpec& s) {
        return s.is_counit ? counit_state_exact(T) : hk_state_exact(s.k, base_e, qr);
    };

    std::string csv = "q,k,mk_upper,tail_bound,T\n";
    bool ok = true;
    std::map<int, double> dist_to_counit;
    for (size_t a = 0; a < specs.size(); ++a)
        for (size_t b = a + 1; b < specs.size(); ++b) {
            double d;
            if (exact) {
                QStateR mu = build_e(specs[a]), nu = build_e(specs[b]);
                RadVec v = mk_lp_exact(mu, nu, qr);  // certificate checked inside
                d = v.eval(qr, T);
            } else {
                QState mu = build(specs[a]), nu = build(specs[b]);
                d = mk_closed_form(mu, nu, q);
                double lp = mk_lp_oracle(mu, nu, q);
                if (std::abs(d - lp) > 1e-9) {
                    std::cerr << "oracle disagreement on " << specs[a].label << ","
                              << specs[b].label << "\n";
                    ok = false;
                }
            }
            int kmin = 0;
            if (!specs[a].is_counit && !specs[b].is_counit)
                kmin = std::min(specs[a].k, specs[b].k);
            else if (!specs[a].is_counit)
                kmin = specs[a].k;
            else if (!specs[b].is_counit)
                kmin = specs[b].k;
            double envelope = tail_edge(q, kmin - 1);
            csv += q_text + "," + specs[a].label + ":" + specs[b].label + "," + fmt12(d) + "," +
                   fmt12(envelope) + "," + std::to_string(T) + "\n";
            if ((specs[a].is_counit || specs[b].is_counit) && assert_envelope && d > envelope + 1e-12) {
                std::cerr << "envelope violated for " << specs[a].label << ":" << specs[b].label
                          << "\n";
                ok = false;
            }
            if (specs[a].is_counit && !specs[b].is_counit)
                dist_to_counit[specs[b].k] = d;
            if (specs[b].is_counit && !specs[a].is_counit)
                dist_to_counit[specs[a].k] = d;
        }
    if (assert_monotone) {
        double prev = -1;
        bool first = true;
        for (const auto& kv : dist_to_counit) {
            if (!first && kv.second >= prev) {
                std::cerr << "monotone decrease violated at k=" << kv.first << "\n";
                ok = false;
            }
            prev = kv.second;
            first = false;
        }
    }
    write_output(out_path, csv);
    return ok ? 0 : 1;
}

int run_approx(const std::string& q_text, int T, int level, int count, unsigned seed,
               const std::string& out_path) {
    double q = rat_to_double(parse_rat(q_text));
    if (!(q > 0.0 && q < 1.0)) {
        std::cerr << "q must lie in (0,1)\n";
        return 2;
    }
    if (level > T) {
        std::cerr << "level exceeds the truncation\n";
        return 2;
    }
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::string csv = "q,level,f,sup_error,bound,margin,status\n";
    bool ok = true;
    for (int t = 0; t < count; ++t) {
        // random element of the unit ball of the gradient seminorm: walk the
        // chain with increments scaled by the edge lengths
        QFunction f(T, 0.0);
        double cur = u(rng);
        f.tail = cur;
        for (int m = T; m >= 0; --m) {
            cur += u(rng) * edge_len(q, m);
            f.v[m] = cur;
        }
        double err = sup_distance(f, psi_approx(f, level));
        double bound = c_factor(q) * std::pow(q, level) * seminorm_grad(f, q);
        bool pass = err <= bound + 1e-12;
        ok &= pass;
        csv += q_text + "," + std::to_string(level) + "," + std::to_string(t) + "," + fmt12(err) +
               "," + fmt12(bound) + "," + fmt12(bound - err) + "," + (pass ? "pass" : "fail") +
               "\n";
    }
    write_output(out_path, csv);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbolic and metric toolkit for the deformed unitary coordinate algebras"};
    app.require_subcommand(1);

    int n = 2, bound = 0, T = 60, level = 3, count = 100;
    unsigned seed = 42;
    std::string q_text = "0.5", mode = "float", out_path, suite = "all", states = "h0,h1,eps";
    std::string expr_text, weights_path;
    bool assert_monotone = false, assert_envelope = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("-N,--rank", n, "ambient rank (2 or 3 for the full suites)");
        cmd->add_option("--bound", bound, "completion degree bound (0 = per-rank default)");
        cmd->add_option("--out", out_path, "write output to a file instead of stdout");
        cmd->add_option("--seed", seed, "seed for randomized corpora");
    };

    CLI::App* creduce = app.add_subcommand("reduce", "normal form of an expression");
    add_common(creduce);
    creduce->add_option("expr", expr_text, "expression to reduce")->required();

    CLI::App* cverify = app.add_subcommand("verify", "run a verification suite");
    add_common(cverify);
    cverify->add_option("--suite", suite,
                        "hopf|unitarity|sphere|action|rmatrix|forms|gradient|transpose|haar|"
                        "confluence|interval|all");
    cverify->add_option("-T,--truncation", T, "truncation level for the interval suite");

    CLI::App* cmk = app.add_subcommand("mk", "pairwise transport distances between states");
    add_common(cmk);
    cmk->add_option("--q", q_text, "deformation parameter in (0,1), decimal or a/b");
    cmk->add_option("-T,--truncation", T, "truncation level");
    cmk->add_option("--states", states, "comma list like h0,h3,eps");
    cmk->add_option("--mode", mode, "float|exact");
    cmk->add_flag("--assert-monotone", assert_monotone,
                  "fail unless distances to eps decrease in k");
    cmk->add_flag("--assert-envelope", assert_envelope,
                  "fail unless distances to eps respect the chain envelope");
    cmk->add_option("--base-weights", weights_path,
                    "file with base-measure weights w_0..w_T and the atom");

    CLI::App* capprox = app.add_subcommand("approx", "finite-rank approximation error table");
    add_common(capprox);
    capprox->add_option("--q", q_text, "deformation parameter in (0,1), decimal or a/b");
    capprox->add_option("-T,--truncation", T, "truncation level");
    capprox->add_option("--level", level, "approximation level");
    capprox->add_option("--count", count, "number of sampled functions");

    CLI11_PARSE(app, argc, argv);

    if (const char* env = std::getenv("QFLAG_MODE")) mode = env;

    try {
        if (creduce->parsed()) return run_reduce(n, bound, expr_text, out_path);
        if (cverify->parsed()) return run_verify(n, bound, T, suite, seed, out_path);
        if (cmk->parsed())
            return run_mk(q_text, T, states, mode, assert_monotone, assert_envelope,
                          weights_path, out_path);
        if (capprox->parsed()) return run_approx(q_text, T, level, count, seed, out_path);
    } catch (const BoundExceeded& e) {
        std::cerr << "bound exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
