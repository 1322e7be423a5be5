#pragma once

// The `frechet` command line: decide, compute, gen, verify, bench, fsd-export.
// Exit codes: 0 YES / success, 1 NO, 2 usage or input error, 3 verification disagreement.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "frechet/frechet.hpp"
#include "fsd_render.hpp"

namespace frechet::tools {

inline constexpr int kExitYes = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDisagree = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// FRECHET_SEED if set and numeric, else 1.
inline std::uint64_t default_seed() {
    if (const char* s = std::getenv("FRECHET_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(s, &end, 10);
        if (end != s && *end == '\0') return v;
    }
    return 1;
}

/// Independent per-trial seed, so a single trial can be replayed.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (trial + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::string fixed12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", v);
    return buf;
}

inline bool run_decider(const std::string& algo, const Curve& P, const Curve& Q, double delta, int tau,
                        StripStrategy strategy = StripStrategy::Direct) {
    if (algo == "baseline") return decide_baseline(P, Q, delta);
    if (algo == "fast") return decide_fast(P, Q, delta, BoxParams{tau}, strategy);
    if (algo == "wordram") return decide_wordram(P, Q, delta, BoxParams{tau});
    throw UsageError("unknown algorithm " + algo);
}

// ---------------------------------------------------------------- decide / compute

struct PairArgs {
    std::string a, b;
};

inline int cmd_decide(const PairArgs& files, double delta, const std::string& algo, int tau, const std::string& strategy,
                      bool json, std::ostream& out) {
    if (!(delta > 0.0) || !std::isfinite(delta)) throw UsageError("--delta must be a positive number");
    const Curve P = read_curve(files.a), Q = read_curve(files.b);
    const StripStrategy st = strategy == "arrangement" ? StripStrategy::Arrangement : StripStrategy::Direct;
    const bool yes = run_decider(algo, P, Q, delta, tau, st);
    if (json) {
        nlohmann::json j{{"verdict", yes ? "YES" : "NO"}, {"delta", delta}, {"algo", algo}};
        if (algo != "baseline") j["tau"] = tau;
        out << j.dump() << "\n";
    } else {
        out << (yes ? "YES" : "NO") << "\n";
    }
    return yes ? kExitYes : kExitNo;
}

inline int cmd_compute(const PairArgs& files, const std::string& algo, std::uint64_t seed, bool json,
                       std::ostream& out) {
    const Curve P = read_curve(files.a), Q = read_curve(files.b);
    nlohmann::json j{{"algo", algo}};
    double value = 0.0;
    if (algo == "bruteforce") {
        value = compute_bruteforce(P, Q);
    } else {
        std::mt19937_64 rng(seed);
        const FrechetResult r = compute_frechet(P, Q, rng);
        value = r.value;
        j["interval"] = {r.interval.a, r.interval.b};
        j["samples"] = r.samples;
        j["candidates"] = r.candidates;
        j["decisions"] = r.decisions;
        j["seed"] = seed;
    }
    if (json) {
        j["distance"] = value;
        out << j.dump() << "\n";
    } else {
        out << fixed12(value) << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------- gen

inline int cmd_gen(const std::string& kind, std::size_t n, std::uint64_t seed, const std::vector<std::string>& outs,
                   double amplitude, double sigma, std::ostream& out) {
    if (n < 1) throw UsageError("--n must be at least 1");
    std::mt19937_64 rng(seed);
    const bool pair = kind == "perturbed" || kind == "zigzag";
    if (outs.size() != (pair ? 2u : 1u))
        throw UsageError("--out needs " + std::string(pair ? "two paths" : "one path") + " for kind " + kind);
    std::vector<Curve> curves;
    try {
        if (kind == "walk") {
            curves.push_back(random_walk(n, rng));
        } else if (kind == "circle") {
            curves.push_back(circle_curve(n, amplitude));
        } else if (kind == "perturbed") {
            CurvePair p = perturbed_pair(n, rng, sigma);
            curves = {p.first, p.second};
        } else {
            CurvePair p = zigzag_pair(n, amplitude);
            curves = {p.first, p.second};
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    for (std::size_t k = 0; k < curves.size(); ++k) {
        write_curve(outs[k], curves[k]);
        out << "wrote " << outs[k] << " (" << curves[k].vertex_count() << " points)\n";
    }
    return 0;
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
    std::size_t trials = 1000;
    std::size_t nmax = 32;
    std::vector<int> taus{1, 2, 3};
    std::uint64_t seed = 1;
    std::optional<std::size_t> inject_fault;  // flip the fast verdict in this trial
    std::string artifact;                     // where to dump a failing instance
};

struct VerifyReport {
    std::size_t trials = 0;
    std::size_t checks = 0;
    std::map<int, std::size_t> tau_coverage;
    bool ok = true;
    nlohmann::json failure;
};

inline VerifyReport run_verify(const VerifyOptions& opt) {
    VerifyReport rep;
    for (std::size_t t = 0; t < opt.trials && rep.ok; ++t) {
        const std::uint64_t ts = trial_seed(opt.seed, t);
        std::mt19937_64 rng(ts);
        std::uniform_int_distribution<std::size_t> pick_n(2, std::max<std::size_t>(opt.nmax, 2));
        const std::size_t np = pick_n(rng), nq = pick_n(rng);
        Curve P = random_walk(np, rng);
        Curve Q = t % 2 ? perturbed(P.sub_curve(0, std::min(np, nq) - 1), 0.5, rng) : random_walk(nq, rng);
        const double dstar = compute_bruteforce(P, Q);
        const FrechetResult rnd = compute_frechet(P, Q, rng);

        auto fail = [&](const std::string& what, double delta, bool expected, bool got) {
            rep.ok = false;
            rep.failure = {{"trial", t},         {"trial_seed", ts}, {"check", what},
                           {"delta", delta},     {"expected", expected}, {"got", got},
                           {"P", curve_to_json(P)["points"]}, {"Q", curve_to_json(Q)["points"]}};
        };
        ++rep.checks;
        if (rnd.value != dstar) {
            fail("randomized compute", dstar, true, false);
            rep.failure["bruteforce"] = dstar;
            rep.failure["randomized"] = rnd.value;
            break;
        }
        for (double f : {0.5, 1.0, 1.001}) {
            const double delta = dstar * f;
            const bool ref = decide_baseline(P, Q, delta);
            for (int tau : opt.taus) {
                ++rep.tau_coverage[tau];
                for (StripStrategy st : {StripStrategy::Direct, StripStrategy::Arrangement}) {
                    bool got = decide_fast(P, Q, delta, BoxParams{tau}, st);
                    if (opt.inject_fault && *opt.inject_fault == t) got = !got;
                    ++rep.checks;
                    if (got != ref) {
                        fail(std::string("fast tau=") + std::to_string(tau) +
                                 (st == StripStrategy::Direct ? " direct" : " arrangement"),
                             delta, ref, got);
                        break;
                    }
                }
                if (!rep.ok) break;
                if (tau <= kMaxPackedTau) {
                    const bool got = decide_wordram(P, Q, delta, BoxParams{tau});
                    ++rep.checks;
                    if (got != ref) {
                        fail("wordram tau=" + std::to_string(tau), delta, ref, got);
                        break;
                    }
                }
            }
            if (!rep.ok) break;
        }
        ++rep.trials;
    }
    return rep;
}

inline int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
    for (int tau : opt.taus)
        if (tau < 1 || tau > kMaxTau) throw UsageError("--taus entries must lie in [1, 8]");
    const VerifyReport rep = run_verify(opt);
    out << "trials " << rep.trials << ", checks " << rep.checks << "\n";
    for (const auto& [tau, count] : rep.tau_coverage) out << "tau " << tau << ": " << count << " decisions\n";
    if (rep.ok) {
        out << "OK\n";
        return 0;
    }
    err << "DISAGREEMENT in trial " << rep.failure["trial"] << " (" << rep.failure["check"].get<std::string>()
        << ")\n";
    err << "trial seed " << rep.failure["trial_seed"] << "; instance:\n";
    const std::string dump = rep.failure.dump(2);
    if (!opt.artifact.empty()) {
        std::ofstream f(opt.artifact);
        f << dump << "\n";
        err << "instance written to " << opt.artifact << "\n";
    }
    err << dump << "\n";
    return kExitDisagree;
}

// ---------------------------------------------------------------- bench

struct BenchRow {
    std::string algo;
    std::size_t n = 0;
    int tau = 0;
    std::size_t trials = 0;
    double median_seconds = 0.0;
    double cache_hit_rate = 0.0;
    bool agreement = true;
};

/// Least-squares slope of log(time) against log(n).
inline double loglog_slope(const std::vector<std::pair<double, double>>& pts) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [n, t] : pts) {
        const double x = std::log(n), y = std::log(t);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = double(pts.size());
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream o;
    o << "algorithm,n,tau,trials,median_seconds,cache_hit_rate,agreement\n";
    for (const auto& r : rows)
        o << r.algo << ',' << r.n << ',' << r.tau << ',' << r.trials << ',' << format_double(r.median_seconds) << ','
          << format_double(r.cache_hit_rate) << ',' << (r.agreement ? "true" : "false") << "\n";
    return o.str();
}

inline std::string bench_markdown(const std::vector<BenchRow>& rows, const std::map<std::string, double>& slopes) {
    std::ostringstream o;
    o << "| algorithm | n | tau | trials | median time (s) | cache hit rate | agreement |\n";
    o << "|---|---|---|---|---|---|---|\n";
    char buf[64];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.6f", r.median_seconds);
        o << "| " << r.algo << " | " << r.n << " | " << r.tau << " | " << r.trials << " | " << buf << " | ";
        std::snprintf(buf, sizeof buf, "%.3f", r.cache_hit_rate);
        o << buf << " | " << (r.agreement ? "yes" : "NO") << " |\n";
    }
    o << "\n";
    for (const auto& [algo, s] : slopes) {
        std::snprintf(buf, sizeof buf, "%.3f", s);
        o << "log-log slope " << algo << ": " << buf << "\n";
    }
    return o.str();
}

struct BenchOptions {
    std::vector<std::string> algos{"baseline", "fast", "wordram"};
    std::vector<std::size_t> sizes{256, 512, 1024, 2048};
    int tau = 2;
    std::size_t trials = 3;
    std::uint64_t seed = 1;
    std::string out;
};

inline int cmd_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err) {
    using clock = std::chrono::steady_clock;
    std::vector<BenchRow> rows;
    std::map<std::string, std::vector<std::pair<double, double>>> series;
    for (std::size_t n : opt.sizes) {
        if (n < 2) throw UsageError("--sizes entries must be at least 2");
        std::vector<std::pair<Curve, Curve>> inputs;
        std::vector<double> deltas;
        for (std::size_t t = 0; t < opt.trials; ++t) {
            std::mt19937_64 rng(trial_seed(opt.seed, n * 1000 + t));
            CurvePair p = perturbed_pair(n, rng, 0.5);
            deltas.push_back(0.9 * discrete_compute_recurrence(p.first.vertices(), p.second.vertices()));
            inputs.emplace_back(std::move(p.first), std::move(p.second));
        }
        std::vector<bool> reference;
        for (std::size_t t = 0; t < opt.trials; ++t)
            reference.push_back(decide_baseline(inputs[t].first, inputs[t].second, deltas[t]));
        for (const std::string& algo : opt.algos) {
            BenchRow row{algo, n, algo == "baseline" ? 0 : opt.tau, opt.trials, 0.0, 0.0, true};
            std::vector<double> times;
            std::size_t hits = 0, lookups = 0;
            for (std::size_t t = 0; t < opt.trials; ++t) {
                const Curve& P = inputs[t].first;
                const Curve& Q = inputs[t].second;
                bool v = false;
                const auto t0 = clock::now();
                if (algo == "baseline") {
                    v = decide_baseline(P, Q, deltas[t]);
                } else if (algo == "fast") {
                    FastStats st;
                    FastOptions fo;
                    fo.params = BoxParams{opt.tau};
                    v = decide_fast(P, Q, deltas[t], fo, &st);
                    hits += st.cache_hits;
                    lookups += st.cache_hits + st.cache_misses;
                } else {
                    WordRamStats st;
                    v = decide_wordram(P, Q, deltas[t], BoxParams{opt.tau}, &st);
                    hits += st.lookup_hits;
                    lookups += st.lookup_hits + st.lookup_misses;
                }
                times.push_back(std::chrono::duration<double>(clock::now() - t0).count());
                row.agreement = row.agreement && v == reference[t];
            }
            std::sort(times.begin(), times.end());
            row.median_seconds = times[times.size() / 2];
            row.cache_hit_rate = lookups ? double(hits) / double(lookups) : 0.0;
            rows.push_back(row);
            series[algo].emplace_back(double(n), std::max(row.median_seconds, 1e-9));
            if (!row.agreement) {
                err << "verdict disagreement: " << algo << " n=" << n << "\n";
                out << bench_csv(rows);
                return kExitDisagree;
            }
        }
    }
    std::map<std::string, double> slopes;
    for (const auto& [algo, pts] : series)
        if (pts.size() >= 2) slopes[algo] = loglog_slope(pts);
    const std::string csv = bench_csv(rows), md = bench_markdown(rows, slopes);
    if (!opt.out.empty()) {
        std::ofstream c(opt.out + ".csv"), m(opt.out + ".md");
        if (!c || !m) throw UsageError("cannot write " + opt.out + ".csv / .md");
        c << csv;
        m << md;
    }
    out << md;
    return 0;
}

// ---------------------------------------------------------------- fsd-export

inline int cmd_fsd_export(const PairArgs& files, double delta, const std::string& svg, const std::string& json,
                          std::ostream& out) {
    if (!(delta > 0.0) || !std::isfinite(delta)) throw UsageError("--delta must be a positive number");
    if (svg.empty() && json.empty()) throw UsageError("give --svg and/or --json");
    const Curve P = read_curve(files.a), Q = read_curve(files.b);
    if (P.edge_count() == 0 || Q.edge_count() == 0) throw UsageError("fsd-export needs curves with at least one edge");
    const FsdDiagram d = export_fsd(P, Q, delta, 64);
    auto write = [](const std::string& path, const std::string& text) {
        std::ofstream f(path, std::ios::binary);
        if (!f || !(f << text)) throw UsageError("cannot write " + path);
    };
    if (!svg.empty()) write(svg, fsd_to_svg(d));
    if (!json.empty()) write(json, fsd_to_json(d).dump() + "\n");
    out << (d.verdict ? "YES" : "NO") << "\n";
    return 0;
}

// ---------------------------------------------------------------- entry point

inline int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Frechet distance of polygonal curves: decide, compute, generate, verify, benchmark"};
    app.require_subcommand(1);
    const std::uint64_t env_seed = default_seed();

    PairArgs files;
    double delta = 0.0;
    std::string algo = "baseline", strategy = "direct";
    int tau = 0;
    std::uint64_t seed = env_seed;
    bool json = false;

    auto* decide = app.add_subcommand("decide", "Is the Frechet distance at most delta?");
    decide->add_option("curve_a", files.a)->required();
    decide->add_option("curve_b", files.b)->required();
    decide->add_option("--delta", delta)->required();
    decide->add_option("--algo", algo)->check(CLI::IsMember({"baseline", "fast", "wordram"}));
    decide->add_option("--tau", tau, "box size (default 3 for fast, 2 for wordram)");
    decide->add_option("--strategy", strategy, "strip queries for fast")->check(CLI::IsMember({"direct", "arrangement"}));
    decide->add_option("--seed", seed, "unused by the deciders; accepted for uniformity");
    decide->add_flag("--json", json);

    std::string compute_algo = "randomized";
    auto* compute = app.add_subcommand("compute", "Exact Frechet distance");
    compute->add_option("curve_a", files.a)->required();
    compute->add_option("curve_b", files.b)->required();
    compute->add_option("--algo", compute_algo)->check(CLI::IsMember({"bruteforce", "randomized"}));
    compute->add_option("--seed", seed);
    compute->add_flag("--json", json);

    std::string kind;
    std::size_t n = 0;
    std::vector<std::string> outs;
    double amplitude = 1.0, sigma = 0.25;
    auto* gen = app.add_subcommand("gen", "Generate curves");
    gen->add_option("--kind", kind)->required()->check(CLI::IsMember({"walk", "perturbed", "zigzag", "circle"}));
    gen->add_option("--n", n)->required();
    gen->add_option("--seed", seed);
    gen->add_option("--out", outs, "output path (two for perturbed and zigzag)")->required();
    gen->add_option("--amplitude", amplitude, "zigzag amplitude / circle radius");
    gen->add_option("--sigma", sigma, "noise for perturbed");

    VerifyOptions vopt;
    std::size_t fault = 0;
    auto* verify = app.add_subcommand("verify", "Cross-check all deciders against the baseline");
    verify->add_option("--trials", vopt.trials);
    verify->add_option("--nmax", vopt.nmax);
    verify->add_option("--taus", vopt.taus)->delimiter(',');
    verify->add_option("--seed", seed);
    verify->add_option("--artifact", vopt.artifact, "file for a failing instance");
    auto* fault_opt = verify->add_option("--inject-fault", fault, "test hook: flip a verdict in this trial");

    BenchOptions bopt;
    auto* bench = app.add_subcommand("bench", "Time the deciders");
    bench->add_option("--algos", bopt.algos)->delimiter(',')->check(CLI::IsMember({"baseline", "fast", "wordram"}));
    bench->add_option("--sizes", bopt.sizes)->delimiter(',');
    bench->add_option("--tau", bopt.tau);
    bench->add_option("--trials", bopt.trials);
    bench->add_option("--seed", seed);
    bench->add_option("--out", bopt.out, "writes <out>.csv and <out>.md");

    std::string svg, json_path;
    auto* fsd = app.add_subcommand("fsd-export", "Free-space diagram as SVG and JSON");
    fsd->add_option("curve_a", files.a)->required();
    fsd->add_option("curve_b", files.b)->required();
    fsd->add_option("--delta", delta)->required();
    fsd->add_option("--svg", svg);
    fsd->add_option("--json", json_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (decide->parsed()) {
            if (tau == 0) tau = algo == "wordram" ? 2 : 3;
            if (tau < 1 || tau > kMaxTau) throw UsageError("--tau must lie in [1, 8]");
            return cmd_decide(files, delta, algo, tau, strategy, json, out);
        }
        if (compute->parsed()) return cmd_compute(files, compute_algo, seed, json, out);
        if (gen->parsed()) return cmd_gen(kind, n, seed, outs, amplitude, sigma, out);
        if (verify->parsed()) {
            vopt.seed = seed;
            if (fault_opt->count()) vopt.inject_fault = fault;
            return cmd_verify(vopt, out, err);
        }
        if (bench->parsed()) {
            if (bopt.tau < 1 || bopt.tau > kMaxTau) throw UsageError("--tau must lie in [1, 8]");
            bopt.seed = seed;
            return cmd_bench(bopt, out, err);
        }
        if (fsd->parsed()) return cmd_fsd_export(files, delta, svg, json_path, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CurveParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace frechet::tools
