#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "girthforge/batch.hpp"
#include "girthforge/budget.hpp"
#include "girthforge/census.hpp"
#include "girthforge/diagnostics.hpp"
#include "girthforge/edge_list.hpp"
#include "girthforge/graph.hpp"
#include "girthforge/nibble.hpp"
#include "girthforge/process.hpp"
#include "girthforge/schedule.hpp"
#include "girthforge/spectral.hpp"
#include "girthforge/text_format.hpp"

namespace girthforge::cli {

namespace {

// A failed check that should end the command with exit code 1.
struct CheckFailed {
    std::string message;
};

std::string girth_text(const std::optional<std::uint32_t>& g) { return g ? std::to_string(*g) : "inf"; }

struct ProcessFlags {
    std::size_t n = 0;
    std::uint32_t k = 3;
    std::optional<double> c;
    std::optional<std::uint32_t> g;
    std::uint64_t rejection_cap = 0;
    bool debug_checks = false;
    std::string start_path;

    void attach(CLI::App* app, bool allow_start = false) {
        auto* on = app->add_option("--n", n, "number of vertices (even)");
        if (allow_start) {
            app->add_option("--start", start_path, "start graph edge list instead of the Hamilton cycle");
        } else {
            on->required();
        }
        app->add_option("--k", k, "target degree")->capture_default_str();
        auto* oc = app->add_option("--c", c, "girth exponent, g = floor(c log_{k-1} n)");
        auto* og = app->add_option("--g", g, "girth target");
        oc->excludes(og);
        og->excludes(oc);
        app->add_option("--rejection-cap", rejection_cap, "rejections before enumeration (0 = adaptive)");
        app->add_flag("--debug-checks", debug_checks, "check the Moore bound after every step");
    }

    ProcessConfig config() const {
        if (!c && !g) throw ConfigError("one of --c or --g is required");
        ProcessConfig pc;
        if (!start_path.empty()) {
            pc.start = std::make_shared<const Graph>(read_edge_list(std::filesystem::path(start_path)));
        } else if (n == 0) {
            throw ConfigError("--n is required");
        }
        pc.n = n;
        pc.k = k;
        pc.girth_target = g ? *g : derive_girth_target(pc.start ? pc.start->vertex_count() : n, k, *c);
        pc.rejection_cap = rejection_cap;
        pc.debug_checks = debug_checks;
        validate(pc);
        return pc;
    }
};

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    return f;
}

struct Context {
    std::ostream& out;
    std::ostream& err;
    unsigned workers = 1;
    int verbosity = 0;
};

// generate ---------------------------------------------------------------

struct GenerateCmd {
    ProcessFlags flags;
    std::uint64_t seed = 0;
    std::string out_path;

    void attach(CLI::App* app) {
        flags.attach(app, true);
        app->add_option("--seed", seed, "RNG seed")->capture_default_str();
        app->add_option("--out", out_path, "edge-list output path (stdout when omitted)");
    }

    int run(Context& ctx) const {
        ProcessConfig pc = flags.config();
        pc.seed = seed;
        pc.keep_graph = true;
        const RunRecord rec = girthforge::run(pc);
        std::ostream& summary = out_path.empty() ? ctx.err : ctx.out;
        if (out_path.empty()) {
            write_edge_list(ctx.out, *rec.graph);
        } else {
            write_edge_list(std::filesystem::path(out_path), *rec.graph);
        }
        summary << "g_target=" << pc.girth_target << '\n'
                << "girth=" << girth_text(rec.girth_achieved) << '\n'
                << "saturated=" << (rec.saturated ? 1 : 0) << '\n'
                << "t_freeze=" << rec.t_freeze << '\n';
        return rec.saturated ? kExitOk : kExitCheckFailed;
    }
};

// batch ------------------------------------------------------------------

struct BatchCmd {
    ProcessFlags flags;
    std::size_t trials = 1;
    std::uint64_t seed_base = 0;
    std::string csv_path;
    std::string graph_dir;
    bool wall_clock = false;

    void attach(CLI::App* app) {
        flags.attach(app);
        app->add_option("--trials", trials, "number of runs")->capture_default_str();
        app->add_option("--seed-base", seed_base, "trial i uses seed base + i")->capture_default_str();
        app->add_option("--csv", csv_path, "run CSV output path (stdout when omitted)");
        app->add_option("--graph-dir", graph_dir, "write each final graph to <dir>/<seed>.txt");
        app->add_flag("--wall-clock", wall_clock, "fill wall_ms instead of NA (output then varies)");
    }

    int run(Context& ctx) const {
        ProcessConfig pc = flags.config();
        pc.keep_graph = !graph_dir.empty();
        const auto seeds = seed_range(seed_base, trials);
        const auto records = batch_run(pc, seeds, ctx.workers);
        if (csv_path.empty()) {
            write_run_csv(ctx.out, records, wall_clock);
        } else {
            write_run_csv(std::filesystem::path(csv_path), records, wall_clock);
        }
        if (!graph_dir.empty()) {
            std::filesystem::create_directories(graph_dir);
            for (const auto& r : records) {
                write_edge_list(std::filesystem::path(graph_dir) / (std::to_string(r.seed) + ".txt"), *r.graph);
            }
        }
        const auto saturated = std::count_if(records.begin(), records.end(), [](const RunRecord& r) { return r.saturated; });
        ctx.err << "saturated=" << saturated << '/' << records.size() << '\n';
        return kExitOk;
    }
};

// verify -----------------------------------------------------------------

struct VerifyCmd {
    std::string in;
    std::uint32_t g = 3;
    std::optional<std::uint32_t> k;

    void attach(CLI::App* app) {
        app->add_option("--in", in, "edge-list file")->required();
        app->add_option("--g", g, "required girth")->required();
        app->add_option("--k", k, "required degree (default: the graph's max degree)");
    }

    int run(Context& ctx) const {
        const Graph graph = read_edge_list(std::filesystem::path(in));
        const std::uint32_t kk = k ? *k : std::max<std::uint32_t>(graph.max_degree(), 1);
        bool ok = true;

        const auto gi = girth(graph);
        const bool girth_ok = !gi || *gi >= g;
        ok &= girth_ok;
        ctx.out << "girth=" << girth_text(gi) << " required>=" << g << ' ' << (girth_ok ? "ok" : "FAIL") << '\n';

        const std::uint32_t dmin = graph.vertex_count() == 0 ? 0 : graph.min_degree();
        const std::uint32_t dmax = graph.max_degree();
        const bool degree_ok = dmax <= kk;
        ok &= degree_ok;
        ctx.out << "degree_min=" << dmin << " degree_max=" << dmax << " k=" << kk << ' '
                << (degree_ok ? "ok" : "FAIL") << '\n';

        const bool regular = degree_ok && dmin == kk;
        ctx.out << "regular=" << (regular ? 1 : 0) << '\n';
        if (degree_ok && !regular) {
            if (kk < 3 || g < 3) {
                ctx.out << "safe=NA (needs k >= 3 and g >= 3)\n";
                ok = false;
            } else {
                // a safe graph has every degree in {k-1, k}
                const ProcessState state(graph, kk, g);
                const SafetyReport safety = is_safe(state);
                const bool safe = safety.safe && dmin + 1 == kk;
                ok &= safe;
                ctx.out << "safe=" << (safe ? 1 : 0);
                if (safety.violating_pair) {
                    ctx.out << " violating_pair=" << safety.violating_pair->u << ',' << safety.violating_pair->v
                            << " distance=" << safety.min_pair_distance->to_string();
                }
                ctx.out << '\n';
            }
        }
        return ok ? kExitOk : kExitCheckFailed;
    }
};

// stats ------------------------------------------------------------------

struct StatsCmd {
    std::string in;
    std::uint32_t g = 3;
    std::optional<std::uint32_t> k;
    std::optional<std::string> csv;
    std::optional<double> c;
    double C = 1.0;

    void attach(CLI::App* app) {
        app->add_option("--in", in, "edge-list file")->required();
        app->add_option("--g", g, "girth target")->required();
        app->add_option("--k", k, "target degree (default: max degree, at least 3)");
        app->add_option("--csv", csv, "write l,P rows to a path, or stdout when no path follows")
            ->expected(0, 1);
        app->add_option("--c", c, "also report path-boundedness margins for this c");
        app->add_option("--log-power", C, "log power C for path-boundedness")->capture_default_str();
    }

    int run(Context& ctx) const {
        const Graph graph = read_edge_list(std::filesystem::path(in));
        const std::uint32_t kk = k ? *k : std::max<std::uint32_t>(graph.max_degree(), 3);
        const ProcessState state(graph, kk, g);
        const PathStats stats = path_stats(state);

        std::ostringstream rows;
        rows << "l,P\n";
        for (std::uint32_t l = 1; l <= stats.max_length; ++l) rows << l << ',' << stats.global[l] << '\n';
        if (csv && !csv->empty()) {
            auto f = open_out(*csv);
            f << rows.str();
            if (!f) throw std::runtime_error("write failed: " + *csv);
        } else {
            ctx.out << rows.str();
        }
        std::ostream& summary = (csv && csv->empty()) || !csv ? ctx.err : ctx.out;
        summary << "w_size=" << stats.w_size << '\n'
                << "forbidden=" << stats.forbidden_count << '\n'
                << "available=" << stats.available_count << '\n';
        if (c) {
            const Schedule sch = make_schedule(graph.vertex_count(), kk, *c);
            const PathBoundReport pb = is_path_bounded(stats, sch, C);
            summary << "path_bounded=" << (pb.bounded ? 1 : 0) << '\n'
                    << "worst_margin=" << format_real(pb.worst_margin) << '\n';
        }
        return kExitOk;
    }
};

// nibble-sim -------------------------------------------------------------

struct NibbleCmd {
    std::size_t n = 0;
    std::uint32_t k = 3;
    double c = 0.5;
    std::optional<std::uint32_t> g;
    std::optional<double> beta;
    std::size_t trials = 1;
    std::uint64_t seed_base = 0;
    std::optional<std::uint64_t> target_steps;
    std::size_t samples = 0;
    std::string csv_path;

    void attach(CLI::App* app) {
        app->add_option("--n", n, "number of vertices")->required();
        app->add_option("--k", k, "target degree")->capture_default_str();
        app->add_option("--c", c, "girth exponent")->capture_default_str();
        app->add_option("--g", g, "girth target (default derived from c)");
        app->add_option("--beta", beta, "override beta (scale surrogate)");
        app->add_option("--trials", trials, "number of seeds")->capture_default_str();
        app->add_option("--seed-base", seed_base, "trial i uses seed base + i")->capture_default_str();
        app->add_option("--target-steps", target_steps, "inner steps (default |W_t|/4)");
        app->add_option("--samples", samples, "tracked vertices per trial (0 = all)")->capture_default_str();
        app->add_option("--csv", csv_path, "trajectory CSV path");
    }

    int run(Context& ctx) const {
        const auto seeds = seed_range(seed_base, trials);
        std::vector<NibbleTrial> results(seeds.size());
        parallel_for(seeds.size(), ctx.workers, [&](std::size_t i) {
            NibbleTrialConfig tc;
            tc.n = n;
            tc.k = k;
            tc.c = c;
            tc.girth_target = g;
            tc.beta_override = beta;
            tc.target_steps = target_steps;
            tc.sample_vertices = samples;
            tc.seed = seeds[i];
            results[i] = run_nibble_trial(tc);
        });

        std::uint64_t total = 0;
        std::uint64_t violated = 0;
        double max_dev = 0.0;
        std::size_t reached = 0;
        std::unique_ptr<std::ofstream> csv;
        if (!csv_path.empty()) {
            csv = std::make_unique<std::ofstream>(open_out(csv_path));
            *csv << "seed,s,v,N,band_lo,band_hi,violated\n";
        }
        for (const auto& t : results) {
            if (!t.reached_snapshot) continue;
            ++reached;
            total += t.trajectory.samples.size();
            violated += t.trajectory.violations;
            max_dev = std::max(max_dev, t.trajectory.max_abs_deviation);
            if (csv) {
                for (const auto& s : t.trajectory.samples) {
                    *csv << t.seed << ',' << s.s << ',' << s.v << ',' << s.N << ',' << format_real(s.band_lo) << ','
                         << format_real(s.band_hi) << ',' << (s.violated ? 1 : 0) << '\n';
                }
            }
        }
        if (csv && !*csv) throw std::runtime_error("write failed: " + csv_path);

        const Schedule sch = make_schedule(n, k, c);
        const double beta_used = beta ? *beta : sch.beta;
        ctx.out << "beta_schedule=" << format_real(sch.beta) << '\n'
                << "beta_used=" << format_real(beta_used) << '\n'
                << "scale_surrogate=" << (beta ? 1 : 0) << '\n'
                << "trials_reaching_T=" << reached << '/' << results.size() << '\n'
                << "samples=" << total << '\n'
                << "violations=" << violated << '\n'
                << "violation_fraction=" << format_real(total == 0 ? 0.0 : double(violated) / double(total)) << '\n'
                << "max_abs_deviation=" << format_real(max_dev) << '\n';
        return kExitOk;
    }
};

// census -----------------------------------------------------------------

struct CensusCmd {
    std::size_t n = 0;
    std::uint32_t k = 3;
    std::optional<std::uint32_t> g;
    std::optional<double> c;
    bool exact = false;
    std::size_t trials = 100;
    std::uint64_t seed_base = 0;
    std::string csv_path;

    void attach(CLI::App* app) {
        app->add_option("--n", n, "number of vertices")->required();
        app->add_option("--k", k, "degree")->capture_default_str();
        auto* og = app->add_option("--g", g, "girth bound");
        auto* oc = app->add_option("--c", c, "girth exponent");
        og->excludes(oc);
        oc->excludes(og);
        app->add_flag("--exact", exact, "exhaustive enumeration (n <= 10)");
        app->add_option("--trials", trials, "runs for the estimate")->capture_default_str();
        app->add_option("--seed-base", seed_base, "trial i uses seed base + i")->capture_default_str();
        app->add_option("--csv", csv_path, "per-run detail CSV path");
    }

    int run(Context& ctx) const {
        if (exact) {
            if (!g) throw ConfigError("--exact needs --g");
            const std::uint64_t count = brute_force_census(n, k, *g, enumeration_budget(), ctx.workers);
            const double l10 = count == 0 ? -std::numeric_limits<double>::infinity() : std::log10(double(count));
            ctx.out << "log10_count_lower_bound=" << format_real(l10) << '\n';
            if (!csv_path.empty()) {
                auto f = open_out(csv_path);
                f << "n,k,g,exact_count\n" << n << ',' << k << ',' << *g << ',' << count << '\n';
                if (!f) throw std::runtime_error("write failed: " + csv_path);
            }
            ctx.err << "exact_count=" << count << '\n';
            return kExitOk;
        }
        ProcessFlags pf;
        pf.n = n;
        pf.k = k;
        pf.c = c;
        pf.g = g;
        ProcessConfig pc = pf.config();
        pc.accounting = ChoiceAccounting::Sampled;
        const auto seeds = seed_range(seed_base, trials);
        const auto records = batch_run(pc, seeds, ctx.workers);
        std::vector<CountEstimate> estimates;
        for (const auto& r : records) {
            if (r.saturated) estimates.push_back(make_count_estimate(r));
        }
        if (!csv_path.empty()) {
            auto f = open_out(csv_path);
            f << "seed,saturated,log_choices,total\n";
            for (const auto& r : records) {
                f << r.seed << ',' << (r.saturated ? 1 : 0) << ',' << format_real(r.log_choices) << ',';
                f << (r.saturated ? format_real(make_count_estimate(r).total) : std::string("NA")) << '\n';
            }
            if (!f) throw std::runtime_error("write failed: " + csv_path);
        }
        if (estimates.empty()) throw CheckFailed{"no run saturated; cannot assemble a bound"};
        const double rate = double(estimates.size()) / double(records.size());
        const LowerBound lb = assemble_lower_bound(estimates, rate);
        ctx.out << "log10_count_lower_bound=" << format_real(lb.log10_count) << '\n';
        ctx.err << "success_rate=" << format_real(rate) << '\n'
                << "analytic_reference_log10=" << format_real(lb.analytic_reference / std::log(10.0)) << '\n';
        return kExitOk;
    }
};

// geometry ---------------------------------------------------------------

struct GeometryCmd {
    std::string in;
    bool lambda = false;
    bool json = false;
    double tol = 1e-9;
    std::uint64_t max_iters = 100000;
    double slack = 0.0;

    void attach(CLI::App* app) {
        app->add_option("--in", in, "edge-list file")->required();
        app->add_flag("--lambda", lambda, "estimate the second eigenvalue");
        app->add_flag("--json", json, "emit JSON");
        app->add_option("--tol", tol, "power-iteration residual tolerance")->capture_default_str();
        app->add_option("--max-iters", max_iters, "power-iteration limit")->capture_default_str();
        app->add_option("--slack", slack, "near-Ramanujan slack")->capture_default_str();
    }

    int run(Context& ctx) const {
        const Graph graph = read_edge_list(std::filesystem::path(in));
        GeometryOptions opt;
        opt.lambda = lambda;
        opt.tol = tol;
        opt.max_iters = max_iters;
        opt.ramanujan_slack = slack;
        const GeometryReport r = geometry_report(graph, opt);
        if (json) {
            ctx.out << geometry_json(r) << '\n';
        } else {
            ctx.out << "girth=" << girth_text(r.girth) << '\n'
                    << "diameter=" << (r.diameter.diameter ? std::to_string(*r.diameter.diameter) : "inf") << '\n'
                    << "components=" << r.diameter.components << '\n';
            if (r.girth_cycle_count) {
                ctx.out << "girth_cycle_count=" << *r.girth_cycle_count << '\n'
                        << "cycle_bound=" << format_real(*r.cycle_bound) << '\n';
            }
            if (r.spectrum) {
                ctx.out << "lambda=" << format_real(r.spectrum->lambda) << '\n'
                        << "ramanujan_threshold=" << format_real(r.ramanujan_threshold) << '\n'
                        << "near_ramanujan=" << (*r.near_ramanujan ? 1 : 0) << '\n';
            }
        }
        if (r.girth_cycle_count && double(*r.girth_cycle_count) > *r.cycle_bound) {
            throw CheckFailed{"girth-cycle count exceeds its bound"};
        }
        return kExitOk;
    }
};

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"high-girth regular graph generator and diagnostics", "girthforge"};
    app.require_subcommand(1);
    Context ctx{out, err};
    app.add_option("--workers", ctx.workers, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_flag("-v,--verbose", ctx.verbosity, "more diagnostics on stderr");

    GenerateCmd generate;
    BatchCmd batch;
    VerifyCmd verify;
    StatsCmd stats;
    NibbleCmd nibble;
    CensusCmd census;
    GeometryCmd geometry;
    generate.attach(app.add_subcommand("generate", "run the process once and write the graph"));
    batch.attach(app.add_subcommand("batch", "seeded runs to a CSV"));
    verify.attach(app.add_subcommand("verify", "check girth, degrees and safety of an edge list"));
    stats.attach(app.add_subcommand("stats", "path statistics of an edge list"));
    nibble.attach(app.add_subcommand("nibble-sim", "nibble trajectory simulation"));
    census.attach(app.add_subcommand("census", "exact count or estimated lower bound"));
    geometry.attach(app.add_subcommand("geometry", "girth cycles, diameter, second eigenvalue"));
    // --workers and -v are accepted after the subcommand as well
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        auto* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (name == "generate") return generate.run(ctx);
        if (name == "batch") return batch.run(ctx);
        if (name == "verify") return verify.run(ctx);
        if (name == "stats") return stats.run(ctx);
        if (name == "nibble-sim") return nibble.run(ctx);
        if (name == "census") return census.run(ctx);
        if (name == "geometry") return geometry.run(ctx);
        return kExitUsage;
    } catch (const CheckFailed& e) {
        err << "check failed: " << e.message << '\n';
        return kExitCheckFailed;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
}

int dispatch(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dispatch(args, std::cout, std::cerr);
}

}  // namespace girthforge::cli
