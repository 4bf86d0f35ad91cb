#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "qbai/bai.hpp"
#include "qbai/bounds.hpp"
#include "qbai/classical.hpp"
#include "qbai/oracle.hpp"
#include "qbai/sweep.hpp"
#include "qbai/validation.hpp"

namespace {

using namespace qbai;

std::vector<double> parse_biases(const std::string& csv) {
    std::vector<double> p;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) p.push_back(std::stod(item));
    }
    return p;
}

BanditInstance resolve_instance(const std::string& p_csv, const std::string& file) {
    if (!p_csv.empty()) return make_instance(parse_biases(p_csv));
    if (!file.empty()) return load_instance(file);
    throw std::invalid_argument("provide an instance via --p or --file");
}

struct TrialStats {
    int successes = 0;
    double mean_cost = 0.0;
    double mean_raw = 0.0;
    std::vector<int> arms;
};

// Deterministic parallel trials: trial t always uses rng stream t.
template <typename Fn>
TrialStats run_trials(int trials, std::uint64_t seed, Fn&& trial_fn) {
    struct Outcome {
        int arm = -1;
        bool success = false;
        double cost = 0.0;
        double raw = 0.0;
    };
    std::vector<Outcome> outcomes(trials);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int t = next.fetch_add(1);
            if (t >= trials) return;
            Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(t));
            auto [arm, success, cost, raw] = trial_fn(rng);
            outcomes[t] = {arm, success, cost, raw};
        }
    };
    int n_threads = std::max(1, std::min(thread_cap(), trials));
    std::vector<std::thread> pool;
    for (int i = 1; i < n_threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    TrialStats stats;
    for (const Outcome& o : outcomes) {
        if (o.success) ++stats.successes;
        stats.mean_cost += o.cost / trials;
        stats.mean_raw += o.raw / trials;
        stats.arms.push_back(o.arm);
    }
    return stats;
}

int report_confidence(const TrialStats& stats, int trials, double delta) {
    double rate = static_cast<double>(stats.successes) / trials;
    double sigma = std::sqrt(delta * (1.0 - delta) / trials);
    double ci = 1.96 * std::sqrt(std::max(rate * (1.0 - rate), 1e-12) / trials);
    std::printf("trials            %d\n", trials);
    std::printf("success_rate      %.6f  (95%% CI +/- %.6f)\n", rate, ci);
    std::printf("required          %.6f  (1 - delta - 3 sigma)\n",
                1.0 - delta - 3.0 * sigma);
    std::printf("mean_modeled_cost %.6g\n", stats.mean_cost);
    std::printf("mean_raw_calls    %.6g\n", stats.mean_raw);
    if (trials <= 10) {
        std::printf("arms             ");
        for (int a : stats.arms) std::printf(" %d", a + 1);
        std::printf("\n");
    }
    return rate >= 1.0 - delta - 3.0 * sigma ? 0 : 1;
}

struct CommonArgs {
    std::string p_csv;
    std::string file;
    double delta = 0.05;
    int trials = 1;
    std::uint64_t seed = 1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--p", args.p_csv, "comma-separated biases");
    cmd->add_option("--file", args.file, "JSON instance file {\"p\": [..]}");
    cmd->add_option("--delta", args.delta, "confidence parameter");
    cmd->add_option("--trials", args.trials, "Monte Carlo trials");
    cmd->add_option("--seed", args.seed, "master seed");
}

int cmd_bestarm(const CommonArgs& args) {
    BanditInstance inst = resolve_instance(args.p_csv, args.file);
    TrialStats stats = run_trials(args.trials, args.seed, [&](Rng& rng) {
        BaiResult r = best_arm(inst, args.delta, rng);
        return std::tuple{r.arm, r.arm == inst.best, r.ledger.modeled_cost,
                          static_cast<double>(r.ledger.oracle_calls)};
    });
    return report_confidence(stats, args.trials, args.delta);
}

int cmd_pac(const CommonArgs& args, double eps) {
    BanditInstance inst = resolve_instance(args.p_csv, args.file);
    double p1 = *std::max_element(inst.p.begin(), inst.p.end());
    TrialStats stats = run_trials(args.trials, args.seed, [&](Rng& rng) {
        BaiResult r = pac_arm(inst, eps, args.delta, rng);
        return std::tuple{r.arm, inst.p[r.arm] >= p1 - eps, r.ledger.modeled_cost,
                          static_cast<double>(r.ledger.oracle_calls)};
    });
    return report_confidence(stats, args.trials, args.delta);
}

int cmd_baseline(const CommonArgs& args) {
    BanditInstance inst = resolve_instance(args.p_csv, args.file);
    GapProfile gaps = hardness(inst);

    int se_hits = 0, naive_hits = 0;
    double se_pulls = 0.0, naive_total = 0.0;
    for (int t = 0; t < args.trials; ++t) {
        Rng rng = Rng::stream(args.seed, static_cast<std::uint64_t>(t));
        ClassicalResult se = successive_elimination(inst, args.delta, rng);
        ClassicalResult nv = naive(inst, gaps.delta2, args.delta, rng);
        if (se.arm == inst.best) ++se_hits;
        if (nv.arm == inst.best) ++naive_hits;
        se_pulls += static_cast<double>(se.pulls_total) / args.trials;
        naive_total += static_cast<double>(nv.pulls_total) / args.trials;
    }
    std::printf("H                  %.6g\n", gaps.H);
    std::printf("se_success_rate    %.6f\n", static_cast<double>(se_hits) / args.trials);
    std::printf("se_mean_pulls      %.6g\n", se_pulls);
    std::printf("naive_success_rate %.6f\n",
                static_cast<double>(naive_hits) / args.trials);
    std::printf("naive_pulls        %.6g\n", naive_total);
    return 0;
}

int cmd_bound(const CommonArgs& args, double p_floor) {
    BanditInstance inst = resolve_instance(args.p_csv, args.file);
    AdversaryBound bound = adversary_bound(inst, args.delta, p_floor);
    GapProfile gaps = hardness(inst);
    double sqrt_h = std::sqrt(gaps.H);
    std::printf("intermediate_bound %.6g\n", bound.intermediate);
    std::printf("simplified_bound   %.6g\n", bound.simplified);
    std::printf("H                  %.6g\n", gaps.H);
    std::printf("sqrt_H             %.6g\n", sqrt_h);
    std::printf("bound_over_sqrt_H  %.6g\n", bound.intermediate / sqrt_h);
    return 0;
}

int cmd_sweep(const SweepSpec& spec, const std::string& out,
              const std::string& plot) {
    SweepResult result = run_sweep(spec);
    std::string csv = sweep_csv(result.rows);
    {
        std::ofstream f(out, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot write " + out);
        f << csv;
    }
    if (!plot.empty()) {
        std::ofstream f(plot);
        if (!f) throw std::invalid_argument("cannot write " + plot);
        f << "# H modeled_quantum_cost classical_se_pulls lower_bound\n";
        for (const SweepRow& row : result.rows) {
            f << row.H << ' ' << row.modeled_quantum_cost << ' '
              << row.classical_se_pulls << ' ' << row.lower_bound << '\n';
        }
    }
    std::printf("rows             %zu\n", result.rows.size());
    std::printf("csv              %s\n", out.c_str());
    std::printf("h_decades        %.3f\n", result.h_decades);
    std::printf("quantum_slope    %.4f\n", result.quantum_slope);
    std::printf("se_slope         %.4f\n", result.se_slope);
    std::printf("bound_consistent %s\n", result.bound_consistent ? "yes" : "no");
    return result.bound_consistent ? 0 : 1;
}

int cmd_validate(const std::string& level, std::uint64_t seed) {
    ValidationLevel lvl;
    if (level == "quick") {
        lvl = ValidationLevel::quick;
    } else if (level == "full") {
        lvl = ValidationLevel::full;
    } else {
        throw std::invalid_argument("validate level must be quick or full");
    }
    auto suites = run_validation(lvl, seed);
    bool all = true;
    for (const SuiteResult& s : suites) {
        std::printf("%-20s %s  %s\n", s.name.c_str(), s.passed ? "PASS" : "FAIL",
                    s.detail.c_str());
        all = all && s.passed;
    }
    return all ? 0 : 1;
}

int cmd_fixedbudget(const CommonArgs& args, double budget, int tc_trials) {
    BanditInstance inst = resolve_instance(args.p_csv, args.file);

    std::map<double, double> tc_table;
    Rng calib = Rng::stream(args.seed, 0xc001);
    for (double d : {0.05, 0.1, 0.2}) {
        tc_table[d] = calibrate_tc(inst, d, tc_trials, calib);
    }
    int hits = 0;
    double delta_star = 0.0;
    int blanks = 0;
    for (int t = 0; t < args.trials; ++t) {
        Rng rng = Rng::stream(args.seed, static_cast<std::uint64_t>(t));
        FixedBudgetResult r = fixed_budget(inst, budget, tc_table, rng);
        if (r.arm == inst.best) ++hits;
        blanks += r.votes_blank;
        delta_star = r.delta_star;
    }
    int m = static_cast<int>(std::floor(budget / tc_table[delta_star]));
    double bound = std::exp(-m * kl_half_vs(delta_star));
    std::printf("delta_star      %.4f\n", delta_star);
    std::printf("votes_per_run   %d\n", m);
    std::printf("failure_bound   %.6f\n", bound);
    std::printf("failure_rate    %.6f\n",
                1.0 - static_cast<double>(hits) / args.trials);
    std::printf("blank_votes     %d\n", blanks);
    double sigma = std::sqrt(bound * (1.0 - bound) / args.trials);
    return 1.0 - static_cast<double>(hits) / args.trials <= bound + 3.0 * sigma ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum best-arm identification experiment harness"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "",
                   "key=value config file (subcommand.key = value); flags override");

    CommonArgs bestarm_args, pac_args, baseline_args, bound_args, fb_args;
    double pac_eps = 0.1;
    double p_floor = 0.1;
    double fb_budget = 0.0;
    int fb_tc_trials = 20;
    std::string sweep_out = "sweep.csv";
    std::string sweep_plot;
    std::string validate_level = "quick";
    std::uint64_t validate_seed = 1;
    SweepSpec spec;

    CLI::App* c_bestarm = app.add_subcommand("bestarm", "fixed-confidence best arm");
    add_common(c_bestarm, bestarm_args);

    CLI::App* c_pac = app.add_subcommand("pac", "eps-optimal arm");
    add_common(c_pac, pac_args);
    c_pac->add_option("--eps", pac_eps, "PAC slack");

    CLI::App* c_sweep = app.add_subcommand("sweep", "hardness scaling sweep");
    c_sweep->add_option("--family", spec.family,
                        "uniform-gap | geometric-gap | two-cluster | from-file");
    c_sweep->add_option("--file", spec.file, "instance file for from-file");
    c_sweep->add_option("--delta", spec.delta, "confidence parameter");
    c_sweep->add_option("--trials", spec.trials, "trials per instance");
    c_sweep->add_option("--seed", spec.seed, "master seed");
    c_sweep->add_option("--n-values", spec.n_values, "arm counts");
    c_sweep->add_option("--delta2-values", spec.delta2_values, "gap grid");
    c_sweep->add_flag("--product,!--paired", [&spec](std::int64_t count) {
        spec.paired = count <= 0;
    }, "full product grid instead of paired (n, delta2) points");
    c_sweep->add_option("--out", sweep_out, "CSV output path");
    c_sweep->add_option("--plot", sweep_plot, "gnuplot-compatible data file");

    CLI::App* c_baseline = app.add_subcommand("baseline", "classical baselines");
    add_common(c_baseline, baseline_args);

    CLI::App* c_bound = app.add_subcommand("bound", "adversary lower bound");
    add_common(c_bound, bound_args);
    c_bound->add_option("--p-floor", p_floor, "bias floor p in (0, 1/2)");

    CLI::App* c_validate = app.add_subcommand("validate", "property suites");
    c_validate->add_option("level", validate_level, "quick | full");
    c_validate->add_option("--seed", validate_seed, "suite seed");

    CLI::App* c_fb = app.add_subcommand("fixedbudget", "fixed-budget reduction");
    add_common(c_fb, fb_args);
    c_fb->add_option("--budget", fb_budget, "total modeled-cost budget T")->required();
    c_fb->add_option("--tc-trials", fb_tc_trials, "calibration trials per delta");

    try {
        app.parse(argc, argv);
        if (*c_bestarm) return cmd_bestarm(bestarm_args);
        if (*c_pac) return cmd_pac(pac_args, pac_eps);
        if (*c_sweep) return cmd_sweep(spec, sweep_out, sweep_plot);
        if (*c_baseline) return cmd_baseline(baseline_args);
        if (*c_bound) return cmd_bound(bound_args, p_floor);
        if (*c_validate) return cmd_validate(validate_level, validate_seed);
        if (*c_fb) return cmd_fixedbudget(fb_args, fb_budget, fb_tc_trials);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
