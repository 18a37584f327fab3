#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gossipmf/agentsim.hpp"
#include "gossipmf/autodiff.hpp"
#include "gossipmf/config.hpp"
#include "gossipmf/exact.hpp"
#include "gossipmf/meanfield.hpp"
#include "gossipmf/popsim.hpp"
#include "gossipmf/refined.hpp"
#include "gossipmf/results.hpp"
#include "gossipmf/rng.hpp"

namespace {

using namespace gossipmf;

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitRuntimeError = 2;
constexpr int kExitVerifyFailed = 3;

std::string plot_script_path(const std::string& csv_path) {
    const std::size_t dot = csv_path.rfind('.');
    const std::string stem = dot == std::string::npos ? csv_path : csv_path.substr(0, dot);
    return stem + "_plot.py";
}

ExperimentConfig load_config(const std::string& path, const std::string& seed_opt,
                             const std::string& t_max_opt, const std::string& runs_opt,
                             const std::string& methods_opt, const std::string& out_opt) {
    std::string text;
    {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file: " + path);
        std::stringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    // flag overrides append behind the file's keys
    if (!seed_opt.empty()) text += "\nbase_seed = " + seed_opt;
    if (!t_max_opt.empty()) text += "\nt_max = " + t_max_opt;
    if (!runs_opt.empty()) text += "\nruns = " + runs_opt;
    if (!methods_opt.empty()) text += "\nmethods = " + methods_opt;
    if (!out_opt.empty()) text += "\nout = " + out_opt;
    return parse_config(text);
}

int cmd_run(const ExperimentConfig& cfg) {
    const ResultTable table = run_table(cfg);
    const std::string out = cfg.out_path.empty() ? "results.csv" : cfg.out_path;
    write_csv(table, out);
    write_plot_script(table, out, plot_script_path(out));
    std::cout << "wrote " << out << " and " << plot_script_path(out) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify: fast property suites over the whole model catalogue

struct Verifier {
    int failures = 0;

    void check(bool ok, const std::string& what) {
        std::cout << (ok ? "[ ok ] " : "[FAIL] ") << what << "\n";
        if (!ok) ++failures;
    }
};

std::vector<double> random_simplex_point(int n, SplitMix64& rng) {
    std::vector<double> v(n);
    double sum = 0.0;
    for (double& x : v) {
        x = -std::log(1.0 - rng.uniform01());
        sum += x;
    }
    for (double& x : v) x /= sum;
    return v;
}

int cmd_verify() {
    Verifier v;
    SplitMix64 rng(20200917);
    const GossipParams params = GossipParams::validated(500, 100, 50, 3, 100);

    const ModelKind kinds[] = {ModelKind::TwoState, ModelKind::ThreeState, ModelKind::SixState,
                               ModelKind::FullReplication, ModelKind::FullCoverage};

    // kernel rows on the simplex
    for (ModelKind kind : kinds) {
        const PopulationModel model = build_model(kind, params);
        double worst_sum = 0.0, worst_range = 0.0;
        for (int p = 0; p < 200; ++p) {
            const std::vector<double> m = random_simplex_point(model.n_states(), rng);
            const Matrix k = model.kernel(m);
            for (int i = 0; i < model.n_states(); ++i) {
                worst_sum = std::max(worst_sum, std::abs(k.row_sum(i) - 1.0));
                for (int j = 0; j < model.n_states(); ++j) {
                    worst_range = std::max(worst_range, -k(i, j));
                    worst_range = std::max(worst_range, k(i, j) - 1.0);
                }
            }
        }
        v.check(worst_sum <= 1e-12 && worst_range <= 0.0,
                model_kind_name(kind) + ": kernel rows stochastic (worst drift " +
                    std::to_string(worst_sum) + ")");
    }

    // pair-probability identities
    {
        double worst = 0.0;
        for (int it = 0; it < 200; ++it) {
            const int n_items = 3 + static_cast<int>(rng.uniform_below(998));
            const int c = 2 + static_cast<int>(rng.uniform_below(n_items - 2));
            const int s = 1 + static_cast<int>(rng.uniform_below(c - 1));
            const PairProbs pp =
                pair_probs(GossipParams::validated(n_items, c, s, 3, 10));
            worst = std::max(worst, std::abs(pp.od_given_od + pp.dd_given_od + pp.do_given_od - 1.0));
            worst = std::max(worst, std::abs(pp.do_given_do + pp.dd_given_do + pp.od_given_do - 1.0));
            worst = std::max(worst, std::abs(pp.od_given_dd + pp.do_given_dd + pp.dd_given_dd - 1.0));
        }
        v.check(worst <= 1e-12, "pair probabilities: conditional rows sum to 1 (worst " +
                                    std::to_string(worst) + ")");
    }

    // derivative cross-check
    for (ModelKind kind : kinds) {
        const PopulationModel model = build_model(kind, params);
        const VectorFn phi1 = model.phi1();
        double worst1 = 0.0, worst2 = 0.0;
        for (int p = 0; p < 5; ++p) {
            const std::vector<double> m = random_simplex_point(model.n_states(), rng);
            worst1 = std::max(worst1, fd_check_jacobian(phi1, m, model.n_states()));
            worst2 = std::max(worst2, fd_check_hessian(phi1, m, model.n_states()));
        }
        v.check(worst1 <= 1e-6 && worst2 <= 1e-4,
                model_kind_name(kind) + ": forward derivatives match finite differences");
    }

    // refined-state structure on a short six-state run
    {
        const PopulationModel model = build_model(ModelKind::SixState, params);
        const OccupancyVector mu0 =
            CountVector::validated(fresh_init_counts(ModelKind::SixState, params.gmax, 100), 100)
                .occupancy();
        const RefinedTrajectory traj = refined_trajectory(model, mu0, 100);
        double worst_v = 0.0, worst_row = 0.0, min_eig = 0.0;
        for (const RefinedState& state : traj.states) {
            double sum_v = 0.0;
            for (double x : state.v) sum_v += x;
            worst_v = std::max(worst_v, std::abs(sum_v));
            for (int i = 0; i < state.w.rows(); ++i)
                worst_row = std::max(worst_row, std::abs(state.w.row_sum(i)));
            const std::vector<double> eig = symmetric_eigenvalues(state.w);
            min_eig = std::min(min_eig, eig.front());
        }
        v.check(worst_v <= 1e-9 && worst_row <= 1e-9 && min_eig >= -1e-9,
                "six-state refined run: V sums to 0, W rows sum to 0, W is PSD");
    }

    std::cout << (v.failures == 0 ? "verify: all checks passed\n"
                                  : "verify: " + std::to_string(v.failures) + " check(s) FAILED\n");
    return v.failures == 0 ? kExitOk : kExitVerifyFailed;
}

// ---------------------------------------------------------------------------
// bench: timing report in the shape of the performance listing

template <typename F>
double time_once(F&& body) {
    const auto start = std::chrono::steady_clock::now();
    body();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

int cmd_bench(const ExperimentConfig& cfg) {
    const PopulationModel model = build_model(cfg.kind, cfg.params);
    const OccupancyVector mu0 = cfg.initial_occupancy();
    std::printf("model: %s, N = %lld, gmax = %d, t_max = %ld\n",
                model_kind_name(cfg.kind).c_str(), cfg.params.n_population, cfg.params.gmax,
                cfg.t_max);

    if (cfg.has_method(Method::Classic)) {
        const double s = time_once([&] { classic_trajectory(model, mu0, cfg.t_max); });
        std::printf("%-32s %10.3fs\n", "classic mean field:", s);
    }
    if (cfg.has_method(Method::Refined)) {
        const double s = time_once([&] { refined_trajectory(model, mu0, cfg.t_max); });
        std::printf("%-32s %10.3fs\n", "refined mean field:", s);
    }
    if (cfg.has_method(Method::PopSim)) {
        const Measure h = replication_measure(cfg.kind, cfg.params.gmax);
        const double s = time_once([&] {
            simulate_measure(model, cfg.initial_counts(), cfg.t_max, cfg.runs, cfg.base_seed, h);
        });
        std::printf("model simulation (%d runs): %8.3fs\n", cfg.runs, s);
    }
    if (cfg.has_method(Method::AgentSim)) {
        const double s = time_once(
            [&] { run_experiment(cfg.params, cfg.t_max, cfg.runs, cfg.base_seed); });
        std::printf("agent simulation (%d runs): %8.3fs\n", cfg.runs, s);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mean-field analysis and simulation of the gossip shuffle protocol"};
    app.require_subcommand(1);

    std::string config_path, seed_opt, t_max_opt, runs_opt, methods_opt, out_opt;

    CLI::App* run = app.add_subcommand("run", "run an experiment config and write CSV + plot script");
    run->add_option("config", config_path, "experiment config file")->required();
    run->add_option("--seed", seed_opt, "override base_seed");
    run->add_option("--t-max", t_max_opt, "override t_max");
    run->add_option("--runs", runs_opt, "override runs");
    run->add_option("--methods", methods_opt, "override methods (comma separated)");
    run->add_option("--out", out_opt, "override output path");

    CLI::App* verify = app.add_subcommand("verify", "run the built-in property suites");

    CLI::App* bench = app.add_subcommand("bench", "time the analysis methods of a config");
    bench->add_option("config", config_path, "experiment config file")->required();
    bench->add_option("--seed", seed_opt, "override base_seed");
    bench->add_option("--t-max", t_max_opt, "override t_max");
    bench->add_option("--runs", runs_opt, "override runs");
    bench->add_option("--methods", methods_opt, "override methods (comma separated)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) return cmd_verify();
        const ExperimentConfig cfg =
            load_config(config_path, seed_opt, t_max_opt, runs_opt, methods_opt, out_opt);
        if (run->parsed()) return cmd_run(cfg);
        if (bench->parsed()) return cmd_bench(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
    return kExitOk;
}
