#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gossipmf/gossip.hpp"

namespace gossipmf {

enum class Method { Classic, Refined, PopSim, AgentSim, Exact };
enum class MeasureKind { Replication, Coverage };

std::string method_name(Method m);
std::string measure_kind_name(MeasureKind m);

/// One experiment: model, parameters, initial condition and which analysis
/// methods to run. Parsed from flat "key = value" text (# starts a comment):
///
///   model     = six-state            # two-state, three-state, six-state,
///                                    # full-replication, full-coverage
///   n_population = 100
///   n_items   = 500
///   c         = 100                  # cache size
///   s         = 50                   # items exchanged per shuffle
///   gmax      = 3
///   init      = fresh                # or explicit per-state counts
///   t_max     = 500
///   runs      = 500
///   base_seed = 42
///   methods   = classic,refined,popsim
///   measures  = replication,coverage
///   out       = fig7.csv
struct ExperimentConfig {
    ModelKind kind = ModelKind::ThreeState;
    GossipParams params;
    std::vector<long long> init_counts;  // per state, summing to n_population
    bool init_is_fresh = false;          // the single-fresh-item preset
    long t_max = 0;
    int runs = 1;
    std::uint64_t base_seed = 1;
    std::vector<Method> methods;
    std::vector<MeasureKind> measures;
    std::string out_path;

    OccupancyVector initial_occupancy() const;
    CountVector initial_counts() const;
    bool has_method(Method m) const;
};

/// Parses and validates config text. Throws UnknownKey / TypeMismatch /
/// InvariantViolation naming the offending key.
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig parse_config_file(const std::string& path);

/// The single-fresh-item initial condition for an aggregate model kind:
/// one holder (D, or PD for six-state), everyone else never-seen.
std::vector<long long> fresh_init_counts(ModelKind kind, int gmax, long long n_population);

}  // namespace gossipmf
