#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gossipmf/jet.hpp"
#include "gossipmf/model.hpp"

namespace gossipmf {

/// Protocol parameters shared by every kernel and simulator.
struct GossipParams {
    int n_items = 0;              // distinct data items circulating in the network
    int cache_size = 0;           // c: slots per node
    int exchange_size = 0;        // s: items sent per shuffle
    int gmax = 0;                 // maximal gossip delay between active rounds
    long long n_population = 0;   // N: number of nodes

    /// Throws InvalidParams unless 0 < s <= c <= n_items, s < n_items,
    /// gmax >= 1 and N >= 1.
    static GossipParams validated(int n_items, int cache_size, int exchange_size, int gmax,
                                  long long n_population);
};

/// Conditional probabilities of the outcome of one shuffle between an
/// active/passive pair, by the pair's joint holder state. od_given_do reads
/// P(OD|DO): pair was (active D, passive O) and became (active O, passive D).
struct PairProbs {
    double od_given_do = 0.0;
    double do_given_od = 0.0;
    double od_given_od = 0.0;
    double do_given_do = 0.0;
    double dd_given_od = 0.0;
    double dd_given_do = 0.0;
    double od_given_dd = 0.0;
    double do_given_dd = 0.0;
    double dd_given_dd = 0.0;
    double oo_given_oo = 1.0;
    bool degenerate = false;  // s == c: the whole cache is exchanged
};

PairProbs pair_probs(const GossipParams& p);

/// No-collision probability of the aggregated models: exp(-2/(gmax+1)).
double noc_aggregated(int gmax);

/// No-collision probability of the full models, exp(-2*(active fractions)).
/// Generic over the scalar so the kernels stay differentiable through it.
template <typename S>
S noc_full(const S& active_without_item, const S& active_with_item) {
    using std::exp;  // Jet2 overload found by ADL
    return exp(-2.0 * (active_without_item + active_with_item));
}

enum class ModelKind {
    TwoState,         // O, D aggregate; replication only
    ThreeState,       // O, D, I aggregate
    SixState,         // O, D, I, FD, PD, LD synchronisation-aware aggregate
    FullReplication,  // O0..Og, D0..Dg delay chain
    FullCoverage,     // O0..Og, D0..Dg, I0..Ig delay chain
};

/// CLI-facing identifiers: two-state, three-state, six-state,
/// full-replication, full-coverage.
std::string model_kind_name(ModelKind kind);
ModelKind parse_model_kind(const std::string& name);

int state_count(ModelKind kind, int gmax);

/// Builds the population model for a kind; kernels implement the catalogue's
/// transition probability functions exactly, with the full models
/// generalized from the gmax=3 instance to arbitrary gmax.
PopulationModel build_model(ModelKind kind, const GossipParams& p);

/// Fraction of nodes holding the item (D-states, plus PD for SixState).
Measure replication_measure(ModelKind kind, int gmax);

/// Fraction of nodes that have ever held the item; throws MeasureUnavailable
/// for kinds without I-states (TwoState, FullReplication).
Measure coverage_measure(ModelKind kind, int gmax);

}  // namespace gossipmf
