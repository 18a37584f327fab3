#include "gossipmf/gossip.hpp"

#include <cmath>
#include <span>

namespace gossipmf {

GossipParams GossipParams::validated(int n_items, int cache_size, int exchange_size, int gmax,
                                     long long n_population) {
    if (n_items <= 0 || cache_size <= 0 || exchange_size <= 0)
        throw InvalidParams("n_items, cache size and exchange size must be positive");
    if (exchange_size > cache_size)
        throw InvalidParams("exchange size s must not exceed cache size c");
    if (cache_size > n_items)
        throw InvalidParams("cache size c must not exceed n_items");
    if (exchange_size == n_items)
        throw InvalidParams("s = n_items makes the pair probabilities singular");
    if (gmax < 1) throw InvalidParams("gmax must be at least 1");
    if (n_population < 1) throw InvalidParams("population must be at least 1");
    return GossipParams{n_items, cache_size, exchange_size, gmax, n_population};
}

PairProbs pair_probs(const GossipParams& p) {
    const double n = p.n_items;
    const double c = p.cache_size;
    const double s = p.exchange_size;

    PairProbs pp;
    pp.od_given_do = pp.do_given_od = (s / c) * (n - c) / (n - s);
    pp.od_given_od = pp.do_given_do = (c - s) / c;
    pp.dd_given_od = pp.dd_given_do = (s / c) * (c - s) / (n - s);
    pp.od_given_dd = pp.do_given_dd = (s / c) * ((c - s) / c) * (n - c) / (n - s);
    pp.dd_given_dd = 1.0 - 2.0 * pp.od_given_dd;
    pp.oo_given_oo = 1.0;
    pp.degenerate = (p.exchange_size == p.cache_size);
    return pp;
}

double noc_aggregated(int gmax) { return std::exp(-2.0 / (gmax + 1.0)); }

std::string model_kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::TwoState: return "two-state";
        case ModelKind::ThreeState: return "three-state";
        case ModelKind::SixState: return "six-state";
        case ModelKind::FullReplication: return "full-replication";
        case ModelKind::FullCoverage: return "full-coverage";
    }
    throw Error("unreachable model kind");
}

ModelKind parse_model_kind(const std::string& name) {
    if (name == "two-state") return ModelKind::TwoState;
    if (name == "three-state") return ModelKind::ThreeState;
    if (name == "six-state") return ModelKind::SixState;
    if (name == "full-replication") return ModelKind::FullReplication;
    if (name == "full-coverage") return ModelKind::FullCoverage;
    throw InvalidParams("unknown model kind: " + name);
}

int state_count(ModelKind kind, int gmax) {
    switch (kind) {
        case ModelKind::TwoState: return 2;
        case ModelKind::ThreeState: return 3;
        case ModelKind::SixState: return 6;
        case ModelKind::FullReplication: return 2 * (gmax + 1);
        case ModelKind::FullCoverage: return 3 * (gmax + 1);
    }
    throw Error("unreachable model kind");
}

namespace {

// State order of the aggregated models. Matches the published K matrices.
enum : int { kO = 0, kD = 1, kI = 2 };                         // two-/three-state
enum : int { kSO = 0, kSD = 1, kSI = 2, kSFD = 3, kSPD = 4, kSLD = 5 };  // six-state

/// Aggregated two-/three-state kernel. get/loose mix the step (node is
/// passive) and reset (node is active) variants with weights gmax/(gmax+1)
/// and 1/(gmax+1); the partner fractions inside carry the same weights.
template <typename S>
void aggregate_kernel(const PairProbs& pp, int gmax, bool with_i, std::span<const S> m,
                      std::span<S> k) {
    const int n = with_i ? 3 : 2;
    const double g = static_cast<double>(gmax);
    const double fa = 1.0 / (g + 1.0);  // active fraction of a delay class
    const double fp = g / (g + 1.0);    // passive fraction
    const double noc = noc_aggregated(gmax);

    const S without = with_i ? m[kO] + m[kI] : m[kO];
    const S ogs = fa * m[kD] * ((pp.od_given_do + pp.dd_given_do) * noc);
    const S ogr = fp * m[kD] * ((pp.do_given_od + pp.dd_given_od) * noc);
    const S dls = fa * (without * (pp.do_given_od * noc) + m[kD] * (pp.do_given_dd * noc));
    const S dlr = fp * (without * (pp.od_given_do * noc) + m[kD] * (pp.do_given_dd * noc));
    const S get = fp * ogs + fa * ogr;
    const S loose = fp * dls + fa * dlr;

    for (auto& e : k) e = S(0.0);
    k[kO * n + kD] = get;
    k[kO * n + kO] = 1.0 - get;
    k[kD * n + kO] = loose;
    k[kD * n + kD] = 1.0 - loose;
    if (with_i) {
        k[kI * n + kD] = get;
        k[kI * n + kI] = 1.0 - get;
    }
}

/// Six-state kernel: splits get/loose by whether the interaction replicates
/// the item or merely exchanges it, so the global copy count is explicit.
/// PD is absorbing. Uses the constant aggregated no-collision factor.
template <typename S>
void six_state_kernel(const PairProbs& pp, int gmax, std::span<const S> m, std::span<S> k) {
    constexpr int n = 6;
    const double g = static_cast<double>(gmax);
    const double w = 2.0 * g / ((g + 1.0) * (g + 1.0)) * noc_aggregated(gmax);

    const S holders = m[kSD] + m[kSPD];
    const S others = m[kSO] + m[kSI] + m[kSLD] + m[kSFD];
    const S get_exc = w * holders * pp.od_given_do;
    const S get_rep = w * holders * pp.dd_given_do;
    const S loose_exc = w * others * pp.od_given_do;
    const S loose_rep = w * holders * pp.do_given_dd;

    for (auto& e : k) e = S(0.0);
    k[kSO * n + kSD] = get_rep;
    k[kSI * n + kSD] = get_rep;
    k[kSFD * n + kSD] = get_rep;
    k[kSLD * n + kSD] = get_rep;
    k[kSD * n + kSO] = loose_rep;
    k[kSO * n + kSO] = 1.0 - get_rep - get_exc;
    k[kSI * n + kSI] = 1.0 - get_rep - get_exc;
    k[kSO * n + kSLD] = get_exc;
    k[kSI * n + kSFD] = get_exc;
    k[kSD * n + kSD] = 1.0 - loose_rep;
    k[kSFD * n + kSO] = loose_exc;
    k[kSLD * n + kSO] = loose_exc;
    k[kSFD * n + kSFD] = 1.0 - loose_exc - get_rep;
    k[kSLD * n + kSLD] = 1.0 - loose_exc - get_rep;
    k[kSPD * n + kSPD] = 1.0;
}

/// Full delay-chain kernel, states O0..Og, D0..Dg (and I0..Ig for coverage).
/// Delay-0 rows are the reset rows (the node was active and jumps back to
/// delay g); the others step one class down. The no-collision factor depends
/// on the current active fractions, so it is part of the differentiated path.
template <typename S>
void full_kernel(const PairProbs& pp, int gmax, bool with_i, std::span<const S> m,
                 std::span<S> k) {
    const int stride = gmax + 1;
    const int n = (with_i ? 3 : 2) * stride;
    const auto o = [&](int d) { return d; };
    const auto dd = [&](int d) { return stride + d; };
    const auto ii = [&](int d) { return 2 * stride + d; };

    S active_without = m[o(0)];
    if (with_i) active_without += m[ii(0)];
    const S noc = noc_full(active_without, m[dd(0)]);

    S passive_without = S(0.0);
    S passive_with = S(0.0);
    for (int d = 1; d <= gmax; ++d) {
        passive_without += m[o(d)];
        if (with_i) passive_without += m[ii(d)];
        passive_with += m[dd(d)];
    }

    const S o_getd_reset = passive_with * (pp.do_given_od + pp.dd_given_od) * noc;
    const S o_getd_step = m[dd(0)] * (pp.od_given_do + pp.dd_given_do) * noc;
    const S d_loss_reset =
        (passive_without * pp.od_given_do + passive_with * pp.od_given_dd) * noc;
    const S d_loss_step =
        (active_without * pp.do_given_od + m[dd(0)] * pp.do_given_dd) * noc;

    for (auto& e : k) e = S(0.0);
    // active rows reset to delay g
    k[o(0) * n + o(gmax)] = 1.0 - o_getd_reset;
    k[o(0) * n + dd(gmax)] = o_getd_reset;
    k[dd(0) * n + o(gmax)] = d_loss_reset;
    k[dd(0) * n + dd(gmax)] = 1.0 - d_loss_reset;
    if (with_i) {
        k[ii(0) * n + ii(gmax)] = 1.0 - o_getd_reset;
        k[ii(0) * n + dd(gmax)] = o_getd_reset;
    }
    // passive rows step one delay class down
    for (int d = 1; d <= gmax; ++d) {
        k[o(d) * n + o(d - 1)] = 1.0 - o_getd_step;
        k[o(d) * n + dd(d - 1)] = o_getd_step;
        k[dd(d) * n + o(d - 1)] = d_loss_step;
        k[dd(d) * n + dd(d - 1)] = 1.0 - d_loss_step;
        if (with_i) {
            k[ii(d) * n + ii(d - 1)] = 1.0 - o_getd_step;
            k[ii(d) * n + dd(d - 1)] = o_getd_step;
        }
    }
}

std::vector<std::string> delay_chain_names(int gmax, bool with_i) {
    std::vector<std::string> names;
    for (const char* prefix : {"O", "D", "I"}) {
        if (prefix[0] == 'I' && !with_i) break;
        for (int d = 0; d <= gmax; ++d) names.push_back(prefix + std::to_string(d));
    }
    return names;
}

}  // namespace

PopulationModel build_model(ModelKind kind, const GossipParams& p) {
    GossipParams::validated(p.n_items, p.cache_size, p.exchange_size, p.gmax, p.n_population);
    const PairProbs pp = pair_probs(p);
    const int gmax = p.gmax;

    switch (kind) {
        case ModelKind::TwoState:
            return PopulationModel::make(
                {"O", "D"}, [pp, gmax]<typename S>(std::span<const S> m, std::span<S> k) {
                    aggregate_kernel<S>(pp, gmax, false, m, k);
                });
        case ModelKind::ThreeState:
            return PopulationModel::make(
                {"O", "D", "I"}, [pp, gmax]<typename S>(std::span<const S> m, std::span<S> k) {
                    aggregate_kernel<S>(pp, gmax, true, m, k);
                });
        case ModelKind::SixState:
            return PopulationModel::make(
                {"O", "D", "I", "FD", "PD", "LD"},
                [pp, gmax]<typename S>(std::span<const S> m, std::span<S> k) {
                    six_state_kernel<S>(pp, gmax, m, k);
                });
        case ModelKind::FullReplication:
            return PopulationModel::make(
                delay_chain_names(gmax, false),
                [pp, gmax]<typename S>(std::span<const S> m, std::span<S> k) {
                    full_kernel<S>(pp, gmax, false, m, k);
                });
        case ModelKind::FullCoverage:
            return PopulationModel::make(
                delay_chain_names(gmax, true),
                [pp, gmax]<typename S>(std::span<const S> m, std::span<S> k) {
                    full_kernel<S>(pp, gmax, true, m, k);
                });
    }
    throw Error("unreachable model kind");
}

Measure replication_measure(ModelKind kind, int gmax) {
    switch (kind) {
        case ModelKind::TwoState: return Measure::linear("replication", {0.0, 1.0});
        case ModelKind::ThreeState: return Measure::linear("replication", {0.0, 1.0, 0.0});
        case ModelKind::SixState:
            return Measure::linear("replication", {0.0, 1.0, 0.0, 0.0, 1.0, 0.0});
        case ModelKind::FullReplication:
        case ModelKind::FullCoverage: {
            std::vector<double> w(state_count(kind, gmax), 0.0);
            for (int d = 0; d <= gmax; ++d) w[gmax + 1 + d] = 1.0;
            return Measure::linear("replication", std::move(w));
        }
    }
    throw Error("unreachable model kind");
}

Measure coverage_measure(ModelKind kind, int gmax) {
    switch (kind) {
        case ModelKind::TwoState:
            throw MeasureUnavailable("two-state model has no I-states; coverage is undefined");
        case ModelKind::FullReplication:
            throw MeasureUnavailable(
                "full-replication model has no I-states; coverage is undefined");
        case ModelKind::ThreeState: return Measure::linear("coverage", {1.0, 1.0, 0.0});
        case ModelKind::SixState:
            return Measure::linear("coverage", {1.0, 1.0, 0.0, 1.0, 1.0, 1.0});
        case ModelKind::FullCoverage: {
            std::vector<double> w(state_count(kind, gmax), 1.0);
            for (int d = 0; d <= gmax; ++d) w[2 * (gmax + 1) + d] = 0.0;
            return Measure::linear("coverage", std::move(w));
        }
    }
    throw Error("unreachable model kind");
}

}  // namespace gossipmf
