#include "gossipmf/agentsim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gossipmf/parallel.hpp"

namespace gossipmf {

namespace {

/// Uniform selection of k elements without replacement: partial
/// Fisher-Yates over a scratch copy, result sorted.
std::vector<std::int32_t> sample_without_replacement(std::span<const std::int32_t> items, int k,
                                                     SplitMix64& rng) {
    std::vector<std::int32_t> pool(items.begin(), items.end());
    const int n = static_cast<int>(pool.size());
    for (int i = 0; i < k; ++i) {
        const int j = i + static_cast<int>(rng.uniform_below(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

std::vector<std::int32_t> set_minus(std::span<const std::int32_t> a,
                                    std::span<const std::int32_t> b) {
    std::vector<std::int32_t> out;
    out.reserve(a.size());
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<std::int32_t> set_union(std::span<const std::int32_t> a,
                                    std::span<const std::int32_t> b) {
    std::vector<std::int32_t> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

int required_drops(std::span<const std::int32_t> cache, std::span<const std::int32_t> sel_peer,
                   int capacity) {
    const std::vector<std::int32_t> fresh = set_minus(sel_peer, cache);
    return std::max(0, static_cast<int>(cache.size() + fresh.size()) - capacity);
}

std::vector<std::int32_t> shuffle_outcome(std::span<const std::int32_t> cache,
                                          std::span<const std::int32_t> sel_peer,
                                          std::span<const std::int32_t> drops) {
    return set_minus(set_union(cache, sel_peer), drops);
}

std::pair<std::vector<std::int32_t>, std::vector<std::int32_t>> shuffle_pair(
    std::span<const std::int32_t> cache_a, std::span<const std::int32_t> cache_b, int s,
    int capacity, SplitMix64& rng) {
    const int sa = std::min<int>(s, static_cast<int>(cache_a.size()));
    const int sb = std::min<int>(s, static_cast<int>(cache_b.size()));
    const std::vector<std::int32_t> sel_a = sample_without_replacement(cache_a, sa, rng);
    const std::vector<std::int32_t> sel_b = sample_without_replacement(cache_b, sb, rng);
    const std::vector<std::int32_t> eligible_a = set_minus(sel_a, sel_b);
    const std::vector<std::int32_t> eligible_b = set_minus(sel_b, sel_a);
    const std::vector<std::int32_t> drops_a = sample_without_replacement(
        eligible_a, required_drops(cache_a, sel_b, capacity), rng);
    const std::vector<std::int32_t> drops_b = sample_without_replacement(
        eligible_b, required_drops(cache_b, sel_a, capacity), rng);
    return {shuffle_outcome(cache_a, sel_b, drops_a), shuffle_outcome(cache_b, sel_a, drops_b)};
}

Network::Network(const GossipParams& params, std::uint64_t seed)
    : params_(GossipParams::validated(params.n_items, params.cache_size, params.exchange_size,
                                      params.gmax, params.n_population)),
      rng_(seed) {
    const int n_nodes = static_cast<int>(params_.n_population);
    nodes_.resize(n_nodes);

    // caches: c distinct items uniform over [0, n_items)
    std::vector<std::int32_t> scratch(params_.n_items);
    std::iota(scratch.begin(), scratch.end(), 0);
    for (Node& node : nodes_) {
        for (int i = 0; i < params_.cache_size; ++i) {
            const int j = i + static_cast<int>(rng_.uniform_below(scratch.size() - i));
            std::swap(scratch[i], scratch[j]);
        }
        node.cache.assign(scratch.begin(), scratch.begin() + params_.cache_size);
        std::sort(node.cache.begin(), node.cache.end());
    }

    // delays: round-robin 0..gmax over a random permutation of the nodes
    std::vector<int> perm(n_nodes);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = 0; i < n_nodes - 1; ++i) {
        const int j = i + static_cast<int>(rng_.uniform_below(n_nodes - i));
        std::swap(perm[i], perm[j]);
    }
    for (int i = 0; i < n_nodes; ++i) nodes_[perm[i]].delay = i % (params_.gmax + 1);

    // the fresh element replaces one uniform item of one uniform node
    const int host = static_cast<int>(rng_.uniform_below(n_nodes));
    const int slot = static_cast<int>(rng_.uniform_below(params_.cache_size));
    nodes_[host].cache.erase(nodes_[host].cache.begin() + slot);
    nodes_[host].cache.insert(
        std::lower_bound(nodes_[host].cache.begin(), nodes_[host].cache.end(), fresh_item()),
        fresh_item());
    nodes_[host].seen_new = true;
    replication_ = 1;
    coverage_ = 1;

    hits_.assign(n_nodes, 0);
}

bool Network::holds_fresh(int node) const {
    const std::vector<std::int32_t>& c = nodes_[node].cache;
    return std::binary_search(c.begin(), c.end(), fresh_item());
}

RoundReport Network::run_round() {
    const int n_nodes = static_cast<int>(params_.n_population);
    RoundReport report;

    active_.clear();
    if (n_nodes >= 2)
        for (int i = 0; i < n_nodes; ++i)
            if (nodes_[i].delay == 0) active_.push_back(i);

    // simultaneous target selection, uniform among the other N-1 nodes
    target_.assign(active_.size(), -1);
    std::fill(hits_.begin(), hits_.end(), 0);
    for (std::size_t a = 0; a < active_.size(); ++a) {
        int t = static_cast<int>(rng_.uniform_below(n_nodes - 1));
        if (t >= active_[a]) ++t;
        target_[a] = t;
        if (hits_[t] < 255) ++hits_[t];
    }

    for (std::size_t a = 0; a < active_.size(); ++a) {
        const int self = active_[a];
        const int peer = target_[a];
        // a contact succeeds only if the target is passive and neither end
        // is touched by any other initiator: an intruder aborts all three
        if (nodes_[peer].delay == 0 || hits_[peer] != 1 || hits_[self] != 0) {
            ++report.collisions;
            continue;
        }
        const bool had_self = holds_fresh(self);
        const bool had_peer = holds_fresh(peer);
        auto [new_self, new_peer] = shuffle_pair(nodes_[self].cache, nodes_[peer].cache,
                                                 params_.exchange_size, params_.cache_size, rng_);
        nodes_[self].cache = std::move(new_self);
        nodes_[peer].cache = std::move(new_peer);
        ++report.shuffles;

        for (int node : {self, peer}) {
            const bool had = (node == self) ? had_self : had_peer;
            const bool has = holds_fresh(node);
            if (has != had) replication_ += has ? 1 : -1;
            if (has && !nodes_[node].seen_new) {
                nodes_[node].seen_new = true;
                ++coverage_;
            }
        }
    }

    if (replication_ < 1) throw Error("fresh element vanished from every cache");

    for (Node& node : nodes_) node.delay = (node.delay == 0) ? params_.gmax : node.delay - 1;
    ++round_;

    report.replication = replication_;
    report.coverage = coverage_;
    return report;
}

AgentStats run_experiment(const GossipParams& params, long t_max, int runs,
                          std::uint64_t base_seed) {
    if (runs < 1) throw Error("run_experiment requires at least one run");
    const double population = static_cast<double>(params.n_population);

    std::vector<std::vector<double>> repl(runs), cov(runs);
    parallel_runs(runs, [&](int r) {
        Network net(params, derive_seed(base_seed, r));
        repl[r].reserve(t_max + 1);
        cov[r].reserve(t_max + 1);
        repl[r].push_back(net.replication() / population);
        cov[r].push_back(net.coverage() / population);
        for (long t = 0; t < t_max; ++t) {
            const RoundReport round = net.run_round();
            repl[r].push_back(round.replication / population);
            cov[r].push_back(round.coverage / population);
        }
    });

    auto fold = [&](const std::vector<std::vector<double>>& series) {
        SimStats stats;
        stats.runs = runs;
        stats.base_seed = base_seed;
        stats.mean.assign(t_max + 1, 0.0);
        stats.stddev.assign(t_max + 1, 0.0);
        for (long t = 0; t <= t_max; ++t) {
            double sum = 0.0;
            for (int r = 0; r < runs; ++r) sum += series[r][t];
            const double mean = sum / runs;
            double sq = 0.0;
            for (int r = 0; r < runs; ++r) {
                const double d = series[r][t] - mean;
                sq += d * d;
            }
            stats.mean[t] = mean;
            stats.stddev[t] = std::sqrt(sq / runs);
        }
        return stats;
    };

    return {fold(repl), fold(cov)};
}

}  // namespace gossipmf
