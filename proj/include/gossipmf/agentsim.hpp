#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gossipmf/gossip.hpp"
#include "gossipmf/popsim.hpp"
#include "gossipmf/rng.hpp"

namespace gossipmf {

/// One protocol participant. The cache is a sorted set of item ids in
/// [0, n_items]; id n_items is reserved for the fresh element.
struct Node {
    std::vector<std::int32_t> cache;
    bool seen_new = false;
    int delay = 0;
};

struct RoundReport {
    int replication = 0;  // nodes holding the fresh item
    int coverage = 0;     // nodes that have ever held it
    int shuffles = 0;
    int collisions = 0;
};

/// Number of sent items a node must discard after a shuffle: received items
/// are never dropped, so the cache only sheds enough of its sent-and-not-
/// returned items to fit the capacity.
int required_drops(std::span<const std::int32_t> cache, std::span<const std::int32_t> sel_peer,
                   int capacity);

/// Applies the shuffle update to one cache given both selections and the
/// chosen drop set: cache' = (cache union sel_peer) \ drops. drops must be a
/// subset of (sel_own \ sel_peer) of size required_drops(...). When the
/// capacity pressure is maximal this reduces to the pure exchange
/// (cache \ (sel_own \ sel_peer)) union (sel_peer \ cache); with fewer
/// genuinely new items arriving, part of the sent items survives in both
/// caches, which is how the protocol replicates data.
std::vector<std::int32_t> shuffle_outcome(std::span<const std::int32_t> cache,
                                          std::span<const std::int32_t> sel_peer,
                                          std::span<const std::int32_t> drops);

/// Samples both selections uniformly without replacement (capped at the own
/// cache size when a cache has shrunk below s), then uniform drop sets, and
/// applies the update rule to both sides.
std::pair<std::vector<std::int32_t>, std::vector<std::int32_t>> shuffle_pair(
    std::span<const std::int32_t> cache_a, std::span<const std::int32_t> cache_b, int s,
    int capacity, SplitMix64& rng);

/// Agent-level network state: ground-truth simulator of the shuffle rounds.
class Network {
public:
    /// Fills every cache with c distinct uniform items, assigns delays
    /// round-robin over a random node permutation, then replaces one random
    /// item of one random node with the fresh element.
    Network(const GossipParams& params, std::uint64_t seed);

    /// One synchronous round: delay-0 nodes each contact a uniform peer; a
    /// shuffle happens iff the target is passive, no other node contacts the
    /// target, and no other node contacts the initiator. Any intrusion is a
    /// collision for every node involved, which is what makes the empirical
    /// no-collision rate follow exp(-2 * active fraction). Afterwards fresh
    /// holders are marked seen and all delays advance (actives reset to gmax,
    /// whether or not their attempt collided).
    RoundReport run_round();

    int round() const { return round_; }
    const GossipParams& params() const { return params_; }
    const std::vector<Node>& nodes() const { return nodes_; }
    std::int32_t fresh_item() const { return params_.n_items; }
    int replication() const { return replication_; }
    int coverage() const { return coverage_; }

private:
    bool holds_fresh(int node) const;

    GossipParams params_;
    SplitMix64 rng_;
    std::vector<Node> nodes_;
    int round_ = 0;
    int replication_ = 0;
    int coverage_ = 0;
    // per-round scratch
    std::vector<int> active_;
    std::vector<int> target_;
    std::vector<std::uint8_t> hits_;
};

/// Replication and coverage fractions per round, averaged over runs
/// (run r seeded with derive_seed(base_seed, r); merged in index order).
struct AgentStats {
    SimStats replication;
    SimStats coverage;
};
AgentStats run_experiment(const GossipParams& params, long t_max, int runs,
                          std::uint64_t base_seed);

}  // namespace gossipmf
