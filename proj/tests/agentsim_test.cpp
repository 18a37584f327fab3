#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "gossipmf/agentsim.hpp"
#include "helpers.hpp"

using namespace gossipmf;

namespace {

using Cache = std::vector<std::int32_t>;

Cache sorted(Cache c) {
    std::sort(c.begin(), c.end());
    return c;
}

/// All k-subsets of a sorted item set.
void subsets_of_size(const Cache& items, int k, std::size_t start, Cache& cur,
                     std::vector<Cache>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < items.size(); ++i) {
        cur.push_back(items[i]);
        subsets_of_size(items, k, i + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<Cache> subsets(const Cache& items, int k) {
    std::vector<Cache> out;
    Cache cur;
    subsets_of_size(items, k, 0, cur, out);
    return out;
}

}  // namespace

TEST_CASE("shuffle_outcome: hand-traced exchange under full capacity pressure") {
    // caches {1,2} and {2,3} at capacity 2, selections {1} and {3}: the one
    // genuinely new item on each side forces one sent item out
    CHECK(required_drops(Cache{1, 2}, Cache{3}, 2) == 1);
    CHECK(required_drops(Cache{2, 3}, Cache{1}, 2) == 1);
    const Cache a = shuffle_outcome(Cache{1, 2}, Cache{3}, Cache{1});
    const Cache b = shuffle_outcome(Cache{2, 3}, Cache{1}, Cache{3});
    CHECK(a == Cache{2, 3});
    CHECK(b == Cache{1, 2});
}

TEST_CASE("shuffle_outcome: identical selections leave both caches unchanged") {
    CHECK(required_drops(Cache{1, 2, 5}, Cache{2, 5}, 3) == 0);
    const Cache a = shuffle_outcome(Cache{1, 2, 5}, Cache{2, 5}, Cache{});
    CHECK(a == Cache{1, 2, 5});
}

TEST_CASE("shuffle replicates when a sent item comes back known") {
    // A sends 1, receives only items it already has: nothing to drop, so
    // item 1 now lives in both caches
    const Cache ca{1, 2}, cb{2, 3};
    CHECK(required_drops(ca, Cache{2}, 2) == 0);
    const Cache a = shuffle_outcome(ca, Cache{2}, Cache{});
    const Cache b = shuffle_outcome(cb, Cache{1}, Cache{3});
    CHECK(a == Cache{1, 2});  // kept its copy of 1
    CHECK(b == Cache{1, 2});  // gained 1
}

TEST_CASE("exhaustive small-world check: union preserved, caches never overflow") {
    // every pair of caches over 6 items with sizes <= 3, every s, every
    // selection pair, every admissible drop set
    const Cache universe{0, 1, 2, 3, 4, 5};
    std::vector<Cache> caches;
    for (int size = 1; size <= 3; ++size)
        for (const Cache& c : subsets(universe, size)) caches.push_back(c);

    long checked = 0;
    for (const Cache& ca : caches)
        for (const Cache& cb : caches) {
            const int c_max = static_cast<int>(std::max(ca.size(), cb.size()));
            for (int s = 1; s <= c_max; ++s) {
                const int sa = std::min<int>(s, static_cast<int>(ca.size()));
                const int sb = std::min<int>(s, static_cast<int>(cb.size()));
                for (const Cache& sel_a : subsets(ca, sa))
                    for (const Cache& sel_b : subsets(cb, sb)) {
                        Cache eligible_a, eligible_b;
                        std::set_difference(sel_a.begin(), sel_a.end(), sel_b.begin(),
                                            sel_b.end(), std::back_inserter(eligible_a));
                        std::set_difference(sel_b.begin(), sel_b.end(), sel_a.begin(),
                                            sel_a.end(), std::back_inserter(eligible_b));
                        const int need_a = required_drops(ca, sel_b, c_max);
                        const int need_b = required_drops(cb, sel_a, c_max);
                        REQUIRE(need_a <= static_cast<int>(eligible_a.size()));
                        REQUIRE(need_b <= static_cast<int>(eligible_b.size()));
                        for (const Cache& drop_a : subsets(eligible_a, need_a))
                            for (const Cache& drop_b : subsets(eligible_b, need_b)) {
                                const Cache na = shuffle_outcome(ca, sel_b, drop_a);
                                const Cache nb = shuffle_outcome(cb, sel_a, drop_b);
                                Cache before = sorted([&] {
                                    Cache u(ca);
                                    u.insert(u.end(), cb.begin(), cb.end());
                                    std::sort(u.begin(), u.end());
                                    u.erase(std::unique(u.begin(), u.end()), u.end());
                                    return u;
                                }());
                                Cache after = sorted([&] {
                                    Cache u(na);
                                    u.insert(u.end(), nb.begin(), nb.end());
                                    std::sort(u.begin(), u.end());
                                    u.erase(std::unique(u.begin(), u.end()), u.end());
                                    return u;
                                }());
                                REQUIRE(before == after);
                                REQUIRE(static_cast<int>(na.size()) <= c_max);
                                REQUIRE(static_cast<int>(nb.size()) <= c_max);
                                ++checked;
                            }
                    }
            }
        }
    CHECK(checked > 10000);
}

TEST_CASE("init_network: full caches, one fresh copy, balanced delays") {
    const GossipParams p = GossipParams::validated(500, 100, 50, 3, 101);
    Network net(p, 8);
    std::vector<int> delay_histogram(p.gmax + 1, 0);
    int fresh_holders = 0, seen = 0;
    for (const Node& node : net.nodes()) {
        CHECK(static_cast<int>(node.cache.size()) == p.cache_size);
        CHECK(std::is_sorted(node.cache.begin(), node.cache.end()));
        CHECK(std::adjacent_find(node.cache.begin(), node.cache.end()) == node.cache.end());
        for (std::int32_t item : node.cache) {
            CHECK(item >= 0);
            CHECK(item <= p.n_items);
        }
        ++delay_histogram[node.delay];
        if (std::binary_search(node.cache.begin(), node.cache.end(), net.fresh_item()))
            ++fresh_holders;
        if (node.seen_new) ++seen;
    }
    CHECK(fresh_holders == 1);
    CHECK(seen == 1);
    CHECK(net.replication() == 1);
    CHECK(net.coverage() == 1);
    const auto [lo, hi] =
        std::minmax_element(delay_histogram.begin(), delay_histogram.end());
    CHECK(*hi - *lo <= 1);
}

TEST_CASE("two nodes, gmax = 1: the lone active always shuffles") {
    const GossipParams p = GossipParams::validated(20, 5, 2, 1, 2);
    Network net(p, 99);
    for (int round = 0; round < 50; ++round) {
        const RoundReport r = net.run_round();
        CHECK(r.shuffles == 1);
        CHECK(r.collisions == 0);
    }
}

TEST_CASE("every contact attempt is either a shuffle or a collision") {
    const GossipParams p = GossipParams::validated(500, 100, 50, 3, 200);
    Network net(p, 4242);
    for (int round = 0; round < 40; ++round) {
        int actives = 0;
        for (const Node& node : net.nodes())
            if (node.delay == 0) ++actives;
        const RoundReport r = net.run_round();
        CHECK(r.shuffles + r.collisions == actives);
        CHECK(r.shuffles >= 0);
        CHECK(r.replication >= 1);
    }
}

TEST_CASE("empirical success rate approaches passive-availability times the noc factor") {
    // strong collision semantics: success = passive target, untouched target,
    // untouched initiator; the limit rate is (1 - a) * exp(-2a) with a the
    // active fraction, the same exp(-2a) the kernels use
    const GossipParams p = GossipParams::validated(500, 100, 50, 9, 2500);
    Network net(p, 31337);
    long shuffles = 0, attempts = 0;
    for (int round = 0; round < 60; ++round) {
        const RoundReport r = net.run_round();
        shuffles += r.shuffles;
        attempts += r.shuffles + r.collisions;
    }
    const double rate = static_cast<double>(shuffles) / static_cast<double>(attempts);
    const double passive_share = 2250.0 / 2499.0;  // (N - N/10) / (N - 1)
    CHECK(rate == doctest::Approx(passive_share * std::exp(-0.2)).epsilon(0.025));
}

TEST_CASE("run_experiment: sticky coverage, no total loss, reproducible") {
    const GossipParams p = GossipParams::validated(50, 10, 5, 3, 40);
    const AgentStats stats = run_experiment(p, 120, 8, 777);
    CHECK(stats.replication.runs == 8);
    for (long t = 1; t <= 120; ++t) {
        CHECK(stats.coverage.mean[t] >= stats.coverage.mean[t - 1] - 1e-15);
        CHECK(stats.replication.mean[t] >= 1.0 / 40.0 - 1e-15);
        CHECK(stats.replication.mean[t] <= stats.coverage.mean[t] + 1e-15);
    }
    const AgentStats again = run_experiment(p, 120, 8, 777);
    CHECK(stats.replication.mean == again.replication.mean);
    CHECK(stats.coverage.stddev == again.coverage.stddev);
}
