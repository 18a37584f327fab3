#include <doctest.h>

#include <cmath>
#include <vector>

#include "gossipmf/exact.hpp"
#include "gossipmf/gossip.hpp"
#include "gossipmf/meanfield.hpp"
#include "gossipmf/popsim.hpp"
#include "helpers.hpp"

using namespace gossipmf;

namespace {

PopulationModel constant_model(Matrix k) {
    std::vector<std::string> names;
    for (int i = 0; i < k.rows(); ++i) names.push_back("s" + std::to_string(i));
    std::vector<double> flat(k.data().begin(), k.data().end());
    return PopulationModel::make(names, [flat]<typename S>(std::span<const S>, std::span<S> out) {
        for (std::size_t i = 0; i < flat.size(); ++i) out[i] = S(flat[i]);
    });
}

PopulationModel identity_model(int n) { return constant_model(Matrix::identity(n)); }

GossipParams fig7_params() { return GossipParams::validated(500, 100, 50, 3, 100); }

}  // namespace

TEST_CASE("identity kernel leaves the distribution unchanged") {
    const CountVector c0 = CountVector::validated({3, 4, 3}, 10);
    CountDistribution dist = CountDistribution::point_mass(c0);
    dist = exact_step(identity_model(3), dist);
    REQUIRE(dist.table().size() == 1);
    CHECK(dist.table().at(dist.pack(c0.counts())) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("N = 1 reduces to the single-object chain") {
    const GossipParams gp = fig7_params();
    const PopulationModel model = build_model(ModelKind::ThreeState, gp);
    const CountVector c0 = CountVector::validated({0, 1, 0}, 1);
    const CountDistribution dist = exact_step(model, CountDistribution::point_mass(c0));
    const Matrix k = model.kernel(c0.occupancy().entries());
    // row D of K(e_D) gives the two reachable outcomes
    double total = 0.0;
    for (const auto& [key, p] : dist.table()) {
        const std::vector<long long> counts = dist.unpack(key);
        const int state = counts[0] == 1 ? 0 : (counts[1] == 1 ? 1 : 2);
        CHECK(p == doctest::Approx(k(1, state)).epsilon(1e-14));
        total += p;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("N = 2, two states, constant kernel: product of independent draws") {
    Matrix k(2, 2);
    k(0, 0) = 0.7;
    k(0, 1) = 0.3;
    k(1, 0) = 0.2;
    k(1, 1) = 0.8;
    const PopulationModel model = constant_model(k);
    const CountVector c0 = CountVector::validated({1, 1}, 2);
    const CountDistribution dist = exact_step(model, CountDistribution::point_mass(c0));

    // outcomes: both to 0, both to 1, one each
    const double p_both0 = 0.7 * 0.2;
    const double p_both1 = 0.3 * 0.8;
    const double p_split = 0.7 * 0.8 + 0.3 * 0.2;
    CHECK(dist.table().at(dist.pack(std::vector<long long>{2, 0}))
          == doctest::Approx(p_both0).epsilon(1e-14));
    CHECK(dist.table().at(dist.pack(std::vector<long long>{0, 2}))
          == doctest::Approx(p_both1).epsilon(1e-14));
    CHECK(dist.table().at(dist.pack(std::vector<long long>{1, 1}))
          == doctest::Approx(p_split).epsilon(1e-14));
}

TEST_CASE("probability is conserved step after step") {
    const PopulationModel model = build_model(ModelKind::ThreeState, fig7_params());
    CountDistribution dist =
        CountDistribution::point_mass(CountVector::validated({0, 2, 18}, 20));
    for (int t = 0; t < 8; ++t) {
        dist = exact_step(model, dist);
        CHECK(std::abs(dist.total_probability() - 1.0) <= 1e-12);
    }
}

TEST_CASE("expected occupancy: t = 0 and deterministic kernels are exact") {
    const CountVector c0 = CountVector::validated({5, 15}, 20);
    CHECK(exact_expected_occupancy(identity_model(2), c0, 0) ==
          std::vector<double>{0.25, 0.75});

    Matrix flip(2, 2);
    flip(0, 1) = 1.0;
    flip(1, 0) = 1.0;
    const PopulationModel model = constant_model(flip);
    const std::vector<double> at3 = exact_expected_occupancy(model, c0, 3);
    const Trajectory mf = classic_trajectory(model, c0.occupancy(), 3);
    CHECK(testhelp::max_abs_diff(at3, mf.at(3).entries()) == 0.0);
}

TEST_CASE("constant kernels: exact expectation equals the classic trajectory") {
    Matrix k(3, 3);
    k(0, 0) = 0.6; k(0, 1) = 0.3; k(0, 2) = 0.1;
    k(1, 0) = 0.2; k(1, 1) = 0.5; k(1, 2) = 0.3;
    k(2, 0) = 0.25; k(2, 1) = 0.25; k(2, 2) = 0.5;
    const PopulationModel model = constant_model(k);
    const CountVector c0 = CountVector::validated({4, 3, 3}, 10);
    const Trajectory mf = classic_trajectory(model, c0.occupancy(), 6);
    for (long t = 0; t <= 6; ++t)
        CHECK(testhelp::max_abs_diff(exact_expected_occupancy(model, c0, t),
                                     mf.at(t).entries()) <= 1e-12);
}

TEST_CASE("convergence table: zero residual for identity and constant kernels") {
    const std::vector<long long> ns{10, 20, 40};
    {
        const PopulationModel model = identity_model(2);
        const OccupancyVector mu0 = validate_occupancy(std::vector<double>{0.5, 0.5});
        for (const ConvergenceRow& row : corollary_convergence_table(model, mu0, 4, ns))
            CHECK(row.residual_inf <= 1e-12);
    }
    {
        Matrix k(2, 2);
        k(0, 0) = 0.9; k(0, 1) = 0.1;
        k(1, 0) = 0.3; k(1, 1) = 0.7;
        const PopulationModel model = constant_model(k);
        const OccupancyVector mu0 = validate_occupancy(std::vector<double>{0.5, 0.5});
        for (const ConvergenceRow& row : corollary_convergence_table(model, mu0, 4, ns))
            CHECK(row.residual_inf <= 1e-11);
    }
}

TEST_CASE("three-state expectation at N = 20, t = 20: pinned regression anchor") {
    // frozen from the first oracle run; this value anchors the convergence
    // test of the 1/N correction
    const PopulationModel model = build_model(ModelKind::ThreeState, fig7_params());
    const CountVector c0 = CountVector::validated({0, 2, 18}, 20);
    const std::vector<double> e = exact_expected_occupancy(model, c0, 20);
    CHECK(e[0] == doctest::Approx(1.6992657982963474e-01).epsilon(1e-12));
    CHECK(e[1] == doctest::Approx(1.0241251242622272e-01).epsilon(1e-12));
    CHECK(e[2] == doctest::Approx(7.2766090774413195e-01).epsilon(1e-12));
}

TEST_CASE("monte-carlo mean matches the exact expectation (N = 10, t = 10)") {
    const PopulationModel model = build_model(ModelKind::ThreeState, fig7_params());
    const CountVector c0 = CountVector::validated({0, 1, 9}, 10);
    const std::vector<double> expected = exact_expected_occupancy(model, c0, 10);

    const int runs = 100000;
    const Measure repl = replication_measure(ModelKind::ThreeState, 3);
    const SimStats stats = simulate_measure(model, c0, 10, runs, 123456, repl);
    const double se = stats.std_error(10);
    CHECK(std::abs(stats.mean[10] - expected[1]) <= 4.0 * se);
}

TEST_CASE("support cap triggers StateSpaceTooLarge") {
    const PopulationModel model = build_model(ModelKind::ThreeState, fig7_params());
    const CountVector c0 = CountVector::validated({7, 7, 6}, 20);
    CHECK_THROWS_AS(exact_step(model, CountDistribution::point_mass(c0), 10),
                    StateSpaceTooLarge);
}
