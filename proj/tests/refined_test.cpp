#include <doctest.h>

#include <cmath>
#include <vector>

#include "gossipmf/gossip.hpp"
#include "gossipmf/refined.hpp"
#include "helpers.hpp"

using namespace gossipmf;

namespace {

PopulationModel constant_kernel_model(Matrix k) {
    std::vector<std::string> names;
    for (int i = 0; i < k.rows(); ++i) names.push_back("s" + std::to_string(i));
    const int n = k.rows();
    std::vector<double> flat(k.data().begin(), k.data().end());
    return PopulationModel::make(names, [flat, n]<typename S>(std::span<const S>, std::span<S> out) {
        for (std::size_t i = 0; i < flat.size(); ++i) out[i] = S(flat[i]);
    });
}

GossipParams fig7_params() { return GossipParams::validated(500, 100, 50, 3, 100); }

OccupancyVector fresh6(long long population) {
    std::vector<double> m(6, 0.0);
    m[2] = static_cast<double>(population - 1) / population;
    m[4] = 1.0 / population;
    return validate_occupancy(m);
}

}  // namespace

TEST_CASE("gamma: deterministic kernels produce no noise") {
    Matrix k(3, 3);
    k(0, 1) = 1.0;
    k(1, 2) = 1.0;
    k(2, 0) = 1.0;
    const PopulationModel model = constant_kernel_model(k);
    SplitMix64 rng(59);
    const Matrix g = gamma_matrix(model, testhelp::random_occupancy(3, rng));
    CHECK(g.max_abs_diff(Matrix(3, 3)) == 0.0);
}

TEST_CASE("gamma: two-state coin-flip kernel by direct substitution") {
    Matrix k(2, 2);
    k(0, 0) = k(0, 1) = k(1, 0) = k(1, 1) = 0.5;
    const PopulationModel model = constant_kernel_model(k);
    const Matrix g = gamma_matrix(model, validate_occupancy(std::vector<double>{0.5, 0.5}));
    CHECK(g(0, 0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g(1, 1) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g(0, 1) == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(g(1, 0) == doctest::Approx(-0.25).epsilon(1e-15));
}

TEST_CASE("gamma is symmetric with zero row sums on the gossip models") {
    const PopulationModel model = build_model(ModelKind::SixState, fig7_params());
    const RefinedTrajectory traj = refined_trajectory(model, fresh6(100), 10);
    const Matrix g = gamma_matrix(model, traj.at(10).mu);
    for (int i = 0; i < 6; ++i) {
        CHECK(std::abs(g.row_sum(i)) <= 1e-14);
        for (int j = 0; j < 6; ++j) CHECK(g(i, j) == g(j, i));
    }
    // regression anchors recorded from the first run at mu(10)
    CHECK(g(0, 0) == doctest::Approx(6.28913255257781e-04).epsilon(1e-10));
    CHECK(g(2, 3) == doctest::Approx(-1.11784747333760e-03).epsilon(1e-10));
    CHECK(g(5, 5) == doctest::Approx(4.97693717868527e-06).epsilon(1e-10));
    for (int j = 0; j < 6; ++j) CHECK(g(4, j) == 0.0);  // PD row is deterministic

    const std::vector<double>& v = traj.at(10).v;
    CHECK(v[1] == doctest::Approx(-4.04268406706568e-04).epsilon(1e-10));
    CHECK(v[2] == doctest::Approx(1.00022905480585e-03).epsilon(1e-10));
    CHECK(v[4] == 0.0);  // nothing flows into or out of PD
}

TEST_CASE("identity kernel: corrections stay exactly zero") {
    const PopulationModel model = constant_kernel_model(Matrix::identity(3));
    SplitMix64 rng(61);
    const RefinedTrajectory traj = refined_trajectory(model, testhelp::random_occupancy(3, rng), 25);
    for (const RefinedState& s : traj.states) {
        for (double v : s.v) CHECK(v == 0.0);
        CHECK(s.w.max_abs_diff(Matrix(3, 3)) == 0.0);
    }
}

TEST_CASE("constant kernel: V stays zero while W accumulates noise") {
    Matrix k(2, 2);
    k(0, 0) = 0.75;
    k(0, 1) = 0.25;
    k(1, 0) = 0.4;
    k(1, 1) = 0.6;
    const PopulationModel model = constant_kernel_model(k);
    const OccupancyVector mu0 = validate_occupancy(std::vector<double>{0.3, 0.7});
    const RefinedTrajectory traj = refined_trajectory(model, mu0, 30);

    Matrix w_expected(2, 2);
    OccupancyVector mu = mu0;
    const Matrix a = transpose(k);  // constant-kernel jacobian
    for (long t = 0; t < 30; ++t) {
        for (double v : traj.at(t).v) CHECK(v == 0.0);
        CHECK(traj.at(t).w.max_abs_diff(w_expected) <= 1e-13);
        Matrix g = gamma_matrix(model, mu);
        Matrix next = sandwich(a, w_expected);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) next(i, j) += g(i, j);
        w_expected = next;
        mu = step(model, mu);
    }
}

TEST_CASE("structural invariants hold along a six-state run") {
    const PopulationModel model = build_model(ModelKind::SixState, fig7_params());
    const RefinedTrajectory traj = refined_trajectory(model, fresh6(100), 500);
    REQUIRE(traj.t_max() == 500);
    // boundary conditions
    for (double v : traj.at(0).v) CHECK(v == 0.0);
    CHECK(traj.at(0).w.max_abs_diff(Matrix(6, 6)) == 0.0);

    for (const RefinedState& s : traj.states) {
        double sum_v = 0.0;
        for (double v : s.v) sum_v += v;
        CHECK(std::abs(sum_v) <= 1e-9);
        for (int i = 0; i < 6; ++i) {
            CHECK(std::abs(s.w.row_sum(i)) <= 1e-9);
            for (int j = 0; j < i; ++j) CHECK(std::abs(s.w(i, j) - s.w(j, i)) <= 1e-12);
        }
        CHECK(symmetric_eigenvalues(s.w).front() >= -1e-9);
    }
}

TEST_CASE("refined occupancy applies the 1/N correction") {
    RefinedState s;
    s.mu = validate_occupancy(std::vector<double>{0.5, 0.5});
    s.v = {0.1, -0.1};
    s.w = Matrix(2, 2);
    const RefinedOccupancy out = refined_occupancy(s, 10);
    CHECK(out.value[0] == doctest::Approx(0.51).epsilon(1e-15));
    CHECK(out.value[1] == doctest::Approx(0.49).epsilon(1e-15));
    CHECK_FALSE(out.out_of_range);

    s.v = {6.0, -6.0};  // overwhelms N = 10: flagged, not clipped
    const RefinedOccupancy wild = refined_occupancy(s, 10);
    CHECK(wild.value[0] == doctest::Approx(1.1).epsilon(1e-15));
    CHECK(wild.out_of_range);

    s.v = {0.0, 0.0};
    const RefinedOccupancy plain = refined_occupancy(s, 10);
    CHECK(plain.value[0] == 0.5);
}

TEST_CASE("refined measure: linear consistency and the quadratic formula") {
    const PopulationModel model = build_model(ModelKind::SixState, fig7_params());
    const RefinedTrajectory traj = refined_trajectory(model, fresh6(100), 100);
    const Measure repl = replication_measure(ModelKind::SixState, 3);

    for (long t : {1L, 25L, 100L}) {
        const RefinedState& s = traj.at(t);
        const RefinedOccupancy occ = refined_occupancy(s, 100);
        double via_occ = 0.0;
        for (int i = 0; i < 6; ++i) via_occ += repl.weights()[i] * occ.value[i];
        CHECK(std::abs(refined_measure(s, repl, 100) - via_occ) <= 1e-14);
    }

    // h(m) = m_D^2 with mu_D = 0.5, V = 0, W_DD = 0.04, N = 100 -> 0.2504
    RefinedState s;
    s.mu = validate_occupancy(std::vector<double>{0.5, 0.5});
    s.v = {0.0, 0.0};
    s.w = Matrix(2, 2);
    s.w(0, 0) = 0.04;
    const Measure d_squared =
        Measure::general("d_squared", 2, [](std::span<const Jet2> m) { return m[0] * m[0]; });
    CHECK(refined_measure(s, d_squared, 100) == doctest::Approx(0.2504).epsilon(1e-14));
}
