#include <doctest.h>

#include <cmath>

#include "timestep.hpp"

using namespace ps;

namespace {

Model unit_model(ModelKind kind, int N) {
    ModelParams p;
    p.kind = kind;
    p.N = N;
    return build_model(p);
}

}  // namespace

TEST_CASE("closed wave: energy exactly conserved up to rounding over 1e4 steps") {
    Profile one = validate_profile("1", -1.0, 0.0);
    WaveBlock wb = build_wave_block(-1.0, 0.0, 50, one, one, EndCondition::ZeroStress,
                                    EndCondition::PortVelocity);
    CoupledSystem sys = as_system(wb.block);  // port held at zero: lossless

    VectorXd x0(sys.n());
    const Index nv = static_cast<Index>(wb.grid.vel_nodes.size());
    for (Index i = 0; i < nv; ++i) x0(i) = std::sin(M_PI * wb.grid.nodes(wb.grid.vel_nodes[i]) / 2.0);
    for (int c = 0; c < wb.grid.N; ++c) x0(nv + c) = -M_PI * std::sin(M_PI * (wb.grid.centers(c) + 1.0));

    double dt = wb.grid.h / 4.0;
    EnergyTrace tr = simulate(sys, x0, dt, 10000);
    REQUIRE(tr.rows() == 10001);
    double E0 = tr.E_total.front();
    double drift = 0.0;
    for (double e : tr.E_total) drift = std::max(drift, std::abs(e - E0));
    CHECK(drift <= 1e-12 * E0);  // midpoint + one refinement pass: measured ~2e-14
    CHECK(tr.E_block2.back() == 0.0);
    CHECK(tr.t.back() == doctest::Approx(10000 * dt).epsilon(1e-12));
}

TEST_CASE("heat alone: energy strictly decreasing") {
    PassiveBlock heat = build_heat_block(32);
    CoupledSystem sys = as_system(heat);
    VectorXd x0(32);
    for (int j = 0; j < 32; ++j) {
        double xi = j / 32.0;
        x0(j) = xi * xi * (1.0 - xi) * (1.0 - xi) + 0.2;
    }
    EnergyTrace tr = simulate(sys, x0, 0.25 / 32.0, 2000);
    for (std::size_t i = 1; i < tr.rows(); ++i) CHECK(tr.E_total[i] < tr.E_total[i - 1]);
    CHECK(tr.E_total.back() < 1e-6 * tr.E_total.front());
}

TEST_CASE("coupled models: monotone decay, additive energies, every step recorded") {
    for (ModelKind kind : {ModelKind::WaveHeat, ModelKind::Acoustic}) {
        Model mdl = unit_model(kind, 40);
        VectorXd x0 = default_initial_data(mdl);
        double dt = default_dt(mdl);
        const long steps = 4000;
        EnergyTrace tr = simulate(mdl.sys, x0, dt, steps);
        REQUIRE(tr.rows() == static_cast<std::size_t>(steps + 1));
        const double E0 = tr.E_total.front();
        CHECK(E0 > 0.0);
        for (std::size_t i = 1; i < tr.rows(); ++i) {
            CHECK(tr.E_total[i] <= tr.E_total[i - 1] + 1e-10 * E0);
            CHECK(tr.E_total[i] == tr.E_block1[i] + tr.E_block2[i]);  // bitwise by definition
        }
        CHECK(tr.E_total.back() < 0.5 * E0);  // t = 10 wave periods: visibly damped
    }
}

TEST_CASE("dt refinement: second-order convergence of the midpoint rule") {
    Model mdl = unit_model(ModelKind::WaveHeat, 50);
    VectorXd x0 = default_initial_data(mdl);
    const double t_end = 5.0;
    double E[3];
    int k = 0;
    // Start at h/16: coarser steps still carry the stiff heat modes'
    // midpoint ringing and sit outside the asymptotic regime.
    for (double dt : {mdl.grid.h / 16.0, mdl.grid.h / 32.0, mdl.grid.h / 64.0}) {
        long steps = std::lround(t_end / dt);
        EnergyTrace tr = simulate(mdl.sys, x0, dt, steps);
        E[k++] = tr.E_total.back();
    }
    double order = std::log2(std::abs(E[0] - E[1]) / std::abs(E[1] - E[2]));
    CHECK(order >= 1.8);
    CHECK(order <= 2.2);
}

TEST_CASE("default initial data satisfies the coupling compatibility conditions") {
    for (ModelKind kind : {ModelKind::WaveHeat, ModelKind::Acoustic}) {
        Model mdl = unit_model(kind, 20);
        for (double r : initial_data_residuals(mdl)) CHECK(std::abs(r) <= 1e-12);
        VectorXd x0 = default_initial_data(mdl);
        CHECK(x0.size() == mdl.sys.n());
        CHECK(x0.allFinite());
        CHECK(default_initial_data(mdl, "zero") == VectorXd::Zero(mdl.sys.n()));
        CHECK_THROWS_AS(default_initial_data(mdl, "bogus"), ValidationError);
    }
}

TEST_CASE("zero family stays identically zero") {
    Model mdl = unit_model(ModelKind::Acoustic, 12);
    EnergyTrace tr = simulate(mdl.sys, default_initial_data(mdl, "zero"), 0.01, 50);
    for (double e : tr.E_total) CHECK(e == 0.0);
}

TEST_CASE("steps = 0 produces the single initial row") {
    Model mdl = unit_model(ModelKind::WaveHeat, 8);
    EnergyTrace tr = simulate(mdl.sys, default_initial_data(mdl), 0.01, 0);
    REQUIRE(tr.rows() == 1);
    CHECK(tr.t[0] == 0.0);
}

TEST_CASE("snapshots recorded at multiples of snapshot_every") {
    Model mdl = unit_model(ModelKind::WaveHeat, 8);
    SimulateOptions opts;
    opts.snapshot_every = 25;
    EnergyTrace tr = simulate(mdl.sys, default_initial_data(mdl), 0.01, 100, opts);
    REQUIRE(tr.snapshots.size() == 5);  // steps 0, 25, 50, 75, 100
    CHECK(tr.snapshots[0].first == 0);
    CHECK(tr.snapshots[4].first == 100);
    CHECK(tr.snapshots[2].second.size() == mdl.sys.n());
}

TEST_CASE("simulate validates inputs") {
    Model mdl = unit_model(ModelKind::WaveHeat, 8);
    VectorXd x0 = default_initial_data(mdl);
    CHECK_THROWS_AS(simulate(mdl.sys, VectorXd::Zero(3), 0.01, 10), ValidationError);
    CHECK_THROWS_AS(simulate(mdl.sys, x0, 0.0, 10), ValidationError);
    CHECK_THROWS_AS(simulate(mdl.sys, x0, -0.1, 10), ValidationError);
    CHECK_THROWS_AS(simulate(mdl.sys, x0, 0.01, -1), ValidationError);
}
