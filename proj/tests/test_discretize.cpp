#include <doctest.h>

#include <cmath>

#include "discretize.hpp"
#include "spectral.hpp"

using namespace ps;

namespace {
Profile unit_profile(double a, double b) { return validate_profile("1", a, b); }
}  // namespace

TEST_CASE("wave block N=2, ZeroVelocity/PortStress: hand-checked matrices") {
    Profile one = unit_profile(0.0, 1.0);
    WaveBlock wb = build_wave_block(0.0, 1.0, 2, one, one, EndCondition::ZeroVelocity,
                                    EndCondition::PortStress);
    const PassiveBlock& b = wb.block;
    REQUIRE(b.n() == 4);  // states: v_1, v_2, e_0, e_1
    REQUIRE(b.m() == 1);

    MatrixXd A(4, 4);
    A << 0, 0, -2, 2,  //
        0, 0, 0, -4,   //
        2, 0, 0, 0,    //
        -2, 2, 0, 0;
    CHECK(b.A == A);

    VectorXd M(4);
    M << 0.5, 0.25, 0.5, 0.5;
    CHECK(b.Mdiag == M);

    MatrixXd B(4, 1);
    B << 0, 4, 0, 0;
    CHECK(b.B == B);
    MatrixXd C(1, 4);
    C << 0, 1, 0, 0;  // y = v at the ported end
    CHECK(b.C == C);
    CHECK(b.D(0, 0) == 0.0);

    CHECK(wb.grid.vel_nodes == std::vector<int>{1, 2});
    CHECK(wb.grid.h == 0.5);
}

TEST_CASE("wave block N=2, ZeroStress/PortVelocity: hand-checked matrices") {
    Profile one = unit_profile(-1.0, 0.0);
    WaveBlock wb = build_wave_block(-1.0, 0.0, 2, one, one, EndCondition::ZeroStress,
                                    EndCondition::PortVelocity);
    const PassiveBlock& b = wb.block;
    REQUIRE(b.n() == 4);  // states: v_0, v_1, e_0, e_1

    MatrixXd A(4, 4);
    A << 0, 0, 4, 0,  //
        0, 0, -2, 2,  //
        -2, 2, 0, 0,  //
        0, -2, 0, 0;
    CHECK(b.A == A);

    VectorXd M(4);
    M << 0.25, 0.5, 0.5, 0.5;
    CHECK(b.Mdiag == M);

    MatrixXd B(4, 1);
    B << 0, 0, 0, 2;
    CHECK(b.B == B);
    MatrixXd C(1, 4);
    C << 0, 0, 0, 1;  // y = stress at the adjacent cell
    CHECK(b.C == C);
    CHECK(wb.grid.vel_nodes == std::vector<int>{0, 1});
}

TEST_CASE("mass diagonal follows the trapezoid/cell rule for varying coefficients") {
    Profile rho = validate_profile("2+0.5*sin(pi*x)", 0.0, 1.0);
    Profile T = validate_profile("1+0.25*cos(x)", 0.0, 1.0);
    const int N = 9;
    WaveBlock wb =
        build_wave_block(0.0, 1.0, N, rho, T, EndCondition::ZeroVelocity, EndCondition::PortStress);
    const WaveGrid& g = wb.grid;
    const Index nv = static_cast<Index>(g.vel_nodes.size());
    REQUIRE(nv == N);  // nodes 1..N
    for (Index i = 0; i < nv; ++i) {
        int j = g.vel_nodes[i];
        double w = (j == 0 || j == N) ? 0.5 : 1.0;
        CHECK(wb.block.Mdiag(i) == g.h * w * g.rho_nodes(j));
    }
    for (int c = 0; c < N; ++c) CHECK(wb.block.Mdiag(nv + c) == g.h * g.T_centers(c));

    // Exact port identity and near-exact skewness also with varying data.
    CHECK((wb.block.Mdiag.asDiagonal() * wb.block.B) == wb.block.C.transpose());
    CHECK(is_energy_skew(wb.block));
}

TEST_CASE("all four single-port configurations are passive and lossless") {
    Profile rho = validate_profile("1.5+0.25*cos(3*x)", -2.0, 2.0);
    Profile T = validate_profile("2+x^2", -2.0, 2.0);
    using E = EndCondition;
    const std::pair<E, E> configs[] = {{E::ZeroStress, E::PortVelocity},
                                       {E::ZeroVelocity, E::PortStress},
                                       {E::PortVelocity, E::ZeroStress},
                                       {E::PortStress, E::ZeroVelocity},
                                       {E::PortVelocity, E::ZeroVelocity},
                                       {E::PortStress, E::ZeroStress}};
    for (auto [l, r] : configs) {
        WaveBlock wb = build_wave_block(-2.0, 2.0, 13, rho, T, l, r);
        CAPTURE(to_string(l));
        CAPTURE(to_string(r));
        CHECK(is_energy_skew(wb.block));
        CHECK(kyp_residual(wb.block) <= 1e-12);
        CHECK((wb.block.Mdiag.asDiagonal() * wb.block.B) == wb.block.C.transpose());
        CHECK(wb.block.m() == 1);
    }
}

TEST_CASE("wave block requires exactly one port") {
    Profile one = unit_profile(0.0, 1.0);
    CHECK_THROWS_AS(build_wave_block(0.0, 1.0, 4, one, one, EndCondition::ZeroVelocity,
                                     EndCondition::ZeroStress),
                    ValidationError);
    CHECK_THROWS_AS(build_wave_block(0.0, 1.0, 4, one, one, EndCondition::PortVelocity,
                                     EndCondition::PortStress),
                    ValidationError);
    CHECK_THROWS_AS(build_wave_block(0.0, 1.0, 1, one, one, EndCondition::ZeroVelocity,
                                     EndCondition::PortStress),
                    ValidationError);
    CHECK_THROWS_AS(build_wave_block(1.0, 0.0, 4, one, one, EndCondition::ZeroVelocity,
                                     EndCondition::PortStress),
                    ValidationError);
}

TEST_CASE("wave block rejects nonpositive coefficients at grid points") {
    // Positive on the sampled validation grid is checked per node/center too:
    // here rho is validated on [0,1] but the builder uses the same interval,
    // so craft a profile positive at samples yet tiny/negative off-sample is
    // impractical; instead check the direct guard with a shifted interval.
    Profile rho = validate_profile("x+0.6", 0.0, 1.0);  // positive on [0,1]
    Profile T = unit_profile(0.0, 1.0);
    // Builder on [-1, 0] hits rho(-1) < 0: the pointwise guard must fire.
    CHECK_THROWS_AS(
        build_wave_block(-1.0, 0.0, 4, rho, T, EndCondition::ZeroStress,
                         EndCondition::PortVelocity),
        ValidationError);
}

TEST_CASE("heat block N=2: ghost-node Neumann port, eliminated Dirichlet end") {
    PassiveBlock b = build_heat_block(2);
    REQUIRE(b.n() == 2);
    MatrixXd A(2, 2);
    A << -8, 8, 4, -8;
    CHECK(b.A == A);
    VectorXd M(2);
    M << 0.25, 0.5;
    CHECK(b.Mdiag == M);
    MatrixXd B(2, 1);
    B << 4, 0;
    CHECK(b.B == B);
    MatrixXd C(1, 2);
    C << 1, 0;  // y = w(0)
    CHECK(b.C == C);
    CHECK_THROWS_AS(build_heat_block(1), ValidationError);
}

TEST_CASE("heat block: M A is symmetric negative definite (summation by parts)") {
    PassiveBlock b = build_heat_block(17);
    MatrixXd MA = b.Mdiag.asDiagonal() * b.A;
    CHECK((MA - MA.transpose()).cwiseAbs().maxCoeff() == 0.0);  // bitwise symmetric

    // Quadratic form equals the negative discrete Dirichlet energy:
    // x^T (MA) x = -(1/h) [ sum_j (x_{j+1}-x_j)^2 + x_{N-1}^2 ]  (x_N = 0).
    const int N = 17;
    const double h = 1.0 / N;
    VectorXd x(N);
    for (int j = 0; j < N; ++j) x(j) = std::sin(1.7 * j) + 0.3 * j * j / (N * N);
    double quad = x.dot(MA * x);
    double ref = 0.0;
    for (int j = 0; j + 1 < N; ++j) ref += (x(j + 1) - x(j)) * (x(j + 1) - x(j));
    ref += x(N - 1) * x(N - 1);
    ref *= -1.0 / h;
    CHECK(quad == doctest::Approx(ref).epsilon(1e-13));
}

TEST_CASE("acoustic oscillator: exact structure for arbitrary parameters") {
    const double m = 1.37, d = 0.21, k = 3.9, beta = 0.55, T1 = 1.25;
    PassiveBlock b = build_acoustic_ode(m, d, k, beta, T1);
    CHECK(b.A(0, 0) == 0.0);
    CHECK(b.A(0, 1) == 1.0);
    CHECK(b.A(1, 0) == -(k / m));
    CHECK(b.A(1, 1) == -(d / m));
    CHECK(b.B(0, 0) == 0.0);
    CHECK(b.B(1, 0) == beta);

    // M A + A^T M must vanish off-diagonal bitwise and carry all dissipation
    // in the (1,1) entry.
    MatrixXd MA = b.Mdiag.asDiagonal() * b.A;
    MatrixXd Ssym = MA + MA.transpose();
    CHECK(Ssym(0, 0) == 0.0);
    CHECK(Ssym(0, 1) == 0.0);
    CHECK(Ssym(1, 0) == 0.0);
    CHECK(Ssym(1, 1) < 0.0);
    CHECK(Ssym(1, 1) == doctest::Approx(-2.0 * (T1 / beta) * (d / m)).epsilon(1e-15));

    CHECK((b.Mdiag.asDiagonal() * b.B) == b.C.transpose());
    CHECK_THROWS_AS(build_acoustic_ode(0.0, d, k, beta, T1), ValidationError);
    CHECK_THROWS_AS(build_acoustic_ode(m, -d, k, beta, T1), ValidationError);
}

TEST_CASE("oscillator energy matches the physical quadratic form") {
    const double m = 2.0, d = 0.5, k = 3.0, beta = 0.8, T1 = 1.5;
    PassiveBlock b = build_acoustic_ode(m, d, k, beta, T1);
    const double delta = 0.7, ddot = -1.1;
    VectorXd x(2);
    x << delta, ddot;
    double expected = 0.5 * (T1 / (beta * m)) * (k * delta * delta + m * ddot * ddot);
    CHECK(energy(b, x) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("closed wave spectrum: imaginary, with O(h^2) frequencies") {
    // Port held at u = 0 turns PortVelocity into the ZeroVelocity dynamics:
    // the A matrix is the closed string with stress-free left end, modes
    // omega_n = (n + 1/2) pi.
    Profile one = unit_profile(-1.0, 0.0);
    const int N = 100;
    WaveBlock wb = build_wave_block(-1.0, 0.0, N, one, one, EndCondition::ZeroStress,
                                    EndCondition::PortVelocity);
    VectorXcd eigs = spectrum(wb.block.A, wb.block.Mdiag);
    REQUIRE(eigs.size() == 2 * N);

    // Skew classification forces exactly imaginary eigenvalues.
    for (Index i = 0; i < eigs.size(); ++i) CHECK(eigs(i).real() == 0.0);

    // Collect positive frequencies, sorted.
    std::vector<double> omega;
    for (Index i = 0; i < eigs.size(); ++i)
        if (eigs(i).imag() > 0.0) omega.push_back(eigs(i).imag());
    std::sort(omega.begin(), omega.end());
    REQUIRE(omega.size() == static_cast<std::size_t>(N));

    // Discrete dispersion: omega_h = (2/h) sin(omega h / 2), so the defect is
    // omega^3 h^2 / 24 to leading order.  Check the lowest quarter within a
    // 1.5x safety factor of that bound.
    const double h = 1.0 / N;
    for (int n = 0; n < N / 4; ++n) {
        double target = (n + 0.5) * M_PI;
        double bound = 1.5 * target * target * target * h * h / 24.0 + 1e-10;
        CHECK(std::abs(omega[n] - target) <= bound);
        // And the defect is real: the discrete frequency is strictly low.
        if (n > 2) CHECK(omega[n] < target);
    }
}
