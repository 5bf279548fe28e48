#include "discretize.hpp"

#include <cmath>

#include "errors.hpp"

namespace ps {

const char* to_string(EndCondition e) {
    switch (e) {
        case EndCondition::PortVelocity: return "PortVelocity";
        case EndCondition::PortStress: return "PortStress";
        case EndCondition::ZeroVelocity: return "ZeroVelocity";
        case EndCondition::ZeroStress: return "ZeroStress";
    }
    return "?";
}

namespace {

bool is_port(EndCondition e) {
    return e == EndCondition::PortVelocity || e == EndCondition::PortStress;
}

bool is_velocity_condition(EndCondition e) {
    return e == EndCondition::PortVelocity || e == EndCondition::ZeroVelocity;
}

// Divide rows of S by the mass diagonal; with C := (M B)^T afterwards this
// keeps M B == C^T bitwise regardless of the coefficient values.
PassiveBlock assemble(VectorXd Mdiag, MatrixXd S, MatrixXd F, std::string label) {
    PassiveBlock b;
    const Index n = Mdiag.size(), m = F.cols();
    b.A = std::move(S);
    b.B = std::move(F);
    for (Index i = 0; i < n; ++i) {
        b.A.row(i) /= Mdiag(i);
        b.B.row(i) /= Mdiag(i);
    }
    b.C = (Mdiag.asDiagonal() * b.B).transpose();
    b.D = MatrixXd::Zero(m, m);
    b.Mdiag = std::move(Mdiag);
    b.label = std::move(label);
    check_dimensions(b);
    return b;
}

}  // namespace

WaveBlock build_wave_block(double a, double b, int N, const Profile& rho, const Profile& T,
                           EndCondition left, EndCondition right) {
    if (!(a < b)) throw ValidationError("wave block requires a < b");
    if (N < 2) throw ValidationError("wave block requires N >= 2");
    const int ports = (is_port(left) ? 1 : 0) + (is_port(right) ? 1 : 0);
    if (ports != 1)
        throw ValidationError("wave block must expose exactly one port, got " +
                              std::to_string(ports) + " (" + to_string(left) + "/" +
                              to_string(right) + ")");

    WaveGrid g;
    g.a = a;
    g.b = b;
    g.N = N;
    g.h = (b - a) / N;
    g.nodes.resize(N + 1);
    g.centers.resize(N);
    g.rho_nodes.resize(N + 1);
    g.T_centers.resize(N);
    for (int j = 0; j <= N; ++j) {
        g.nodes(j) = a + g.h * j;
        double r = eval(rho.expr, g.nodes(j));
        if (!(r > 0.0))
            throw ValidationError("rho is not positive at grid node x = " +
                                  std::to_string(g.nodes(j)));
        g.rho_nodes(j) = r;
    }
    for (int c = 0; c < N; ++c) {
        g.centers(c) = a + g.h * (c + 0.5);
        double t = eval(T.expr, g.centers(c));
        if (!(t > 0.0))
            throw ValidationError("T is not positive at cell center x = " +
                                  std::to_string(g.centers(c)));
        g.T_centers(c) = t;
    }

    for (int j = 0; j <= N; ++j) {
        bool eliminated = (j == 0 && is_velocity_condition(left)) ||
                          (j == N && is_velocity_condition(right));
        if (!eliminated) g.vel_nodes.push_back(j);
    }
    const int nv = static_cast<int>(g.vel_nodes.size());
    const int n = nv + N;

    std::vector<int> pos(N + 1, -1);
    for (int i = 0; i < nv; ++i) pos[g.vel_nodes[i]] = i;

    VectorXd Mdiag = VectorXd::Zero(n);
    MatrixXd S = MatrixXd::Zero(n, n);
    MatrixXd F = MatrixXd::Zero(n, 1);

    for (int i = 0; i < nv; ++i) {
        const int j = g.vel_nodes[i];
        const double w = (j == 0 || j == N) ? 0.5 : 1.0;
        Mdiag(i) = g.h * w * g.rho_nodes(j);
        // h w rho_j v_j' = T_j e_j - T_{j-1} e_{j-1}  (one-sided at the ends)
        if (j > 0) S(i, nv + j - 1) -= g.T_centers(j - 1);
        if (j < N) S(i, nv + j) += g.T_centers(j);
        if (j == 0 && left == EndCondition::PortStress) F(i, 0) = -1.0;
        if (j == N && right == EndCondition::PortStress) F(i, 0) = 1.0;
    }
    for (int c = 0; c < N; ++c) {
        const int i = nv + c;
        Mdiag(i) = g.h * g.T_centers(c);
        // h T_c e_c' = T_c (v_{c+1} - v_c); eliminated neighbors are zero or
        // enter through the port.
        const int jl = c, jr = c + 1;
        if (pos[jl] >= 0)
            S(i, pos[jl]) -= g.T_centers(c);
        else if (jl == 0 && left == EndCondition::PortVelocity)
            F(i, 0) = -g.T_centers(c);
        if (pos[jr] >= 0)
            S(i, pos[jr]) += g.T_centers(c);
        else if (jr == N && right == EndCondition::PortVelocity)
            F(i, 0) = g.T_centers(c);
    }

    WaveBlock wb;
    wb.block = assemble(std::move(Mdiag), std::move(S), std::move(F), "wave");
    wb.grid = std::move(g);
    return wb;
}

PassiveBlock build_heat_block(int N) {
    if (N < 2) throw ValidationError("heat block requires N >= 2");
    const double h = 1.0 / N;
    VectorXd Mdiag = VectorXd::Constant(N, h);
    Mdiag(0) = h / 2.0;
    MatrixXd S = MatrixXd::Zero(N, N);
    MatrixXd F = MatrixXd::Zero(N, 1);
    // Ghost-node Neumann at x = 0 turns the flux into the port input; w_N = 0
    // is eliminated.  S is symmetric negative definite by construction.
    S(0, 0) = -1.0 / h;
    S(0, 1) = 1.0 / h;
    F(0, 0) = 1.0;
    for (int j = 1; j < N; ++j) {
        S(j, j) = -2.0 / h;
        S(j, j - 1) = 1.0 / h;
        if (j + 1 < N) S(j, j + 1) = 1.0 / h;
    }
    return assemble(std::move(Mdiag), std::move(S), std::move(F), "heat");
}

PassiveBlock build_acoustic_ode(double m, double d, double k, double beta, double T1) {
    if (!(m > 0.0) || !(d > 0.0) || !(k > 0.0) || !(beta > 0.0) || !(T1 > 0.0))
        throw ValidationError("acoustic oscillator requires m, d, k, beta, T1 > 0");
    PassiveBlock blk;
    blk.label = "oscillator";
    const double km = k / m;
    blk.A.resize(2, 2);
    blk.A << 0.0, 1.0, -km, -d / m;
    blk.B.resize(2, 1);
    blk.B << 0.0, beta;
    // Shared subexpressions make the off-diagonal of M A + A^T M cancel
    // bitwise: c1 - c2*(k/m) == 0 exactly.
    const double c2 = T1 / beta;
    const double c1 = c2 * km;
    blk.Mdiag.resize(2);
    blk.Mdiag << c1, c2;
    blk.C = (blk.Mdiag.asDiagonal() * blk.B).transpose();
    blk.D = MatrixXd::Zero(1, 1);
    check_dimensions(blk);
    return blk;
}

}  // namespace ps
