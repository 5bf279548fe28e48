#pragma once

#include <vector>

#include "expr.hpp"
#include "lti.hpp"

namespace ps {

// Boundary treatment for one end of a wave block.  Port* exposes the boundary
// trace as the block's scalar port; Zero* closes the end homogeneously.
// Exactly one end of a block must be a Port* variant.
enum class EndCondition { PortVelocity, PortStress, ZeroVelocity, ZeroStress };

const char* to_string(EndCondition e);

// Staggered grid on [a, b]: velocities live at the N+1 nodes, strains at the
// N cell centers.  vel_nodes lists the node indices that remained velocity
// states (ends governed by a velocity condition are eliminated).
struct WaveGrid {
    double a = 0.0, b = 1.0;
    int N = 0;
    double h = 0.0;
    VectorXd nodes;      // N+1
    VectorXd centers;    // N
    VectorXd rho_nodes;  // N+1
    VectorXd T_centers;  // N
    std::vector<int> vel_nodes;
};

struct WaveBlock {
    PassiveBlock block;
    WaveGrid grid;
};

// First-order wave system rho(x) v_t = sigma_x, e_t = v_x, sigma = T(x) e on
// [a, b], discretized so that M B == C^T holds bitwise and M A + A^T M
// vanishes to rounding (exactly, for dyadic coefficient values).
// Mass weights: h * w_j * rho_j at nodes (w = 1/2 at the ends), h * T_c at
// centers.  Port input u is the boundary trace (velocity or stress); the
// output y is the power-conjugate trace, negated for a left-end port.
WaveBlock build_wave_block(double a, double b, int N, const Profile& rho, const Profile& T,
                           EndCondition left, EndCondition right);

// Heat equation w_t = w_xx on [0, 1] with flux port at x = 0 (ghost-node
// Neumann) and w(1) = 0; states are the node values w_0..w_{N-1}.
// Port: u = boundary heat flux, y = w(0).
PassiveBlock build_heat_block(int N);

// Second-order oscillator m delta'' + d delta' + k delta = beta * u with
// states (delta, delta'), y = T1 * delta'.  The mass weights c2 = T1/beta,
// c1 = c2 * (k/m) make M B == C^T bitwise and confine dissipation to the
// velocity state exactly.
PassiveBlock build_acoustic_ode(double m, double d, double k, double beta, double T1);

}  // namespace ps
