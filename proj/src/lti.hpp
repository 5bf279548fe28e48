#pragma once

#include <Eigen/Dense>
#include <string>

namespace ps {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// A finite-dimensional port system  M x' = M A x + M B u,  y = C x + D u
// with diagonal SPD mass matrix M (stored as its diagonal).  Impedance
// passivity holds when the KYP form
//     [ M A + A^T M   M B - C^T ]
//     [ B^T M - C    -(D + D^T) ]
// is negative semidefinite; the builders in discretize.hpp arrange
// M B == C^T exactly so the off-diagonal blocks vanish.
struct PassiveBlock {
    MatrixXd A;      // n x n
    MatrixXd B;      // n x m
    MatrixXd C;      // m x n
    MatrixXd D;      // m x m
    VectorXd Mdiag;  // n
    std::string label;

    Index n() const { return A.rows(); }
    Index m() const { return B.cols(); }
};

// E(x) = (1/2) x^T M x.
double energy(const PassiveBlock& blk, const VectorXd& x);

// Largest eigenvalue of the symmetrized KYP block matrix; <= tol certifies
// impedance passivity of the block.
double kyp_residual(const PassiveBlock& blk);

// True when M A + A^T M vanishes to `tol` relative to max|M A| (lossless
// internal dynamics: energy moves only through the ports).
bool is_energy_skew(const PassiveBlock& blk, double tol = 1e-12);

// Static output feedback u = -kappa * y (kappa >= 0) closing all ports:
// A <- A - kappa B (I + kappa D)^{-1} C, ports removed (m = 0).
PassiveBlock output_feedback(const PassiveBlock& blk, double kappa);

// Consistency checks used by builders and tests.
void check_dimensions(const PassiveBlock& blk);

}  // namespace ps
