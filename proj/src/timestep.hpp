#pragma once

#include <utility>
#include <vector>

#include "interconnect.hpp"

namespace ps {

// Energy bookkeeping for a simulation: one row per time level (including
// t = 0), recorded at every step.  E_total is defined as E_block1 + E_block2
// so the additivity identity holds bitwise.
struct EnergyTrace {
    std::vector<double> t;
    std::vector<double> E_total;
    std::vector<double> E_block1;
    std::vector<double> E_block2;
    std::vector<std::pair<long, VectorXd>> snapshots;  // (step, state)

    std::size_t rows() const { return t.size(); }
};

// Implicit midpoint rule (I - dt/2 A_e) x_{n+1} = (I + dt/2 A_e) x_n with one
// iterative-refinement pass per solve.  The discrete power balance
// E_{n+1} - E_n = dt * m^T sym(M_e A_e) m (m the midpoint state) makes the
// scheme contractive; a step with E_{n+1} > E_n + contraction_tol * E_0 is a
// numerical failure.  snapshot_every > 0 stores the state at steps that are
// multiples of it (step 0 included).
struct SimulateOptions {
    long snapshot_every = 0;
    double contraction_tol = 1e-10;
};

EnergyTrace simulate(const CoupledSystem& sys, const VectorXd& x0, double dt, long steps,
                     const SimulateOptions& opts = {});

// Named initial-data families ("default", "zero") for the built-in models.
VectorXd default_initial_data(const Model& mdl, const std::string& family = "default");

// Coupling-compatibility residuals of a family's analytic data (all should be
// ~0 for well-prepared data).
std::vector<double> initial_data_residuals(const Model& mdl, const std::string& family = "default");

// Default step size dt = h/4 for a model's grid.
double default_dt(const Model& mdl);

}  // namespace ps
