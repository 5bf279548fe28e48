#pragma once

#include <string>

#include "discretize.hpp"
#include "lti.hpp"

namespace ps {

// Power-preserving feedback interconnection of two port blocks:
//   u = y_c, u_c = -y      (standard)
//   u = -y_c, u_c = y      (mirrored)
// The closed system M_e x' = M_e A_e x inherits passivity: the cross blocks
// of sym(M_e A_e) cancel because each block satisfies M B == C^T.
struct CoupledSystem {
    PassiveBlock plant;
    PassiveBlock controller;
    bool mirrored = false;
    MatrixXd Ae;
    VectorXd Me;
    Index split = 0;  // plant states are [0, split)

    Index n() const { return Ae.rows(); }
};

CoupledSystem couple(const PassiveBlock& plant, const PassiveBlock& controller,
                     bool mirrored = false);

// A single block viewed as a closed system (ports held at u = 0).
CoupledSystem as_system(const PassiveBlock& blk);

// Block energies E1 (plant) and E2 (controller part) of a system state.
void split_energy(const CoupledSystem& sys, const VectorXd& x, double& e1, double& e2);

enum class ModelKind { WaveHeat, Acoustic };

const char* to_string(ModelKind k);
ModelKind model_kind_from_string(const std::string& name);

struct ModelParams {
    ModelKind kind = ModelKind::WaveHeat;
    int N = 100;
    std::string rho = "1";
    std::string T = "1";
    double m = 1.0, d = 1.0, k = 1.0, beta = 1.0;  // oscillator parameters
    bool mirrored = false;
};

// A fully assembled model: the coupled system plus the wave grid and the
// validated coefficient profiles (used for initial data and diagnostics).
struct Model {
    ModelParams params;
    CoupledSystem sys;
    WaveGrid grid;
    Profile rho_profile;
    Profile T_profile;
    double T1 = 0.0;  // T at the coupling end (acoustic model)
};

// WaveHeat: wave on (-1, 0) (ZeroStress left, PortVelocity right) coupled to
// the heat block on (0, 1); u = y_c, u_c = -y.
// Acoustic: wave on (0, 1) (ZeroVelocity left, PortStress right) coupled to
// the boundary oscillator.
Model build_model(const ModelParams& p);

}  // namespace ps
