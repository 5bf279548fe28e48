#include "interconnect.hpp"

#include <Eigen/LU>

#include "errors.hpp"

namespace ps {

CoupledSystem couple(const PassiveBlock& plant, const PassiveBlock& controller, bool mirrored) {
    check_dimensions(plant);
    check_dimensions(controller);
    const Index m = plant.m();
    if (m == 0) throw ValidationError("couple: blocks must expose at least one port");
    if (controller.m() != m)
        throw ValidationError("couple: port dimension mismatch (" + std::to_string(m) + " vs " +
                              std::to_string(controller.m()) + ")");

    const Index n1 = plant.n(), n2 = controller.n();
    const double sgn = mirrored ? -1.0 : 1.0;

    CoupledSystem sys;
    sys.plant = plant;
    sys.controller = controller;
    sys.mirrored = mirrored;
    sys.split = n1;
    sys.Ae = MatrixXd::Zero(n1 + n2, n1 + n2);

    const bool feedthrough = plant.D.cwiseAbs().maxCoeff() > 0.0 ||
                             controller.D.cwiseAbs().maxCoeff() > 0.0;
    if (!feedthrough) {
        sys.Ae.topLeftCorner(n1, n1) = plant.A;
        sys.Ae.topRightCorner(n1, n2) = sgn * plant.B * controller.C;
        sys.Ae.bottomLeftCorner(n2, n1) = -sgn * controller.B * plant.C;
        sys.Ae.bottomRightCorner(n2, n2) = controller.A;
    } else {
        // u = sgn y_c, u_c = -sgn y  =>  (I + D_c D) u = sgn C_c x_c - D_c C x.
        MatrixXd G = MatrixXd::Identity(m, m) + controller.D * plant.D;
        Eigen::PartialPivLU<MatrixXd> lu(G);
        if (std::abs(lu.determinant()) < 1e-300)
            throw ValidationError("couple: algebraic loop, I + D_c D is singular");
        MatrixXd H = lu.solve(MatrixXd::Identity(m, m));
        MatrixXd HDcC = H * controller.D * plant.C;
        MatrixXd HCc = H * controller.C;
        sys.Ae.topLeftCorner(n1, n1) = plant.A - plant.B * HDcC;
        sys.Ae.topRightCorner(n1, n2) = sgn * plant.B * HCc;
        sys.Ae.bottomLeftCorner(n2, n1) =
            -sgn * controller.B * (plant.C - plant.D * HDcC);
        sys.Ae.bottomRightCorner(n2, n2) = controller.A - controller.B * plant.D * HCc;
    }

    sys.Me.resize(n1 + n2);
    sys.Me.head(n1) = plant.Mdiag;
    sys.Me.tail(n2) = controller.Mdiag;
    return sys;
}

CoupledSystem as_system(const PassiveBlock& blk) {
    check_dimensions(blk);
    CoupledSystem sys;
    sys.plant = blk;
    sys.controller.A = MatrixXd::Zero(0, 0);
    sys.controller.B = MatrixXd::Zero(0, 0);
    sys.controller.C = MatrixXd::Zero(0, 0);
    sys.controller.D = MatrixXd::Zero(0, 0);
    sys.controller.Mdiag = VectorXd::Zero(0);
    sys.controller.label = "none";
    sys.split = blk.n();
    sys.Ae = blk.A;
    sys.Me = blk.Mdiag;
    return sys;
}

void split_energy(const CoupledSystem& sys, const VectorXd& x, double& e1, double& e2) {
    if (x.size() != sys.n()) throw ValidationError("split_energy: state length mismatch");
    const Index n1 = sys.split;
    e1 = 0.5 * x.head(n1).dot(sys.Me.head(n1).asDiagonal() * x.head(n1));
    e2 = 0.5 * x.tail(x.size() - n1).dot(sys.Me.tail(x.size() - n1).asDiagonal() *
                                         x.tail(x.size() - n1));
}

const char* to_string(ModelKind k) {
    return k == ModelKind::WaveHeat ? "wave-heat" : "acoustic";
}

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "wave-heat") return ModelKind::WaveHeat;
    if (name == "acoustic") return ModelKind::Acoustic;
    throw ValidationError("unknown model '" + name + "' (expected \"wave-heat\" or \"acoustic\")");
}

Model build_model(const ModelParams& p) {
    Model mdl;
    mdl.params = p;
    if (p.kind == ModelKind::WaveHeat) {
        mdl.rho_profile = validate_profile(p.rho, -1.0, 0.0);
        mdl.T_profile = validate_profile(p.T, -1.0, 0.0);
        WaveBlock wave = build_wave_block(-1.0, 0.0, p.N, mdl.rho_profile, mdl.T_profile,
                                          EndCondition::ZeroStress, EndCondition::PortVelocity);
        PassiveBlock heat = build_heat_block(p.N);
        mdl.sys = couple(wave.block, heat, p.mirrored);
        mdl.grid = std::move(wave.grid);
    } else {
        mdl.rho_profile = validate_profile(p.rho, 0.0, 1.0);
        mdl.T_profile = validate_profile(p.T, 0.0, 1.0);
        WaveBlock wave = build_wave_block(0.0, 1.0, p.N, mdl.rho_profile, mdl.T_profile,
                                          EndCondition::ZeroVelocity, EndCondition::PortStress);
        mdl.T1 = eval(mdl.T_profile.expr, 1.0);
        PassiveBlock osc = build_acoustic_ode(p.m, p.d, p.k, p.beta, mdl.T1);
        mdl.sys = couple(wave.block, osc, p.mirrored);
        mdl.grid = std::move(wave.grid);
    }
    return mdl;
}

}  // namespace ps
