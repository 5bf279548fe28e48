#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "interconnect.hpp"
#include "spectral.hpp"

using namespace ps;

namespace {

double sym_max_eig(const CoupledSystem& sys) {
    MatrixXd MA = sys.Me.asDiagonal() * sys.Ae;
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (MA + MA.transpose()),
                                               Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

Model unit_model(ModelKind kind, int N) {
    ModelParams p;
    p.kind = kind;
    p.N = N;
    return build_model(p);
}

// A strictly passive two-state block with feedthrough for the general
// coupling path: M A + A^T M = -2 I <= 0, M B == C^T, D > 0.
PassiveBlock feedthrough_block(double dvalue) {
    PassiveBlock b;
    b.label = "strict";
    b.Mdiag.resize(2);
    b.Mdiag << 1.0, 2.0;
    b.A.resize(2, 2);
    b.A << -1.0, 2.0, -1.0, -0.5;  // M A = [[-1,2],[-2,-1]]
    b.B.resize(2, 1);
    b.B << 1.0, 0.5;
    b.C = (b.Mdiag.asDiagonal() * b.B).transpose();
    b.D = MatrixXd::Constant(1, 1, dvalue);
    return b;
}

}  // namespace

TEST_CASE("couple assembles the block formula for D = 0") {
    Model mdl = unit_model(ModelKind::WaveHeat, 4);
    const PassiveBlock& w = mdl.sys.plant;
    const PassiveBlock& h = mdl.sys.controller;
    const Index n1 = w.n(), n2 = h.n();
    REQUIRE(mdl.sys.n() == n1 + n2);
    CHECK(mdl.sys.Ae.topLeftCorner(n1, n1) == w.A);
    CHECK(mdl.sys.Ae.bottomRightCorner(n2, n2) == h.A);
    CHECK(mdl.sys.Ae.topRightCorner(n1, n2) == MatrixXd(w.B * h.C));
    CHECK(mdl.sys.Ae.bottomLeftCorner(n2, n1) == MatrixXd(-(h.B * w.C)));
    CHECK(mdl.sys.Me.head(n1) == w.Mdiag);
    CHECK(mdl.sys.Me.tail(n2) == h.Mdiag);

    CoupledSystem mirrored = couple(w, h, true);
    CHECK(mirrored.Ae.topRightCorner(n1, n2) == MatrixXd(-(w.B * h.C)));
    CHECK(mirrored.Ae.bottomLeftCorner(n2, n1) == MatrixXd(h.B * w.C));
    CHECK(mirrored.Ae.topLeftCorner(n1, n1) == w.A);
}

TEST_CASE("coupling cancels the cross terms of sym(M_e A_e)") {
    for (ModelKind kind : {ModelKind::WaveHeat, ModelKind::Acoustic}) {
        // N = 16: unit parameters and a dyadic mesh width make every assembly
        // product exact, so the cancellation M B C_c == (B_c C)^T M_c is
        // bitwise and the cross blocks are exactly zero.
        Model mdl = unit_model(kind, 16);
        MatrixXd MA = mdl.sys.Me.asDiagonal() * mdl.sys.Ae;
        MatrixXd S = MA + MA.transpose();
        const Index n1 = mdl.sys.split;
        CHECK(S.topRightCorner(n1, S.cols() - n1).cwiseAbs().maxCoeff() == 0.0);
        CHECK(sym_max_eig(mdl.sys) <= 1e-10);

        // Non-dyadic mesh: cancellation holds to rounding.
        Model m24 = unit_model(kind, 24);
        MatrixXd MA24 = m24.sys.Me.asDiagonal() * m24.sys.Ae;
        MatrixXd S24 = MA24 + MA24.transpose();
        double scale = MA24.cwiseAbs().maxCoeff();
        CHECK(S24.topRightCorner(m24.sys.split, S24.cols() - m24.sys.split)
                  .cwiseAbs()
                  .maxCoeff() <= 1e-14 * scale);
        CHECK(sym_max_eig(m24.sys) <= 1e-10);
    }
}

TEST_CASE("mirrored coupling is equally contractive") {
    ModelParams p;
    p.kind = ModelKind::Acoustic;
    p.N = 16;
    Model plain = build_model(p);
    p.mirrored = true;
    Model mir = build_model(p);
    MatrixXd MAp = plain.sys.Me.asDiagonal() * plain.sys.Ae;
    MatrixXd MAm = mir.sys.Me.asDiagonal() * mir.sys.Ae;
    CHECK(MatrixXd(MAp + MAp.transpose()) == MatrixXd(MAm + MAm.transpose()));
}

TEST_CASE("general feedthrough coupling stays contractive") {
    PassiveBlock p = feedthrough_block(0.75);
    PassiveBlock c = feedthrough_block(0.25);
    REQUIRE(kyp_residual(p) <= 1e-12);
    REQUIRE(kyp_residual(c) <= 1e-12);
    for (bool mirrored : {false, true}) {
        CoupledSystem sys = couple(p, c, mirrored);
        CAPTURE(mirrored);
        CHECK(sym_max_eig(sys) <= 1e-12);
    }
    // Against the zero-feedthrough path: D = 0 couple of the same internals.
    PassiveBlock p0 = p, c0 = c;
    p0.D.setZero();
    c0.D.setZero();
    CoupledSystem plain = couple(p0, c0);
    CHECK(sym_max_eig(plain) <= 1e-12);
}

TEST_CASE("couple validates ports") {
    PassiveBlock a = feedthrough_block(0.0);
    PassiveBlock closed = output_feedback(a, 0.0);  // m = 0
    CHECK_THROWS_AS(couple(closed, a), ValidationError);
    PassiveBlock twoports = a;
    twoports.B = MatrixXd::Ones(2, 2);
    twoports.C = MatrixXd::Ones(2, 2);
    twoports.D = MatrixXd::Zero(2, 2);
    CHECK_THROWS_AS(couple(twoports, a), ValidationError);
}

TEST_CASE("build_model shapes and labels") {
    Model wh = unit_model(ModelKind::WaveHeat, 2);
    CHECK(wh.sys.n() == 6);  // 4 wave states + 2 heat states
    CHECK(wh.sys.plant.label == "wave");
    CHECK(wh.sys.controller.label == "heat");
    CHECK(wh.grid.a == -1.0);
    CHECK(wh.grid.b == 0.0);

    Model ac = unit_model(ModelKind::Acoustic, 2);
    CHECK(ac.sys.n() == 6);  // 4 wave states + oscillator (delta, delta')
    CHECK(ac.sys.controller.label == "oscillator");
    CHECK(ac.grid.a == 0.0);
    CHECK(ac.T1 == 1.0);

    ModelParams bad;
    bad.kind = ModelKind::WaveHeat;
    bad.N = 8;
    bad.rho = "x";  // nonpositive on [-1, 0]
    CHECK_THROWS_AS(build_model(bad), ValidationError);
}

TEST_CASE("energy splits additively across blocks") {
    Model mdl = unit_model(ModelKind::Acoustic, 12);
    VectorXd x = VectorXd::LinSpaced(mdl.sys.n(), -1.0, 2.0);
    double e1 = 0.0, e2 = 0.0;
    split_energy(mdl.sys, x, e1, e2);
    CHECK(e1 == energy(mdl.sys.plant, x.head(mdl.sys.split)));
    CHECK(e2 == energy(mdl.sys.controller, x.tail(2)));
    CHECK(e1 >= 0.0);
    CHECK(e2 >= 0.0);

    CoupledSystem single = as_system(mdl.sys.plant);
    CHECK(single.n() == mdl.sys.split);
    split_energy(single, x.head(single.n()), e1, e2);
    CHECK(e2 == 0.0);
}
