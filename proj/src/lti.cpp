#include "lti.hpp"

#include <Eigen/Eigenvalues>

#include "errors.hpp"

namespace ps {

void check_dimensions(const PassiveBlock& blk) {
    const Index n = blk.A.rows();
    const Index m = blk.B.cols();
    if (blk.A.cols() != n) throw ValidationError("block '" + blk.label + "': A must be square");
    if (blk.B.rows() != n || blk.C.cols() != n || blk.C.rows() != m || blk.D.rows() != m ||
        blk.D.cols() != m)
        throw ValidationError("block '" + blk.label + "': inconsistent port dimensions");
    if (blk.Mdiag.size() != n)
        throw ValidationError("block '" + blk.label + "': mass diagonal has wrong length");
    if (n > 0 && blk.Mdiag.minCoeff() <= 0.0)
        throw ValidationError("block '" + blk.label + "': mass matrix is not positive definite");
}

double energy(const PassiveBlock& blk, const VectorXd& x) {
    if (x.size() != blk.n())
        throw ValidationError("energy: state has length " + std::to_string(x.size()) +
                              ", block has " + std::to_string(blk.n()) + " states");
    return 0.5 * x.dot(blk.Mdiag.asDiagonal() * x);
}

double kyp_residual(const PassiveBlock& blk) {
    check_dimensions(blk);
    const Index n = blk.n(), m = blk.m();
    MatrixXd MA = blk.Mdiag.asDiagonal() * blk.A;
    MatrixXd K(n + m, n + m);
    K.topLeftCorner(n, n) = MA + MA.transpose();
    MatrixXd off = blk.Mdiag.asDiagonal() * blk.B - blk.C.transpose();
    K.topRightCorner(n, m) = off;
    K.bottomLeftCorner(m, n) = off.transpose();
    K.bottomRightCorner(m, m) = -(blk.D + blk.D.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (K + K.transpose()),
                                               Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("kyp_residual: eigensolver failed");
    return es.eigenvalues().maxCoeff();
}

bool is_energy_skew(const PassiveBlock& blk, double tol) {
    check_dimensions(blk);
    MatrixXd MA = blk.Mdiag.asDiagonal() * blk.A;
    MatrixXd S = MA + MA.transpose();
    double scale = MA.cwiseAbs().maxCoeff();
    if (scale == 0.0) return true;
    return S.cwiseAbs().maxCoeff() <= tol * scale;
}

PassiveBlock output_feedback(const PassiveBlock& blk, double kappa) {
    check_dimensions(blk);
    if (kappa < 0.0) throw ValidationError("output_feedback: kappa must be nonnegative");
    const Index m = blk.m();
    PassiveBlock out;
    out.label = blk.label + "+feedback";
    out.Mdiag = blk.Mdiag;
    MatrixXd G = MatrixXd::Identity(m, m) + kappa * blk.D;
    Eigen::PartialPivLU<MatrixXd> lu(G);
    if (m > 0 && std::abs(lu.determinant()) < 1e-300)
        throw NumericalError("output_feedback: I + kappa D is singular");
    out.A = blk.A - kappa * blk.B * lu.solve(blk.C);
    out.B = MatrixXd::Zero(blk.n(), 0);
    out.C = MatrixXd::Zero(0, blk.n());
    out.D = MatrixXd::Zero(0, 0);
    return out;
}

}  // namespace ps
