#include "timestep.hpp"

#include <Eigen/Sparse>
#include <cmath>

#include "errors.hpp"

namespace ps {

namespace {

Eigen::SparseMatrix<double> to_sparse(const MatrixXd& A) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(A.rows()) * 8);
    for (Index j = 0; j < A.cols(); ++j)
        for (Index i = 0; i < A.rows(); ++i)
            if (A(i, j) != 0.0) trip.emplace_back(i, j, A(i, j));
    Eigen::SparseMatrix<double> S(A.rows(), A.cols());
    S.setFromTriplets(trip.begin(), trip.end());
    return S;
}

}  // namespace

EnergyTrace simulate(const CoupledSystem& sys, const VectorXd& x0, double dt, long steps,
                     const SimulateOptions& opts) {
    if (x0.size() != sys.n()) throw ValidationError("simulate: initial state length mismatch");
    if (!(dt > 0.0)) throw ValidationError("simulate: dt must be positive");
    if (steps < 0) throw ValidationError("simulate: steps must be nonnegative");

    const Index n = sys.n();
    Eigen::SparseMatrix<double> A = to_sparse(sys.Ae);
    Eigen::SparseMatrix<double> I(n, n);
    I.setIdentity();
    Eigen::SparseMatrix<double> K = I - (dt / 2.0) * A;  // solve K x_{n+1} = P x_n
    Eigen::SparseMatrix<double> P = I + (dt / 2.0) * A;

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(K);
    if (lu.info() != Eigen::Success)
        throw NumericalError("simulate: midpoint matrix factorization failed");

    EnergyTrace trace;
    trace.t.reserve(steps + 1);
    trace.E_total.reserve(steps + 1);
    trace.E_block1.reserve(steps + 1);
    trace.E_block2.reserve(steps + 1);

    VectorXd x = x0;
    auto record = [&](long stepno) {
        double e1 = 0.0, e2 = 0.0;
        split_energy(sys, x, e1, e2);
        trace.t.push_back(dt * static_cast<double>(stepno));
        trace.E_block1.push_back(e1);
        trace.E_block2.push_back(e2);
        trace.E_total.push_back(e1 + e2);
    };

    record(0);
    if (opts.snapshot_every > 0) trace.snapshots.emplace_back(0, x);
    const double E0 = trace.E_total.front();
    const double budget = opts.contraction_tol * E0;

    VectorXd rhs(n), r(n);
    for (long s = 1; s <= steps; ++s) {
        rhs.noalias() = P * x;
        VectorXd y = lu.solve(rhs);
        // One iterative-refinement pass keeps the discrete energy identity at
        // rounding level over long runs.
        r.noalias() = rhs - K * y;
        y += lu.solve(r);
        if (!y.allFinite()) throw NumericalError("simulate: non-finite state at step " +
                                                 std::to_string(s));
        x.swap(y);
        record(s);
        if (trace.E_total[s] > trace.E_total[s - 1] + budget)
            throw NumericalError("simulate: contraction violated at step " + std::to_string(s) +
                                 ": E grew by " +
                                 std::to_string(trace.E_total[s] - trace.E_total[s - 1]));
        if (opts.snapshot_every > 0 && s % opts.snapshot_every == 0)
            trace.snapshots.emplace_back(s, x);
    }
    return trace;
}

namespace {

constexpr double kPi = 3.14159265358979323846;

VectorXd wave_heat_default(const Model& mdl) {
    const WaveGrid& g = mdl.grid;
    const int N = g.N;
    const Index nv = static_cast<Index>(g.vel_nodes.size());
    VectorXd x = VectorXd::Zero(mdl.sys.n());
    // Wave on (-1, 0): v_t = sin(pi x / 2), displacement v = cos(pi (x + 1)).
    for (Index i = 0; i < nv; ++i) x(i) = std::sin(kPi * g.nodes(g.vel_nodes[i]) / 2.0);
    for (int c = 0; c < N; ++c) x(nv + c) = -kPi * std::sin(kPi * (g.centers(c) + 1.0));
    // Heat on (0, 1): w = x^2 (1 - x)^2 at nodes j h, j = 0..N-1.
    const double hh = 1.0 / N;
    for (int j = 0; j < N; ++j) {
        double xi = j * hh;
        x(mdl.sys.split + j) = xi * xi * (1.0 - xi) * (1.0 - xi);
    }
    return x;
}

VectorXd acoustic_default(const Model& mdl) {
    const WaveGrid& g = mdl.grid;
    const int N = g.N;
    const Index nv = static_cast<Index>(g.vel_nodes.size());
    VectorXd x = VectorXd::Zero(mdl.sys.n());
    // Wave on (0, 1): v_t = sin(pi x), e = 2 x (so T(1) e(1) = T1 * delta').
    for (Index i = 0; i < nv; ++i) x(i) = std::sin(kPi * g.nodes(g.vel_nodes[i]));
    for (int c = 0; c < N; ++c) x(nv + c) = 2.0 * g.centers(c);
    x(mdl.sys.split) = 1.0;      // delta
    x(mdl.sys.split + 1) = 2.0;  // delta'
    return x;
}

}  // namespace

VectorXd default_initial_data(const Model& mdl, const std::string& family) {
    if (family == "zero") return VectorXd::Zero(mdl.sys.n());
    if (family != "default")
        throw ValidationError("unknown initial-data family '" + family + "'");
    return mdl.params.kind == ModelKind::WaveHeat ? wave_heat_default(mdl)
                                                  : acoustic_default(mdl);
}

std::vector<double> initial_data_residuals(const Model& mdl, const std::string& family) {
    if (family == "zero") return {0.0};
    if (family != "default")
        throw ValidationError("unknown initial-data family '" + family + "'");
    if (mdl.params.kind == ModelKind::WaveHeat) {
        // Junction x = 0: velocity trace, temperature traces, stress/flux match.
        double v0 = std::sin(0.0);
        double w0 = 0.0;                                  // w(0) = 0
        double w1 = 1.0 * 1.0 * (1.0 - 1.0) * (1.0 - 1.0);  // w(1) = 0
        double T0 = eval(mdl.T_profile.expr, 0.0);
        double e0 = -kPi * std::sin(kPi * 1.0);
        double wx0 = 0.0;  // d/dx [x^2 (1-x)^2] at 0
        return {std::abs(v0), std::abs(w0 - v0), std::abs(w1), std::abs(T0 * e0 - wx0)};
    }
    // Acoustic junction x = 1: pinned end and stress vs oscillator velocity.
    double v0 = std::sin(0.0);
    double T1 = eval(mdl.T_profile.expr, 1.0);
    double stress_gap = T1 * (2.0 * 1.0) - T1 * 2.0;
    return {std::abs(v0), std::abs(stress_gap)};
}

double default_dt(const Model& mdl) { return mdl.grid.h / 4.0; }

}  // namespace ps
