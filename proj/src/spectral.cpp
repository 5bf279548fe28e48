#include "spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "errors.hpp"

namespace ps {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

Complex heat_transfer(Complex lambda) {
    // Small |lambda|: tanh(x)/x = 1 - L/3 + 2L^2/15 - 17L^3/315 + 62L^4/2835
    // with L = lambda (x = sqrt(L)); exact value 1 at lambda = 0.
    if (std::abs(lambda) < 1e-4) {
        Complex L = lambda;
        return 1.0 + L * (-1.0 / 3.0 + L * (2.0 / 15.0 + L * (-17.0 / 315.0 + L * (62.0 / 2835.0))));
    }
    Complex sq = std::sqrt(lambda);  // principal branch: Re sq >= 0
    Complex em = std::exp(-2.0 * sq);  // |em| <= 1, never overflows
    Complex t = (1.0 - em) / (1.0 + em);
    return t / sq;
}

double heat_transfer_real_part(double s) {
    double x = std::sqrt(2.0 * std::abs(s));
    if (x < 1e-2) return 1.0 - x * x * x * x / 30.0;
    // Divide the closed form through by cosh x: all terms stay bounded.
    double ex = std::exp(-x);
    double ex2 = ex * ex;
    double tanhx = (1.0 - ex2) / (1.0 + ex2);
    double sech = 2.0 * ex / (1.0 + ex2);
    double num = tanhx + std::sin(x) * sech;
    double den = x * (1.0 + std::cos(x) * sech);
    return num / den;
}

double acoustic_transfer_real_part(double s, double m, double d, double k, double beta,
                                   double T1) {
    // P(is) = T1 beta m (is) / (k - m s^2 + i d s).
    double s2 = s * s;
    double re = k - m * s2;
    return T1 * beta * m * d * s2 / (re * re + d * d * s2);
}

MatrixXcd numeric_transfer(const PassiveBlock& blk, Complex lambda) {
    check_dimensions(blk);
    const Index n = blk.n(), m = blk.m();
    MatrixXcd K = -blk.A.cast<Complex>();
    K.diagonal().array() += lambda;
    Eigen::PartialPivLU<MatrixXcd> lu(K);
    MatrixXcd X = lu.solve(blk.B.cast<Complex>());
    MatrixXcd P = blk.C.cast<Complex>() * X + blk.D.cast<Complex>();
    if (!P.allFinite())
        throw NumericalError("numeric_transfer: singular resolvent at lambda = (" +
                             std::to_string(lambda.real()) + ", " +
                             std::to_string(lambda.imag()) + ")");
    (void)n;
    return P;
}

namespace {

constexpr Index kDenseResolventLimit = 400;

VectorXd weight_sqrt(const CoupledSystem& sys) { return sys.Me.cwiseSqrt(); }

}  // namespace

double resolvent_norm_dense(const CoupledSystem& sys, double s) {
    const Index n = sys.n();
    if (n == 0) throw ValidationError("resolvent_norm: empty system");
    VectorXd w = weight_sqrt(sys);
    // || W K^{-1} W^{-1} || = 1 / sigma_min(W K W^{-1}),  K = i s I - A_e.
    MatrixXcd Kw(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            Kw(i, j) = Complex(-sys.Ae(i, j) * (w(i) / w(j)), i == j ? s : 0.0);
    Eigen::BDCSVD<MatrixXcd> svd(Kw);
    double smin = svd.singularValues().minCoeff();
    if (!(smin > 0.0))
        throw NumericalError("resolvent_norm: i s is an eigenvalue at s = " + std::to_string(s));
    return 1.0 / smin;
}

double resolvent_norm_iterative(const CoupledSystem& sys, double s, double rel_tol,
                                int max_iters) {
    const Index n = sys.n();
    if (n == 0) throw ValidationError("resolvent_norm: empty system");
    VectorXd w = weight_sqrt(sys);

    std::vector<Eigen::Triplet<Complex>> trip;
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i)
            if (sys.Ae(i, j) != 0.0) trip.emplace_back(i, j, Complex(-sys.Ae(i, j), 0.0));
    for (Index i = 0; i < n; ++i) trip.emplace_back(i, i, Complex(0.0, s));
    Eigen::SparseMatrix<Complex> K(n, n);
    K.setFromTriplets(trip.begin(), trip.end());

    Eigen::SparseLU<Eigen::SparseMatrix<Complex>> lu;
    lu.compute(K);
    if (lu.info() != Eigen::Success)
        throw NumericalError("resolvent_norm: factorization failed at s = " + std::to_string(s));

    // Power iteration on R^* R, R = W K^{-1} W^{-1}.
    VectorXcd v(n);
    for (Index i = 0; i < n; ++i) v(i) = Complex(1.0 + 1e-3 * std::sin(double(i)), 0.0);
    v /= v.norm();
    double lambda = 0.0;
    for (int it = 0; it < max_iters; ++it) {
        VectorXcd rv = w.cast<Complex>().asDiagonal() *
                       lu.solve(VectorXcd(v.cwiseQuotient(w.cast<Complex>())));
        double lam_new = rv.squaredNorm();
        VectorXcd ru = lu.adjoint().solve(VectorXcd(w.cast<Complex>().asDiagonal() * rv));
        ru = ru.cwiseQuotient(w.cast<Complex>());
        double nrm = ru.norm();
        if (!(nrm > 0.0) || !std::isfinite(lam_new))
            throw NumericalError("resolvent_norm: breakdown at s = " + std::to_string(s));
        v = ru / nrm;
        if (it > 0 && std::abs(lam_new - lambda) <= rel_tol * lam_new) {
            lambda = lam_new;
            break;
        }
        lambda = lam_new;
    }
    return std::sqrt(lambda);
}

double resolvent_norm(const CoupledSystem& sys, double s) {
    return sys.n() <= kDenseResolventLimit ? resolvent_norm_dense(sys, s)
                                           : resolvent_norm_iterative(sys, s);
}

VectorXd frequency_grid(double s0, double s_max, int points) {
    if (points < 2) throw ValidationError("frequency grid requires at least 2 points");
    if (!(s_max > s0)) throw ValidationError("frequency grid requires s_max > s0");
    if (s0 < 0.0) throw ValidationError("frequency grid requires s0 >= 0");
    VectorXd s(points);
    if (s0 == 0.0) {
        for (int i = 0; i < points; ++i) s(i) = s_max * double(i) / double(points - 1);
    } else {
        double l0 = std::log(s0), l1 = std::log(s_max);
        for (int i = 0; i < points; ++i)
            s(i) = std::exp(l0 + (l1 - l0) * double(i) / double(points - 1));
        s(0) = s0;
        s(points - 1) = s_max;
    }
    return s;
}

FrequencyScan scan_heat_transfer_real(double s0, double s_max, int points) {
    FrequencyScan sc;
    sc.kind = "transfer-real-part";
    sc.s = frequency_grid(s0, s_max, points);
    sc.value.resize(points);
    for (int i = 0; i < points; ++i) sc.value(i) = heat_transfer_real_part(sc.s(i));
    return sc;
}

FrequencyScan scan_acoustic_transfer_real(double s0, double s_max, int points, double m,
                                          double d, double k, double beta, double T1) {
    FrequencyScan sc;
    sc.kind = "transfer-real-part";
    sc.s = frequency_grid(s0, s_max, points);
    sc.value.resize(points);
    for (int i = 0; i < points; ++i)
        sc.value(i) = acoustic_transfer_real_part(sc.s(i), m, d, k, beta, T1);
    return sc;
}

FrequencyScan resolvent_grid_scan(const CoupledSystem& sys, double s0, double s_max,
                                  int points) {
    FrequencyScan sc;
    sc.kind = "resolvent-norm";
    sc.s = frequency_grid(s0, s_max, points);
    sc.value.resize(points);
    for (int i = 0; i < points; ++i) sc.value(i) = resolvent_norm(sys, sc.s(i));
    return sc;
}

namespace {

double peak_eval(const CoupledSystem& sys, double s, double rel_tol) {
    return sys.n() <= kDenseResolventLimit ? resolvent_norm_dense(sys, s)
                                           : resolvent_norm_iterative(sys, s, rel_tol);
}

}  // namespace

FrequencyScan resolvent_peak_scan(const CoupledSystem& sys, double s0, double s_max,
                                  double pilot_ds) {
    if (!(pilot_ds > 0.0)) throw ValidationError("resolvent_peak_scan: pilot_ds must be positive");
    if (!(s_max > s0) || s0 < 0.0)
        throw ValidationError("resolvent_peak_scan: need 0 <= s0 < s_max");

    std::vector<double> sv, vv;
    for (double s = s0; s <= s_max + 1e-12 * s_max; s += pilot_ds) {
        sv.push_back(s);
        vv.push_back(peak_eval(sys, s, 1e-5));
    }

    const double invphi = 0.6180339887498949;
    std::vector<double> ps, pv;
    for (std::size_t i = 1; i + 1 < sv.size(); ++i) {
        if (!(vv[i] > vv[i - 1] && vv[i] > vv[i + 1])) continue;
        // Golden-section maximization on the bracketing interval.
        double a = sv[i - 1], b = sv[i + 1];
        double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
        double f1 = peak_eval(sys, x1, 1e-9), f2 = peak_eval(sys, x2, 1e-9);
        for (int it = 0; it < 30; ++it) {
            if (f1 < f2) {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + invphi * (b - a);
                f2 = peak_eval(sys, x2, 1e-9);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - invphi * (b - a);
                f1 = peak_eval(sys, x1, 1e-9);
            }
        }
        double sp = f1 > f2 ? x1 : x2;
        double vp = std::max(f1, f2);
        ps.push_back(sp);
        pv.push_back(vp);
    }

    FrequencyScan sc;
    sc.kind = "resolvent-peaks";
    sc.s = Eigen::Map<VectorXd>(ps.data(), static_cast<Index>(ps.size()));
    sc.value = Eigen::Map<VectorXd>(pv.data(), static_cast<Index>(pv.size()));
    return sc;
}

namespace {

BoundFit loglog_fit(const std::vector<double>& xs, const std::vector<double>& ys, double w1,
                    double w2, const char* what) {
    const std::size_t n = xs.size();
    if (n < 5)
        throw ValidationError(std::string(what) + ": window [" + std::to_string(w1) + ", " +
                              std::to_string(w2) + "] contains " + std::to_string(n) +
                              " points, need at least 5");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
            throw NumericalError(std::string(what) + ": nonpositive value in fit window");
        lx[i] = std::log(xs[i]);
        ly[i] = std::log(ys[i]);
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    double nn = static_cast<double>(n);
    double det = nn * sxx - sx * sx;
    if (!(std::abs(det) > 0.0))
        throw NumericalError(std::string(what) + ": degenerate abscissae in fit window");
    double slope = (nn * sxy - sx * sy) / det;
    double intercept = (sy * sxx - sx * sxy) / det;
    double ssres = 0, sstot = 0, ybar = sy / nn;
    for (std::size_t i = 0; i < n; ++i) {
        double e = ly[i] - (intercept + slope * lx[i]);
        ssres += e * e;
        double d = ly[i] - ybar;
        sstot += d * d;
    }
    BoundFit fit;
    fit.alpha = slope;
    fit.constant = std::exp(intercept);
    fit.window = {w1, w2};
    fit.r2 = sstot > 0.0 ? 1.0 - ssres / sstot : (ssres <= 1e-30 ? 1.0 : 0.0);
    return fit;
}

}  // namespace

BoundFit fit_power_law(const FrequencyScan& scan, double w1, double w2) {
    std::vector<double> xs, ys;
    for (Index i = 0; i < scan.s.size(); ++i) {
        if (scan.s(i) >= w1 && scan.s(i) <= w2) {
            xs.push_back(scan.s(i));
            ys.push_back(scan.value(i));
        }
    }
    return loglog_fit(xs, ys, w1, w2, "fit_power_law");
}

BoundFit fit_lower_bound(const FrequencyScan& scan, double alpha, double s0) {
    bool any = false;
    double eta = 0.0, smax = s0;
    for (Index i = 0; i < scan.s.size(); ++i) {
        double s = scan.s(i);
        if (s < s0) continue;
        double g = scan.value(i) * (1.0 + std::pow(s, alpha));
        if (!any || g < eta) eta = g;
        any = true;
        smax = std::max(smax, s);
    }
    if (!any) throw ValidationError("fit_lower_bound: no scan points with s >= s0");
    BoundFit fit;
    fit.alpha = alpha;
    fit.constant = eta;
    fit.window = {s0, smax};
    fit.r2 = kNaN;
    return fit;
}

BoundFit decay_rate_fit(const std::vector<double>& t, const std::vector<double>& E, double t1,
                        double t2) {
    if (t.size() != E.size()) throw ValidationError("decay_rate_fit: length mismatch");
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] >= t1 && t[i] <= t2 && t[i] > 0.0) {
            xs.push_back(t[i]);
            ys.push_back(E[i]);
        }
    }
    return loglog_fit(xs, ys, t1, t2, "decay_rate_fit");
}

VectorXcd spectrum(const MatrixXd& A, const VectorXd& Mdiag) {
    const Index n = A.rows();
    if (A.cols() != n || Mdiag.size() != n) throw ValidationError("spectrum: dimension mismatch");
    if (n == 0) return VectorXcd();
    if (Mdiag.minCoeff() <= 0.0) throw ValidationError("spectrum: mass matrix not SPD");

    VectorXd w = Mdiag.cwiseSqrt();
    MatrixXd At(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) At(i, j) = A(i, j) * (w(i) / w(j));

    double scale = At.cwiseAbs().maxCoeff();
    double skew_res = (At + At.transpose()).cwiseAbs().maxCoeff();
    double sym_res = (At - At.transpose()).cwiseAbs().maxCoeff();
    VectorXcd eigs(n);
    if (scale == 0.0) {
        eigs.setZero();
    } else if (skew_res <= 1e-12 * scale) {
        // i K is Hermitian for skew K: eigenvalues of K are exactly imaginary.
        MatrixXd K = 0.5 * (At - At.transpose());
        MatrixXcd H = Complex(0.0, 1.0) * K.cast<Complex>();
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(H, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw NumericalError("spectrum: eigensolver failed");
        for (Index i = 0; i < n; ++i) eigs(i) = Complex(0.0, -es.eigenvalues()(i));
    } else if (sym_res <= 1e-12 * scale) {
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (At + At.transpose()),
                                                   Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw NumericalError("spectrum: eigensolver failed");
        for (Index i = 0; i < n; ++i) eigs(i) = Complex(es.eigenvalues()(i), 0.0);
    } else {
        Eigen::EigenSolver<MatrixXd> es(At, /*computeEigenvectors=*/false);
        if (es.info() != Eigen::Success) throw NumericalError("spectrum: eigensolver failed");
        eigs = es.eigenvalues();
    }
    std::sort(eigs.data(), eigs.data() + n, [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return eigs;
}

VectorXcd spectrum(const CoupledSystem& sys) { return spectrum(sys.Ae, sys.Me); }

double spectral_abscissa(const VectorXcd& eigs) {
    if (eigs.size() == 0) throw ValidationError("spectral_abscissa: empty spectrum");
    double a = eigs(0).real();
    for (Index i = 1; i < eigs.size(); ++i) a = std::max(a, eigs(i).real());
    return a;
}

}  // namespace ps
