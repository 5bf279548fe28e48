#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "interconnect.hpp"

namespace ps {

using Complex = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

// Closed-form transfer functions -------------------------------------------

// Heat block impedance P(lambda) = tanh(sqrt(lambda)) / sqrt(lambda)
// (principal branch), P(0) = 1.  Stable for all Re lambda >= 0.
Complex heat_transfer(Complex lambda);

// Re P(i s) for the heat block: with x = sqrt(2 |s|),
//   Re P(i s) = (sinh x + sin x) / (x (cosh x + cos x)),
// evaluated in overflow-safe form; value 1 at s = 0, ~ (2|s|)^{-1/2} as
// s -> infinity, so Re P(i s) * sqrt(s) stays bounded below.
double heat_transfer_real_part(double s);

// Re P(i s) = T1 beta m d s^2 / ((k - m s^2)^2 + (d s)^2) for the boundary
// oscillator; zero exactly at s = 0, ~ s^{-2} at infinity.
double acoustic_transfer_real_part(double s, double m, double d, double k, double beta,
                                   double T1);

// Numeric transfer P(lambda) = C (lambda I - A)^{-1} B + D of a block.
MatrixXcd numeric_transfer(const PassiveBlock& blk, Complex lambda);

// Resolvent norms ------------------------------------------------------------

// || W (i s I - A_e)^{-1} W^{-1} ||_2 with W = M_e^{1/2}: the resolvent norm
// in the energy inner product.  The dense path evaluates 1/sigma_min of the
// weighted pencil; the iterative path runs power iteration on R*R via sparse
// LU solves.  resolvent_norm() dispatches on system size.
double resolvent_norm_dense(const CoupledSystem& sys, double s);
double resolvent_norm_iterative(const CoupledSystem& sys, double s, double rel_tol = 1e-9,
                                int max_iters = 500);
double resolvent_norm(const CoupledSystem& sys, double s);

// Scans ----------------------------------------------------------------------

struct FrequencyScan {
    VectorXd s;
    VectorXd value;
    std::string kind;
};

// Grid rule: log-spaced for s0 > 0, linear when s0 == 0.
VectorXd frequency_grid(double s0, double s_max, int points);

FrequencyScan scan_heat_transfer_real(double s0, double s_max, int points);
FrequencyScan scan_acoustic_transfer_real(double s0, double s_max, int points, double m,
                                          double d, double k, double beta, double T1);
FrequencyScan resolvent_grid_scan(const CoupledSystem& sys, double s0, double s_max, int points);

// Locates resonance peaks of s -> resolvent norm: pilot linear sweep with
// step pilot_ds, then golden-section refinement of each strict local
// maximum.  Returns one (s, value) pair per peak; fitting a power law to
// these peak heights reads off the envelope growth exponent.
FrequencyScan resolvent_peak_scan(const CoupledSystem& sys, double s0, double s_max,
                                  double pilot_ds = 0.5);

// Fits -----------------------------------------------------------------------

struct BoundFit {
    double alpha = 0.0;     // exponent (slope in log-log coordinates)
    double constant = 0.0;  // prefactor, or the certified bound eta0
    std::array<double, 2> window{0.0, 0.0};
    double r2 = 0.0;  // NaN when not applicable
};

// Least-squares fit value ~ constant * s^alpha over scan points with
// s in [w1, w2]; requires >= 5 points, all values positive.
BoundFit fit_power_law(const FrequencyScan& scan, double w1, double w2);

// eta0 = min over scan points with s >= s0 of value * (1 + s^alpha);
// eta0 > 0 certifies value >= eta0 / (1 + s^alpha) on the scanned range.
BoundFit fit_lower_bound(const FrequencyScan& scan, double alpha, double s0);

// Log-log fit of E_total(t) over t in [t1, t2] (t > 0 only).
BoundFit decay_rate_fit(const std::vector<double>& t, const std::vector<double>& E, double t1,
                        double t2);

// Spectrum -------------------------------------------------------------------

// Eigenvalues of A in the energy inner product: similarity W A W^{-1} with
// W = M^{1/2} is classified as skew (eigenvalues exactly imaginary via a
// Hermitian solve), symmetric (exactly real), or general (real Schur).
VectorXcd spectrum(const MatrixXd& A, const VectorXd& Mdiag);
VectorXcd spectrum(const CoupledSystem& sys);

double spectral_abscissa(const VectorXcd& eigs);

}  // namespace ps
