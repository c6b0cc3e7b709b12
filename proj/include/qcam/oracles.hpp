#pragma once
#include <utility>
#include <vector>

// Closed-form reference values for collective-spin states.  Everything here
// is computed from scalar formulas only (log-space binomial sums, erfc,
// elementary functions) with no matrix machinery, so these serve as
// independent cross-checks for the numerical pipeline.
//
// Mode convention: a value for omega > 0 refers to the single mode +omega;
// the spectra of all states here are symmetric, A^(-omega) = A^(omega).
// Weighted totals (m_tr / m_hs with f(omega) = omega^2) sum over positive
// modes once; the sigma-scaled total sums both signs.

namespace qcam::oracle {

// log C(n, k); requires 0 <= k <= n.
double log_binomial(int n, int k);

// Complementary error function (thin wrapper so every use routes through one
// place; cross-checked against direct quadrature in the tests).
double erfc(double x);

enum class Method { ExactSum, Normal };

// Spin-coherent state |theta, phi>^(N) with respect to S_z, mode omega >= 1.
// ExactSum evaluates the binomial sum in log space; Normal uses the
// large-N normal approximation with erfc.
double coherent_a_tr(int n, double theta, int omega, Method method);
double coherent_a_hs(int n, double theta, int omega, Method method);

// Weighted totals for the spin-coherent state, f(omega) = omega^2.
double coherent_m_tr(int n, double theta, Method method);  // Normal: sqrt(pi/2) N^1.5 sin^3
double coherent_m_hs(int n, double theta, Method method);  // exact value (1/4) N sin^2
// Sigma-scaled total (both mode signs).  Normal: 1 - [1 + N sin^2/(8 s^2)]^(-1/2).
double coherent_m_sigma(int n, double theta, double sigma, Method method);

// GHZ state: only modes +-N carry asymmetry.
double ghz_a_tr(double theta);  // (1/2) sin theta   (per sign)
double ghz_a_hs(double theta);  // (1/4) sin^2 theta (per sign)
double ghz_m_tr(int n, double theta);
double ghz_m_hs(int n, double theta);
double ghz_m_sigma(int n, double theta, double sigma);
// Measurement axis tilted by axis_theta from z; exact for n > 2.
double ghz_axis_m_hs(int n, double theta, double axis_theta);

// Product state with site Bloch angles (theta_i, phi_i), measured along
// (axis_theta, axis_phi): (1/4) sum_i sin^2(Theta_i) with Theta_i the angle
// between site vector and axis.
double product_m_hs(const std::vector<std::pair<double, double>>& site_angles, double axis_theta,
                    double axis_phi);

// GHZ state dephased for time tau under collective S_z (off-diagonal factor
// gamma = exp(-n^2 tau / 2)); values of the +-N mode, per sign.
double dephased_ghz_a_tr(int n, double theta, double tau);
double dephased_ghz_a_hs(int n, double theta, double tau);

}  // namespace qcam::oracle
