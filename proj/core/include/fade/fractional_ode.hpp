#pragma once

// Propagators for the coefficient system  D_t^alpha c = M c + r(t).
//
//   alpha = 1:      c(t) = e^{Mt} c(0) + int_0^t e^{M(t-s)} r(s) ds
//   0 < alpha < 1:  c(t) = E_alpha(M t^alpha) c(0)
//                        + int_0^t (t-s)^{alpha-1} E_{alpha,alpha}(M (t-s)^alpha) r(s) ds
//
// The alpha-exponential e_alpha^{Mt} = t^{alpha-1} E_{alpha,alpha}(M t^alpha) is
// also provided as a homogeneous propagator. It is singular at t = 0 for
// alpha < 1, so it cannot reproduce c(0); the Mittag-Leffler propagator can.

#include <Eigen/Core>

#include "fade/galerkin_assembly.hpp"
#include "fade/legendre_basis.hpp"

namespace fade {

enum class PropagatorKind { matrix_exp, alpha_exp, mittag_leffler };

const char* to_string(PropagatorKind kind);

struct SeriesControl {
    /// Stop once a term's max-norm falls below tolerance * (max-norm of the partial sum).
    double tolerance = 1e-14;
    int max_terms = 200;
};

struct SeriesDiagnostics {
    int terms = 0;
    double first_neglected_norm = 0.0;
};

/// e^{Mt}, t >= 0.
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& m, double t);

/// Two-parameter Mittag-Leffler matrix function
///   E_{alpha,b}(Z) = sum_i Z^i / Gamma(i alpha + b),
/// summed with compensated (Neumaier) accumulation. Throws NumericalError if
/// the series has not met the tolerance within max_terms.
Eigen::MatrixXd mittag_leffler_series(const Eigen::MatrixXd& z, double alpha, double b,
                                      const SeriesControl& control = {},
                                      SeriesDiagnostics* diagnostics = nullptr);

/// e_alpha^{Mt} = t^{alpha-1} sum_i M^i t^{i alpha} / Gamma((i+1) alpha), t > 0, alpha in (0,1].
Eigen::MatrixXd alpha_exponential(const Eigen::MatrixXd& m, double alpha, double t,
                                  const SeriesControl& control = {},
                                  SeriesDiagnostics* diagnostics = nullptr);

/// E_alpha(M t^alpha) = sum_i M^i t^{i alpha} / Gamma(i alpha + 1), t >= 0, alpha in (0,1].
Eigen::MatrixXd mittag_leffler_propagator(const Eigen::MatrixXd& m, double alpha, double t,
                                          const SeriesControl& control = {},
                                          SeriesDiagnostics* diagnostics = nullptr);

/// Homogeneous propagator bound to one system matrix and order.
class Propagator {
public:
    /// matrix_exp requires alpha = 1; alpha_exp requires alpha in (0,1);
    /// mittag_leffler accepts alpha in (0,1].
    Propagator(PropagatorKind kind, Eigen::MatrixXd m, double alpha, SeriesControl control = {});

    PropagatorKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    const Eigen::MatrixXd& matrix() const { return m_; }
    const SeriesControl& control() const { return control_; }

    Eigen::MatrixXd operator()(double t, SeriesDiagnostics* diagnostics = nullptr) const;

private:
    PropagatorKind kind_;
    Eigen::MatrixXd m_;
    double alpha_;
    SeriesControl control_;
};

/// matrix_exp at alpha = 1, mittag_leffler otherwise.
PropagatorKind default_propagator(double alpha);

/// propagator(M, alpha, t) c0.
CoefficientVector propagate_homogeneous(const GalerkinSystem& sys, const CoefficientVector& c0, double t,
                                        PropagatorKind kind, const SeriesControl& control = {});

/// The source contribution int_0^t K(t-s) r(s) ds, zero at t = 0.
///
/// Analytic sources r_j(s) = sum_mu v_{mu,j} s^mu are convolved term by term:
///   int_0^t (t-s)^{(i+1)alpha-1} s^mu ds = B(mu+1, (i+1)alpha) t^{(i+1)alpha+mu},
/// giving Gamma(mu+1) t^{alpha+mu} E_{alpha,alpha+mu+1}(M t^alpha) v_mu. With
/// kind = matrix_exp and integer mu the same integral is taken from one
/// exponential of an augmented matrix. Other sources use quadrature (32 nodes,
/// checked against 64): Gauss-Legendre at alpha = 1, and for alpha < 1 one
/// Gauss-Jacobi rule with weight (t-s)^{(i+1)alpha-1} per kernel term M^i.
CoefficientVector convolve_source(const GalerkinSystem& sys, double t, PropagatorKind kind,
                                  const SeriesControl& control = {});

}  // namespace fade
