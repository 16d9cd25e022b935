#pragma once

#include <cmath>

namespace fbrht {

/// Parameters of a scaled Student-t distribution: degrees of freedom
/// `alpha` and squared scale `omega` (the density of x/sqrt(omega) is the
/// standard t with alpha degrees of freedom, divided by sqrt(omega)).
struct TParams {
    double alpha = 1.0;
    double omega = 1.0;
};

/// Regularized incomplete beta function I_x(a, b), a,b > 0, x in [0,1].
/// Continued-fraction evaluation (modified Lentz), symmetric split for
/// convergence.
double reg_inc_beta(double a, double b, double x);

/// CDF of the scaled t distribution at x.
/// alpha == 1 uses the arctan closed form; other alpha go through the
/// regularized incomplete beta. Infinite x saturates to 0 or 1; NaN
/// propagates so that callers can treat a diverged value as rejectable.
double student_t_cdf(double x, const TParams& p);

/// log of student_t_cdf, computed without cancellation in the lower tail:
/// for x <= 0 the CDF is evaluated directly as a small quantity (arctan of
/// the reciprocal for alpha == 1, the incomplete beta in its small regime
/// otherwise), never as 1 minus something close to 1.
double log_student_t_cdf(double x, const TParams& p);

/// log density of the scaled t distribution at x.
double log_student_t_pdf(double x, const TParams& p);

/// Quantile q of |X| for X ~ Cauchy(0, scale): P(|X| > q) = upper_prob.
double cauchy_abs_upper_quantile(double upper_prob, double scale);

} // namespace fbrht
