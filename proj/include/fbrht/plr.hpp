#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "fbrht/data.hpp"
#include "fbrht/metrics.hpp"

namespace fbrht {

/// Logistic regression with independent t priors on the coefficients
/// (slopes t(prior_df, prior_scale), intercept t(prior_df,
/// intercept_scale)), fit by IRLS with the prior handled through its
/// normal-mixture working variances. Inputs are expected on the
/// standardized scale the rest of the pipeline uses.
struct PlrConfig {
    double prior_df = 1.0;
    double prior_scale = 2.5;
    double intercept_scale = 10.0;
    int max_iters = 100;
    double tol = 1e-8; // relative coefficient change
};

struct PlrFit {
    Eigen::VectorXd coef; // intercept first, then slopes
    bool converged = false;
    int iters = 0;
};

/// Thrown when a fit cannot be posed, e.g. single-class labels.
class DegenerateFitError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Posterior mode of the penalized logistic model. X is n x k without an
/// intercept column. Returns the best-so-far point with converged = false
/// if max_iters is exhausted.
PlrFit fit_penalized_logistic(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                              const PlrConfig& cfg = {});

/// Penalized negative log posterior (up to constants) and its gradient;
/// exposed for stationarity checks.
double plr_objective(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                     const Eigen::VectorXd& coef, const PlrConfig& cfg);
Eigen::VectorXd plr_gradient(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                             const Eigen::VectorXd& coef, const PlrConfig& cfg);

/// Logistic probabilities for rows of X under a fitted coefficient vector.
Eigen::VectorXd plr_predict(const Eigen::VectorXd& coef, const Eigen::MatrixXd& X);

/// Leave-one-out cross-validation of the subset given by feature ids:
/// refit on every n-1 subset, predict the held-out case, score the held-out
/// probabilities. Folds whose training labels collapse to one class fall
/// back to the empirical base rate.
MetricsTriple loocv_evaluate(const Dataset& data, const std::vector<int>& feature_ids,
                             const PlrConfig& cfg = {});

} // namespace fbrht
