#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace fbrht {

struct LassoFit {
    Eigen::VectorXd coef; // intercept first, then slopes
    bool converged = false;
    int outer_iters = 0;
};

/// L1-penalized logistic regression solved by cyclic coordinate descent on
/// the quadratic (IRLS) approximation, intercept unpenalized. The objective
/// is (1/n) * negative log likelihood + lambda * ||slopes||_1. warm, when
/// given, seeds the coefficients.
LassoFit lasso_logistic_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda,
                            const Eigen::VectorXd* warm = nullptr);

/// Largest violation of the subgradient stationarity conditions at coef:
/// |g_j| - lambda for zero slopes (clamped at 0), |g_j + lambda sign| for
/// active ones, |g_0| for the intercept, with g the gradient of the smooth
/// part.
double lasso_kkt_residual(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda,
                          const Eigen::VectorXd& coef);

struct LassoPath {
    std::vector<double> lambdas; // descending
    Eigen::MatrixXd coefs;       // (p+1) x M, full-data fits per lambda
    std::vector<double> cv_amlp; // per lambda, pooled over held-out cases
    int best_index = -1;         // ties go to the larger lambda
};

/// Fit the descending warm-started path over lambda_m = grid_step * m,
/// m = 1..grid_size, pick lambda by k-fold cross-validated AMLP, with the
/// full-data coefficients at every lambda (the selected column is the
/// refit).
LassoPath lasso_cv_select(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          int grid_size = 100, double grid_step = 0.01, int folds = 10,
                          std::uint64_t seed = 1);

struct UsedFeatureCounts {
    std::vector<int> per_group; // filled when group labels are given
    int total = 0;
};

/// Count slopes with |beta_j| > rel_threshold * max_k |beta_k| (intercept
/// excluded from both sides). groups, when given, labels each slope with a
/// 1-based group for per-group tallies.
UsedFeatureCounts count_used_features(const Eigen::VectorXd& slopes, double rel_threshold = 0.1,
                                      const std::vector<int>* groups = nullptr);

} // namespace fbrht
