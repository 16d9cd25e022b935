#pragma once

#include <Eigen/Dense>

#include "fbrht/special.hpp"

namespace fbrht {

/// log P(y | eta) under the robit link: y log T(eta) + (1-y) log T(-eta),
/// where T is the scaled t CDF. The y = 0 branch goes through T(-eta)
/// rather than 1 - T(eta) so large |eta| never cancels.
double log_robit_prob(int y, double eta, const TParams& like);

/// Fixed quantities for one restricted coefficient update: the columns
/// being updated, the frozen part of the linear predictor contributed by
/// all other coefficients, the prior variances of the updated block, and
/// the labels.
struct RobitContext {
    Eigen::MatrixXd X_update;      // n x m, columns of the updated block
    Eigen::VectorXd eta_frozen;    // n, X_F * beta_F
    Eigen::VectorXd lambda_update; // m, prior variances for the block
    Eigen::VectorXd y;             // n, labels in {0, 1}
    TParams like;
};

/// Negative log conditional posterior of the updated block (additive
/// constants dropped): -sum_i log P(y_i|eta_i) + sum_j beta_j^2/(2 lambda_j)
/// + sum_j log(lambda_j)/2.
double neg_log_cond_posterior(const Eigen::VectorXd& beta_update, const RobitContext& ctx);

/// Gradient of neg_log_cond_posterior. The per-case factor is the t density
/// over the relevant CDF tail, evaluated in log space and exponentiated only
/// in the final ratio; heavy tails keep it bounded for extreme eta.
Eigen::VectorXd grad_neg_log_cond_posterior(const Eigen::VectorXd& beta_update,
                                            const RobitContext& ctx);

} // namespace fbrht
