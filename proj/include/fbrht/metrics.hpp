#pragma once

#include <Eigen/Dense>

namespace fbrht {

struct MetricsTriple {
    double er = 0.0;
    double amlp = 0.0;
    double auc = 0.0;
};

/// Fraction of cases where thresholding the probability at 1/2 misses the
/// label; a probability of exactly 1/2 predicts class 1.
double error_rate(const Eigen::VectorXd& probs, const Eigen::VectorXd& y);

/// Average minus log predictive probability of the true labels; infinite
/// when any true label gets probability 0.
double amlp(const Eigen::VectorXd& probs, const Eigen::VectorXd& y);

/// Area under the ROC curve, tied scores counted half; needs both classes.
double auc(const Eigen::VectorXd& probs, const Eigen::VectorXd& y);

MetricsTriple compute_metrics(const Eigen::VectorXd& probs, const Eigen::VectorXd& y);

} // namespace fbrht
