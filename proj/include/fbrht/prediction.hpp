#pragma once

#include <vector>

#include <Eigen/Dense>

#include "fbrht/plr.hpp"
#include "fbrht/sampler.hpp"
#include "fbrht/subsets.hpp"

namespace fbrht {

/// Posterior-averaged predictive probabilities: mean over retained draws of
/// T(beta_0^(r) + x * beta^(r)) under the robit link. X_test columns must
/// align with the sample matrix rows (same features, same standardization).
Eigen::VectorXd predict_avg(const SampleMatrix& samples, const Eigen::MatrixXd& X_test,
                            const TParams& like);

/// Most frequently visited subset; ties go to the lexicographically
/// smallest feature list.
const FeatureSubsetReport& select_top_subset(const std::vector<FeatureSubsetReport>& reports);

/// Subset with the best (lowest) cross-validated AMLP; ties prefer higher
/// frequency, then lexicographic order. Reports without a cv_amlp value are
/// skipped; throws if none carries one.
const FeatureSubsetReport& select_opt_subset(const std::vector<FeatureSubsetReport>& reports);

/// Refit the penalized logistic model on the subset's columns of the
/// training data and return its probabilities on X_test (aligned with the
/// training columns). An empty subset yields the intercept-only model.
Eigen::VectorXd predict_with_subset(const Dataset& train, const std::vector<int>& feature_ids,
                                    const Eigen::MatrixXd& X_test, const PlrConfig& cfg = {});

} // namespace fbrht
