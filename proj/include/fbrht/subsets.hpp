#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace fbrht {

using IndicatorMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Mark the coefficients that dominate each posterior sample: entry (j, i)
/// is 1 iff |draws(j, i)| > rel_threshold * max_k |draws(k, i)|. An all-zero
/// column stays all zero.
IndicatorMatrix binarize_samples(const Eigen::MatrixXd& draws, double rel_threshold = 0.1);

/// Zero out features whose selection frequency (row mean) is strictly below
/// min_freq; rows exactly at the boundary are kept.
IndicatorMatrix filter_low_frequency(const IndicatorMatrix& indicators, double min_freq = 0.05);

/// One distinct feature subset observed among the samples, with its
/// visiting frequency and, once evaluated, leave-one-out metrics.
struct FeatureSubsetReport {
    std::vector<int> features; // feature ids, strictly increasing
    double freq = 0.0;
    std::optional<double> cv_er;
    std::optional<double> cv_amlp;
    std::optional<double> cv_auc;
};

/// Group identical indicator columns into subsets. Empty columns are
/// dropped from the report but still count in the frequency denominator.
/// Sorted by freq descending, ties by lexicographic feature list.
/// feature_ids maps row j to its id; pass empty to use 1..p.
std::vector<FeatureSubsetReport> enumerate_subsets(const IndicatorMatrix& indicators,
                                                   const std::vector<int>& feature_ids = {});

/// Per-column subset identity: columns with identical patterns (empty ones
/// included) share an id, numbered by first occurrence.
std::vector<int> column_subset_ids(const IndicatorMatrix& indicators);

struct ModeSwitchStats {
    long switch_count = 0;   // positions where consecutive ids differ
    long n_unique_modes = 0; // distinct ids seen
};

/// Mixing diagnostic over a sequence of per-sample subset ids.
ModeSwitchStats mode_switch_stats(const std::vector<int>& subset_ids);

} // namespace fbrht
