#include "fbrht/subsets.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace fbrht {

IndicatorMatrix binarize_samples(const Eigen::MatrixXd& draws, double rel_threshold) {
    if (!(rel_threshold > 0.0 && rel_threshold < 1.0))
        throw std::invalid_argument("rel_threshold must be in (0, 1)");
    IndicatorMatrix ind = IndicatorMatrix::Zero(draws.rows(), draws.cols());
    for (Eigen::Index i = 0; i < draws.cols(); ++i) {
        const double m = draws.col(i).cwiseAbs().maxCoeff();
        if (m == 0.0) continue;
        const double thr = rel_threshold * m;
        for (Eigen::Index j = 0; j < draws.rows(); ++j)
            ind(j, i) = std::fabs(draws(j, i)) > thr ? 1 : 0;
    }
    return ind;
}

IndicatorMatrix filter_low_frequency(const IndicatorMatrix& indicators, double min_freq) {
    if (!(min_freq >= 0.0 && min_freq <= 1.0))
        throw std::invalid_argument("min_freq must be in [0, 1]");
    if (indicators.cols() == 0) throw std::invalid_argument("no samples");
    IndicatorMatrix out = indicators;
    const double r = static_cast<double>(indicators.cols());
    for (Eigen::Index j = 0; j < indicators.rows(); ++j) {
        double f = 0.0;
        for (Eigen::Index i = 0; i < indicators.cols(); ++i) f += indicators(j, i);
        if (f / r < min_freq) out.row(j).setZero();
    }
    return out;
}

std::vector<FeatureSubsetReport> enumerate_subsets(const IndicatorMatrix& indicators,
                                                   const std::vector<int>& feature_ids) {
    if (indicators.cols() == 0) throw std::invalid_argument("no samples");
    if (!feature_ids.empty() &&
        static_cast<Eigen::Index>(feature_ids.size()) != indicators.rows())
        throw std::invalid_argument("feature id count mismatch");
    std::map<std::vector<int>, long> counts;
    for (Eigen::Index i = 0; i < indicators.cols(); ++i) {
        std::vector<int> key;
        for (Eigen::Index j = 0; j < indicators.rows(); ++j)
            if (indicators(j, i))
                key.push_back(feature_ids.empty() ? static_cast<int>(j) + 1
                                                  : feature_ids[j]);
        if (key.empty()) continue;
        ++counts[key];
    }
    std::vector<FeatureSubsetReport> reports;
    reports.reserve(counts.size());
    const double r = static_cast<double>(indicators.cols());
    for (const auto& [features, count] : counts) {
        FeatureSubsetReport rep;
        rep.features = features;
        rep.freq = static_cast<double>(count) / r;
        reports.push_back(std::move(rep));
    }
    std::sort(reports.begin(), reports.end(),
              [](const FeatureSubsetReport& a, const FeatureSubsetReport& b) {
                  if (a.freq != b.freq) return a.freq > b.freq;
                  return a.features < b.features;
              });
    return reports;
}

std::vector<int> column_subset_ids(const IndicatorMatrix& indicators) {
    std::map<std::vector<std::uint8_t>, int> ids;
    std::vector<int> out(indicators.cols());
    for (Eigen::Index i = 0; i < indicators.cols(); ++i) {
        std::vector<std::uint8_t> key(indicators.rows());
        for (Eigen::Index j = 0; j < indicators.rows(); ++j) key[j] = indicators(j, i);
        auto [it, inserted] = ids.emplace(std::move(key), static_cast<int>(ids.size()));
        out[i] = it->second;
    }
    return out;
}

ModeSwitchStats mode_switch_stats(const std::vector<int>& subset_ids) {
    if (subset_ids.size() < 2)
        throw std::invalid_argument("mode switch stats need at least 2 samples");
    ModeSwitchStats s;
    std::vector<int> seen;
    for (std::size_t i = 0; i < subset_ids.size(); ++i) {
        if (i > 0 && subset_ids[i] != subset_ids[i - 1]) ++s.switch_count;
        seen.push_back(subset_ids[i]);
    }
    std::sort(seen.begin(), seen.end());
    s.n_unique_modes = std::unique(seen.begin(), seen.end()) - seen.begin();
    return s;
}

} // namespace fbrht
