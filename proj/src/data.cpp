#include "fbrht/data.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace fbrht {

Eigen::MatrixXd Standardizer::apply(const Eigen::MatrixXd& X) const {
    Eigen::MatrixXd out(X.rows(), static_cast<Eigen::Index>(kept.size()));
    for (std::size_t k = 0; k < kept.size(); ++k) {
        if (kept[k] >= X.cols())
            throw std::invalid_argument("matrix has fewer columns than the fitted transform");
        out.col(static_cast<Eigen::Index>(k)) =
            (X.col(kept[k]).array() - mean[k]) / sd[k];
    }
    return out;
}

std::pair<Dataset, Standardizer> standardize(const Dataset& data) {
    if (data.n() < 2) throw std::invalid_argument("standardize needs at least 2 cases");
    Standardizer tr;
    for (Eigen::Index j = 0; j < data.p(); ++j) {
        const double m = data.X.col(j).mean();
        const double ss = (data.X.col(j).array() - m).square().sum();
        const double sd = std::sqrt(ss / static_cast<double>(data.n() - 1));
        if (sd == 0.0) {
            tr.dropped.push_back(static_cast<int>(j));
            continue;
        }
        tr.kept.push_back(static_cast<int>(j));
        tr.mean.push_back(m);
        tr.sd.push_back(sd);
    }
    Dataset out;
    out.X = tr.apply(data.X);
    out.y = data.y;
    for (int j : tr.kept) {
        if (!data.feature_ids.empty()) out.feature_ids.push_back(data.feature_ids[j]);
        if (!data.feature_names.empty()) out.feature_names.push_back(data.feature_names[j]);
    }
    if (out.feature_ids.empty()) ensure_feature_labels(out);
    return {std::move(out), std::move(tr)};
}

void ensure_feature_labels(Dataset& data) {
    if (data.feature_ids.empty()) {
        data.feature_ids.resize(data.p());
        for (Eigen::Index j = 0; j < data.p(); ++j)
            data.feature_ids[j] = static_cast<int>(j) + 1;
    }
    if (data.feature_names.empty()) {
        data.feature_names.reserve(data.p());
        for (int id : data.feature_ids) data.feature_names.push_back("f" + std::to_string(id));
    }
}

std::vector<int> columns_for_ids(const Dataset& data, const std::vector<int>& ids) {
    std::unordered_map<int, int> pos;
    for (std::size_t j = 0; j < data.feature_ids.size(); ++j)
        pos[data.feature_ids[j]] = static_cast<int>(j);
    std::vector<int> cols;
    cols.reserve(ids.size());
    for (int id : ids) {
        auto it = pos.find(id);
        if (it == pos.end())
            throw std::invalid_argument("feature id " + std::to_string(id) + " not in dataset");
        cols.push_back(it->second);
    }
    return cols;
}

} // namespace fbrht
