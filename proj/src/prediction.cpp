#include "fbrht/prediction.hpp"

#include <limits>
#include <stdexcept>

namespace fbrht {

Eigen::VectorXd predict_avg(const SampleMatrix& samples, const Eigen::MatrixXd& X_test,
                            const TParams& like) {
    const Eigen::Index r = samples.draws.cols();
    if (r == 0) throw std::invalid_argument("no retained draws");
    if (samples.intercept_draws.size() != r)
        throw std::invalid_argument("intercept draws / sample count mismatch");
    if (X_test.cols() != samples.draws.rows())
        throw std::invalid_argument("test columns must match sample rows");
    Eigen::VectorXd probs = Eigen::VectorXd::Zero(X_test.rows());
    Eigen::VectorXd eta(X_test.rows());
    for (Eigen::Index k = 0; k < r; ++k) {
        eta = (samples.intercept_draws[k] + (X_test * samples.draws.col(k)).array()).matrix();
        for (Eigen::Index i = 0; i < eta.size(); ++i)
            probs[i] += student_t_cdf(eta[i], like);
    }
    return probs / static_cast<double>(r);
}

const FeatureSubsetReport& select_top_subset(const std::vector<FeatureSubsetReport>& reports) {
    if (reports.empty()) throw std::invalid_argument("no subsets to select from");
    const FeatureSubsetReport* best = &reports.front();
    for (const auto& rep : reports) {
        if (rep.freq > best->freq ||
            (rep.freq == best->freq && rep.features < best->features))
            best = &rep;
    }
    return *best;
}

const FeatureSubsetReport& select_opt_subset(const std::vector<FeatureSubsetReport>& reports) {
    const FeatureSubsetReport* best = nullptr;
    for (const auto& rep : reports) {
        if (!rep.cv_amlp.has_value()) continue;
        if (best == nullptr) {
            best = &rep;
            continue;
        }
        const double a = *rep.cv_amlp, b = *best->cv_amlp;
        if (a < b ||
            (a == b && (rep.freq > best->freq ||
                        (rep.freq == best->freq && rep.features < best->features))))
            best = &rep;
    }
    if (best == nullptr)
        throw std::invalid_argument("no subset carries a cross-validated AMLP");
    return *best;
}

Eigen::VectorXd predict_with_subset(const Dataset& train, const std::vector<int>& feature_ids,
                                    const Eigen::MatrixXd& X_test, const PlrConfig& cfg) {
    if (X_test.cols() != train.p())
        throw std::invalid_argument("test columns must match training columns");
    const std::vector<int> cols = columns_for_ids(train, feature_ids);
    Eigen::MatrixXd Xtr(train.n(), static_cast<Eigen::Index>(cols.size()));
    Eigen::MatrixXd Xte(X_test.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        Xtr.col(static_cast<Eigen::Index>(j)) = train.X.col(cols[j]);
        Xte.col(static_cast<Eigen::Index>(j)) = X_test.col(cols[j]);
    }
    const PlrFit fit = fit_penalized_logistic(Xtr, train.y, cfg);
    return plr_predict(fit.coef, Xte);
}

} // namespace fbrht
