#include "fbrht/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace fbrht {

namespace {

void check_inputs(const Eigen::VectorXd& probs, const Eigen::VectorXd& y) {
    if (probs.size() != y.size()) throw std::invalid_argument("probs / labels size mismatch");
    if (probs.size() == 0) throw std::invalid_argument("no cases");
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (y[i] != 0.0 && y[i] != 1.0) throw std::invalid_argument("labels must be 0 or 1");
        if (!(probs[i] >= 0.0 && probs[i] <= 1.0))
            throw std::invalid_argument("probabilities must be in [0, 1]");
    }
}

} // namespace

double error_rate(const Eigen::VectorXd& probs, const Eigen::VectorXd& y) {
    check_inputs(probs, y);
    long wrong = 0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double pred = probs[i] >= 0.5 ? 1.0 : 0.0;
        if (pred != y[i]) ++wrong;
    }
    return static_cast<double>(wrong) / static_cast<double>(y.size());
}

double amlp(const Eigen::VectorXd& probs, const Eigen::VectorXd& y) {
    check_inputs(probs, y);
    double total = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double p_true = y[i] == 1.0 ? probs[i] : 1.0 - probs[i];
        total -= std::log(p_true);
    }
    return total / static_cast<double>(y.size());
}

double auc(const Eigen::VectorXd& probs, const Eigen::VectorXd& y) {
    check_inputs(probs, y);
    const Eigen::Index n = y.size();
    const double n1 = y.sum();
    const double n0 = static_cast<double>(n) - n1;
    if (n1 == 0.0 || n0 == 0.0)
        throw std::invalid_argument("AUC needs both classes present");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return probs[a] < probs[b]; });

    // midranks: tied scores share the average of their rank range
    double rank_sum_pos = 0.0;
    Eigen::Index i = 0;
    while (i < n) {
        Eigen::Index j = i;
        while (j + 1 < n && probs[order[j + 1]] == probs[order[i]]) ++j;
        const double midrank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (Eigen::Index k = i; k <= j; ++k)
            if (y[order[k]] == 1.0) rank_sum_pos += midrank;
        i = j + 1;
    }
    const double u = rank_sum_pos - n1 * (n1 + 1.0) / 2.0;
    return u / (n1 * n0);
}

MetricsTriple compute_metrics(const Eigen::VectorXd& probs, const Eigen::VectorXd& y) {
    return {error_rate(probs, y), amlp(probs, y), auc(probs, y)};
}

} // namespace fbrht
