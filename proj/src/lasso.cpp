#include "fbrht/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace fbrht {

namespace {

constexpr double kMinWeight = 1e-9;
constexpr double kInnerTol = 1e-11;
constexpr double kOuterTol = 1e-9;
constexpr int kMaxOuter = 100;
constexpr int kMaxSweeps = 1000;

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double soft_threshold(double v, double t) {
    if (v > t) return v - t;
    if (v < -t) return v + t;
    return 0.0;
}

void check_xy(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    if (X.rows() != y.size()) throw std::invalid_argument("case count mismatch");
    if (y.size() == 0) throw std::invalid_argument("no cases");
    for (Eigen::Index i = 0; i < y.size(); ++i)
        if (y[i] != 0.0 && y[i] != 1.0) throw std::invalid_argument("labels must be 0 or 1");
}

} // namespace

LassoFit lasso_logistic_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda,
                            const Eigen::VectorXd* warm) {
    check_xy(X, y);
    if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
    const double ones = y.sum();
    if (ones == 0.0 || ones == static_cast<double>(y.size()))
        throw std::invalid_argument("labels are single-class");

    const Eigen::Index n = X.rows(), p = X.cols();
    const double inv_n = 1.0 / static_cast<double>(n);

    LassoFit fit;
    fit.coef = Eigen::VectorXd::Zero(p + 1);
    if (warm != nullptr) {
        if (warm->size() != p + 1) throw std::invalid_argument("warm start size mismatch");
        fit.coef = *warm;
    }

    Eigen::VectorXd eta = (fit.coef[0] + (X * fit.coef.tail(p)).array()).matrix();
    for (int outer = 1; outer <= kMaxOuter; ++outer) {
        fit.outer_iters = outer;
        const Eigen::VectorXd before = fit.coef;

        Eigen::VectorXd w(n), resid(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double pr = logistic(eta[i]);
            w[i] = std::max(pr * (1.0 - pr), kMinWeight);
            resid[i] = (y[i] - pr) / w[i]; // z - eta, the working residual
        }
        Eigen::VectorXd denom(p);
        for (Eigen::Index j = 0; j < p; ++j)
            denom[j] = inv_n * X.col(j).cwiseProduct(X.col(j)).dot(w);
        const double denom0 = inv_n * w.sum();

        for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
            double max_change = 0.0;
            const double u0 = inv_n * w.dot(resid) + denom0 * fit.coef[0];
            const double b0 = u0 / denom0;
            if (b0 != fit.coef[0]) {
                resid.array() -= b0 - fit.coef[0];
                max_change = std::max(max_change, std::fabs(b0 - fit.coef[0]));
                fit.coef[0] = b0;
            }
            for (Eigen::Index j = 0; j < p; ++j) {
                const double old = fit.coef[j + 1];
                const double u =
                    inv_n * X.col(j).cwiseProduct(w).dot(resid) + denom[j] * old;
                const double bj = soft_threshold(u, lambda) / denom[j];
                if (bj != old) {
                    resid -= X.col(j) * (bj - old);
                    max_change = std::max(max_change, std::fabs(bj - old));
                    fit.coef[j + 1] = bj;
                }
            }
            if (max_change < kInnerTol) break;
        }
        eta = (fit.coef[0] + (X * fit.coef.tail(p)).array()).matrix();
        if ((fit.coef - before).cwiseAbs().maxCoeff() < kOuterTol) {
            fit.converged = true;
            break;
        }
    }
    return fit;
}

double lasso_kkt_residual(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda,
                          const Eigen::VectorXd& coef) {
    check_xy(X, y);
    if (coef.size() != X.cols() + 1) throw std::invalid_argument("coefficient size mismatch");
    const Eigen::Index n = X.rows(), p = X.cols();
    const double inv_n = 1.0 / static_cast<double>(n);
    Eigen::VectorXd resid(n);
    const Eigen::VectorXd eta = (coef[0] + (X * coef.tail(p)).array()).matrix();
    for (Eigen::Index i = 0; i < n; ++i) resid[i] = logistic(eta[i]) - y[i];

    double worst = std::fabs(inv_n * resid.sum()); // intercept stationarity
    for (Eigen::Index j = 0; j < p; ++j) {
        const double g = inv_n * X.col(j).dot(resid);
        const double b = coef[j + 1];
        double v;
        if (b == 0.0)
            v = std::max(0.0, std::fabs(g) - lambda);
        else
            v = std::fabs(g + lambda * (b > 0.0 ? 1.0 : -1.0));
        worst = std::max(worst, v);
    }
    return worst;
}

LassoPath lasso_cv_select(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, int grid_size,
                          double grid_step, int folds, std::uint64_t seed) {
    check_xy(X, y);
    if (grid_size < 1 || !(grid_step > 0.0)) throw std::invalid_argument("bad lambda grid");
    const Eigen::Index n = X.rows(), p = X.cols();
    if (folds < 2 || folds > n) throw std::invalid_argument("folds must be in [2, n]");

    LassoPath path;
    for (int m = grid_size; m >= 1; --m) path.lambdas.push_back(grid_step * m);
    const int M = grid_size;

    // deterministic shuffled round-robin fold assignment
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> fold_of(n);
    for (Eigen::Index i = 0; i < n; ++i) fold_of[perm[i]] = static_cast<int>(i) % folds;

    // held-out minus log probabilities pooled across folds, per lambda
    Eigen::MatrixXd heldout_mlp = Eigen::MatrixXd::Zero(n, M);
    for (int f = 0; f < folds; ++f) {
        std::vector<int> tr, te;
        for (Eigen::Index i = 0; i < n; ++i) (fold_of[i] == f ? te : tr).push_back(static_cast<int>(i));
        if (te.empty()) continue;
        Eigen::MatrixXd Xtr(tr.size(), p);
        Eigen::VectorXd ytr(tr.size());
        for (std::size_t r = 0; r < tr.size(); ++r) {
            Xtr.row(static_cast<Eigen::Index>(r)) = X.row(tr[r]);
            ytr[static_cast<Eigen::Index>(r)] = y[tr[r]];
        }
        const double tr_ones = ytr.sum();
        Eigen::VectorXd warm = Eigen::VectorXd::Zero(p + 1);
        for (int m = 0; m < M; ++m) {
            Eigen::VectorXd coef;
            if (tr_ones == 0.0 || tr_ones == static_cast<double>(ytr.size())) {
                // degenerate fold: base-rate predictor
                coef = Eigen::VectorXd::Zero(p + 1);
                const double base = std::clamp(tr_ones / static_cast<double>(ytr.size()),
                                               1e-12, 1.0 - 1e-12);
                coef[0] = std::log(base / (1.0 - base));
            } else {
                const LassoFit fit = lasso_logistic_fit(Xtr, ytr, path.lambdas[m], &warm);
                coef = fit.coef;
                warm = fit.coef;
            }
            for (int i : te) {
                const double pr = logistic(coef[0] + X.row(i) * coef.tail(p));
                const double p_true = y[i] == 1.0 ? pr : 1.0 - pr;
                heldout_mlp(i, m) = -std::log(p_true);
            }
        }
    }
    path.cv_amlp.resize(M);
    for (int m = 0; m < M; ++m) path.cv_amlp[m] = heldout_mlp.col(m).mean();
    path.best_index = static_cast<int>(
        std::min_element(path.cv_amlp.begin(), path.cv_amlp.end()) - path.cv_amlp.begin());

    path.coefs.resize(p + 1, M);
    Eigen::VectorXd warm = Eigen::VectorXd::Zero(p + 1);
    for (int m = 0; m < M; ++m) {
        const LassoFit fit = lasso_logistic_fit(X, y, path.lambdas[m], &warm);
        path.coefs.col(m) = fit.coef;
        warm = fit.coef;
    }
    return path;
}

UsedFeatureCounts count_used_features(const Eigen::VectorXd& slopes, double rel_threshold,
                                      const std::vector<int>* groups) {
    if (!(rel_threshold > 0.0 && rel_threshold < 1.0))
        throw std::invalid_argument("rel_threshold must be in (0, 1)");
    if (groups != nullptr && static_cast<Eigen::Index>(groups->size()) != slopes.size())
        throw std::invalid_argument("group label count mismatch");
    UsedFeatureCounts counts;
    if (slopes.size() == 0) return counts;
    const double m = slopes.cwiseAbs().maxCoeff();
    if (groups != nullptr)
        counts.per_group.assign(
            *std::max_element(groups->begin(), groups->end()), 0);
    if (m == 0.0) return counts;
    const double thr = rel_threshold * m;
    for (Eigen::Index j = 0; j < slopes.size(); ++j) {
        if (std::fabs(slopes[j]) > thr) {
            ++counts.total;
            if (groups != nullptr) ++counts.per_group[(*groups)[j] - 1];
        }
    }
    return counts;
}

} // namespace fbrht
