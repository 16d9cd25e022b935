#include "fbrht/plr.hpp"

#include <cmath>

namespace fbrht {

namespace {

constexpr double kRidgeJitter = 1e-6;
constexpr double kMinWeight = 1e-10;

double softplus(double x) {
    return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void check_xy(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    if (X.rows() != y.size()) throw std::invalid_argument("case count mismatch");
    if (y.size() == 0) throw std::invalid_argument("no cases");
    for (Eigen::Index i = 0; i < y.size(); ++i)
        if (y[i] != 0.0 && y[i] != 1.0) throw std::invalid_argument("labels must be 0 or 1");
}

Eigen::VectorXd prior_scales(Eigen::Index k, const PlrConfig& cfg) {
    Eigen::VectorXd s = Eigen::VectorXd::Constant(k + 1, cfg.prior_scale);
    s[0] = cfg.intercept_scale;
    return s;
}

} // namespace

double plr_objective(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                     const Eigen::VectorXd& coef, const PlrConfig& cfg) {
    check_xy(X, y);
    const Eigen::VectorXd eta =
        (coef[0] + (X * coef.tail(X.cols())).array()).matrix();
    double nll = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i)
        nll += softplus(eta[i]) - y[i] * eta[i];
    const Eigen::VectorXd s = prior_scales(X.cols(), cfg);
    double pen = 0.0;
    for (Eigen::Index j = 0; j < coef.size(); ++j)
        pen += 0.5 * (cfg.prior_df + 1.0) *
               std::log1p(coef[j] * coef[j] / (cfg.prior_df * s[j] * s[j]));
    return nll + pen;
}

Eigen::VectorXd plr_gradient(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                             const Eigen::VectorXd& coef, const PlrConfig& cfg) {
    check_xy(X, y);
    const Eigen::VectorXd eta =
        (coef[0] + (X * coef.tail(X.cols())).array()).matrix();
    Eigen::VectorXd resid(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) resid[i] = logistic(eta[i]) - y[i];
    Eigen::VectorXd g(coef.size());
    g[0] = resid.sum();
    g.tail(X.cols()) = X.transpose() * resid;
    const Eigen::VectorXd s = prior_scales(X.cols(), cfg);
    for (Eigen::Index j = 0; j < coef.size(); ++j)
        g[j] += (cfg.prior_df + 1.0) * coef[j] /
                (cfg.prior_df * s[j] * s[j] + coef[j] * coef[j]);
    return g;
}

PlrFit fit_penalized_logistic(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                              const PlrConfig& cfg) {
    check_xy(X, y);
    const double ones = y.sum();
    if (ones == 0.0 || ones == static_cast<double>(y.size()))
        throw DegenerateFitError("labels are single-class; penalized logistic fit is degenerate");

    const Eigen::Index k = X.cols();
    Eigen::MatrixXd Xd(X.rows(), k + 1);
    Xd.col(0).setOnes();
    Xd.rightCols(k) = X;
    const Eigen::VectorXd s = prior_scales(k, cfg);

    PlrFit fit;
    fit.coef = Eigen::VectorXd::Zero(k + 1);
    double obj = plr_objective(X, y, fit.coef, cfg);

    for (int it = 1; it <= cfg.max_iters; ++it) {
        fit.iters = it;
        // working variance of each coefficient's normal mixture component
        Eigen::VectorXd inv_var(k + 1);
        for (Eigen::Index j = 0; j <= k; ++j) {
            const double v = (cfg.prior_df * s[j] * s[j] + fit.coef[j] * fit.coef[j]) /
                             (cfg.prior_df + 1.0);
            inv_var[j] = 1.0 / v;
        }
        const Eigen::VectorXd eta = Xd * fit.coef;
        Eigen::VectorXd w(eta.size()), z(eta.size());
        for (Eigen::Index i = 0; i < eta.size(); ++i) {
            const double p = logistic(eta[i]);
            w[i] = std::max(p * (1.0 - p), kMinWeight);
            z[i] = eta[i] + (y[i] - p) / w[i];
        }
        Eigen::MatrixXd a = Xd.transpose() * w.asDiagonal() * Xd;
        a.diagonal() += inv_var;
        a.diagonal().array() += kRidgeJitter;
        const Eigen::VectorXd target = Xd.transpose() * (w.asDiagonal() * z);
        const Eigen::VectorXd prop = a.ldlt().solve(target);

        // the solve direction descends the objective; halve until it does
        Eigen::VectorXd next = prop;
        double step = 1.0;
        double next_obj = plr_objective(X, y, next, cfg);
        while (next_obj > obj + 1e-12 && step > 1e-10) {
            step *= 0.5;
            next = fit.coef + step * (prop - fit.coef);
            next_obj = plr_objective(X, y, next, cfg);
        }
        const double denom = std::max(1.0, next.cwiseAbs().maxCoeff());
        const double change = (next - fit.coef).cwiseAbs().maxCoeff() / denom;
        fit.coef = next;
        obj = next_obj;
        if (change < cfg.tol) {
            fit.converged = true;
            break;
        }
    }
    return fit;
}

Eigen::VectorXd plr_predict(const Eigen::VectorXd& coef, const Eigen::MatrixXd& X) {
    if (coef.size() != X.cols() + 1)
        throw std::invalid_argument("coefficient / column count mismatch");
    Eigen::VectorXd probs(X.rows());
    const Eigen::VectorXd eta =
        (coef[0] + (X * coef.tail(X.cols())).array()).matrix();
    for (Eigen::Index i = 0; i < probs.size(); ++i) probs[i] = logistic(eta[i]);
    return probs;
}

MetricsTriple loocv_evaluate(const Dataset& data, const std::vector<int>& feature_ids,
                             const PlrConfig& cfg) {
    const Eigen::Index n = data.n();
    if (n < 3) throw std::invalid_argument("LOOCV needs at least 3 cases");
    const double ones = data.y.sum();
    if (ones == 0.0 || ones == static_cast<double>(n))
        throw std::invalid_argument("LOOCV needs both classes present");
    const std::vector<int> cols = columns_for_ids(data, feature_ids);
    Eigen::MatrixXd Xs(n, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) Xs.col(static_cast<Eigen::Index>(j)) = data.X.col(cols[j]);

    Eigen::VectorXd probs(n);
    Eigen::MatrixXd Xtr(n - 1, Xs.cols());
    Eigen::VectorXd ytr(n - 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::Index r = 0;
        for (Eigen::Index t = 0; t < n; ++t) {
            if (t == i) continue;
            Xtr.row(r) = Xs.row(t);
            ytr[r] = data.y[t];
            ++r;
        }
        const double train_ones = ytr.sum();
        if (train_ones == 0.0 || train_ones == static_cast<double>(n - 1)) {
            probs[i] = train_ones / static_cast<double>(n - 1);
            continue;
        }
        const PlrFit fit = fit_penalized_logistic(Xtr, ytr, cfg);
        probs[i] = plr_predict(fit.coef, Xs.row(i))[0];
    }
    return compute_metrics(probs, data.y);
}

} // namespace fbrht
