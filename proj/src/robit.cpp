#include "fbrht/robit.hpp"

#include <cmath>
#include <stdexcept>

namespace fbrht {

namespace {

void check_ctx(const Eigen::VectorXd& beta_update, const RobitContext& ctx) {
    const auto m = beta_update.size();
    if (ctx.X_update.cols() != m || ctx.lambda_update.size() != m)
        throw std::invalid_argument("update block size mismatch");
    if (ctx.X_update.rows() != ctx.eta_frozen.size() || ctx.X_update.rows() != ctx.y.size())
        throw std::invalid_argument("case count mismatch");
    if ((ctx.lambda_update.array() <= 0.0).any())
        throw std::invalid_argument("prior variances must be positive");
}

} // namespace

double log_robit_prob(int y, double eta, const TParams& like) {
    if (y != 0 && y != 1) throw std::invalid_argument("label must be 0 or 1");
    return log_student_t_cdf(y == 1 ? eta : -eta, like);
}

double neg_log_cond_posterior(const Eigen::VectorXd& beta_update, const RobitContext& ctx) {
    check_ctx(beta_update, ctx);
    const Eigen::VectorXd eta = ctx.eta_frozen + ctx.X_update * beta_update;
    double nll = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i)
        nll -= log_robit_prob(static_cast<int>(ctx.y[i]), eta[i], ctx.like);
    double prior = 0.0;
    for (Eigen::Index j = 0; j < beta_update.size(); ++j)
        prior += 0.5 * beta_update[j] * beta_update[j] / ctx.lambda_update[j] +
                 0.5 * std::log(ctx.lambda_update[j]);
    return nll + prior;
}

Eigen::VectorXd grad_neg_log_cond_posterior(const Eigen::VectorXd& beta_update,
                                            const RobitContext& ctx) {
    check_ctx(beta_update, ctx);
    const Eigen::VectorXd eta = ctx.eta_frozen + ctx.X_update * beta_update;
    Eigen::VectorXd w(eta.size());
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
        const double lpdf = log_student_t_pdf(eta[i], ctx.like);
        if (ctx.y[i] == 1.0) {
            w[i] = -std::exp(lpdf - log_student_t_cdf(eta[i], ctx.like));
        } else {
            w[i] = std::exp(lpdf - log_student_t_cdf(-eta[i], ctx.like));
        }
    }
    return ctx.X_update.transpose() * w +
           beta_update.cwiseQuotient(ctx.lambda_update);
}

} // namespace fbrht
