#include "fbrht/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fbrht/datagen.hpp"
#include "fbrht/robit.hpp"

namespace fbrht {

namespace {

constexpr long kEtaRefreshPeriod = 512;
constexpr double kEtaDriftTol = 1e-8;

void validate_config(const SamplerConfig& c) {
    if (!(c.epsilon_adjust > 0.0)) throw std::invalid_argument("epsilon_adjust must be positive");
    if (c.l_burnin < 0 || c.l_sampling < 0)
        throw std::invalid_argument("leapfrog step counts must be >= 0");
    if (!(c.update_fraction > 0.0 && c.update_fraction <= 1.0))
        throw std::invalid_argument("update_fraction must be in (0, 1]");
    if (c.n_burnin_iters < 0) throw std::invalid_argument("n_burnin_iters must be >= 0");
    if (c.thin < 1) throw std::invalid_argument("thin must be >= 1");
    if (c.n_sampling_iters < c.thin)
        throw std::invalid_argument("n_sampling_iters must be >= thin so at least one draw is kept");
    if (c.p_star < 1) throw std::invalid_argument("p_star must be >= 1");
    if (!(c.lambda_intercept > 0.0))
        throw std::invalid_argument("lambda_intercept must be positive");
}

} // namespace

std::vector<int> select_update_set(const Eigen::VectorXd& lambda_hat, double fraction) {
    const Eigen::Index p = lambda_hat.size();
    if (p == 0) throw std::invalid_argument("lambda_hat must be non-empty");
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw std::invalid_argument("fraction must be in (0, 1]");
    if (!(lambda_hat.array() > 0.0).all())
        throw std::invalid_argument("lambda_hat must be positive");
    const int m = std::min<int>(static_cast<int>(p),
                                static_cast<int>(std::ceil(fraction * static_cast<double>(p))));
    std::vector<int> order(p);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return lambda_hat[a] > lambda_hat[b]; });
    std::vector<int> u(static_cast<std::size_t>(m) + 1);
    u[0] = 0;
    for (int k = 0; k < m; ++k) u[static_cast<std::size_t>(k) + 1] = order[k] + 1;
    std::sort(u.begin(), u.end());
    return u;
}

Eigen::VectorXd hmc_step_sizes(const Eigen::VectorXd& lambda_hat_u,
                               const Eigen::MatrixXd& X_update, double epsilon_adjust) {
    if (lambda_hat_u.size() != X_update.cols())
        throw std::invalid_argument("lambda_hat_u / X_update size mismatch");
    if (!(epsilon_adjust > 0.0)) throw std::invalid_argument("epsilon_adjust must be positive");
    if (!(lambda_hat_u.array() > 0.0).all())
        throw std::invalid_argument("lambda_hat_u must be positive");
    Eigen::VectorXd eps(lambda_hat_u.size());
    for (Eigen::Index j = 0; j < eps.size(); ++j) {
        const double curv =
            (X_update.col(j).squaredNorm() + 1.0) / lambda_hat_u[j];
        eps[j] = epsilon_adjust / std::sqrt(curv);
    }
    return eps;
}

GibbsSampler::GibbsSampler(const Dataset& data, ModelConfig model, SamplerConfig config)
    : y_(data.y), model_(model), config_(config) {
    validate_config(config_);
    if (data.p() < 1) throw std::invalid_argument("need at least one feature");
    for (Eigen::Index i = 0; i < y_.size(); ++i)
        if (y_[i] != 0.0 && y_[i] != 1.0)
            throw std::invalid_argument("labels must be 0 or 1");
    design_.resize(data.n(), data.p() + 1);
    design_.col(0).setOnes();
    design_.rightCols(data.p()) = data.X;
}

SamplerState GibbsSampler::initial_state() const {
    SamplerState s;
    s.beta = Eigen::VectorXd::Zero(design_.cols());
    s.lambda = Eigen::VectorXd::Constant(design_.cols(), model_.prior.omega);
    s.lambda[0] = config_.lambda_intercept;
    s.eta = Eigen::VectorXd::Zero(design_.rows());
    return s;
}

HmcResult GibbsSampler::hmc_update(SamplerState& state, const std::vector<int>& update_set,
                                   Phase phase, std::mt19937_64& rng) const {
    const int l = phase == Phase::burnin ? config_.l_burnin : config_.l_sampling;
    const Eigen::Index m = static_cast<Eigen::Index>(update_set.size());
    if (m == 0) throw std::invalid_argument("update set must be non-empty");
    for (int j : update_set)
        if (j < 0 || j >= design_.cols())
            throw std::invalid_argument("update set index out of range");

    RobitContext ctx;
    ctx.X_update.resize(design_.rows(), m);
    ctx.lambda_update.resize(m);
    Eigen::VectorXd q(m);
    for (Eigen::Index k = 0; k < m; ++k) {
        const int j = update_set[static_cast<std::size_t>(k)];
        ctx.X_update.col(k) = design_.col(j);
        ctx.lambda_update[k] = state.lambda[j];
        q[k] = state.beta[j];
    }
    ctx.eta_frozen = config_.recompute_eta
                         ? Eigen::VectorXd(design_ * state.beta - ctx.X_update * q)
                         : Eigen::VectorXd(state.eta - ctx.X_update * q);
    ctx.y = y_;
    ctx.like = model_.likelihood;

    const Eigen::VectorXd eps = hmc_step_sizes(ctx.lambda_update, ctx.X_update,
                                               config_.epsilon_adjust);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd mom(m);
    for (Eigen::Index k = 0; k < m; ++k) mom[k] = normal(rng);

    const double h0 = neg_log_cond_posterior(q, ctx) + 0.5 * mom.squaredNorm();
    Eigen::VectorXd qn = q;
    if (l > 0) {
        mom -= 0.5 * eps.cwiseProduct(grad_neg_log_cond_posterior(qn, ctx));
        for (int step = 0; step < l; ++step) {
            qn += eps.cwiseProduct(mom);
            const Eigen::VectorXd g = grad_neg_log_cond_posterior(qn, ctx);
            mom -= (step + 1 == l ? 0.5 : 1.0) * eps.cwiseProduct(g);
        }
    }
    const double h1 = neg_log_cond_posterior(qn, ctx) + 0.5 * mom.squaredNorm();
    const double dh = h1 - h0;

    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double u = unif(rng);
    const bool accept = std::isfinite(dh) && (dh <= 0.0 || u < std::exp(-dh));
    if (accept) {
        for (Eigen::Index k = 0; k < m; ++k)
            state.beta[update_set[static_cast<std::size_t>(k)]] = qn[k];
        state.eta = ctx.eta_frozen + ctx.X_update * qn;
    } else if (config_.recompute_eta) {
        state.eta = ctx.eta_frozen + ctx.X_update * q;
    }
    return {accept, dh};
}

HmcResult GibbsSampler::gibbs_iteration(SamplerState& state, Phase phase,
                                        std::mt19937_64& rng) const {
    const Eigen::Index p = design_.cols() - 1;
    if (state.beta.size() != p + 1 || state.lambda.size() != p + 1 ||
        state.eta.size() != design_.rows())
        throw std::invalid_argument("state shape mismatch");
    for (Eigen::Index j = 1; j <= p; ++j)
        state.lambda[j] = sample_lambda_given_beta(state.beta[j], model_.prior, rng);
    const std::vector<int> u = select_update_set(state.lambda.tail(p), config_.update_fraction);
    const HmcResult res = hmc_update(state, u, phase, rng);
    ++state.iteration;
    return res;
}

SampleMatrix GibbsSampler::run(std::mt19937_64& rng) const {
    const Eigen::Index p = design_.cols() - 1;
    SamplerState state = initial_state();

    auto maybe_refresh = [&](long it) {
        if (config_.recompute_eta) return;
        if ((it + 1) % kEtaRefreshPeriod != 0) return;
        const Eigen::VectorXd fresh = design_ * state.beta;
        if ((fresh - state.eta).cwiseAbs().maxCoeff() > kEtaDriftTol) state.eta = fresh;
    };

    for (int it = 0; it < config_.n_burnin_iters; ++it) {
        gibbs_iteration(state, Phase::burnin, rng);
        maybe_refresh(state.iteration);
    }
    const int r_total = config_.n_sampling_iters / config_.thin;
    SampleMatrix out;
    out.draws.resize(p, r_total);
    out.intercept_draws.resize(r_total);
    int kept = 0;
    long accepted = 0;
    for (int it = 1; it <= config_.n_sampling_iters; ++it) {
        accepted += gibbs_iteration(state, Phase::sampling, rng).accepted ? 1 : 0;
        maybe_refresh(state.iteration);
        if (it % config_.thin == 0 && kept < r_total) {
            out.draws.col(kept) = state.beta.tail(p);
            out.intercept_draws[kept] = state.beta[0];
            ++kept;
        }
    }
    out.draws.conservativeResize(p, kept);
    out.intercept_draws.conservativeResize(kept);
    out.accept_rate = static_cast<double>(accepted) / config_.n_sampling_iters;
    return out;
}

SampleMatrix run_chain(const Dataset& data, const ModelConfig& model,
                       const SamplerConfig& config) {
    if (data.n() < 2) throw std::invalid_argument("need at least 2 cases");
    if (data.y.size() != data.n()) throw std::invalid_argument("label count mismatch");
    const double ones = data.y.sum();
    if (ones == 0.0 || ones == static_cast<double>(data.n()))
        throw std::invalid_argument("labels are single-class; need both classes present");
    GibbsSampler sampler(data, model, config);
    std::mt19937_64 rng(config.seed);
    return sampler.run(rng);
}

TwoStageResult run_two_stage(const Dataset& data, const ModelConfig& model,
                             const SamplerConfig& config) {
    validate_config(config);
    TwoStageResult out;
    SamplerConfig c2 = config;
    c2.seed = derive_seed(config.seed, 2);

    if (data.p() <= config.p_star) {
        out.selected.resize(data.p());
        std::iota(out.selected.begin(), out.selected.end(), 0);
        out.stage2_data = data;
        ensure_feature_labels(out.stage2_data);
        out.stage2 = run_chain(out.stage2_data, model, c2);
        return out;
    }

    SamplerConfig c1 = config;
    c1.seed = derive_seed(config.seed, 1);
    const SampleMatrix stage1 = run_chain(data, model, c1);
    out.stage1_means = stage1.draws.rowwise().mean();

    std::vector<int> order(data.p());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return std::fabs(out.stage1_means[a]) > std::fabs(out.stage1_means[b]);
    });
    order.resize(config.p_star);
    std::sort(order.begin(), order.end());
    out.selected = order;

    Dataset reduced;
    reduced.X.resize(data.n(), config.p_star);
    reduced.y = data.y;
    Dataset labeled = data;
    ensure_feature_labels(labeled);
    for (std::size_t k = 0; k < out.selected.size(); ++k) {
        reduced.X.col(static_cast<Eigen::Index>(k)) = data.X.col(out.selected[k]);
        reduced.feature_ids.push_back(labeled.feature_ids[out.selected[k]]);
        reduced.feature_names.push_back(labeled.feature_names[out.selected[k]]);
    }
    out.stage2_data = std::move(reduced);
    out.stage2 = run_chain(out.stage2_data, model, c2);
    return out;
}

} // namespace fbrht
