#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "fbrht/data.hpp"
#include "fbrht/prior.hpp"

namespace fbrht {

struct SamplerConfig {
    double epsilon_adjust = 0.25;  // global step-size factor
    int l_burnin = 10;             // leapfrog steps during burn-in
    int l_sampling = 50;           // leapfrog steps during sampling
    double update_fraction = 0.10; // share of coefficients updated per iteration
    int n_burnin_iters = 2000;
    int n_sampling_iters = 12000;
    int thin = 10;
    int p_star = 100;              // stage-2 feature budget
    std::uint64_t seed = 1;
    double lambda_intercept = 100.0; // fixed prior variance of the intercept
    bool recompute_eta = false;      // diagnostics: rebuild the predictor every iteration
};

enum class Phase { burnin, sampling };

/// Chain position: coefficients (intercept first), their current prior
/// variances, and the cached full linear predictor.
struct SamplerState {
    Eigen::VectorXd beta;
    Eigen::VectorXd lambda;
    Eigen::VectorXd eta;
    long iteration = 0;
};

struct HmcResult {
    bool accepted = false;
    double delta_h = 0.0;
};

/// Retained draws: slope draws column-per-sample with the intercept draws
/// kept alongside so full linear predictors can be rebuilt.
struct SampleMatrix {
    Eigen::MatrixXd draws;           // p x R
    Eigen::VectorXd intercept_draws; // R
    double accept_rate = 0.0;
};

/// Coefficient indices refreshed this iteration: the ceil(fraction * p)
/// features with the largest conditional prior variances (ties favor lower
/// indices) plus the intercept, ascending. lambda_hat holds the feature
/// variances only; returned indices treat 0 as the intercept.
std::vector<int> select_update_set(const Eigen::VectorXd& lambda_hat, double fraction);

/// Per-coordinate leapfrog step sizes
/// eps_j = epsilon_adjust * (sum_i x_ij^2 / lambda_j + 1 / lambda_j)^(-1/2).
Eigen::VectorXd hmc_step_sizes(const Eigen::VectorXd& lambda_hat_u,
                               const Eigen::MatrixXd& X_update, double epsilon_adjust);

/// Alternating sampler: refresh every prior variance from its conditional,
/// pick the high-variance block, move the block's coefficients with
/// Hamiltonian dynamics on the conditional posterior, keeping X_F beta_F
/// frozen (and cached) through the trajectory.
class GibbsSampler {
public:
    GibbsSampler(const Dataset& data, ModelConfig model, SamplerConfig config);

    SamplerState initial_state() const;

    /// One Metropolis-adjusted Hamiltonian move of the coefficients in
    /// update_set. Non-finite trajectory energy rejects; l = 0 always
    /// accepts the unchanged state.
    HmcResult hmc_update(SamplerState& state, const std::vector<int>& update_set, Phase phase,
                         std::mt19937_64& rng) const;

    /// Variance refresh + block selection + hmc_update + commit. The new
    /// variances are kept even when the coefficient move is rejected.
    HmcResult gibbs_iteration(SamplerState& state, Phase phase, std::mt19937_64& rng) const;

    /// Full schedule: burn-in, then sampling with every thin-th state
    /// retained. Acceptance rate is measured over the sampling phase.
    SampleMatrix run(std::mt19937_64& rng) const;

    const SamplerConfig& config() const { return config_; }
    const Eigen::MatrixXd& design() const { return design_; }

private:
    Eigen::MatrixXd design_; // n x (p+1), column 0 all ones
    Eigen::VectorXd y_;
    ModelConfig model_;
    SamplerConfig config_;
};

/// Run one chain on a standardized dataset.
SampleMatrix run_chain(const Dataset& data, const ModelConfig& model, const SamplerConfig& config);

struct TwoStageResult {
    Eigen::VectorXd stage1_means; // per-feature posterior means; empty when stage 1 skipped
    std::vector<int> selected;    // 0-based columns of the input dataset, ascending
    Dataset stage2_data;
    SampleMatrix stage2;
};

/// Screen-then-refine: when p exceeds p_star, rank features by absolute
/// stage-1 posterior mean, keep the top p_star, and rerun the chain on the
/// reduced design. Feature ids in stage2_data keep their original values.
TwoStageResult run_two_stage(const Dataset& data, const ModelConfig& model,
                             const SamplerConfig& config);

} // namespace fbrht
