#pragma once

#include <random>

#include "fbrht/special.hpp"

namespace fbrht {

/// Hyperparameters of the model: the likelihood link T_{alpha0, omega0} and
/// the coefficient prior, a scale mixture whose marginal is the scaled t
/// with parameters (alpha1, omega1).
struct ModelConfig {
    TParams likelihood{1.0, 0.5};
    TParams prior{1.0, std::exp(-10.0)};
};

/// Draw the per-coefficient prior variance lambda_j from its conditional
/// given beta_j: inverse gamma with shape (alpha1+1)/2 and scale
/// (alpha1*omega1 + beta_j^2)/2, realized as the reciprocal of a gamma draw.
double sample_lambda_given_beta(double beta_j, const TParams& prior, std::mt19937_64& rng);

} // namespace fbrht
