#include "fbrht/prior.hpp"

#include <stdexcept>

namespace fbrht {

double sample_lambda_given_beta(double beta_j, const TParams& prior, std::mt19937_64& rng) {
    if (!(prior.alpha > 0.0) || !(prior.omega > 0.0))
        throw std::invalid_argument("prior needs alpha > 0 and omega > 0");
    if (!std::isfinite(beta_j)) throw std::invalid_argument("beta_j must be finite");
    const double shape = 0.5 * (prior.alpha + 1.0);
    const double scale = 0.5 * (prior.alpha * prior.omega + beta_j * beta_j);
    std::gamma_distribution<double> gamma(shape, 1.0);
    double g = gamma(rng);
    while (g == 0.0) g = gamma(rng); // gamma draw of 0 has measure zero but would blow up
    return scale / g;
}

} // namespace fbrht
