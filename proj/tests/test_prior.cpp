#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "fbrht/prior.hpp"

using fbrht::TParams;

namespace {

double median(std::vector<double> v) {
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    return v[v.size() / 2];
}

} // namespace

TEST_CASE("prior variance draws match the gamma moment identity") {
    // 1/lambda is Gamma(shape, 1/scale), so E[1/lambda] = shape / scale.
    // Checked at the default prior (alpha=1, omega=e^-10) for several beta.
    const TParams prior{1.0, std::exp(-10.0)};
    struct Case {
        double beta;
        double want; // ((alpha+1)/2) / ((alpha*omega + beta^2)/2)
    };
    const Case cases[] = {
        {0.0, 44052.93158961343},
        {0.5, 7.998547466027362},
        {3.0, 0.22222110124195688},
    };
    std::mt19937_64 rng(42);
    for (const auto& c : cases) {
        const double shape = 0.5 * (prior.alpha + 1.0);
        const double scale = 0.5 * (prior.alpha * prior.omega + c.beta * c.beta);
        CHECK(shape / scale == doctest::Approx(c.want).epsilon(1e-12));
        double inv_sum = 0.0;
        const int n = 1000000;
        for (int i = 0; i < n; ++i)
            inv_sum += 1.0 / fbrht::sample_lambda_given_beta(c.beta, prior, rng);
        CHECK(inv_sum / n == doctest::Approx(c.want).epsilon(0.01));
    }
}

TEST_CASE("prior variance draws are positive and scale with beta") {
    const TParams prior{1.0, std::exp(-10.0)};
    std::mt19937_64 rng(7);
    std::vector<double> at0, at10;
    for (int i = 0; i < 100000; ++i) {
        const double a = fbrht::sample_lambda_given_beta(0.0, prior, rng);
        const double b = fbrht::sample_lambda_given_beta(10.0, prior, rng);
        CHECK(a > 0.0);
        CHECK(b > 0.0);
        at0.push_back(a);
        at10.push_back(b);
    }
    // A large coefficient should pull its prior variance up.
    CHECK(median(at10) > median(at0));
}

TEST_CASE("prior variance conditional reduces to the stated inverse gamma") {
    // For beta = 0 the conditional is IG(1, omega/2): the reciprocal is
    // Exponential(rate omega/2 inverted), i.e. 1/lambda ~ Gamma(1, 2/omega),
    // whose CDF is 1 - exp(-x omega / 2). Kolmogorov distance against that
    // closed form over a large sample.
    const TParams prior{1.0, std::exp(-10.0)};
    std::mt19937_64 rng(19);
    const int n = 200000;
    std::vector<double> inv;
    inv.reserve(n);
    for (int i = 0; i < n; ++i)
        inv.push_back(1.0 / fbrht::sample_lambda_given_beta(0.0, prior, rng));
    std::sort(inv.begin(), inv.end());
    const double rate = 0.5 * prior.alpha * prior.omega;
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
        const double f = 1.0 - std::exp(-rate * inv[i]);
        d = std::max(d, std::abs(f - (i + 1.0) / n));
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    }
    // One-sample KS critical value at the 0.1% level is 1.949 / sqrt(n).
    CHECK(d < 1.949 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("model defaults") {
    const fbrht::ModelConfig m;
    CHECK(m.likelihood.alpha == 1.0);
    CHECK(m.likelihood.omega == 0.5);
    CHECK(m.prior.alpha == 1.0);
    CHECK(m.prior.omega == doctest::Approx(std::exp(-10.0)).epsilon(1e-15));
}
