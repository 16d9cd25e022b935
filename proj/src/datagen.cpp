#include "fbrht/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace fbrht {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

void check_group_sizes(int n, int group_size, int p) {
    if (n < 1) throw std::invalid_argument("need n >= 1");
    if (group_size < 1) throw std::invalid_argument("need group_size >= 1");
    if (p < 3 * group_size)
        throw std::invalid_argument("need p >= 3 * group_size for the three signal groups");
}

} // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream));
}

Dataset gen_toy(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("need n >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Dataset d;
    d.X.resize(n, 2);
    d.y.resize(n);
    for (int i = 0; i < n; ++i) {
        const int y = unif(rng) < 0.5 ? 0 : 1;
        const double z = normal(rng);
        const double mu = y == 1 ? 2.0 : 0.0;
        d.y[i] = y;
        d.X(i, 0) = mu + z + 0.1 * normal(rng);
        d.X(i, 1) = mu + z + 0.1 * normal(rng);
    }
    ensure_feature_labels(d);
    return d;
}

Dataset gen_independent_groups(int n, std::uint64_t seed, int group_size, int p) {
    check_group_sizes(n, group_size, p);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Dataset d;
    d.X.resize(n, p);
    d.y.resize(n);
    for (int i = 0; i < n; ++i) {
        const double z1 = normal(rng), z2 = normal(rng), z3 = normal(rng);
        const double e = normal(rng);
        d.y[i] = ((z1 + z2 + z3) / std::sqrt(3.0) + 0.1 * e > 0.0) ? 1.0 : 0.0;
        const double zg[3] = {z1, z2, z3};
        for (int j = 0; j < p; ++j) {
            const int g = j / group_size;
            if (g < 3)
                d.X(i, j) = zg[g] + 0.5 * normal(rng);
            else
                d.X(i, j) = normal(rng);
        }
    }
    ensure_feature_labels(d);
    return d;
}

Dataset gen_correlated_groups(int n, std::uint64_t seed, int group_size, int p) {
    check_group_sizes(n, group_size, p);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Dataset d;
    d.X.resize(n, p);
    d.y.resize(n);
    for (int i = 0; i < n; ++i) {
        const int y = unif(rng) < 0.5 ? 0 : 1;
        d.y[i] = y;
        const double mu1 = y == 0 ? -0.3 : 0.3;
        const double mu2 = y == 0 ? 0.3 : -0.3;
        const double mu3 = y == 0 ? 1.0 : -1.0;
        const double z1 = normal(rng), z2 = normal(rng), z3 = normal(rng);
        for (int j = 0; j < p; ++j) {
            const int g = j / group_size;
            switch (g) {
                case 0: d.X(i, j) = mu1 + z1 + 0.5 * normal(rng); break;
                case 1: d.X(i, j) = mu2 + 0.8 * z1 + 0.6 * z2 + 0.5 * normal(rng); break;
                case 2: d.X(i, j) = mu3 + z3 + 0.5 * normal(rng); break;
                default: d.X(i, j) = normal(rng); break;
            }
        }
    }
    ensure_feature_labels(d);
    return d;
}

int group_of_feature(int feature_id, int group_size) {
    if (feature_id < 1) throw std::invalid_argument("feature ids are 1-based");
    const int g = (feature_id - 1) / group_size;
    return g < 3 ? g + 1 : 4;
}

std::vector<int> marginal_screen(const Dataset& data, int k) {
    if (k < 1) throw std::invalid_argument("need k >= 1");
    const Eigen::Index n = data.n();
    const double n1 = data.y.sum();
    const double n0 = static_cast<double>(n) - n1;
    if (n0 < 2 || n1 < 2)
        throw std::invalid_argument("marginal screen needs at least 2 cases per class");
    std::vector<double> stat(data.p());
    for (Eigen::Index j = 0; j < data.p(); ++j) {
        double m0 = 0, m1 = 0;
        for (Eigen::Index i = 0; i < n; ++i)
            (data.y[i] == 1.0 ? m1 : m0) += data.X(i, j);
        m0 /= n0;
        m1 /= n1;
        double s0 = 0, s1 = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double c = data.X(i, j) - (data.y[i] == 1.0 ? m1 : m0);
            (data.y[i] == 1.0 ? s1 : s0) += c * c;
        }
        s0 /= (n0 - 1);
        s1 /= (n1 - 1);
        const double se2 = s0 / n0 + s1 / n1;
        if (se2 == 0.0)
            stat[j] = (m1 == m0) ? 0.0 : std::numeric_limits<double>::infinity();
        else
            stat[j] = std::fabs(m1 - m0) / std::sqrt(se2);
    }
    std::vector<int> order(data.p());
    for (Eigen::Index j = 0; j < data.p(); ++j) order[j] = static_cast<int>(j);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return stat[a] > stat[b]; });
    if (k < static_cast<int>(order.size())) order.resize(k);
    return order;
}

} // namespace fbrht
