#pragma once

#include <cstdint>
#include <vector>

#include "fbrht/data.hpp"

namespace fbrht {

/// Two strongly correlated features carrying the same signal. Labels are
/// Bernoulli(1/2); feature j of case i is mu_j^{y_i} + z_i + 0.1 eps with
/// mu^0 = 0, mu^1 = 2 and z, eps standard normal. Marginal feature
/// correlation is 2/(2 + 0.01) ~ 0.995.
Dataset gen_toy(int n, std::uint64_t seed);

/// Three independent signal groups of `group_size` equicorrelated features
/// (x = z_g + 0.5 eps, within-group correlation 0.8) plus independent
/// N(0,1) noise features up to p total. y_i = 1 iff
/// (z_1 + z_2 + z_3)/sqrt(3) + 0.1 e > 0.
Dataset gen_independent_groups(int n, std::uint64_t seed, int group_size = 50, int p = 2000);

/// Three signal groups with class-dependent means and cross-group
/// correlation: group 1 loads on z_1, group 2 on 0.8 z_1 + 0.6 z_2, group 3
/// on z_3; noise features are N(0,1). Group means are (-0.3, 0.3, 1) for
/// class 0 and (0.3, -0.3, -1) for class 1; labels are balanced
/// Bernoulli(1/2).
Dataset gen_correlated_groups(int n, std::uint64_t seed, int group_size = 200, int p = 2000);

/// Group membership (1..3 signal, 4 noise) of a feature id under the
/// grouped generators.
int group_of_feature(int feature_id, int group_size);

/// Columns ranked by absolute two-sample t statistic (Welch), descending,
/// ties by lower column index; returns the top min(k, p) 0-based column
/// indices in rank order.
std::vector<int> marginal_screen(const Dataset& data, int k);

/// Deterministic per-task seed derivation.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

} // namespace fbrht
