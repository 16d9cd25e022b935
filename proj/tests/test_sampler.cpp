#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "fbrht/datagen.hpp"
#include "fbrht/sampler.hpp"
#include "oracles.hpp"

using fbrht::Dataset;
using fbrht::GibbsSampler;
using fbrht::ModelConfig;
using fbrht::Phase;
using fbrht::SamplerConfig;
using fbrht::SamplerState;

namespace {

// A dataset whose two feature columns are identically zero. With the
// coefficient prior variances pinned at 1, the conditional posterior of
// (beta_1, beta_2) is exactly standard normal: the likelihood term is
// constant because the updated columns contribute nothing to eta.
GibbsSampler gaussian_target(const SamplerConfig& cfg) {
    Dataset d;
    d.X = Eigen::MatrixXd::Zero(2, 2);
    d.y.resize(2);
    d.y << 0, 1;
    return GibbsSampler(d, ModelConfig{}, cfg);
}

struct GaussianRun {
    std::vector<double> q1, q2, abs_dh_accepted;
    double accept_rate = 0.0;
};

GaussianRun run_gaussian(double eps, int leapfrog, int iters, std::uint64_t seed) {
    SamplerConfig cfg;
    cfg.epsilon_adjust = eps;
    cfg.l_sampling = leapfrog;
    GibbsSampler s = gaussian_target(cfg);
    SamplerState st = s.initial_state();
    st.lambda << 100.0, 1.0, 1.0;
    std::mt19937_64 rng(seed);
    const std::vector<int> u{1, 2};
    GaussianRun out;
    long acc = 0;
    for (int it = 0; it < iters; ++it) {
        const auto res = s.hmc_update(st, u, Phase::sampling, rng);
        if (res.accepted) {
            ++acc;
            out.abs_dh_accepted.push_back(std::abs(res.delta_h));
        }
        out.q1.push_back(st.beta[1]);
        out.q2.push_back(st.beta[2]);
    }
    out.accept_rate = static_cast<double>(acc) / iters;
    return out;
}

Dataset toy_standardized(int n, std::uint64_t seed) {
    auto d = fbrht::gen_toy(n, seed);
    fbrht::ensure_feature_labels(d);
    return fbrht::standardize(d).first;
}

} // namespace

TEST_CASE("update set selection") {
    Eigen::VectorXd lam(10);
    for (int j = 0; j < 10; ++j) lam[j] = j + 1.0;
    CHECK(fbrht::select_update_set(lam, 0.2) == std::vector<int>{0, 9, 10});
    // fraction 1: everything.
    std::vector<int> all(11);
    for (int j = 0; j <= 10; ++j) all[j] = j;
    CHECK(fbrht::select_update_set(lam, 1.0) == all);

    // Duplicates: exactly ceil(fraction p) features, ties resolved toward
    // lower indices; cross-check against a brute-force stable sort.
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> uv(1, 4);
    for (int rep = 0; rep < 200; ++rep) {
        const int p = 1 + static_cast<int>(rng() % 30);
        Eigen::VectorXd l(p);
        for (int j = 0; j < p; ++j) l[j] = uv(rng);
        const double fraction = 0.05 + 0.9 * (rng() % 100) / 100.0;
        const auto u = fbrht::select_update_set(l, fraction);
        const int m = static_cast<int>(std::ceil(fraction * p));
        REQUIRE(static_cast<int>(u.size()) == std::min(m, p) + 1);
        CHECK(u[0] == 0);
        CHECK(std::is_sorted(u.begin(), u.end()));
        std::vector<int> order(p);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return l[a] > l[b]; });
        std::vector<int> want(order.begin(), order.begin() + std::min(m, p));
        for (int& j : want) ++j;
        std::sort(want.begin(), want.end());
        CHECK(std::vector<int>(u.begin() + 1, u.end()) == want);
    }
    CHECK_THROWS(fbrht::select_update_set(Eigen::VectorXd(), 0.5));
    CHECK_THROWS(fbrht::select_update_set(lam, 0.0));
    CHECK_THROWS(fbrht::select_update_set(lam, 1.5));
}

TEST_CASE("leapfrog step sizes") {
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(4, 1);
    Eigen::VectorXd lam(1);
    lam << 1.0;
    // Zero column: curvature is 1/lambda = 1.
    CHECK(fbrht::hmc_step_sizes(lam, X, 0.5)[0] == doctest::Approx(0.5).epsilon(1e-14));
    // Doubling lambda scales the step by sqrt(2).
    Eigen::MatrixXd X2(3, 1);
    X2 << 1.0, 2.0, 2.0;
    Eigen::VectorXd l1(1), l2(1);
    l1 << 0.25;
    l2 << 0.5;
    const double e1 = fbrht::hmc_step_sizes(l1, X2, 1.0)[0];
    const double e2 = fbrht::hmc_step_sizes(l2, X2, 1.0)[0];
    CHECK(e2 == doctest::Approx(e1 * std::sqrt(2.0)).epsilon(1e-13));
    // Hand evaluation: (9/0.25 + 1/0.25)^(-1/2).
    CHECK(e1 == doctest::Approx(0.15811388300841897).epsilon(1e-14));
    CHECK_THROWS(fbrht::hmc_step_sizes(l1, X, 0.0));
}

TEST_CASE("zero-length trajectory always accepts and moves nothing") {
    SamplerConfig cfg;
    cfg.l_sampling = 0;
    GibbsSampler s = gaussian_target(cfg);
    SamplerState st = s.initial_state();
    st.lambda << 100.0, 1.0, 1.0;
    st.beta << 0.2, -0.4, 1.1;
    st.eta = Eigen::VectorXd::Constant(2, 0.2); // intercept only: X is zero
    std::mt19937_64 rng(5);
    for (int it = 0; it < 20; ++it) {
        const Eigen::VectorXd before = st.beta;
        const auto res = s.hmc_update(st, {1, 2}, Phase::sampling, rng);
        CHECK(res.accepted);
        CHECK(res.delta_h == 0.0);
        CHECK((st.beta - before).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("hamiltonian updates sample a standard normal target") {
    // Trajectory angle l * eps ~ pi/2 makes successive draws nearly
    // independent; a multiple of 2 pi would instead freeze the chain (the
    // proposal returns to its start), so the leapfrog count matters here.
    const auto run = run_gaussian(0.25, 6, 50000, 99);
    const double se1 = oracles::batch_means_se(run.q1);
    const double se2 = oracles::batch_means_se(run.q2);
    CHECK(std::abs(oracles::mean(run.q1)) < 3.0 * se1);
    CHECK(std::abs(oracles::mean(run.q2)) < 3.0 * se2);
    std::vector<double> sq1(run.q1.size()), sq2(run.q2.size());
    std::transform(run.q1.begin(), run.q1.end(), sq1.begin(), [](double v) { return v * v; });
    std::transform(run.q2.begin(), run.q2.end(), sq2.begin(), [](double v) { return v * v; });
    CHECK(std::abs(oracles::mean(sq1) - 1.0) < 3.0 * oracles::batch_means_se(sq1));
    CHECK(std::abs(oracles::mean(sq2) - 1.0) < 3.0 * oracles::batch_means_se(sq2));
    // Energy errors stay well under a nat at conservative step sizes.
    CHECK(oracles::mean(run.abs_dh_accepted) < 1.0);
    const auto long_traj = run_gaussian(0.5, 50, 20000, 17);
    CHECK(oracles::mean(long_traj.abs_dh_accepted) < 1.0);
}

TEST_CASE("acceptance rate decays with the step-size factor") {
    const double grid[] = {0.25, 0.5, 0.8, 1.2};
    double prev = 2.0;
    for (double eps : grid) {
        const auto run = run_gaussian(eps, 50, 20000, 7);
        CHECK(run.accept_rate <= prev + 0.02);
        prev = run.accept_rate;
    }
}

TEST_CASE("step-size factor can be tuned into the intended acceptance band") {
    // On a real posterior (toy data, n=100) some factor in [0.1, 1] must
    // land the sampling-phase acceptance rate in [0.55, 0.85]. The rate is
    // extremely sharp in the factor here (0.99 at 0.1, under 0.01 by 0.4):
    // the curvature proxy tracks only the prior term, so trajectories
    // destabilize quickly once the factor outgrows the likelihood scale.
    const auto data = toy_standardized(100, 21);
    bool in_band = false;
    for (double eps : {0.1, 0.25, 0.4}) {
        SamplerConfig cfg;
        cfg.epsilon_adjust = eps;
        cfg.update_fraction = 1.0;
        cfg.n_burnin_iters = 500;
        cfg.n_sampling_iters = 4000;
        cfg.thin = 10;
        cfg.seed = 31;
        const auto res = fbrht::run_chain(data, ModelConfig{}, cfg);
        if (res.accept_rate >= 0.55 && res.accept_rate <= 0.85) in_band = true;
    }
    CHECK(in_band);
}

TEST_CASE("one-feature chain matches an independent random-walk sampler") {
    // Same posterior, two unrelated transition kernels: the library's
    // variance-refresh + Hamiltonian move against a plain random-walk
    // Metropolis with its own arctan link and inverse-gamma draws. The
    // thinned beta_1 margins must agree (two-sample KS at the 1% level).
    const int n = 25;
    Dataset d;
    d.X.resize(n, 1);
    d.y.resize(n);
    std::mt19937_64 gen(2024);
    std::normal_distribution<double> nd(0.0, 1.0);
    for (int i = 0; i < n; ++i) {
        d.y[i] = i % 2;
        d.X(i, 0) = 1.5 * d.y[i] + nd(gen);
    }
    fbrht::ensure_feature_labels(d);
    const auto sd = fbrht::standardize(d).first;

    SamplerConfig cfg;
    cfg.update_fraction = 1.0;
    cfg.n_burnin_iters = 2000;
    cfg.n_sampling_iters = 100000;
    cfg.thin = 50;
    cfg.seed = 12;
    const auto lib = fbrht::run_chain(sd, ModelConfig{}, cfg);
    std::vector<double> lib_draws(lib.draws.cols());
    for (Eigen::Index r = 0; r < lib.draws.cols(); ++r) lib_draws[r] = lib.draws(0, r);

    const double omega1 = std::exp(-10.0);
    const auto log_t_cdf = [](double z) {
        const double s = z / std::sqrt(0.5);
        return std::log(0.5 + std::atan(s) / std::numbers::pi);
    };
    const auto log_post = [&](double b0, double b1, double lam) {
        double lp = 0.0;
        for (int i = 0; i < n; ++i) {
            const double eta = b0 + sd.X(i, 0) * b1;
            lp += sd.y[i] == 1.0 ? log_t_cdf(eta) : log_t_cdf(-eta);
        }
        return lp - b1 * b1 / (2.0 * lam) - b0 * b0 / 200.0;
    };
    std::mt19937_64 orng(77);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double b0 = 0.0, b1 = 0.0, lam = omega1;
    std::vector<double> oracle_draws;
    const int oracle_iters = 400000, oracle_thin = 200, oracle_burn = 4000;
    for (int it = 0; it < oracle_iters; ++it) {
        std::gamma_distribution<double> gamma(1.0, 1.0);
        double g = gamma(orng);
        while (g == 0.0) g = gamma(orng);
        lam = 0.5 * (omega1 + b1 * b1) / g;
        const double p0 = b0 + 0.5 * nd(orng);
        const double p1 = b1 + 0.5 * nd(orng);
        if (std::log(unif(orng)) < log_post(p0, p1, lam) - log_post(b0, b1, lam)) {
            b0 = p0;
            b1 = p1;
        }
        if (it >= oracle_burn && (it - oracle_burn) % oracle_thin == 0)
            oracle_draws.push_back(b1);
    }
    const double dks = oracles::ks_statistic(lib_draws, oracle_draws);
    CHECK(dks < oracles::ks_crit_01(lib_draws.size(), oracle_draws.size()));
}

TEST_CASE("variance refresh survives a rejected coefficient move") {
    const auto data = toy_standardized(60, 4);
    SamplerConfig cfg;
    cfg.epsilon_adjust = 60.0; // step size far beyond stability: certain rejection
    cfg.update_fraction = 1.0;
    GibbsSampler s(data, ModelConfig{}, cfg);
    SamplerState st = s.initial_state();
    std::mt19937_64 rng(8);
    int rejected = 0;
    for (int it = 0; it < 30; ++it) {
        const Eigen::VectorXd beta_before = st.beta;
        const Eigen::VectorXd lambda_before = st.lambda;
        const auto res = s.gibbs_iteration(st, Phase::sampling, rng);
        if (!res.accepted) {
            ++rejected;
            CHECK((st.beta - beta_before).cwiseAbs().maxCoeff() == 0.0);
        }
        // The variances always move (continuous draws) while the intercept
        // variance never does.
        CHECK((st.lambda.tail(2) - lambda_before.tail(2)).cwiseAbs().minCoeff() > 0.0);
        CHECK(st.lambda[0] == lambda_before[0]);
    }
    CHECK(rejected == 30);
}

TEST_CASE("cached predictor tracks the full recomputation") {
    const auto data = toy_standardized(100, 14);
    SamplerConfig cfg;
    GibbsSampler s(data, ModelConfig{}, cfg);
    SamplerState st = s.initial_state();
    std::mt19937_64 rng(9);
    for (int it = 0; it < 1000; ++it) s.gibbs_iteration(st, Phase::sampling, rng);
    const Eigen::VectorXd full = s.design() * st.beta;
    CHECK((full - st.eta).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("caching mode matches full recomputation from a shared state") {
    // From any common state, one iteration under the incremental predictor
    // and one under full recomputation must agree: same accept decision,
    // same energy error, same coefficients. Long trajectories amplify the
    // last-bit difference in the frozen predictor chaotically (measured up
    // to several nats through 50 leapfrog steps), so the comparison uses
    // short, numerically stable trajectories; distributional equivalence of
    // long-trajectory chains is checked separately below.
    const auto data = toy_standardized(80, 33);
    SamplerConfig cached_cfg;
    cached_cfg.l_sampling = 5;
    SamplerConfig fresh_cfg = cached_cfg;
    fresh_cfg.recompute_eta = true;
    GibbsSampler cached(data, ModelConfig{}, cached_cfg);
    GibbsSampler fresh(data, ModelConfig{}, fresh_cfg);
    SamplerState sc = cached.initial_state();
    std::mt19937_64 rc(55);
    for (int it = 0; it < 3000; ++it) {
        SamplerState sf = sc;   // resynchronize
        std::mt19937_64 rf = rc;
        const auto a = cached.gibbs_iteration(sc, Phase::sampling, rc);
        const auto b = fresh.gibbs_iteration(sf, Phase::sampling, rf);
        REQUIRE(a.accepted == b.accepted);
        CHECK(std::abs(a.delta_h - b.delta_h) < 1e-9);
        CHECK((sc.beta - sf.beta).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("caching mode leaves the sampled distribution unchanged") {
    // Full chains with long trajectories cannot stay in numerical lockstep
    // across modes, but they sample the same posterior: acceptance rates
    // and group-level coefficient magnitudes must agree statistically.
    auto d = fbrht::gen_independent_groups(150, 77, 4, 12);
    fbrht::ensure_feature_labels(d);
    const auto sd = fbrht::standardize(d).first;
    SamplerConfig c1;
    c1.update_fraction = 0.34; // top 4 of 12 plus the intercept
    c1.n_burnin_iters = 800;
    c1.n_sampling_iters = 6000;
    c1.thin = 10;
    c1.seed = 9;
    SamplerConfig c2 = c1;
    c2.recompute_eta = true;
    const auto A = fbrht::run_chain(sd, ModelConfig{}, c1);
    const auto B = fbrht::run_chain(sd, ModelConfig{}, c2);
    CHECK(std::abs(A.accept_rate - B.accept_rate) < 0.05);
    for (int g = 1; g <= 3; ++g) {
        double sa = 0.0, sb = 0.0;
        for (Eigen::Index j = 0; j < sd.p(); ++j) {
            if (fbrht::group_of_feature(sd.feature_ids[j], 4) != g) continue;
            sa += A.draws.row(j).cwiseAbs().mean();
            sb += B.draws.row(j).cwiseAbs().mean();
        }
        CHECK(std::abs(sa - sb) / std::max(sa, 0.05) < 0.35);
    }
}

TEST_CASE("chain runs are deterministic and validated") {
    const auto data = toy_standardized(50, 2);
    SamplerConfig cfg;
    cfg.n_burnin_iters = 100;
    cfg.n_sampling_iters = 400;
    cfg.thin = 10;
    cfg.seed = 77;
    const auto a = fbrht::run_chain(data, ModelConfig{}, cfg);
    const auto b = fbrht::run_chain(data, ModelConfig{}, cfg);
    REQUIRE(a.draws.cols() == 40);
    REQUIRE(a.draws.rows() == 2);
    REQUIRE(a.intercept_draws.size() == 40);
    CHECK((a.draws - b.draws).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.intercept_draws - b.intercept_draws).cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.accept_rate == b.accept_rate);
    cfg.seed = 78;
    const auto c = fbrht::run_chain(data, ModelConfig{}, cfg);
    CHECK((a.draws - c.draws).cwiseAbs().maxCoeff() > 0.0);

    Dataset tiny;
    tiny.X = Eigen::MatrixXd::Zero(1, 1);
    tiny.y = Eigen::VectorXd::Zero(1);
    CHECK_THROWS(fbrht::run_chain(tiny, ModelConfig{}, cfg));
    Dataset oneclass = data;
    oneclass.y.setOnes();
    CHECK_THROWS(fbrht::run_chain(oneclass, ModelConfig{}, cfg));
}

TEST_CASE("toy posterior concentrates on two single-feature modes") {
    // With two near-duplicate features every coefficient updates every
    // iteration (a 10% restricted update would freeze the smaller one:
    // entering the update set would require its fresh prior variance to
    // beat the dominant one's, a ~3e-5 tail event per iteration).
    const auto data = toy_standardized(100, 7);
    SamplerConfig cfg;
    cfg.update_fraction = 1.0;
    cfg.n_burnin_iters = 2000;
    cfg.n_sampling_iters = 12000;
    cfg.thin = 10;
    cfg.seed = 5;
    const auto res = fbrht::run_chain(data, ModelConfig{}, cfg);
    int side1 = 0, side2 = 0, switches = 0, prev = -1;
    std::vector<double> a1, a2;
    for (Eigen::Index r = 0; r < res.draws.cols(); ++r) {
        const double b1 = std::abs(res.draws(0, r));
        const double b2 = std::abs(res.draws(1, r));
        const int side = b1 > b2 ? 0 : 1;
        (side == 0 ? side1 : side2)++;
        if (prev >= 0 && side != prev) ++switches;
        prev = side;
        a1.push_back(b1);
        a2.push_back(b2);
    }
    const double total = static_cast<double>(res.draws.cols());
    // Both modes get visited a substantial share of the time, with real
    // back-and-forth rather than one lucky excursion...
    CHECK(side1 / total > 0.25);
    CHECK(side2 / total > 0.25);
    CHECK(switches >= 5);
    // ...and the magnitudes are anti-correlated: when one coefficient is
    // large the other hugs zero.
    const double n = total;
    double m1 = 0, m2 = 0;
    for (double v : a1) m1 += v;
    for (double v : a2) m2 += v;
    m1 /= n;
    m2 /= n;
    double cov = 0, v1 = 0, v2 = 0;
    for (std::size_t i = 0; i < a1.size(); ++i) {
        cov += (a1[i] - m1) * (a2[i] - m2);
        v1 += (a1[i] - m1) * (a1[i] - m1);
        v2 += (a2[i] - m2) * (a2[i] - m2);
    }
    CHECK(cov / std::sqrt(v1 * v2) < -0.2);
}

TEST_CASE("pure-noise labels keep coefficients pinned near zero") {
    Dataset d;
    const int n = 100, p = 10;
    d.X.resize(n, p);
    d.y.resize(n);
    std::mt19937_64 gen(41);
    std::normal_distribution<double> nd(0.0, 1.0);
    for (int i = 0; i < n; ++i) {
        d.y[i] = i % 2;
        for (int j = 0; j < p; ++j) d.X(i, j) = nd(gen);
    }
    fbrht::ensure_feature_labels(d);
    const auto sd = fbrht::standardize(d).first;
    SamplerConfig cfg;
    cfg.n_burnin_iters = 500;
    cfg.n_sampling_iters = 4000;
    cfg.thin = 10;
    cfg.seed = 3;
    const auto res = fbrht::run_chain(sd, ModelConfig{}, cfg);
    // Slope draws should live at the scale of the prior, far below the
    // signal scale: 95% within the |Cauchy(0, e^-5)| upper-2% quantile.
    const double bound = fbrht::cauchy_abs_upper_quantile(0.02, std::exp(-5.0));
    long below = 0;
    for (Eigen::Index j = 0; j < res.draws.rows(); ++j)
        for (Eigen::Index r = 0; r < res.draws.cols(); ++r)
            if (std::abs(res.draws(j, r)) < bound) ++below;
    const double frac =
        static_cast<double>(below) / static_cast<double>(res.draws.size());
    CHECK(frac >= 0.95);
}

TEST_CASE("two-stage pass-through when no screening is needed") {
    const auto data = toy_standardized(50, 16);
    SamplerConfig cfg;
    cfg.n_burnin_iters = 100;
    cfg.n_sampling_iters = 300;
    cfg.thin = 10;
    cfg.seed = 4;
    cfg.p_star = 100; // p = 2 <= p_star
    const auto ts = fbrht::run_two_stage(data, ModelConfig{}, cfg);
    CHECK(ts.stage1_means.size() == 0);
    CHECK(ts.selected == std::vector<int>{0, 1});
    // The pass-through chain is the plain chain under the stage-2 stream.
    SamplerConfig c2 = cfg;
    c2.seed = fbrht::derive_seed(cfg.seed, 2);
    const auto direct = fbrht::run_chain(data, ModelConfig{}, c2);
    CHECK((ts.stage2.draws - direct.draws).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("two-stage screening keeps signal features and maps columns back") {
    int captured = 0;
    const int reps = 3;
    for (int rep = 0; rep < reps; ++rep) {
        auto d = fbrht::gen_independent_groups(200, 100 + rep, 5, 60);
        fbrht::ensure_feature_labels(d);
        const auto sd = fbrht::standardize(d).first;
        SamplerConfig cfg;
        cfg.n_burnin_iters = 200;
        cfg.n_sampling_iters = 1000;
        cfg.thin = 10;
        cfg.seed = 900 + rep;
        cfg.p_star = 10;
        const auto ts = fbrht::run_two_stage(sd, ModelConfig{}, cfg);
        REQUIRE(ts.selected.size() == 10);
        REQUIRE(ts.stage1_means.size() == 60);
        // Column mapping round-trips.
        for (std::size_t k = 0; k < ts.selected.size(); ++k) {
            CHECK((ts.stage2_data.X.col(k) - sd.X.col(ts.selected[k])).cwiseAbs().maxCoeff() ==
                  0.0);
            CHECK(ts.stage2_data.feature_ids[k] == sd.feature_ids[ts.selected[k]]);
        }
        CHECK(std::is_sorted(ts.selected.begin(), ts.selected.end()));
        // Group coverage: at least one selected feature in each signal group.
        bool g[4] = {false, false, false, false};
        for (int col : ts.selected) {
            const int grp = fbrht::group_of_feature(sd.feature_ids[col], 5);
            if (grp >= 1 && grp <= 3) g[grp] = true;
        }
        if (g[1] && g[2] && g[3]) ++captured;
    }
    CHECK(captured >= 2);
}
