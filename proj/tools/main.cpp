#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

const std::vector<std::string> kGenerators = {"toy", "independent-groups", "correlated-groups"};

void add_sampler_options(CLI::App* cmd, fbrht::cli::RunSettings& run,
                         bool with_update_fraction = true) {
    cmd->add_option("--alpha0", run.model.likelihood.alpha, "degrees of freedom of the link t")
        ->capture_default_str();
    cmd->add_option("--omega0", run.model.likelihood.omega, "squared scale of the link t")
        ->capture_default_str();
    cmd->add_option("--alpha1", run.model.prior.alpha, "degrees of freedom of the coefficient prior")
        ->capture_default_str();
    cmd->add_option("--omega1", run.model.prior.omega, "squared scale of the coefficient prior")
        ->capture_default_str();
    cmd->add_option("--epsilon", run.sampler.epsilon_adjust, "global step-size factor")
        ->capture_default_str();
    cmd->add_option("--l-burnin", run.sampler.l_burnin, "leapfrog steps during burn-in")
        ->capture_default_str();
    cmd->add_option("--l-sampling", run.sampler.l_sampling, "leapfrog steps during sampling")
        ->capture_default_str();
    if (with_update_fraction)
        cmd->add_option("--update-fraction", run.sampler.update_fraction,
                        "share of coefficients moved per iteration")
            ->capture_default_str();
    cmd->add_option("--burnin", run.sampler.n_burnin_iters, "burn-in iterations")
        ->capture_default_str();
    cmd->add_option("--sampling", run.sampler.n_sampling_iters, "sampling iterations")
        ->capture_default_str();
    cmd->add_option("--thin", run.sampler.thin, "keep every thin-th sampling iteration")
        ->capture_default_str();
    cmd->add_option("--p-star", run.sampler.p_star, "feature budget before two-stage screening")
        ->capture_default_str();
    cmd->add_option("--seed", run.sampler.seed, "random seed")->capture_default_str();
    cmd->add_option("--lambda-intercept", run.sampler.lambda_intercept,
                    "fixed prior variance of the intercept")
        ->capture_default_str();
    cmd->add_flag("--recompute-eta", run.sampler.recompute_eta,
                  "rebuild the cached predictor every iteration (diagnostic)");
}

void add_extract_options(CLI::App* cmd, double& rel_threshold, double& min_freq) {
    cmd->add_option("--rel-threshold", rel_threshold,
                    "feature counts as used when |beta_j| exceeds this share of the largest |beta|")
        ->capture_default_str();
    cmd->add_option("--min-freq", min_freq, "drop features used in fewer than this share of draws")
        ->capture_default_str();
}

void add_workers_option(CLI::App* cmd, int& workers) {
    cmd->add_option("--workers", workers, "worker threads (0 = all hardware threads)")
        ->envname("FBRHT_WORKERS")
        ->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fully Bayesian robit classification with heavy-tailed shrinkage priors"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "fbrht 1.0.0");
    app.set_config("--config", "", "read options from a file with [subcommand] sections");
    app.allow_config_extras(false);

    fbrht::cli::SimulateOptions sim_opts;
    auto* sim = app.add_subcommand("simulate", "generate a synthetic train/test pair");
    sim->add_option("--generator", sim_opts.generator, "data generating scheme")
        ->required()
        ->check(CLI::IsMember(kGenerators));
    sim->add_option("--n-train", sim_opts.n_train, "training cases")->capture_default_str();
    sim->add_option("--n-test", sim_opts.n_test, "test cases")->capture_default_str();
    sim->add_option("--group-size", sim_opts.group_size, "features per group");
    sim->add_option("--p", sim_opts.p, "total number of features");
    sim->add_option("--seed", sim_opts.seed, "random seed")->capture_default_str();
    sim->add_option("--out", sim_opts.out_dir, "output directory")->required();

    fbrht::cli::FitOptions fit_opts;
    auto* fit = app.add_subcommand("fit", "draw posterior samples for a labeled data set");
    fit->add_option("--data", fit_opts.data_path, "training csv")
        ->required()
        ->check(CLI::ExistingFile);
    add_sampler_options(fit, fit_opts.run);
    fit->add_option("--out", fit_opts.out_dir, "output directory")->required();

    fbrht::cli::ExtractOptions ext_opts;
    auto* ext = app.add_subcommand("extract", "list the feature subsets visited by a sample file");
    ext->add_option("--samples", ext_opts.samples_path, "sample file from fit")
        ->required()
        ->check(CLI::ExistingFile);
    add_extract_options(ext, ext_opts.rel_threshold, ext_opts.min_freq);
    ext->add_option("--out", ext_opts.out_dir, "output directory")->required();

    fbrht::cli::EvaluateOptions eval_opts;
    auto* eval = app.add_subcommand("evaluate",
                                    "cross-validate the most frequent subsets on training data");
    eval->add_option("--samples", eval_opts.samples_path, "sample file from fit")
        ->required()
        ->check(CLI::ExistingFile);
    eval->add_option("--data", eval_opts.data_path, "training csv the samples were fit on")
        ->required()
        ->check(CLI::ExistingFile);
    add_sampler_options(eval, eval_opts.run);
    add_extract_options(eval, eval_opts.rel_threshold, eval_opts.min_freq);
    eval->add_option("--max-subsets", eval_opts.max_subsets, "cross-validate at most this many")
        ->capture_default_str();
    add_workers_option(eval, eval_opts.workers);
    eval->add_option("--out", eval_opts.out_dir, "output directory")->required();

    fbrht::cli::PredictOptions pred_opts;
    auto* pred = app.add_subcommand("predict", "predict test labels from posterior samples");
    pred->add_option("--samples", pred_opts.samples_path, "sample file from fit")
        ->required()
        ->check(CLI::ExistingFile);
    pred->add_option("--train", pred_opts.train_path, "training csv the samples were fit on")
        ->required()
        ->check(CLI::ExistingFile);
    pred->add_option("--test", pred_opts.test_path, "test csv")
        ->required()
        ->check(CLI::ExistingFile);
    add_sampler_options(pred, pred_opts.run);
    pred->add_option("--method", pred_opts.method, "prediction mode")
        ->check(CLI::IsMember({"all", "avg", "top", "opt"}))
        ->capture_default_str();
    add_extract_options(pred, pred_opts.rel_threshold, pred_opts.min_freq);
    pred->add_option("--max-subsets", pred_opts.max_subsets,
                     "cross-validate at most this many when picking the opt subset")
        ->capture_default_str();
    add_workers_option(pred, pred_opts.workers);
    pred->add_option("--out", pred_opts.out_dir, "output directory")->required();

    fbrht::cli::BenchmarkOptions bench_opts;
    auto* bench = app.add_subcommand("benchmark",
                                     "replicate a full simulate/fit/predict pipeline");
    bench->add_option("--preset", bench_opts.preset, "data generating scheme")
        ->required()
        ->check(CLI::IsMember(kGenerators));
    bench->add_option("--replicates", bench_opts.replicates, "independent replications")
        ->capture_default_str();
    bench->add_option("--n-train", bench_opts.n_train, "training cases (preset default)");
    bench->add_option("--n-test", bench_opts.n_test, "test cases (preset default)");
    bench->add_option("--group-size", bench_opts.group_size, "features per group");
    bench->add_option("--p", bench_opts.p, "total number of features");
    bench->add_option("--update-fraction", bench_opts.update_fraction,
                      "override the preset's update fraction");
    add_sampler_options(bench, bench_opts.run, false);
    bench->add_option("--max-eval-subsets", bench_opts.max_eval_subsets,
                      "cross-validate at most this many subsets per replicate")
        ->capture_default_str();
    add_workers_option(bench, bench_opts.workers);
    bench->add_option("--out", bench_opts.out_dir, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) fbrht::cli::cmd_simulate(sim_opts);
        if (fit->parsed()) fbrht::cli::cmd_fit(fit_opts);
        if (ext->parsed()) fbrht::cli::cmd_extract(ext_opts);
        if (eval->parsed()) fbrht::cli::cmd_evaluate(eval_opts);
        if (pred->parsed()) fbrht::cli::cmd_predict(pred_opts);
        if (bench->parsed()) fbrht::cli::cmd_benchmark(bench_opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
