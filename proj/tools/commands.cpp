#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include <fbrht/csv_io.hpp>
#include <fbrht/datagen.hpp>
#include <fbrht/metrics.hpp>
#include <fbrht/plr.hpp>
#include <fbrht/prediction.hpp>
#include <fbrht/sample_io.hpp>
#include <fbrht/subsets.hpp>

#include "report.hpp"

namespace fbrht::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using report::fmt;
using report::join_ids;
using report::metric_json;

/// Removes every tracked path unless the command commits, so a failed run
/// never leaves half-written outputs behind.
class OutputGuard {
public:
    std::string track(const fs::path& p) {
        paths_.push_back(p);
        return p.string();
    }
    void commit() { committed_ = true; }
    ~OutputGuard() {
        if (committed_) return;
        for (const auto& p : paths_) {
            std::error_code ec;
            fs::remove(p, ec);
        }
    }

private:
    std::vector<fs::path> paths_;
    bool committed_ = false;
};

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

fs::path prepare_out_dir(const std::string& dir) {
    if (dir.empty()) throw std::invalid_argument("--out directory is required");
    fs::path p(dir);
    fs::create_directories(p);
    return p;
}

Dataset load_labeled(const std::string& path) {
    Dataset d = load_csv(path);
    ensure_feature_labels(d);
    return d;
}

std::pair<Dataset, Dataset> split_rows(const Dataset& d, int n_train) {
    if (n_train < 1 || n_train > d.n())
        throw std::invalid_argument("training split must leave at least one row");
    Dataset train, test;
    train.X = d.X.topRows(n_train);
    train.y = d.y.head(n_train);
    test.X = d.X.bottomRows(d.n() - n_train);
    test.y = d.y.tail(d.n() - n_train);
    train.feature_ids = test.feature_ids = d.feature_ids;
    train.feature_names = test.feature_names = d.feature_names;
    return {std::move(train), std::move(test)};
}

/// Index-sharded worker pool; the first failure wins and is rethrown.
void run_parallel(int n_tasks, int workers, const std::function<void(int)>& fn) {
    workers = std::max(1, std::min(workers, n_tasks));
    if (workers == 1) {
        for (int i = 0; i < n_tasks; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i; (i = next.fetch_add(1)) < n_tasks;) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!err) err = std::current_exception();
                    return;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

struct Extraction {
    std::vector<FeatureSubsetReport> reports;
    long retained = 0;
    double empty_fraction = 0.0;
    long switches = 0;
    long unique_modes = 0;
    long transitions = 0;
};

Extraction extract_from(const SampleMatrix& samples, const std::vector<int>& feature_ids,
                        double rel_threshold, double min_freq) {
    Extraction ex;
    IndicatorMatrix ind = binarize_samples(samples.draws, rel_threshold);
    ind = filter_low_frequency(ind, min_freq);
    ex.reports = enumerate_subsets(ind, feature_ids);
    ex.retained = ind.cols();
    double total = 0.0;
    for (const auto& r : ex.reports) total += r.freq;
    ex.empty_fraction = std::max(0.0, 1.0 - total);
    if (ind.cols() >= 2) {
        const auto ids = column_subset_ids(ind);
        const auto st = mode_switch_stats(ids);
        ex.switches = st.switch_count;
        ex.unique_modes = st.n_unique_modes;
        ex.transitions = static_cast<long>(ids.size()) - 1;
    }
    return ex;
}

/// Leave-one-out metrics for the most frequent subsets, in parallel.
void fill_cv_metrics(std::vector<FeatureSubsetReport>& reports, const Dataset& std_train,
                     int max_subsets, int workers) {
    const int k = static_cast<int>(
        std::min<std::size_t>(reports.size(), static_cast<std::size_t>(std::max(0, max_subsets))));
    run_parallel(k, workers, [&](int i) {
        const MetricsTriple m = loocv_evaluate(std_train, reports[i].features);
        reports[i].cv_er = m.er;
        reports[i].cv_amlp = m.amlp;
        reports[i].cv_auc = m.auc;
    });
}

json subset_record(const FeatureSubsetReport& r) {
    json rec;
    rec["record"] = "subset";
    rec["features"] = r.features;
    rec["freq"] = r.freq;
    if (r.cv_er) rec["cv_er"] = metric_json(*r.cv_er);
    if (r.cv_amlp) rec["cv_amlp"] = metric_json(*r.cv_amlp);
    if (r.cv_auc) rec["cv_auc"] = metric_json(*r.cv_auc);
    return rec;
}

json switching_record(const Extraction& ex) {
    json rec;
    rec["record"] = "mode_switching";
    rec["switches"] = ex.switches;
    rec["transitions"] = ex.transitions;
    rec["unique_modes"] = ex.unique_modes;
    return rec;
}

void write_subset_table(std::ostream& out, const Extraction& ex, bool with_cv) {
    std::vector<std::string> headers = {"subset", "freq"};
    if (with_cv) {
        headers.push_back("cvER");
        headers.push_back("cvAMLP");
        headers.push_back("cvAUC");
    }
    report::TextTable table(headers);
    for (const auto& r : ex.reports) {
        std::vector<std::string> row = {join_ids(r.features), fmt(r.freq)};
        if (with_cv) {
            row.push_back(r.cv_er ? fmt(*r.cv_er) : "-");
            row.push_back(r.cv_amlp ? fmt(*r.cv_amlp) : "-");
            row.push_back(r.cv_auc ? fmt(*r.cv_auc) : "-");
        }
        table.add_row(std::move(row));
    }
    table.render(out);
    out << "retained samples: " << ex.retained
        << "  empty-selection fraction: " << fmt(ex.empty_fraction) << '\n';
    out << "mode switching: " << ex.switches << " of " << ex.transitions
        << " transitions, " << ex.unique_modes << " distinct patterns\n";
}

struct MethodOutcome {
    std::string method;
    std::vector<int> features; // empty for posterior averaging
    int n_features_used = 0;
    Eigen::VectorXd probs;
    MetricsTriple metrics;
};

json outcome_record(const MethodOutcome& o, bool with_probs) {
    json rec;
    rec["record"] = "prediction";
    rec["method"] = o.method;
    rec["n_features_used"] = o.n_features_used;
    if (!o.features.empty()) rec["features"] = o.features;
    rec["er"] = metric_json(o.metrics.er);
    rec["amlp"] = metric_json(o.metrics.amlp);
    rec["auc"] = metric_json(o.metrics.auc);
    if (with_probs) {
        rec["probs"] = std::vector<double>(o.probs.data(), o.probs.data() + o.probs.size());
    }
    return rec;
}

/// The three prediction modes on standardized test features. Extraction
/// must already carry cv metrics when "opt" is requested.
std::vector<MethodOutcome> run_predictions(const SampleMatrix& samples,
                                           const std::vector<int>& sample_ids,
                                           const Dataset& std_train,
                                           const Eigen::MatrixXd& X_test,
                                           const Eigen::VectorXd& y_test, const TParams& like,
                                           const Extraction& ex, bool want_avg, bool want_top,
                                           bool want_opt) {
    std::vector<MethodOutcome> out;
    if (want_avg) {
        const auto cols = columns_for_ids(std_train, sample_ids);
        Eigen::MatrixXd X_sel(X_test.rows(), static_cast<Eigen::Index>(cols.size()));
        for (std::size_t j = 0; j < cols.size(); ++j)
            X_sel.col(static_cast<Eigen::Index>(j)) = X_test.col(cols[j]);
        MethodOutcome o;
        o.method = "FBRHTavg";
        o.n_features_used = static_cast<int>(sample_ids.size());
        o.probs = predict_avg(samples, X_sel, like);
        o.metrics = compute_metrics(o.probs, y_test);
        out.push_back(std::move(o));
    }
    if (want_top) {
        const auto& top = select_top_subset(ex.reports);
        MethodOutcome o;
        o.method = "FBRHTtop";
        o.features = top.features;
        o.n_features_used = static_cast<int>(top.features.size());
        o.probs = predict_with_subset(std_train, top.features, X_test);
        o.metrics = compute_metrics(o.probs, y_test);
        out.push_back(std::move(o));
    }
    if (want_opt) {
        const auto& opt = select_opt_subset(ex.reports);
        MethodOutcome o;
        o.method = "FBRHTopt";
        o.features = opt.features;
        o.n_features_used = static_cast<int>(opt.features.size());
        o.probs = predict_with_subset(std_train, opt.features, X_test);
        o.metrics = compute_metrics(o.probs, y_test);
        out.push_back(std::move(o));
    }
    return out;
}

Dataset generate(const std::string& kind, int n, std::uint64_t seed,
                 const std::optional<int>& group_size, const std::optional<int>& p) {
    if (kind == "toy") {
        if (group_size || p)
            throw std::invalid_argument("the toy generator has a fixed two-feature design");
        return gen_toy(n, seed);
    }
    if (kind == "independent-groups")
        return gen_independent_groups(n, seed, group_size.value_or(10), p.value_or(200));
    if (kind == "correlated-groups")
        return gen_correlated_groups(n, seed, group_size.value_or(20), p.value_or(200));
    throw std::invalid_argument("unknown generator: " + kind);
}

std::vector<int> dropped_ids(const Dataset& raw, const Standardizer& tr) {
    std::vector<int> ids;
    for (int col : tr.dropped) ids.push_back(raw.feature_ids[static_cast<std::size_t>(col)]);
    return ids;
}

} // namespace

void cmd_simulate(const SimulateOptions& opts) {
    const fs::path dir = prepare_out_dir(opts.out_dir);
    if (opts.n_train < 2) throw std::invalid_argument("--n-train must be at least 2");
    if (opts.n_test < 0) throw std::invalid_argument("--n-test cannot be negative");

    const Dataset all =
        generate(opts.generator, opts.n_train + opts.n_test, opts.seed, opts.group_size, opts.p);
    OutputGuard guard;
    const std::string train_path = guard.track(dir / "train.csv");
    const std::string meta_path = guard.track(dir / "simulate.jsonl");

    json rec;
    rec["record"] = "simulate";
    rec["generator"] = opts.generator;
    rec["n_train"] = opts.n_train;
    rec["n_test"] = opts.n_test;
    rec["p"] = all.p();
    if (opts.generator != "toy")
        rec["group_size"] = opts.group_size.value_or(opts.generator == "correlated-groups" ? 20 : 10);
    rec["seed"] = opts.seed;

    if (opts.n_test == 0) {
        save_csv(all, train_path);
    } else {
        const auto [train, test] = split_rows(all, opts.n_train);
        save_csv(train, train_path);
        save_csv(test, guard.track(dir / "test.csv"));
    }
    report::JsonlWriter meta(meta_path);
    meta.write(rec);
    guard.commit();
    std::cout << "wrote " << opts.n_train << " training and " << opts.n_test
              << " test cases with " << all.p() << " features under " << dir.string() << '\n';
}

void cmd_fit(const FitOptions& opts) {
    const fs::path dir = prepare_out_dir(opts.out_dir);
    const Dataset raw = load_labeled(opts.data_path);
    const std::uint64_t digest = config_digest(opts.run.model, opts.run.sampler, raw);
    const auto [std_train, tr] = standardize(raw);

    const TwoStageResult result = run_two_stage(std_train, opts.run.model, opts.run.sampler);

    OutputGuard guard;
    const std::string samples_path = guard.track(dir / "samples.bin");
    const std::string meta_path = guard.track(dir / "fit.jsonl");
    save_samples(samples_path, result.stage2, result.stage2_data.feature_ids,
                 opts.run.sampler.seed, digest);

    json rec;
    rec["record"] = "fit";
    rec["n"] = raw.n();
    rec["p_raw"] = raw.p();
    rec["p_standardized"] = std_train.p();
    rec["p_sampled"] = result.stage2_data.p();
    rec["stage1_used"] = result.stage1_means.size() > 0;
    rec["sampled_features"] = result.stage2_data.feature_ids;
    rec["dropped_columns"] = dropped_ids(raw, tr);
    rec["accept_rate"] = result.stage2.accept_rate;
    rec["retained_draws"] = result.stage2.draws.cols();
    rec["seed"] = opts.run.sampler.seed;
    rec["digest"] = report::hex64(digest);
    report::JsonlWriter meta(meta_path);
    meta.write(rec);
    guard.commit();
    std::cout << "sampled " << result.stage2_data.p() << " features, retained "
              << result.stage2.draws.cols() << " draws, acceptance "
              << fmt(result.stage2.accept_rate) << '\n';
}

void cmd_extract(const ExtractOptions& opts) {
    const fs::path dir = prepare_out_dir(opts.out_dir);
    const LoadedSamples loaded = load_samples(opts.samples_path);
    const Extraction ex = extract_from(loaded.samples, loaded.meta.feature_ids,
                                       opts.rel_threshold, opts.min_freq);

    OutputGuard guard;
    const std::string jsonl_path = guard.track(dir / "subsets.jsonl");
    const std::string text_path = guard.track(dir / "subsets.txt");
    {
        report::JsonlWriter out(jsonl_path);
        for (const auto& r : ex.reports) out.write(subset_record(r));
        out.write(switching_record(ex));
        json summary;
        summary["record"] = "summary";
        summary["retained"] = ex.retained;
        summary["empty_fraction"] = ex.empty_fraction;
        summary["n_subsets"] = ex.reports.size();
        out.write(summary);
    }
    {
        std::ofstream out(text_path);
        if (!out) throw std::runtime_error("cannot write " + text_path);
        write_subset_table(out, ex, false);
        if (!out) throw std::runtime_error("write failed: " + text_path);
    }
    guard.commit();
    std::cout << ex.reports.size() << " distinct subsets over " << ex.retained
              << " retained draws\n";
}

void cmd_evaluate(const EvaluateOptions& opts) {
    const fs::path dir = prepare_out_dir(opts.out_dir);
    const Dataset raw = load_labeled(opts.data_path);
    const std::uint64_t digest = config_digest(opts.run.model, opts.run.sampler, raw);
    const LoadedSamples loaded = load_samples(opts.samples_path, digest);
    const auto [std_train, tr] = standardize(raw);

    Extraction ex = extract_from(loaded.samples, loaded.meta.feature_ids, opts.rel_threshold,
                                 opts.min_freq);
    fill_cv_metrics(ex.reports, std_train, opts.max_subsets, resolve_workers(opts.workers));

    OutputGuard guard;
    const std::string jsonl_path = guard.track(dir / "evaluation.jsonl");
    const std::string text_path = guard.track(dir / "evaluation.txt");
    {
        report::JsonlWriter out(jsonl_path);
        for (const auto& r : ex.reports) out.write(subset_record(r));
        out.write(switching_record(ex));
    }
    {
        std::ofstream out(text_path);
        if (!out) throw std::runtime_error("cannot write " + text_path);
        write_subset_table(out, ex, true);
        if (!out) throw std::runtime_error("write failed: " + text_path);
    }
    guard.commit();
    const int evaluated = static_cast<int>(
        std::min<std::size_t>(ex.reports.size(), static_cast<std::size_t>(opts.max_subsets)));
    std::cout << "evaluated " << evaluated << " of " << ex.reports.size()
              << " subsets by leave-one-out cross-validation\n";
}

void cmd_predict(const PredictOptions& opts) {
    const fs::path dir = prepare_out_dir(opts.out_dir);
    const Dataset raw_train = load_labeled(opts.train_path);
    const Dataset raw_test = load_labeled(opts.test_path);
    if (raw_test.p() != raw_train.p())
        throw std::invalid_argument("test data has " + std::to_string(raw_test.p()) +
                                    " features, training data has " +
                                    std::to_string(raw_train.p()));
    const std::uint64_t digest = config_digest(opts.run.model, opts.run.sampler, raw_train);
    const LoadedSamples loaded = load_samples(opts.samples_path, digest);
    const auto [std_train, tr] = standardize(raw_train);
    const Eigen::MatrixXd X_test = tr.apply(raw_test.X);

    const bool want_avg = opts.method == "all" || opts.method == "avg";
    const bool want_top = opts.method == "all" || opts.method == "top";
    const bool want_opt = opts.method == "all" || opts.method == "opt";

    Extraction ex;
    if (want_top || want_opt) {
        ex = extract_from(loaded.samples, loaded.meta.feature_ids, opts.rel_threshold,
                          opts.min_freq);
        if (ex.reports.empty())
            throw std::runtime_error(
                "no nonempty feature subsets in the samples; only avg prediction is possible");
        if (want_opt)
            fill_cv_metrics(ex.reports, std_train, opts.max_subsets,
                            resolve_workers(opts.workers));
    }
    const auto outcomes =
        run_predictions(loaded.samples, loaded.meta.feature_ids, std_train, X_test, raw_test.y,
                        opts.run.model.likelihood, ex, want_avg, want_top, want_opt);

    OutputGuard guard;
    const std::string jsonl_path = guard.track(dir / "predictions.jsonl");
    const std::string text_path = guard.track(dir / "predictions.txt");
    {
        report::JsonlWriter out(jsonl_path);
        for (const auto& o : outcomes) out.write(outcome_record(o, true));
    }
    {
        std::ofstream out(text_path);
        if (!out) throw std::runtime_error("cannot write " + text_path);
        report::TextTable table({"method", "features", "used", "ER", "AMLP", "AUC"});
        for (const auto& o : outcomes)
            table.add_row({o.method, o.features.empty() ? "-" : join_ids(o.features),
                           std::to_string(o.n_features_used), fmt(o.metrics.er),
                           fmt(o.metrics.amlp), fmt(o.metrics.auc)});
        table.render(out);
        if (!out) throw std::runtime_error("write failed: " + text_path);
    }
    guard.commit();
    for (const auto& o : outcomes)
        std::cout << o.method << ": ER " << fmt(o.metrics.er) << ", AMLP "
                  << fmt(o.metrics.amlp) << ", AUC " << fmt(o.metrics.auc) << '\n';
}

namespace {

struct ReplicateResult {
    double accept_rate = 0.0;
    long p_sampled = 0;
    Extraction ex;
    std::vector<MethodOutcome> outcomes;
};

json replicate_record(int index, const ReplicateResult& r) {
    json rec;
    rec["record"] = "replicate";
    rec["index"] = index;
    rec["accept_rate"] = r.accept_rate;
    rec["p_sampled"] = r.p_sampled;
    rec["mode_switches"] = r.ex.switches;
    rec["transitions"] = r.ex.transitions;
    rec["unique_modes"] = r.ex.unique_modes;
    json methods = json::array();
    for (const auto& o : r.outcomes) methods.push_back(outcome_record(o, false));
    rec["methods"] = methods;
    return rec;
}

} // namespace

void cmd_benchmark(const BenchmarkOptions& opts) {
    const fs::path dir = prepare_out_dir(opts.out_dir);
    if (opts.replicates < 1) throw std::invalid_argument("--replicates must be at least 1");

    // preset scales; flags override
    int n_train = opts.n_train.value_or(opts.preset == "toy" ? 100 : 200);
    int n_test = opts.n_test.value_or(1000);
    SamplerConfig base = opts.run.sampler;
    if (opts.update_fraction) {
        base.update_fraction = *opts.update_fraction;
    } else if (opts.preset == "toy") {
        // with two near-duplicate features a restricted update cannot hop
        // between the single-feature modes, so the toy preset moves them all
        base.update_fraction = 1.0;
    }
    if (n_train < 2) throw std::invalid_argument("--n-train must be at least 2");
    if (n_test < 1) throw std::invalid_argument("--n-test must be at least 1");

    const int R = opts.replicates;
    std::vector<ReplicateResult> results(static_cast<std::size_t>(R));
    run_parallel(R, resolve_workers(opts.workers), [&](int idx) {
        const std::uint64_t rep = static_cast<std::uint64_t>(idx) + 1;
        const std::uint64_t data_seed = derive_seed(opts.run.sampler.seed, 2 * rep);
        SamplerConfig chain = base;
        chain.seed = derive_seed(opts.run.sampler.seed, 2 * rep + 1);

        Dataset all = generate(opts.preset, n_train + n_test, data_seed, opts.group_size, opts.p);
        ensure_feature_labels(all);
        const auto [train, test] = split_rows(all, n_train);
        const auto [std_train, tr] = standardize(train);
        const Eigen::MatrixXd X_test = tr.apply(test.X);

        const TwoStageResult fit = run_two_stage(std_train, opts.run.model, chain);
        ReplicateResult r;
        r.accept_rate = fit.stage2.accept_rate;
        r.p_sampled = fit.stage2_data.p();
        r.ex = extract_from(fit.stage2, fit.stage2_data.feature_ids, 0.1, 0.05);
        if (r.ex.reports.empty())
            throw std::runtime_error("replicate " + std::to_string(rep) +
                                     " produced no nonempty feature subsets");
        fill_cv_metrics(r.ex.reports, std_train, opts.max_eval_subsets, 1);
        r.outcomes = run_predictions(fit.stage2, fit.stage2_data.feature_ids, std_train, X_test,
                                     test.y, opts.run.model.likelihood, r.ex, true, true, true);
        results[static_cast<std::size_t>(idx)] = std::move(r);
    });

    OutputGuard guard;
    const std::string jsonl_path = guard.track(dir / "benchmark.jsonl");
    const std::string text_path = guard.track(dir / "benchmark.txt");

    report::JsonlWriter out(jsonl_path);
    {
        json rec;
        rec["record"] = "config";
        rec["preset"] = opts.preset;
        rec["replicates"] = R;
        rec["n_train"] = n_train;
        rec["n_test"] = n_test;
        if (opts.preset != "toy") {
            rec["group_size"] =
                opts.group_size.value_or(opts.preset == "correlated-groups" ? 20 : 10);
            rec["p"] = opts.p.value_or(200);
        }
        rec["update_fraction"] = base.update_fraction;
        rec["seed"] = opts.run.sampler.seed;
        rec["max_eval_subsets"] = opts.max_eval_subsets;
        out.write(rec);
    }
    for (int i = 0; i < R; ++i)
        out.write(replicate_record(i + 1, results[static_cast<std::size_t>(i)]));

    // aggregate by method, position-matched across replicates
    const std::size_t n_methods = results[0].outcomes.size();
    json agg;
    agg["record"] = "aggregate";
    agg["replicates"] = R;
    json agg_methods = json::array();
    struct Row {
        std::string method;
        double er = 0, amlp = 0, auc = 0, nf = 0;
    };
    std::vector<Row> rows(n_methods);
    for (std::size_t m = 0; m < n_methods; ++m) {
        rows[m].method = results[0].outcomes[m].method;
        for (const auto& r : results) {
            rows[m].er += r.outcomes[m].metrics.er;
            rows[m].amlp += r.outcomes[m].metrics.amlp;
            rows[m].auc += r.outcomes[m].metrics.auc;
            rows[m].nf += r.outcomes[m].n_features_used;
        }
        rows[m].er /= R;
        rows[m].amlp /= R;
        rows[m].auc /= R;
        rows[m].nf /= R;
        json mrec;
        mrec["method"] = rows[m].method;
        mrec["er"] = metric_json(rows[m].er);
        mrec["amlp"] = metric_json(rows[m].amlp);
        mrec["auc"] = metric_json(rows[m].auc);
        mrec["n_features_used"] = rows[m].nf;
        agg_methods.push_back(mrec);
    }
    agg["methods"] = agg_methods;
    out.write(agg);
    for (const auto& r : results[0].ex.reports) {
        json rec = subset_record(r);
        rec["replicate"] = 1;
        out.write(rec);
    }

    std::ofstream text(text_path);
    if (!text) throw std::runtime_error("cannot write " + text_path);
    text << "preset " << opts.preset << ", " << R << " replicates, seed "
         << opts.run.sampler.seed << "\n\n";
    {
        report::TextTable table(
            {"rep", "accept", "method", "subset", "used", "ER", "AMLP", "AUC"});
        for (int i = 0; i < R; ++i) {
            const auto& r = results[static_cast<std::size_t>(i)];
            for (const auto& o : r.outcomes)
                table.add_row({std::to_string(i + 1), fmt(r.accept_rate), o.method,
                               o.features.empty() ? "-" : join_ids(o.features),
                               std::to_string(o.n_features_used), fmt(o.metrics.er),
                               fmt(o.metrics.amlp), fmt(o.metrics.auc)});
        }
        table.render(text);
    }
    text << "\naverages over " << R << " replicates\n";
    {
        report::TextTable table({"method", "ER", "AMLP", "AUC", "features"});
        for (const auto& row : rows)
            table.add_row(
                {row.method, fmt(row.er), fmt(row.amlp), fmt(row.auc), fmt(row.nf, 1)});
        table.render(text);
    }
    text << "\nsubsets of replicate 1\n";
    write_subset_table(text, results[0].ex, true);
    if (!text) throw std::runtime_error("write failed: " + text_path);
    guard.commit();
    for (const auto& row : rows)
        std::cout << row.method << ": ER " << fmt(row.er) << ", AMLP " << fmt(row.amlp)
                  << ", AUC " << fmt(row.auc) << '\n';
}

} // namespace fbrht::cli
