#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <fbrht/prior.hpp>
#include <fbrht/sampler.hpp>

namespace fbrht::cli {

/// Model and sampler settings shared by every command that touches a chain
/// or verifies a sample file's digest.
struct RunSettings {
    ModelConfig model;
    SamplerConfig sampler;
};

struct SimulateOptions {
    std::string generator; // toy | independent-groups | correlated-groups
    int n_train = 100;
    int n_test = 1000;
    std::optional<int> group_size;
    std::optional<int> p;
    std::uint64_t seed = 1;
    std::string out_dir;
};

struct FitOptions {
    std::string data_path;
    RunSettings run;
    std::string out_dir;
};

struct ExtractOptions {
    std::string samples_path;
    double rel_threshold = 0.1;
    double min_freq = 0.05;
    std::string out_dir;
};

struct EvaluateOptions {
    std::string samples_path;
    std::string data_path;
    RunSettings run;
    double rel_threshold = 0.1;
    double min_freq = 0.05;
    int max_subsets = 25;
    int workers = 0; // 0 = one per core
    std::string out_dir;
};

struct PredictOptions {
    std::string samples_path;
    std::string train_path;
    std::string test_path;
    RunSettings run;
    std::string method = "all"; // all | avg | top | opt
    double rel_threshold = 0.1;
    double min_freq = 0.05;
    int max_subsets = 25;
    int workers = 0;
    std::string out_dir;
};

struct BenchmarkOptions {
    std::string preset; // toy | independent-groups | correlated-groups
    int replicates = 5;
    std::optional<int> n_train;
    std::optional<int> n_test;
    std::optional<int> group_size;
    std::optional<int> p;
    std::optional<double> update_fraction;
    RunSettings run;
    int max_eval_subsets = 25;
    int workers = 0;
    std::string out_dir;
};

void cmd_simulate(const SimulateOptions& opts);
void cmd_fit(const FitOptions& opts);
void cmd_extract(const ExtractOptions& opts);
void cmd_evaluate(const EvaluateOptions& opts);
void cmd_predict(const PredictOptions& opts);
void cmd_benchmark(const BenchmarkOptions& opts);

} // namespace fbrht::cli
