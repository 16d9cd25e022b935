#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fbrht/data.hpp"
#include "fbrht/sampler.hpp"

namespace fbrht {

/// Header of a stored sample file.
struct SampleFileMeta {
    std::uint64_t p = 0;
    std::uint64_t r = 0;
    std::uint64_t seed = 0;
    std::uint64_t digest = 0;
    double accept_rate = 0.0;
    std::vector<int> feature_ids;
};

struct LoadedSamples {
    SampleMatrix samples;
    SampleFileMeta meta;
};

/// FNV-1a 64-bit hash.
std::uint64_t fnv1a64(const void* data, std::size_t len,
                      std::uint64_t h = 0xcbf29ce484222325ULL);

/// Hash of the run configuration and the raw training data a sample file
/// was produced from. Downstream commands recompute it from their own
/// inputs so mismatched settings fail loudly instead of silently.
std::uint64_t config_digest(const ModelConfig& model, const SamplerConfig& config,
                            const Dataset& raw_data);

/// Binary layout, all little-endian:
///   magic "FBRHT1", u16 version, u64 p, u64 r, u64 seed, u64 digest,
///   f64 accept_rate, u32 feature_ids[p], f64 draws[p*r] column-major,
///   f64 intercept_draws[r].
void save_samples(const std::string& path, const SampleMatrix& samples,
                  const std::vector<int>& feature_ids, std::uint64_t seed,
                  std::uint64_t digest);

/// Read a sample file back; when expect_digest is given, a stored digest
/// that differs raises an error.
LoadedSamples load_samples(const std::string& path,
                           std::optional<std::uint64_t> expect_digest = std::nullopt);

} // namespace fbrht
