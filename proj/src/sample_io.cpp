#include "fbrht/sample_io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little,
              "sample files are little-endian; big-endian hosts need byte swaps");

namespace fbrht {

namespace {

constexpr char kMagic[6] = {'F', 'B', 'R', 'H', 'T', '1'};
constexpr std::uint16_t kVersion = 1;

template <typename T>
void write_raw(std::ofstream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
void read_raw(std::ifstream& in, T& v, const std::string& path) {
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!in) throw std::runtime_error(path + ": truncated sample file");
}

void hash_text(std::uint64_t& h, const std::string& s) {
    h = fnv1a64(s.data(), s.size(), h);
}

} // namespace

std::uint64_t fnv1a64(const void* data, std::size_t len, std::uint64_t h) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= bytes[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t config_digest(const ModelConfig& model, const SamplerConfig& config,
                            const Dataset& raw_data) {
    std::ostringstream ss;
    char buf[64];
    const auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    ss << "alpha0=" << num(model.likelihood.alpha) << ";omega0=" << num(model.likelihood.omega)
       << ";alpha1=" << num(model.prior.alpha) << ";omega1=" << num(model.prior.omega)
       << ";epsilon=" << num(config.epsilon_adjust) << ";l1=" << config.l_burnin
       << ";l2=" << config.l_sampling << ";fraction=" << num(config.update_fraction)
       << ";burnin=" << config.n_burnin_iters << ";iters=" << config.n_sampling_iters
       << ";thin=" << config.thin << ";pstar=" << config.p_star << ";seed=" << config.seed
       << ";lambda0=" << num(config.lambda_intercept)
       << ";recompute=" << (config.recompute_eta ? 1 : 0) << ";n=" << raw_data.n()
       << ";p=" << raw_data.p() << ";";
    std::uint64_t h = 0xcbf29ce484222325ULL;
    hash_text(h, ss.str());
    h = fnv1a64(raw_data.X.data(), sizeof(double) * static_cast<std::size_t>(raw_data.X.size()), h);
    h = fnv1a64(raw_data.y.data(), sizeof(double) * static_cast<std::size_t>(raw_data.y.size()), h);
    return h;
}

void save_samples(const std::string& path, const SampleMatrix& samples,
                  const std::vector<int>& feature_ids, std::uint64_t seed,
                  std::uint64_t digest) {
    const auto p = static_cast<std::uint64_t>(samples.draws.rows());
    const auto r = static_cast<std::uint64_t>(samples.draws.cols());
    if (static_cast<std::uint64_t>(feature_ids.size()) != p)
        throw std::invalid_argument("feature id count must match sample rows");
    if (static_cast<std::uint64_t>(samples.intercept_draws.size()) != r)
        throw std::invalid_argument("intercept draw count must match sample columns");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(kMagic, sizeof kMagic);
    write_raw(out, kVersion);
    write_raw(out, p);
    write_raw(out, r);
    write_raw(out, seed);
    write_raw(out, digest);
    write_raw(out, samples.accept_rate);
    for (int id : feature_ids) {
        const auto u = static_cast<std::uint32_t>(id);
        write_raw(out, u);
    }
    out.write(reinterpret_cast<const char*>(samples.draws.data()),
              static_cast<std::streamsize>(sizeof(double) * p * r));
    out.write(reinterpret_cast<const char*>(samples.intercept_draws.data()),
              static_cast<std::streamsize>(sizeof(double) * r));
    if (!out) throw std::runtime_error("write failed: " + path);
}

LoadedSamples load_samples(const std::string& path, std::optional<std::uint64_t> expect_digest) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    char magic[6];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
        throw std::runtime_error(path + ": not a sample file (bad magic)");
    std::uint16_t version = 0;
    read_raw(in, version, path);
    if (version != kVersion)
        throw std::runtime_error(path + ": unsupported sample file version " +
                                 std::to_string(version));
    LoadedSamples out;
    read_raw(in, out.meta.p, path);
    read_raw(in, out.meta.r, path);
    read_raw(in, out.meta.seed, path);
    read_raw(in, out.meta.digest, path);
    read_raw(in, out.meta.accept_rate, path);
    if (expect_digest.has_value() && out.meta.digest != *expect_digest)
        throw std::runtime_error(
            path + ": config digest mismatch; these samples were produced under different "
                   "settings or data than supplied");
    out.meta.feature_ids.resize(out.meta.p);
    for (std::uint64_t j = 0; j < out.meta.p; ++j) {
        std::uint32_t id = 0;
        read_raw(in, id, path);
        out.meta.feature_ids[j] = static_cast<int>(id);
    }
    out.samples.draws.resize(static_cast<Eigen::Index>(out.meta.p),
                             static_cast<Eigen::Index>(out.meta.r));
    in.read(reinterpret_cast<char*>(out.samples.draws.data()),
            static_cast<std::streamsize>(sizeof(double) * out.meta.p * out.meta.r));
    out.samples.intercept_draws.resize(static_cast<Eigen::Index>(out.meta.r));
    in.read(reinterpret_cast<char*>(out.samples.intercept_draws.data()),
            static_cast<std::streamsize>(sizeof(double) * out.meta.r));
    if (!in) throw std::runtime_error(path + ": truncated sample file");
    out.samples.accept_rate = out.meta.accept_rate;
    return out;
}

} // namespace fbrht
