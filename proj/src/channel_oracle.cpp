#include "qicc/channel_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace qicc {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::size_t kBatchSize = std::size_t{1} << 15;

// Streaming mean and centred second moment; merged pairwise in batch order.
struct Moments {
    double count = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double x) noexcept {
        count += 1.0;
        const double delta = x - mean;
        mean += delta / count;
        m2 += delta * (x - mean);
    }

    void merge(const Moments& other) noexcept {
        if (other.count == 0.0) return;
        const double total = count + other.count;
        const double delta = other.mean - mean;
        mean += delta * other.count / total;
        m2 += other.m2 + delta * delta * count * other.count / total;
        count = total;
    }
};

}  // namespace

SymbolDistribution parse_distribution(std::string_view name) {
    if (name == "circular_gaussian") return SymbolDistribution::CircularGaussian;
    if (name == "qpsk") return SymbolDistribution::UniformPhaseQpskLike;
    throw std::invalid_argument("unknown symbol distribution '" + std::string(name) +
                                "' (expected circular_gaussian or qpsk)");
}

const char* to_string(SymbolDistribution d) noexcept {
    return d == SymbolDistribution::CircularGaussian ? "circular_gaussian" : "qpsk";
}

std::uint64_t CounterRng::mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t CounterRng::next_u64() noexcept { return mix(key_ + (++counter_) * kGolden); }

double CounterRng::next_unit() noexcept {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

std::complex<double> CounterRng::complex_gaussian(double variance) noexcept {
    // |z|^2 ~ Exp(variance), phase uniform.
    const double radius = std::sqrt(-variance * std::log(next_unit()));
    const double phase = 2.0 * std::numbers::pi * next_unit();
    return {radius * std::cos(phase), radius * std::sin(phase)};
}

std::complex<double> CounterRng::symbol(SymbolDistribution d) noexcept {
    if (d == SymbolDistribution::CircularGaussian) {
        return complex_gaussian(1.0);
    }
    const std::uint64_t bits = next_u64();
    constexpr double a = std::numbers::sqrt2 / 2.0;
    return {(bits & 1U) ? a : -a, (bits & 2U) ? a : -a};
}

McEstimate simulate_mse(const Scenario& scenario, const Allocation& alloc, std::span<const double> comm_powers,
                        const SymbolModel& model, std::size_t n_samples, unsigned threads) {
    if (n_samples == 0) {
        throw std::invalid_argument("simulate_mse: n_samples must be at least 1");
    }
    if (!within_box(scenario, alloc.g, 1e-12)) {
        throw std::invalid_argument("simulate_mse: OAC powers outside [0, Pc]");
    }
    if (comm_powers.size() != scenario.M) {
        throw std::invalid_argument("simulate_mse: expected M communication powers");
    }
    for (double p : comm_powers) {
        if (!(p >= 0.0 && p <= scenario.Pt * (1.0 + 1e-12))) {
            throw std::invalid_argument("simulate_mse: communication power outside [0, Pt]");
        }
    }

    std::vector<double> oac_gain(scenario.K);
    for (std::size_t k = 0; k < scenario.K; ++k) {
        oac_gain[k] = std::sqrt(scenario.eta[k] * alloc.g[k]);
    }
    std::vector<double> comm_gain(scenario.M);
    for (std::size_t m = 0; m < scenario.M; ++m) {
        comm_gain[m] = std::sqrt(scenario.eta[scenario.K + m] * comm_powers[m]);
    }
    // K + M symbols and one noise draw per sample; QPSK uses one draw per
    // symbol, Gaussians two.
    const std::uint64_t draws_per_sample = 2 * (scenario.K + scenario.M + 1);
    const std::uint64_t key = CounterRng::mix(model.seed);
    const std::complex<double> h = alloc.h;

    const std::size_t n_batches = (n_samples + kBatchSize - 1) / kBatchSize;
    std::vector<Moments> batches(n_batches);
    const auto run_batch = [&](std::size_t b) {
        Moments acc;
        const std::size_t begin = b * kBatchSize;
        const std::size_t end = std::min(n_samples, begin + kBatchSize);
        for (std::size_t i = begin; i < end; ++i) {
            CounterRng rng(key, static_cast<std::uint64_t>(i) * draws_per_sample);
            std::complex<double> target{0.0, 0.0};
            std::complex<double> y{0.0, 0.0};
            for (double gain : oac_gain) {
                const auto s = rng.symbol(model.distribution);
                target += s;
                y += gain * s;
            }
            for (double gain : comm_gain) {
                y += gain * rng.symbol(model.distribution);
            }
            y += rng.complex_gaussian(scenario.N0);
            acc.push(std::norm(target - h * y));
        }
        batches[b] = acc;
    };

    unsigned workers = threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : threads;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n_batches));
    if (workers <= 1) {
        for (std::size_t b = 0; b < n_batches; ++b) run_batch(b);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t b = w; b < n_batches; b += workers) run_batch(b);
            });
        }
    }

    Moments total;
    for (const auto& b : batches) {
        total.merge(b);
    }
    McEstimate out;
    out.n_samples = n_samples;
    out.mse_hat = total.mean;
    out.std_err = n_samples > 1 ? std::sqrt(total.m2 / (total.count - 1.0) / total.count) : 0.0;
    return out;
}

}  // namespace qicc
