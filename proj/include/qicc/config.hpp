#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qicc/channel_oracle.hpp"
#include "qicc/scenario.hpp"
#include "qicc/solver.hpp"

namespace qicc {

/// Transmissivities are either listed explicitly or produced by the share
/// rule (`oac_share / K` per OAC device, the remainder split over M).
struct EtaSpec {
    std::optional<double> oac_share = 0.6;
    std::vector<double> values;

    friend bool operator==(const EtaSpec&, const EtaSpec&) = default;
};

struct SweepConfig {
    std::size_t grid = 21;
    /// Explicit r_sum values; overrides `grid` when non-empty.
    std::vector<double> r_sum;
    bool warm_start = false;

    friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

struct OracleConfig {
    std::size_t n_samples = 1'000'000;
    std::uint64_t seed = 24301;
    SymbolDistribution distribution = SymbolDistribution::CircularGaussian;

    friend bool operator==(const OracleConfig&, const OracleConfig&) = default;
};

struct Config {
    Scenario scenario;
    EtaSpec eta;
    SolverParams solver;
    SweepConfig sweep;
    OracleConfig oracle;

    friend bool operator==(const Config&, const Config&) = default;
};

/// Malformed or invalid configuration. The message carries the source name
/// and, where it can be located, the line and column.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Config parse_config(const std::string& text, const std::string& source = "<config>");
Config load_config(const std::filesystem::path& path);

/// JSON text that parse_config maps back to an equal Config.
std::string dump_config(const Config& config);

/// Text of the shipped default configuration.
const std::string& default_config_text();

}  // namespace qicc
