#include "qicc/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qicc {

namespace {

using nlohmann::json;

constexpr const char* kDefaultConfig = R"({
  "scenario": {
    "K": 2,
    "M": 2,
    "eta": {"rule": "share", "oac_share": 0.6},
    "N0": 2.0,
    "Pc": 10.0,
    "Pt": 10.0
  },
  "solver": {
    "r_sum": 0.0,
    "mu": 0.001,
    "eps_ao": 1e-6,
    "eps_mse": 1e-6,
    "n_max": 1000,
    "g_init": "full_power",
    "monotone_guard": false
  },
  "sweep": {
    "grid": 21,
    "warm_start": false
  },
  "oracle": {
    "n_samples": 1000000,
    "seed": 24301,
    "distribution": "circular_gaussian"
  }
}
)";

struct Location {
    std::size_t line = 1;
    std::size_t column = 1;
};

Location locate(const std::string& text, std::size_t byte) {
    Location loc;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++loc.line;
            loc.column = 1;
        } else {
            ++loc.column;
        }
    }
    return loc;
}

// Semantic checks carry a JSON path; the first occurrence of its last key
// gives an approximate line.
class Reader {
public:
    Reader(const std::string& text, std::string source) : text_(text), source_(std::move(source)) {}

    [[noreturn]] void fail(const std::string& path, const std::string& message) const {
        std::ostringstream os;
        os << source_;
        const auto slash = path.find_last_of('/');
        const std::string key = path.substr(slash == std::string::npos ? 0 : slash + 1);
        if (!key.empty()) {
            const auto pos = text_.find('"' + key + '"');
            if (pos != std::string::npos) {
                const auto loc = locate(text_, pos);
                os << ':' << loc.line << ':' << loc.column;
            }
        }
        os << ": " << path << ": " << message;
        throw ConfigError(os.str());
    }

    void only_keys(const json& obj, const std::string& path, std::set<std::string> allowed) const {
        if (!obj.is_object()) fail(path, "expected an object");
        for (const auto& [key, value] : obj.items()) {
            if (!allowed.count(key)) fail(path + "/" + key, "unknown key");
        }
    }

    double number(const json& obj, const std::string& path, const std::string& key, double fallback,
                  bool required = false) const {
        if (!obj.contains(key)) {
            if (required) fail(path + "/" + key, "missing required number");
            return fallback;
        }
        const auto& v = obj.at(key);
        if (!v.is_number()) fail(path + "/" + key, "expected a number");
        return v.get<double>();
    }

    std::uint64_t count(const json& obj, const std::string& path, const std::string& key, std::uint64_t fallback,
                        bool required = false) const {
        if (!obj.contains(key)) {
            if (required) fail(path + "/" + key, "missing required integer");
            return fallback;
        }
        const auto& v = obj.at(key);
        if (!v.is_number_unsigned()) fail(path + "/" + key, "expected a non-negative integer");
        return v.get<std::uint64_t>();
    }

    bool flag(const json& obj, const std::string& path, const std::string& key, bool fallback) const {
        if (!obj.contains(key)) return fallback;
        const auto& v = obj.at(key);
        if (!v.is_boolean()) fail(path + "/" + key, "expected true or false");
        return v.get<bool>();
    }

    std::vector<double> numbers(const json& v, const std::string& path) const {
        if (!v.is_array()) fail(path, "expected an array of numbers");
        std::vector<double> out;
        for (const auto& x : v) {
            if (!x.is_number()) fail(path, "expected an array of numbers");
            out.push_back(x.get<double>());
        }
        return out;
    }

private:
    const std::string& text_;
    std::string source_;
};

void read_scenario(const Reader& rd, const json& j, Config& cfg) {
    const std::string path = "/scenario";
    rd.only_keys(j, path, {"K", "M", "eta", "N0", "Pc", "Pt"});
    const auto K = rd.count(j, path, "K", 0, true);
    const auto M = rd.count(j, path, "M", 0, true);
    const double N0 = rd.number(j, path, "N0", 2.0);
    const double Pc = rd.number(j, path, "Pc", 10.0);
    const double Pt = rd.number(j, path, "Pt", Pc);

    cfg.eta = EtaSpec{};
    if (j.contains("eta")) {
        const auto& e = j.at("eta");
        if (e.is_array()) {
            cfg.eta.oac_share.reset();
            cfg.eta.values = rd.numbers(e, path + "/eta");
        } else {
            rd.only_keys(e, path + "/eta", {"rule", "oac_share"});
            if (!e.contains("rule") || e.at("rule") != "share") {
                rd.fail(path + "/eta/rule", "expected \"share\"");
            }
            cfg.eta.oac_share = rd.number(e, path + "/eta", "oac_share", 0.6);
        }
    }

    if (cfg.eta.oac_share) {
        const double share = *cfg.eta.oac_share;
        if (!(share > 0.0 && (share < 1.0 || (share == 1.0 && M == 0)))) {
            rd.fail(path + "/eta/oac_share", "must lie in (0, 1) when M > 0");
        }
        cfg.scenario = Scenario::from_share_rule(K, M, share, N0, Pc, Pt);
    } else {
        cfg.scenario = Scenario{K, M, cfg.eta.values, N0, Pc, Pt};
    }
    try {
        cfg.scenario.validate();
    } catch (const std::invalid_argument& ex) {
        rd.fail(path, ex.what());
    }
}

void read_solver(const Reader& rd, const json& j, Config& cfg) {
    const std::string path = "/solver";
    rd.only_keys(j, path, {"r_sum", "mu", "eps_ao", "eps_mse", "n_max", "g_init", "monotone_guard"});
    SolverParams p;
    p.r_sum = rd.number(j, path, "r_sum", p.r_sum);
    p.mu = rd.number(j, path, "mu", p.mu);
    p.eps_ao = rd.number(j, path, "eps_ao", p.eps_ao);
    p.eps_mse = rd.number(j, path, "eps_mse", p.eps_mse);
    p.n_max = static_cast<int>(rd.count(j, path, "n_max", static_cast<std::uint64_t>(p.n_max)));
    p.monotone_guard = rd.flag(j, path, "monotone_guard", p.monotone_guard);
    if (j.contains("g_init")) {
        const auto& gi = j.at("g_init");
        if (gi.is_array()) {
            p.g_init = InitPolicy::explicit_powers(rd.numbers(gi, path + "/g_init"));
            if (!within_box(cfg.scenario, p.g_init.g)) {
                rd.fail(path + "/g_init", "explicit powers need K entries in [0, Pc]");
            }
        } else if (gi == "full_power") {
            p.g_init = InitPolicy::full_power();
        } else if (gi == "half_power") {
            p.g_init = InitPolicy::half_power();
        } else {
            rd.fail(path + "/g_init", "expected \"full_power\", \"half_power\" or an array");
        }
    }
    try {
        p.validate();
    } catch (const std::invalid_argument& ex) {
        rd.fail(path, ex.what());
    }
    cfg.solver = p;
}

void read_sweep(const Reader& rd, const json& j, Config& cfg) {
    const std::string path = "/sweep";
    rd.only_keys(j, path, {"grid", "r_sum", "warm_start"});
    cfg.sweep.grid = rd.count(j, path, "grid", cfg.sweep.grid);
    if (cfg.sweep.grid < 2) rd.fail(path + "/grid", "must be at least 2");
    if (j.contains("r_sum")) {
        cfg.sweep.r_sum = rd.numbers(j.at("r_sum"), path + "/r_sum");
        for (std::size_t i = 1; i < cfg.sweep.r_sum.size(); ++i) {
            if (!(cfg.sweep.r_sum[i] > cfg.sweep.r_sum[i - 1])) {
                rd.fail(path + "/r_sum", "values must be strictly increasing");
            }
        }
    }
    cfg.sweep.warm_start = rd.flag(j, path, "warm_start", cfg.sweep.warm_start);
}

void read_oracle(const Reader& rd, const json& j, Config& cfg) {
    const std::string path = "/oracle";
    rd.only_keys(j, path, {"n_samples", "seed", "distribution"});
    cfg.oracle.n_samples = rd.count(j, path, "n_samples", cfg.oracle.n_samples);
    if (cfg.oracle.n_samples < 1) rd.fail(path + "/n_samples", "must be at least 1");
    cfg.oracle.seed = rd.count(j, path, "seed", cfg.oracle.seed);
    if (j.contains("distribution")) {
        const auto& d = j.at("distribution");
        if (!d.is_string()) rd.fail(path + "/distribution", "expected a string");
        try {
            cfg.oracle.distribution = parse_distribution(d.get<std::string>());
        } catch (const std::invalid_argument& ex) {
            rd.fail(path + "/distribution", ex.what());
        }
    }
}

}  // namespace

Config parse_config(const std::string& text, const std::string& source) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& ex) {
        const auto loc = locate(text, ex.byte == 0 ? 0 : ex.byte - 1);
        std::ostringstream os;
        os << source << ':' << loc.line << ':' << loc.column << ": malformed JSON: " << ex.what();
        throw ConfigError(os.str());
    }
    const Reader rd(text, source);
    rd.only_keys(root, "", {"scenario", "solver", "sweep", "oracle"});
    if (!root.contains("scenario")) rd.fail("/scenario", "missing required block");

    Config cfg;
    read_scenario(rd, root.at("scenario"), cfg);
    if (root.contains("solver")) read_solver(rd, root.at("solver"), cfg);
    if (root.contains("sweep")) read_sweep(rd, root.at("sweep"), cfg);
    if (root.contains("oracle")) read_oracle(rd, root.at("oracle"), cfg);
    return cfg;
}

Config load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path.string() + ": cannot open config file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string());
}

std::string dump_config(const Config& config) {
    json j;
    const auto& s = config.scenario;
    j["scenario"] = {{"K", s.K}, {"M", s.M}, {"N0", s.N0}, {"Pc", s.Pc}, {"Pt", s.Pt}};
    if (config.eta.oac_share) {
        j["scenario"]["eta"] = {{"rule", "share"}, {"oac_share", *config.eta.oac_share}};
    } else {
        j["scenario"]["eta"] = s.eta;
    }
    const auto& p = config.solver;
    j["solver"] = {{"r_sum", p.r_sum},     {"mu", p.mu},       {"eps_ao", p.eps_ao},
                   {"eps_mse", p.eps_mse}, {"n_max", p.n_max}, {"monotone_guard", p.monotone_guard}};
    switch (p.g_init.kind) {
        case InitPolicy::Kind::FullPower: j["solver"]["g_init"] = "full_power"; break;
        case InitPolicy::Kind::HalfPower: j["solver"]["g_init"] = "half_power"; break;
        case InitPolicy::Kind::Explicit: j["solver"]["g_init"] = p.g_init.g; break;
    }
    j["sweep"] = {{"grid", config.sweep.grid}, {"warm_start", config.sweep.warm_start}};
    if (!config.sweep.r_sum.empty()) j["sweep"]["r_sum"] = config.sweep.r_sum;
    j["oracle"] = {{"n_samples", config.oracle.n_samples},
                   {"seed", config.oracle.seed},
                   {"distribution", to_string(config.oracle.distribution)}};
    return j.dump(2) + "\n";
}

const std::string& default_config_text() {
    static const std::string text = kDefaultConfig;
    return text;
}

}  // namespace qicc
