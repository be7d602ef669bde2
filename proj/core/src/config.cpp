#include "pour/harness/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "pour/errors.hpp"
#include "pour/numeric.hpp"
#include "pour/parallel.hpp"

namespace pour::harness {

namespace {

struct KeyBinding {
    std::function<void(SuiteConfig&, const std::string&)> set;
    std::function<std::string(const SuiteConfig&)> get;
};

double to_double(const std::string& v, const std::string& key) {
    double out = 0.0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size()) {
        throw config_error("config: bad number for '" + key + "': " + v);
    }
    return out;
}

std::int64_t to_int(const std::string& v, const std::string& key) {
    std::int64_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size()) {
        throw config_error("config: bad integer for '" + key + "': " + v);
    }
    return out;
}

std::uint64_t to_u64(const std::string& v, const std::string& key) {
    std::uint64_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size()) {
        throw config_error("config: bad seed for '" + key + "': " + v);
    }
    return out;
}

bool to_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw config_error("config: bad bool for '" + key + "': " + v);
}

#define NUM_KEY(name, field)                                                      \
    {name, {[](SuiteConfig& c, const std::string& v) { c.field = to_double(v, name); }, \
            [](const SuiteConfig& c) { return fmt_double(c.field); }}}
#define INT_KEY(name, field)                                                      \
    {name, {[](SuiteConfig& c, const std::string& v) { c.field = static_cast<int>(to_int(v, name)); }, \
            [](const SuiteConfig& c) { return std::to_string(c.field); }}}

const std::map<std::string, KeyBinding>& bindings() {
    static const std::map<std::string, KeyBinding> table = {
        {"root_seed",
         {[](SuiteConfig& c, const std::string& v) {
              c.root_seed = to_u64(v, "root_seed");
              c.root_seed_set = true;
          },
          [](const SuiteConfig& c) { return std::to_string(c.root_seed); }}},
        INT_KEY("n_demos", n_demos),
        NUM_KEY("split_ratio", split_ratio),
        INT_KEY("train_epochs", train_epochs),
        NUM_KEY("lr", lr),
        NUM_KEY("keep_prob", keep_prob),
        INT_KEY("hidden_units", hidden_units),
        INT_KEY("n_layers", n_layers),
        INT_KEY("batch_trials", batch_trials),
        {"threads",
         {[](SuiteConfig& c, const std::string& v) {
              c.threads = static_cast<unsigned>(to_int(v, "threads"));
          },
          [](const SuiteConfig& c) { return std::to_string(c.threads); }}},
        INT_KEY("eval_trials", eval_trials),
        INT_KEY("gradual_n", gradual_n),
        INT_KEY("gradual_max_rounds", gradual_max_rounds),
        INT_KEY("batch_n_tall_thin", batch_n_tall_thin),
        INT_KEY("batch_n_tall", batch_n_tall),
        INT_KEY("fine_tune_epochs", fine_tune_epochs),
        NUM_KEY("fine_tune_lr", fine_tune_lr),
        NUM_KEY("err_threshold_factor", err_threshold_factor),
        NUM_KEY("flow_lag_tau_s", flow_lag_tau_s),
        NUM_KEY("flow_settle_tau_s", flow_settle_tau_s),
        NUM_KEY("flow_max_ml_per_s", flow_max_ml_per_s),
        NUM_KEY("sensor_white_noise_lbf", sensor_white_noise_lbf),
        NUM_KEY("sensor_drift_walk_lbf", sensor_drift_walk_lbf),
        NUM_KEY("sensor_drift_bound_lbf", sensor_drift_bound_lbf),
        NUM_KEY("sensor_bias_lbf", sensor_bias_lbf),
        NUM_KEY("demo_forward_rate_min_dps", demonstrator.forward_rate_min_dps),
        NUM_KEY("demo_forward_rate_max_dps", demonstrator.forward_rate_max_dps),
        NUM_KEY("demo_anticipation_mean", demonstrator.anticipation_mean),
        NUM_KEY("demo_anticipation_std", demonstrator.anticipation_std),
        NUM_KEY("demo_backward_rate_min_dps", demonstrator.backward_rate_min_dps),
        NUM_KEY("demo_backward_rate_max_dps", demonstrator.backward_rate_max_dps),
        NUM_KEY("demo_noise_std_dps", demonstrator.noise_std_dps),
        NUM_KEY("demo_decel_trigger_frac", demonstrator.decel_trigger_frac),
        NUM_KEY("demo_decel_factor", demonstrator.decel_factor),
        NUM_KEY("omega_clamp_dps", omega_clamp_dps),
        {"verbose_trajectories",
         {[](SuiteConfig& c, const std::string& v) {
              c.verbose_trajectories = to_bool(v, "verbose_trajectories");
          },
          [](const SuiteConfig& c) { return c.verbose_trajectories ? "true" : "false"; }}},
    };
    return table;
}

#undef NUM_KEY
#undef INT_KEY

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

unsigned SuiteConfig::effective_threads() const {
    return threads == 0 ? default_threads() : threads;
}

net::TrainOptions SuiteConfig::train_options() const {
    net::TrainOptions opt;
    opt.epochs = train_epochs;
    opt.lr = lr;
    opt.keep_prob = keep_prob;
    opt.hidden_units = hidden_units;
    opt.n_layers = n_layers;
    opt.batch_trials = batch_trials;
    opt.threads = effective_threads();
    return opt;
}

gssp::PlantConfig SuiteConfig::plant_config() const {
    gssp::PlantConfig plant;
    plant.flow.lag_tau_s = flow_lag_tau_s;
    plant.flow.settle_tau_s = flow_settle_tau_s;
    plant.flow.max_flow_ml_per_s = flow_max_ml_per_s;
    plant.sensor.white_noise_std_lbf = sensor_white_noise_lbf;
    plant.sensor.drift_walk_std_lbf = sensor_drift_walk_lbf;
    plant.sensor.drift_bound_lbf = sensor_drift_bound_lbf;
    plant.sensor.bias_lbf = sensor_bias_lbf;
    plant.limits.omega_clamp_dps = omega_clamp_dps;
    return plant;
}

std::string SuiteConfig::echo() const {
    std::ostringstream out;
    for (const auto& [key, binding] : bindings()) {
        out << key << " = " << binding.get(*this) << "\n";
    }
    return out.str();
}

void apply_key(SuiteConfig& config, const std::string& key, const std::string& value) {
    const auto& table = bindings();
    const auto it = table.find(key);
    if (it == table.end()) throw config_error("config: unknown key '" + key + "'");
    it->second.set(config, value);
}

SuiteConfig load_config(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw config_error("config: cannot open " + path.string());
    SuiteConfig config;
    std::string line;
    while (std::getline(f, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw config_error("config: expected key = value: " + line);
        apply_key(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    if (!config.root_seed_set) throw config_error("config: root_seed is required");
    return config;
}

} // namespace pour::harness
