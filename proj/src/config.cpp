// Copyright 2026 The proxyreg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "proxyreg/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "proxyreg/csv.hpp"
#include "proxyreg/error.hpp"

namespace proxyreg {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) parts.push_back(trim(cur));
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

double to_double(const std::string& text, const std::string& what) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
        throw ConfigError(what + ": expected a number, got '" + text + "'");
    }
    return v;
}

std::uint64_t to_u64(const std::string& text, const std::string& what) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError(what + ": expected a non-negative integer, got '" + text + "'");
    }
    return v;
}

bool to_switch(const std::string& text, const std::string& what) {
    if (text == "on" || text == "true" || text == "1") return true;
    if (text == "off" || text == "false" || text == "0") return false;
    throw ConfigError(what + ": expected on|off, got '" + text + "'");
}

std::string estimator_list_text(const std::vector<EstimatorSpec>& specs) {
    std::string out;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        if (i) out += ", ";
        out += to_string(specs[i].kind);
        if (specs[i].lambda) out += "=" + format_double(*specs[i].lambda);
    }
    return out;
}

}  // namespace

std::vector<double> GridSpec::values() const {
    return log_spaced ? log_grid(min, max, points) : linear_grid(min, max, points);
}

GridSpec parse_grid(const std::string& text, bool log_spaced) {
    const std::vector<std::string> parts = split(text, ':');
    if (parts.size() != 3) throw ConfigError("grid must look like MIN:MAX:POINTS, got '" + text + "'");
    GridSpec g;
    g.min = to_double(parts[0], "grid min");
    g.max = to_double(parts[1], "grid max");
    g.points = static_cast<std::size_t>(to_u64(parts[2], "grid points"));
    g.log_spaced = log_spaced;
    if (!(g.min < g.max)) throw ConfigError("grid min must be below grid max");
    if (g.points < 1) throw ConfigError("grid needs at least one point");
    if (log_spaced && !(g.min > 0.0)) throw ConfigError("log-spaced grid needs min > 0");
    return g;
}

ProxyScale parse_proxy_scale(const std::string& text) {
    ProxyScale s;
    if (text == "off") return s;
    if (text == "auto") {
        s.mode = ProxyScale::Mode::automatic;
        return s;
    }
    s.mode = ProxyScale::Mode::fixed;
    s.factor = to_double(text, "scale_proxy");
    if (!(s.factor > 0.0)) throw ConfigError("scale_proxy factor must be > 0 (degenerate scale)");
    return s;
}

std::vector<EstimatorSpec> parse_estimator_list(const std::string& text, LossFamily loss) {
    std::vector<EstimatorSpec> specs;
    for (const std::string& item : split(text, ',')) {
        if (item.empty()) throw ConfigError("empty entry in estimator list '" + text + "'");
        EstimatorSpec spec;
        spec.loss = loss;
        const auto eq = item.find('=');
        try {
            spec.kind = parse_estimator_kind(trim(item.substr(0, eq)));
        } catch (const InvalidArgument& e) {
            throw ConfigError(e.what());
        }
        if (eq != std::string::npos) spec.lambda = to_double(trim(item.substr(eq + 1)), item);
        try {
            spec.validate();
        } catch (const InvalidArgument& e) {
            throw ConfigError(e.what());
        }
        specs.push_back(spec);
    }
    if (specs.empty()) throw ConfigError("estimator list is empty");
    return specs;
}

ExperimentConfig::ExperimentConfig() {
    estimators = parse_estimator_list("gold_ols, gold_ridge, proxy_ols, averaging, weighted, joint, oracle",
                                      LossFamily::squared);
}

void ExperimentConfig::validate() const {
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (jobs < 1) throw ConfigError("jobs must be >= 1");
    if (estimators.empty()) throw ConfigError("no estimators requested");
    if (!(test_frac >= 0.0 && test_frac < 1.0)) throw ConfigError("test_frac must lie in [0, 1)");
    if (mode == DataMode::csv && (gold_path.empty() || proxy_path.empty())) {
        throw ConfigError("csv mode needs gold_path and proxy_path");
    }
    if (loss == LossFamily::logistic && scale.mode != ProxyScale::Mode::off) {
        throw ConfigError("proxy response scaling applies to the squared loss only");
    }
    if (grid && !(grid->min < grid->max)) throw ConfigError("grid min must be below grid max");
    if (truncation_bound && !(*truncation_bound > 0.0)) throw ConfigError("truncation must be > 0");
    for (const EstimatorSpec& s : estimators) {
        if (s.loss != loss) throw ConfigError("estimator loss differs from the experiment loss");
        try {
            s.validate();
        } catch (const InvalidArgument& e) {
            throw ConfigError(e.what());
        }
    }
    if (mode == DataMode::synthetic) {
        try {
            scenario.validate();
        } catch (const InvalidArgument& e) {
            throw ConfigError(e.what());
        }
    }
}

ExperimentConfig parse_config(std::istream& in, const std::string& source) {
    ExperimentConfig c;
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line.substr(0, line.find('#')));
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(source + ":" + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = trim(t.substr(0, eq));
        if (kv.count(key)) throw ConfigError(source + ": duplicate key '" + key + "'");
        kv[key] = trim(t.substr(eq + 1));
    }
    if (!kv.count("schema_version")) throw ConfigError(source + ": missing schema_version");
    if (to_u64(kv["schema_version"], "schema_version") != kConfigSchemaVersion) {
        throw ConfigError(source + ": unsupported schema_version " + kv["schema_version"] + " (expected " +
                          std::to_string(kConfigSchemaVersion) + ")");
    }

    // loss first: estimator specs inherit it.
    if (kv.count("loss")) {
        try {
            c.loss = parse_loss_family(kv["loss"]);
        } catch (const InvalidArgument& e) {
            throw ConfigError(e.what());
        }
    }
    c.scenario.loss = c.loss;
    for (EstimatorSpec& s : c.estimators) s.loss = c.loss;

    bool linear = false;
    if (kv.count("grid_scale")) {
        const std::string& v = kv["grid_scale"];
        if (v != "log" && v != "linear") throw ConfigError("grid_scale must be log or linear");
        linear = v == "linear";
    }

    auto size = [](const std::string& v, const std::string& k) { return static_cast<std::size_t>(to_u64(v, k)); };
    using Setter = std::function<void(const std::string&)>;
    const std::map<std::string, Setter> setters = {
        {"schema_version", [](const std::string&) {}},
        {"loss", [](const std::string&) {}},
        {"grid_scale", [](const std::string&) {}},
        {"mode", [&](const std::string& v) {
             if (v == "synthetic") c.mode = DataMode::synthetic;
             else if (v == "csv") c.mode = DataMode::csv;
             else throw ConfigError("mode must be synthetic or csv");
         }},
        {"trials", [&](const std::string& v) { c.trials = size(v, "trials"); }},
        {"seed", [&](const std::string& v) { c.base_seed = to_u64(v, "seed"); }},
        {"jobs", [&](const std::string& v) { c.jobs = size(v, "jobs"); }},
        {"estimators", [&](const std::string& v) { c.estimators = parse_estimator_list(v, c.loss); }},
        {"grid", [&](const std::string& v) {
             if (v == "default") c.grid.reset();
             else c.grid = parse_grid(v, !linear);
         }},
        {"scale_proxy", [&](const std::string& v) { c.scale = parse_proxy_scale(v); }},
        {"standardize", [&](const std::string& v) { c.standardize = to_switch(v, "standardize"); }},
        {"test_frac", [&](const std::string& v) { c.test_frac = to_double(v, "test_frac"); }},
        {"truncation", [&](const std::string& v) {
             if (v == "off") c.truncation_bound.reset();
             else c.truncation_bound = to_double(v, "truncation");
         }},
        {"output", [&](const std::string& v) { c.output_dir = v; }},
        {"plot", [&](const std::string& v) {
             if (v != "off" && v != "svg") throw ConfigError("plot must be off or svg");
             c.plot_svg = v == "svg";
         }},
        {"runtime", [&](const std::string& v) { c.record_runtime = to_switch(v, "runtime"); }},
        {"gold_path", [&](const std::string& v) { c.gold_path = v; }},
        {"proxy_path", [&](const std::string& v) { c.proxy_path = v; }},
        {"target", [&](const std::string& v) { c.target = v; }},
        {"n_proxy", [&](const std::string& v) { c.scenario.n_proxy = size(v, "n_proxy"); }},
        {"n_gold", [&](const std::string& v) { c.scenario.n_gold = size(v, "n_gold"); }},
        {"d", [&](const std::string& v) { c.scenario.d = size(v, "d"); }},
        {"n_test", [&](const std::string& v) { c.scenario.n_test = size(v, "n_test"); }},
        {"bias", [&](const std::string& v) {
             try {
                 c.scenario.bias_regime = parse_bias_regime(v);
             } catch (const InvalidArgument& e) {
                 throw ConfigError(e.what());
             }
         }},
        {"covariance", [&](const std::string& v) {
             try {
                 c.scenario.covariance = parse_covariance_kind(v);
             } catch (const InvalidArgument& e) {
                 throw ConfigError(e.what());
             }
         }},
        {"sparse_magnitude", [&](const std::string& v) { c.scenario.sparse_magnitude = to_double(v, "sparse_magnitude"); }},
        {"sparse_prob", [&](const std::string& v) { c.scenario.sparse_prob = to_double(v, "sparse_prob"); }},
        {"support_size", [&](const std::string& v) {
             if (v == "off") c.scenario.support_size.reset();
             else c.scenario.support_size = size(v, "support_size");
         }},
        {"dense_sd", [&](const std::string& v) { c.scenario.dense_sd = to_double(v, "dense_sd"); }},
        {"noise_sd_gold", [&](const std::string& v) { c.scenario.noise_sd_gold = to_double(v, "noise_sd_gold"); }},
        {"noise_sd_proxy", [&](const std::string& v) { c.scenario.noise_sd_proxy = to_double(v, "noise_sd_proxy"); }},
    };
    for (const auto& [key, value] : kv) {
        const auto it = setters.find(key);
        if (it == setters.end()) throw ConfigError(source + ": unknown key '" + key + "'");
        it->second(value);
    }
    c.scenario.standardize = c.standardize;
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    return parse_config(in, path);
}

void write_config(std::ostream& out, const ExperimentConfig& c) {
    const ScenarioConfig& s = c.scenario;
    out << "schema_version = " << kConfigSchemaVersion << '\n'
        << "mode = " << (c.mode == DataMode::synthetic ? "synthetic" : "csv") << '\n'
        << "loss = " << to_string(c.loss) << '\n'
        << "trials = " << c.trials << '\n'
        << "seed = " << c.base_seed << '\n'
        << "jobs = " << c.jobs << '\n'
        << "estimators = " << estimator_list_text(c.estimators) << '\n';
    if (c.grid) {
        out << "grid = " << format_double(c.grid->min) << ':' << format_double(c.grid->max) << ':'
            << c.grid->points << '\n'
            << "grid_scale = " << (c.grid->log_spaced ? "log" : "linear") << '\n';
    } else {
        out << "grid = default\n";
    }
    out << "scale_proxy = ";
    switch (c.scale.mode) {
        case ProxyScale::Mode::off: out << "off"; break;
        case ProxyScale::Mode::automatic: out << "auto"; break;
        case ProxyScale::Mode::fixed: out << format_double(c.scale.factor); break;
    }
    out << '\n'
        << "standardize = " << (c.standardize ? "on" : "off") << '\n'
        << "test_frac = " << format_double(c.test_frac) << '\n'
        << "truncation = " << (c.truncation_bound ? format_double(*c.truncation_bound) : "off") << '\n'
        << "output = " << c.output_dir << '\n'
        << "plot = " << (c.plot_svg ? "svg" : "off") << '\n'
        << "runtime = " << (c.record_runtime ? "on" : "off") << '\n';
    if (c.mode == DataMode::csv) {
        out << "gold_path = " << c.gold_path << '\n'
            << "proxy_path = " << c.proxy_path << '\n'
            << "target = " << c.target << '\n';
    } else {
        out << "n_proxy = " << s.n_proxy << '\n'
            << "n_gold = " << s.n_gold << '\n'
            << "d = " << s.d << '\n'
            << "n_test = " << s.n_test << '\n'
            << "bias = " << to_string(s.bias_regime) << '\n'
            << "covariance = " << to_string(s.covariance) << '\n'
            << "sparse_magnitude = " << format_double(s.sparse_magnitude) << '\n'
            << "sparse_prob = " << format_double(s.sparse_prob) << '\n'
            << "support_size = " << (s.support_size ? std::to_string(*s.support_size) : "off") << '\n'
            << "dense_sd = " << format_double(s.dense_sd) << '\n'
            << "noise_sd_gold = " << format_double(s.noise_sd_gold) << '\n'
            << "noise_sd_proxy = " << format_double(s.noise_sd_proxy) << '\n';
    }
}

}  // namespace proxyreg
