// Copyright 2026 The pite-lab Authors
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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

#include "pite/harness.hpp"

namespace pite::harness {

namespace {

using Json = nlohmann::json;

[[noreturn]] void config_error(const std::string &what) { fail(ErrorCode::Config, what); }

std::vector<ParamSpec> grid_params(double length, double m0, double dtau, std::int64_t steps,
                                   const std::string &init, std::vector<std::string> inits,
                                   const std::string &circuit) {
    return {
        {"n_qubits", Kind::Integer, std::int64_t{6}, "qubits encoding the grid", {}},
        {"length", Kind::Real, length, "simulation cell length L", {}},
        {"mass", Kind::Real, 1.0, "particle mass", {}},
        {"m0", Kind::Real, m0, "scale factor of M", {}},
        {"dtau", Kind::Real, dtau, "imaginary-time step", {}},
        {"n_steps", Kind::Integer, steps, "number of PITE steps", {}},
        {"init", Kind::Text, init, "initial state", std::move(inits)},
        {"circuit", Kind::Text, circuit, "step circuit", {"st1", "exact", "approx"}},
    };
}

std::vector<ExperimentInfo> build_table() {
    std::vector<ExperimentInfo> t;
    t.push_back({"two_level",
                 "closed forms vs simulated steps on diag(e_gs, e_ex)",
                 {
                     {"e_gs", Kind::Real, 0.0, "ground level energy", {}},
                     {"e_ex", Kind::Real, 1.0, "excited level energy", {}},
                     {"m0", Kind::Real, 0.8, "scale factor of M", {}},
                     {"dtau", Kind::RealList, std::vector<double>{0.1, 0.3, 0.5},
                      "imaginary-time steps to sweep", {}},
                     {"n_steps", Kind::Integer, std::int64_t{31}, "steps per trajectory", {}},
                     {"w0", Kind::Real, 1.0, "initial excited/ground weight ratio", {}},
                 }});

    auto dw = grid_params(18.0, 0.9, 0.1, 40, "double_peak", {"double_peak", "single_peak"},
                          "st1");
    dw.push_back({"d", Kind::Real, 3.0, "distance between the minima", {}});
    dw.push_back({"delta", Kind::Real, 0.25, "offset of the upper well", {}});
    dw.push_back({"v0", Kind::Real, 0.5, "barrier strength", {}});
    t.push_back({"double_well", "ground state of the asymmetric double well", std::move(dw)});

    auto ho = grid_params(10.0, 0.85, 0.15, 30, "lowest4", {"lowest4", "odd135"}, "approx");
    ho.push_back({"omega", Kind::Real, 1.0, "oscillator frequency", {}});
    t.push_back({"harmonic", "harmonic oscillator from the lowest four eigenstates", ho});

    auto odd = grid_params(10.0, 0.85, 0.1, 60, "odd135", {"lowest4", "odd135"}, "approx");
    odd.push_back({"omega", Kind::Real, 1.0, "oscillator frequency", {}});
    t.push_back({"harmonic_odd", "harmonic oscillator from odd-parity eigenstates", odd});

    t.push_back({"gibbs",
                 "Gibbs state and partition function of a random Hamiltonian",
                 {
                     {"n_qubits", Kind::Integer, std::int64_t{2}, "system qubits", {}},
                     {"beta", Kind::Real, 1.0, "inverse temperature", {}},
                     {"m0", Kind::Real, 0.5, "scale factor of M", {}},
                     {"shots", Kind::Integer, std::int64_t{10000}, "sampled ancilla shots", {}},
                     {"scale", Kind::Real, 1.0, "spectral radius of the random Hamiltonian", {}},
                     {"slices", Kind::Integer, std::int64_t{1}, "imaginary-time slices", {}},
                 }});
    t.push_back({"nonhermitian",
                 "two-ancilla evolution under a random non-Hermitian generator",
                 {
                     {"n_qubits", Kind::Integer, std::int64_t{1}, "system qubits", {}},
                     {"dt", Kind::Real, 0.05, "time step", {}},
                     {"m0", Kind::Real, 0.5, "scale factor of M", {}},
                     {"n_steps", Kind::Integer, std::int64_t{40}, "number of steps", {}},
                     {"scale", Kind::Real, 0.5, "entry range of the random generator", {}},
                 }});
    t.push_back({"propagator",
                 "kinetic propagator J(l; lambda) on the position grid",
                 {
                     {"n_qubits", Kind::Integer, std::int64_t{5}, "grid qubits", {}},
                     {"lambda", Kind::RealList, std::vector<double>{0.01, 0.04},
                      "dimensionless kinetic phases", {}},
                 }});
    return t;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

template <class T> T parse_number(const std::string &raw, const std::string &key) {
    const std::string s = trim(raw);
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        config_error("parameter '" + key + "': cannot parse '" + s + "' as a number");
    }
    return v;
}

Value from_text(const ParamSpec &spec, const std::string &raw) {
    switch (spec.kind) {
    case Kind::Real:
        return parse_number<double>(raw, spec.name);
    case Kind::Integer:
        return parse_number<std::int64_t>(raw, spec.name);
    case Kind::Text:
        return trim(raw);
    case Kind::RealList: {
        std::vector<double> out;
        std::stringstream ss(raw);
        std::string item;
        while (std::getline(ss, item, ',')) {
            out.push_back(parse_number<double>(item, spec.name));
        }
        if (out.empty()) {
            config_error("parameter '" + spec.name + "' needs at least one value");
        }
        return out;
    }
    }
    config_error("unhandled parameter kind");
}

double json_real(const Json &j, const std::string &key) {
    if (!j.is_number()) {
        config_error("parameter '" + key + "' must be a number");
    }
    return j.get<double>();
}

Value from_json(const ParamSpec &spec, const Json &j) {
    switch (spec.kind) {
    case Kind::Real:
        return json_real(j, spec.name);
    case Kind::Integer:
        if (!j.is_number_integer()) {
            config_error("parameter '" + spec.name + "' must be an integer");
        }
        return j.get<std::int64_t>();
    case Kind::Text:
        if (!j.is_string()) {
            config_error("parameter '" + spec.name + "' must be a string");
        }
        return j.get<std::string>();
    case Kind::RealList: {
        if (j.is_number()) {
            return std::vector<double>{j.get<double>()};
        }
        if (!j.is_array() || j.empty()) {
            config_error("parameter '" + spec.name + "' must be a non-empty list of numbers");
        }
        std::vector<double> out;
        for (const auto &e : j) {
            out.push_back(json_real(e, spec.name));
        }
        return out;
    }
    }
    config_error("unhandled parameter kind");
}

// Raw, untyped config as read from either format.
struct RawConfig {
    std::optional<std::string> experiment;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
    std::vector<std::pair<std::string, std::variant<std::string, Json>>> params;
};

const ParamSpec &find_param(const ExperimentInfo &info, const std::string &key) {
    for (const auto &p : info.params) {
        if (p.name == key) {
            return p;
        }
    }
    config_error("unknown parameter '" + key + "' for experiment " + info.name);
}

RawConfig read_ini(std::string_view text) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    std::istringstream in{std::string(text)};
    try {
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error &e) {
        config_error(std::string("malformed config: ") + e.message() + " at line " +
                     std::to_string(e.line()));
    }
    RawConfig raw;
    for (const auto &[section, body] : tree) {
        if (body.empty()) {
            config_error("key '" + section + "' must appear inside [run] or [params]");
        }
        if (section == "run") {
            for (const auto &[key, node] : body) {
                const std::string v = trim(node.data());
                if (key == "experiment") {
                    raw.experiment = v;
                } else if (key == "seed") {
                    raw.seed = parse_number<std::uint64_t>(v, "seed");
                } else if (key == "mode") {
                    raw.mode = v;
                } else {
                    config_error("unknown key '" + key + "' in [run]");
                }
            }
        } else if (section == "params") {
            for (const auto &[key, node] : body) {
                raw.params.emplace_back(key, node.data());
            }
        } else {
            config_error("unknown section [" + section + "]");
        }
    }
    return raw;
}

RawConfig read_json(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error &e) {
        config_error(std::string("malformed JSON config: ") + e.what());
    }
    if (!j.is_object()) {
        config_error("JSON config must be an object");
    }
    RawConfig raw;
    for (const auto &[key, v] : j.items()) {
        if (key == "experiment") {
            if (!v.is_string()) {
                config_error("'experiment' must be a string");
            }
            raw.experiment = v.get<std::string>();
        } else if (key == "seed") {
            if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
                config_error("'seed' must be a non-negative integer");
            }
            raw.seed = v.get<std::uint64_t>();
        } else if (key == "mode") {
            if (!v.is_string()) {
                config_error("'mode' must be a string");
            }
            raw.mode = v.get<std::string>();
        } else if (key == "params") {
            if (!v.is_object()) {
                config_error("'params' must be an object");
            }
            for (const auto &[pk, pv] : v.items()) {
                raw.params.emplace_back(pk, pv);
            }
        } else {
            config_error("unknown key '" + key + "'");
        }
    }
    return raw;
}

RunConfig resolve(const RawConfig &raw) {
    if (!raw.experiment) {
        config_error("config does not name an experiment");
    }
    RunConfig cfg = default_config(*raw.experiment);
    const ExperimentInfo &info = experiment_info(cfg.experiment);
    cfg.seed = raw.seed.value_or(0);
    if (raw.mode) {
        cfg.mode = parse_mode(*raw.mode);
    }
    std::set<std::string> seen;
    for (const auto &[key, value] : raw.params) {
        const ParamSpec &spec = find_param(info, key);
        if (!seen.insert(key).second) {
            config_error("parameter '" + key + "' given twice");
        }
        Value v = std::holds_alternative<std::string>(value)
                      ? from_text(spec, std::get<std::string>(value))
                      : from_json(spec, std::get<Json>(value));
        if (spec.kind == Kind::Text && !spec.choices.empty()) {
            const auto &s = std::get<std::string>(v);
            if (std::find(spec.choices.begin(), spec.choices.end(), s) == spec.choices.end()) {
                config_error("parameter '" + key + "' has unsupported value '" + s + "'");
            }
        }
        cfg.params[key] = std::move(v);
    }
    return cfg;
}

template <class T> const T &typed(const RunConfig &cfg, const std::string &key) {
    const auto it = cfg.params.find(key);
    if (it == cfg.params.end()) {
        config_error("experiment " + cfg.experiment + " has no parameter '" + key + "'");
    }
    const T *v = std::get_if<T>(&it->second);
    if (v == nullptr) {
        config_error("parameter '" + key + "' has the wrong type");
    }
    return *v;
}

} // namespace

std::string_view mode_name(Mode m) noexcept {
    return m == Mode::Sampled ? "sampled" : "postselect";
}

Mode parse_mode(std::string_view s) {
    if (s == "postselect") {
        return Mode::PostSelect;
    }
    if (s == "sampled") {
        return Mode::Sampled;
    }
    config_error("mode must be postselect or sampled, got '" + std::string(s) + "'");
}

const std::vector<ExperimentInfo> &experiments() {
    static const std::vector<ExperimentInfo> table = build_table();
    return table;
}

const ExperimentInfo &experiment_info(std::string_view name) {
    for (const auto &e : experiments()) {
        if (e.name == name) {
            return e;
        }
    }
    config_error("unknown experiment '" + std::string(name) + "'");
}

double RunConfig::real(const std::string &key) const { return typed<double>(*this, key); }

std::int64_t RunConfig::integer(const std::string &key) const {
    return typed<std::int64_t>(*this, key);
}

const std::string &RunConfig::text(const std::string &key) const {
    return typed<std::string>(*this, key);
}

const std::vector<double> &RunConfig::reals(const std::string &key) const {
    return typed<std::vector<double>>(*this, key);
}

RunConfig default_config(std::string_view experiment) {
    const ExperimentInfo &info = experiment_info(experiment);
    RunConfig cfg;
    cfg.experiment = info.name;
    for (const auto &p : info.params) {
        cfg.params[p.name] = p.default_value;
    }
    return cfg;
}

RunConfig parse_config(std::string_view text, Format format) {
    if (format == Format::Auto) {
        const auto first = text.find_first_not_of(" \t\r\n");
        format = (first != std::string_view::npos && text[first] == '{') ? Format::Json
                                                                           : Format::Ini;
    }
    return resolve(format == Format::Json ? read_json(text) : read_ini(text));
}

RunConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorCode::Io, "cannot open config file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    Format format = Format::Auto;
    if (path.extension() == ".json") {
        format = Format::Json;
    } else if (path.extension() == ".ini" || path.extension() == ".cfg") {
        format = Format::Ini;
    }
    return parse_config(buf.str(), format);
}

int exit_status(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::Config:
        return 2;
    case ErrorCode::Io:
        return 1;
    default:
        return 3;
    }
}

} // namespace pite::harness
