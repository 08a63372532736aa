// config.hpp -- the flat JSON run configuration shared by every subcommand.

#pragma once

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cjt/meanfield.hpp"

namespace cjt::io {

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ModelConfig {
    double omega_z{1.0};
    double g{1.0};
    double delta{1.0}; // band minimum of the NN chain
    double t{0.0};     // band curvature of the NN chain
    int n_sites{1};
    std::string lattice_kind{"nn-periodic"};
    std::optional<std::vector<double>> onsite;
    std::optional<std::vector<std::vector<double>>> hopping_matrix;
};

struct SweepConfig {
    std::string parameter;
    double start{0.0};
    double stop{0.0};
    int points{1};
    std::string observable{"meanfield"}; // or "gaps"
};

struct EdConfig {
    int n_max{6};
    int n_sites{1};
    int num_levels{8};
};

struct OutputConfig {
    std::string format{"csv"}; // or "json"
    std::string path;
    int precision{12};
};

struct RunConfig {
    ModelConfig model;
    std::optional<SweepConfig> sweep;
    std::optional<EdConfig> ed;
    OutputConfig output;
};

namespace detail {

template <typename T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("config field '") + key + "': " + e.what());
    }
}

} // namespace detail

inline RunConfig parse_config(const nlohmann::json& j) {
    RunConfig cfg;
    if (j.contains("model")) {
        const auto& m = j.at("model");
        cfg.model.omega_z = detail::get_or(m, "omega_z", cfg.model.omega_z);
        cfg.model.g = detail::get_or(m, "g", cfg.model.g);
        cfg.model.delta = detail::get_or(m, "Delta", cfg.model.delta);
        cfg.model.t = detail::get_or(m, "t", cfg.model.t);
        cfg.model.n_sites = detail::get_or(m, "N", cfg.model.n_sites);
        cfg.model.lattice_kind = detail::get_or<std::string>(m, "lattice_kind", "nn-periodic");
        if (m.contains("onsite"))
            cfg.model.onsite = detail::get_or(m, "onsite", std::vector<double>{});
        if (m.contains("hopping_matrix"))
            cfg.model.hopping_matrix =
                detail::get_or(m, "hopping_matrix", std::vector<std::vector<double>>{});
    }
    if (cfg.model.lattice_kind != "nn-periodic" && cfg.model.lattice_kind != "explicit")
        throw config_error("model.lattice_kind must be \"nn-periodic\" or \"explicit\"");
    if (cfg.model.lattice_kind == "explicit" &&
        (!cfg.model.onsite || !cfg.model.hopping_matrix))
        throw config_error("explicit lattice requires model.onsite and model.hopping_matrix");

    if (j.contains("sweep")) {
        const auto& s = j.at("sweep");
        SweepConfig sw;
        if (!s.contains("parameter")) throw config_error("sweep.parameter is required");
        sw.parameter = detail::get_or<std::string>(s, "parameter", "");
        sw.start = detail::get_or(s, "start", 0.0);
        sw.stop = detail::get_or(s, "stop", 0.0);
        sw.points = detail::get_or(s, "points", 1);
        sw.observable = detail::get_or<std::string>(s, "observable", "meanfield");
        if (sw.parameter != "g" && sw.parameter != "omega_z" && sw.parameter != "Delta" &&
            sw.parameter != "t")
            throw config_error("sweep.parameter must be one of g, omega_z, Delta, t");
        if (sw.points < 1) throw config_error("sweep.points must be >= 1");
        if (sw.observable != "meanfield" && sw.observable != "gaps")
            throw config_error("sweep.observable must be \"meanfield\" or \"gaps\"");
        cfg.sweep = sw;
    }

    if (j.contains("ed")) {
        const auto& e = j.at("ed");
        EdConfig ed;
        ed.n_max = detail::get_or(e, "n_max", ed.n_max);
        ed.n_sites = detail::get_or(e, "N_sites", ed.n_sites);
        ed.num_levels = detail::get_or(e, "num_levels", ed.num_levels);
        if (ed.num_levels < 1) throw config_error("ed.num_levels must be >= 1");
        cfg.ed = ed;
    }

    if (j.contains("output")) {
        const auto& o = j.at("output");
        cfg.output.format = detail::get_or<std::string>(o, "format", "csv");
        cfg.output.path = detail::get_or<std::string>(o, "path", "");
        cfg.output.precision = detail::get_or(o, "precision", 12);
    }
    if (cfg.output.format != "csv" && cfg.output.format != "json")
        throw config_error("output.format must be \"csv\" or \"json\"");
    if (cfg.output.precision < 6 || cfg.output.precision > 17)
        throw config_error("output.precision must lie in [6, 17]");
    return cfg;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw config_error("cannot open config file: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("config parse: ") + e.what());
    }
    return parse_config(j);
}

inline ModelParams to_model_params(const ModelConfig& m) {
    ModelParams p;
    p.omega_z = m.omega_z;
    p.g = m.g;
    try {
        if (m.lattice_kind == "nn-periodic") {
            if (m.onsite) {
                if (static_cast<int>(m.onsite->size()) != m.n_sites)
                    throw config_error("model.onsite length must equal model.N");
                p.lattice = HoppingSpec::nn_periodic(m.n_sites, *m.onsite, -m.t);
            } else {
                p.lattice = HoppingSpec::nn_band(m.n_sites, m.delta, m.t);
            }
        } else {
            const auto& rows = *m.hopping_matrix;
            const int n = static_cast<int>(m.onsite->size());
            Matrix t(n, n);
            if (static_cast<int>(rows.size()) != n)
                throw config_error("model.hopping_matrix must be N x N");
            for (int i = 0; i < n; ++i) {
                if (static_cast<int>(rows[i].size()) != n)
                    throw config_error("model.hopping_matrix must be N x N");
                for (int j = 0; j < n; ++j) t(i, j) = rows[i][j];
            }
            p.lattice = HoppingSpec::explicit_matrix(*m.onsite, std::move(t));
        }
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("invalid model: ") + e.what());
    }
    return p;
}

} // namespace cjt::io
