#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "fraclab/data_builders.hpp"
#include "fraclab/rate_study.hpp"
#include "fraclab/symbol_expr.hpp"

namespace fraclab {

/// Flat `key = value` configuration with `#` comments. Keys are dotted
/// lowercase paths; lists are whitespace- or comma-separated. The full
/// schema is documented in the README.
class ParsedConfig {
public:
    static ParsedConfig from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return from_string(ss.str(), path);
    }

    static ParsedConfig from_string(const std::string& text, const std::string& origin = "<string>") {
        ParsedConfig cfg;
        cfg.origin_ = origin;
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            const auto trimmed = trim(line);
            if (trimmed.empty()) continue;
            const auto eq = trimmed.find('=');
            if (eq == std::string::npos)
                throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": expected 'key = value', got '" + trimmed + "'");
            const std::string key = trim(trimmed.substr(0, eq));
            const std::string value = trim(trimmed.substr(eq + 1));
            if (key.empty())
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
            if (cfg.values_.contains(key))
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" +
                                  key + "'");
            cfg.values_[key] = value;
        }
        return cfg;
    }

    bool has(const std::string& key) const { return values_.contains(key); }

    std::string get_string(const std::string& key, std::optional<std::string> fallback = {}) const {
        auto it = values_.find(key);
        if (it == values_.end()) {
            if (fallback) return *fallback;
            throw ConfigError("missing required config key '" + key + "'");
        }
        used_.insert(key);
        return it->second;
    }

    double get_double(const std::string& key, std::optional<double> fallback = {}) const {
        auto it = values_.find(key);
        if (it == values_.end()) {
            if (fallback) return *fallback;
            throw ConfigError("missing required config key '" + key + "'");
        }
        used_.insert(key);
        try {
            std::size_t used = 0;
            const double v = std::stod(it->second, &used);
            if (used != it->second.size()) throw std::invalid_argument("");
            return v;
        } catch (...) {
            throw ConfigError("config key '" + key + "': '" + it->second + "' is not a number");
        }
    }

    int get_int(const std::string& key, std::optional<int> fallback = {}) const {
        const double v = fallback ? get_double(key, static_cast<double>(*fallback))
                                  : get_double(key);
        const int i = static_cast<int>(v);
        if (static_cast<double>(i) != v)
            throw ConfigError("config key '" + key + "' must be an integer");
        return i;
    }

    bool get_bool(const std::string& key, std::optional<bool> fallback = {}) const {
        auto it = values_.find(key);
        if (it == values_.end()) {
            if (fallback) return *fallback;
            throw ConfigError("missing required config key '" + key + "'");
        }
        used_.insert(key);
        if (it->second == "true" || it->second == "1" || it->second == "yes") return true;
        if (it->second == "false" || it->second == "0" || it->second == "no") return false;
        throw ConfigError("config key '" + key + "': expected true/false, got '" + it->second + "'");
    }

    std::vector<double> get_double_list(const std::string& key) const {
        const std::string raw = get_string(key);
        std::vector<double> out;
        std::string token;
        std::istringstream ss(raw);
        while (std::getline(ss, token, ',')) {
            std::istringstream ws(token);
            std::string piece;
            while (ws >> piece) {
                try {
                    out.push_back(std::stod(piece));
                } catch (...) {
                    throw ConfigError("config key '" + key + "': '" + piece + "' is not a number");
                }
            }
        }
        if (out.empty()) throw ConfigError("config key '" + key + "' holds an empty list");
        return out;
    }

    std::vector<std::string> unused_keys() const {
        std::vector<std::string> out;
        for (const auto& [k, v] : values_)
            if (!used_.contains(k)) out.push_back(k);
        return out;
    }

    const std::map<std::string, std::string>& raw() const { return values_; }

private:
    static std::string trim(const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) return "";
        const auto e = s.find_last_not_of(" \t\r\n");
        return s.substr(b, e - b + 1);
    }

    std::string origin_;
    std::map<std::string, std::string> values_;
    mutable std::set<std::string> used_;
};

// ---------------------------------------------------------------------------
// typed loaders shared by the CLI commands

inline FourierGrid load_grid(const ParsedConfig& cfg) {
    return FourierGrid(cfg.get_int("grid.dim", 1), cfg.get_int("grid.modes", 256),
                       cfg.get_double("grid.length", 2.0 * std::numbers::pi));
}

inline double load_delta(const ParsedConfig& cfg, const std::string& key) {
    const double delta = cfg.get_double(key);
    if (!(delta > 0.0 && delta < 1.0 / 6.0))
        throw ConfigError("config key '" + key + "' = " + std::to_string(delta) +
                          ": delta must lie in (0, 1/6); the weighted-in-time kernel estimates "
                          "and their exponents eta, kappa are only defined on that window");
    return delta;
}

inline std::vector<double> load_alpha_window_grid(const ParsedConfig& cfg, const std::string& key,
                                                  double delta) {
    const auto grid = cfg.get_double_list(key);
    for (double a : grid) {
        if (a == 2.0)
            throw ConfigError("config key '" + key + "' contains 2: the classical exponent must "
                              "be excluded (the kernel gap vanishes there and log-log fits "
                              "degenerate)");
        if (std::abs(2.0 - a) > delta)
            throw ConfigError("config key '" + key + "': alpha = " + std::to_string(a) +
                              " violates |2 - alpha| <= delta = " + std::to_string(delta) +
                              "; every exponent must stay inside the delta-window");
    }
    return grid;
}

inline SolverConfig load_solver(const ParsedConfig& cfg) {
    SolverConfig sc;
    const std::string mode = cfg.get_string("solver.mode", std::string("etd"));
    if (mode == "etd") sc.mode = SolverMode::ETDMarching;
    else if (mode == "picard") sc.mode = SolverMode::GlobalPicard;
    else throw ConfigError("config key 'solver.mode': expected etd or picard, got '" + mode + "'");
    sc.substeps = cfg.get_int("solver.substeps", 256);
    sc.picard_tol = cfg.get_double("solver.picard_tol", 1e-10);
    sc.picard_max_iters = cfg.get_int("solver.picard_max_iters", 50);
    sc.constant_C = cfg.get_double("solver.constant", 1.0);
    sc.enforce_existence = cfg.get_bool("solver.enforce_existence", false);
    sc.validate();
    return sc;
}

inline SpectralField load_data(const ParsedConfig& cfg, const FourierGrid& grid, int components,
                               double sobolev_s, std::uint64_t seed) {
    const std::string kind = cfg.get_string("data.kind", std::string("random"));
    if (kind == "random") {
        const int band = cfg.get_int("data.band", 4);
        const double target = cfg.get_double("data.norm", 0.25);
        if (!(target > 0.0))
            throw ConfigError("config key 'data.norm' must be positive for random data");
        return make_random_band_data(grid, components, band, seed, target, sobolev_s);
    }
    if (kind != "modes")
        throw ConfigError("config key 'data.kind': expected random or modes, got '" + kind + "'");
    std::vector<DataMode> modes;
    for (int idx = 1;; ++idx) {
        const std::string key = "data.mode." + std::to_string(idx);
        if (!cfg.has(key)) break;
        std::istringstream ss(cfg.get_string(key));
        DataMode m;
        int comp = 0;
        if (!(ss >> comp)) throw ConfigError("config key '" + key + "': expected component index");
        m.component = comp - 1;
        for (int a = 0; a < grid.dimension(); ++a)
            if (!(ss >> m.wavevector[a]))
                throw ConfigError("config key '" + key + "': expected " +
                                  std::to_string(grid.dimension()) + " wavenumbers");
        std::string kind_word;
        if (!(ss >> m.amplitude >> kind_word))
            throw ConfigError("config key '" + key + "': expected amplitude and sin/cos");
        if (kind_word == "sin") m.sine = true;
        else if (kind_word == "cos") m.sine = false;
        else throw ConfigError("config key '" + key + "': expected sin or cos, got '" + kind_word + "'");
        modes.push_back(m);
    }
    if (modes.empty())
        throw ConfigError("data.kind = modes requires at least data.mode.1");
    SpectralField out = make_mode_data(grid, components, modes);
    const double target = cfg.get_double("data.norm", 0.0);
    if (target > 0.0) {
        const NormKind hs = NormKind::hs(sobolev_s);
        double nrm2 = 0.0;
        for (int i = 0; i < components; ++i) {
            const double ni = norm(out, hs, i);
            nrm2 += ni * ni;
        }
        if (!(nrm2 > 0.0)) throw ConfigError("mode data vanished; cannot reach data.norm");
        out *= target / std::sqrt(nrm2);
    }
    return out;
}

/// System assembly for solve-style commands: a named preset, or a custom
/// system given by symbol.q.i.j.k / symbol.l.i.j expression entries
/// (1-based indices).
inline SystemSpec load_system(const ParsedConfig& cfg, const FourierGrid& grid,
                              std::uint64_t seed) {
    const double s = cfg.get_double("system.s", grid.dimension() / 2.0 + 1.0);
    const std::string preset_name_str = cfg.get_string("system.preset");
    const auto alpha_raw = cfg.get_double_list("system.alpha");

    if (preset_name_str != "custom") {
        const Preset preset = parse_preset(preset_name_str);
        const int n = preset_components(preset, grid.dimension());
        std::vector<double> alpha = alpha_raw;
        if (alpha.size() == 1) alpha.assign(n, alpha.front());
        SpectralField data = load_data(cfg, grid, n, s, seed);
        return build_preset(preset, grid, std::move(alpha), std::move(data), s);
    }

    const int n = cfg.get_int("system.components");
    if (n < 1) throw ConfigError("config key 'system.components' must be positive");
    std::vector<double> alpha = alpha_raw;
    if (alpha.size() == 1) alpha.assign(n, alpha.front());
    SpectralField data = load_data(cfg, grid, n, s, seed);
    SystemSpec spec(grid, std::move(alpha), std::move(data), s);
    for (const auto& [key, value] : cfg.raw()) {
        if (key.starts_with("symbol.q.")) {
            std::istringstream ss(key.substr(9));
            int i = 0, j = 0, k = 0;
            char dot1 = 0, dot2 = 0;
            if (!(ss >> i >> dot1 >> j >> dot2 >> k) || dot1 != '.' || dot2 != '.')
                throw ConfigError("config key '" + key + "': expected symbol.q.<i>.<j>.<k>");
            if (i < 1 || i > n || j < 1 || j > n || k < 1 || k > n)
                throw ConfigError("config key '" + key + "': component index out of range 1.." +
                                  std::to_string(n));
            spec.q_table[{i - 1, j - 1, k - 1}] = SymbolExpr::parse(cfg.get_string(key), 1);
        } else if (key.starts_with("symbol.l.")) {
            std::istringstream ss(key.substr(9));
            int i = 0, j = 0;
            char dot1 = 0;
            if (!(ss >> i >> dot1 >> j) || dot1 != '.')
                throw ConfigError("config key '" + key + "': expected symbol.l.<i>.<j>");
            if (i < 1 || i > n || j < 1 || j > n)
                throw ConfigError("config key '" + key + "': component index out of range 1.." +
                                  std::to_string(n));
            spec.l_table[{i - 1, j - 1}] = SymbolExpr::parse(cfg.get_string(key), 0);
        }
    }
    // declared homogeneity is checked, not trusted
    for (const auto& [key, sym] : spec.q_table) {
        const auto rep = check_homogeneity(sym, 1, grid.dimension(), 32, 1e-9);
        if (!rep.pass)
            throw ConfigError("custom q symbol (" + std::to_string(key[0] + 1) + "," +
                              std::to_string(key[1] + 1) + "," + std::to_string(key[2] + 1) +
                              ") is not homogeneous of order 1 (max deviation " +
                              std::to_string(rep.max_deviation) + ")");
    }
    for (const auto& [key, sym] : spec.l_table) {
        const auto rep = check_homogeneity(sym, 0, grid.dimension(), 32, 1e-9);
        if (!rep.pass)
            throw ConfigError("custom l symbol (" + std::to_string(key[0] + 1) + "," +
                              std::to_string(key[1] + 1) +
                              ") is not scale-invariant (max deviation " +
                              std::to_string(rep.max_deviation) + ")");
    }
    return spec;
}

inline RateStudyConfig load_rate_study(const ParsedConfig& cfg, std::uint64_t seed) {
    RateStudyConfig rc;
    rc.grid = load_grid(cfg);
    rc.preset = parse_preset(cfg.get_string("system.preset", std::string("burgers")));
    rc.sobolev_s = cfg.get_double("system.s", rc.grid.dimension() / 2.0 + 1.0);
    rc.delta = load_delta(cfg, "study.delta");
    rc.alpha_grid = load_alpha_window_grid(cfg, "study.alpha", rc.delta);
    rc.beta = cfg.get_double_list("study.beta");
    rc.c = cfg.get_double("study.c");
    rc.epsilon_fraction = cfg.get_double("study.epsilon_fraction", 0.1);
    const std::string hp = cfg.get_string("study.horizon", std::string("t2"));
    if (hp == "t2") rc.horizon_policy = HorizonPolicy::UpToT2;
    else if (hp == "fixed") {
        rc.horizon_policy = HorizonPolicy::Fixed;
        rc.fixed_horizon = cfg.get_double("study.horizon_value");
    } else {
        throw ConfigError("config key 'study.horizon': expected t2 or fixed, got '" + hp + "'");
    }
    rc.perturbation_band = cfg.get_int("study.band", 4);
    rc.slope_tol = cfg.get_double("study.slope_tol", 0.2);
    rc.wsp_sigma = cfg.get_double("study.wsp_sigma", 1.0);
    if (!(rc.wsp_sigma > 0.0 && rc.wsp_sigma < rc.sobolev_s))
        throw ConfigError("config key 'study.wsp_sigma' = " + std::to_string(rc.wsp_sigma) +
                          ": the homogeneous-norm order must satisfy 0 < sigma < s = " +
                          std::to_string(rc.sobolev_s));
    rc.seed = seed;
    rc.solver = load_solver(cfg);
    const int n = preset_components(rc.preset, rc.grid.dimension());
    rc.base_data = load_data(cfg, rc.grid, n, rc.sobolev_s, Rng::derive(seed, 1));
    rc.has_base_data = true;
    rc.validate();
    return rc;
}

}  // namespace fraclab
