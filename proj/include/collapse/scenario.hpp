// scenario.hpp — scenario runner behind the CLI: builtin experiment
// definitions, the key=value config format with [scenario.<name>] sections,
// --param overrides, and deterministic artifact emission.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "collapse/bath.hpp"
#include "collapse/bell.hpp"
#include "collapse/io.hpp"
#include "collapse/model.hpp"
#include "collapse/verify.hpp"
#include "collapse/wavepacket.hpp"

namespace collapse {

enum class BathMode { none, discretized, asymptotic };

struct Scenario {
    std::string name;
    std::string experiment; // one of the known experiment names below

    ModelParams params{}; // defaults are the reference figure set
    BlochVector spin{0.25 * num::pi, 0.0};

    BathMode bath_mode = BathMode::discretized;
    std::size_t bath_n = 4096;
    double bath_cutoff = 0.0; // absolute rad/time; 0 means 50 * omega0
    double temperature = 0.0; // kT, energy units

    GridSpec q_grid{-8.0, 8.0, 641};
    GridSpec t_grid{0.0, 6.0, 301};

    // bell experiment
    double angle_a = 0.0;
    double angle_b = 0.5 * num::pi;
    double angle_c = 0.25 * num::pi;
    std::uint64_t mc_samples = 1000000;
    std::uint64_t seed = 12345;

    // bath-convergence experiment
    std::size_t conv_n_min = 512;
    std::size_t conv_n_max = 8192;
    double conv_t = 0.0; // 0 means 20 / eta

    double effective_cutoff() const {
        return bath_cutoff > 0.0 ? bath_cutoff : 50.0 * params.omega0;
    }

    BrownianSource brownian_source() const {
        switch (bath_mode) {
            case BathMode::none: return BrownianSource::none();
            case BathMode::discretized:
                return BrownianSource::discretized(
                    build_ohmic_bath(params, bath_n, effective_cutoff()), temperature);
            case BathMode::asymptotic: return BrownianSource::asymptotic();
        }
        return BrownianSource::none();
    }
};

inline const std::vector<std::string>& known_experiments() {
    static const std::vector<std::string> names = {
        "fig1", "fig2a", "fig2b", "fig3", "widths", "bath-convergence", "bell"};
    return names;
}

inline bool is_known_experiment(const std::string& name) {
    for (const auto& n : known_experiments())
        if (n == name) return true;
    return false;
}

// Builtin scenarios: one per experiment, all on the reference parameter set,
// so `run fig1` works with no config file.
inline std::map<std::string, Scenario> builtin_scenarios() {
    std::map<std::string, Scenario> out;
    for (const auto& name : known_experiments()) {
        Scenario s;
        s.name = name;
        s.experiment = name;
        out.emplace(name, std::move(s));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Config parsing and overrides
// ---------------------------------------------------------------------------
namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("config: key '" + key + "' expects a number, got '" + v + "'");
    return x;
}

inline std::uint64_t parse_count(const std::string& key, const std::string& v) {
    const double x = parse_double(key, v);
    if (!(x >= 0.0) || x != std::floor(x))
        throw ConfigError("config: key '" + key + "' expects a nonnegative integer");
    return static_cast<std::uint64_t>(x);
}

} // namespace detail

// Applies one key=value pair to a scenario. The same keys work in config
// files and --param overrides.
inline void set_scenario_key(Scenario& s, const std::string& key, const std::string& value) {
    using detail::parse_count;
    using detail::parse_double;
    if (key == "experiment") {
        s.experiment = value;
    } else if (key == "mass") {
        s.params.mass = parse_double(key, value);
    } else if (key == "omega0") {
        s.params.omega0 = parse_double(key, value);
    } else if (key == "eta") {
        s.params.eta = parse_double(key, value);
    } else if (key == "hbar") {
        s.params.hbar = parse_double(key, value);
    } else if (key == "field") {
        s.params.field = parse_double(key, value);
    } else if (key == "d") { // convenience: sets field = d * omega0^2
        s.params.field = parse_double(key, value) * s.params.omega0 * s.params.omega0;
    } else if (key == "theta") {
        s.spin.theta = parse_double(key, value);
    } else if (key == "phi") {
        s.spin.phi = parse_double(key, value);
    } else if (key == "bath") {
        if (value == "none")
            s.bath_mode = BathMode::none;
        else if (value == "discretized")
            s.bath_mode = BathMode::discretized;
        else if (value == "asymptotic")
            s.bath_mode = BathMode::asymptotic;
        else
            throw ConfigError("config: bath must be none|discretized|asymptotic");
    } else if (key == "bath_n") {
        s.bath_n = static_cast<std::size_t>(parse_count(key, value));
    } else if (key == "bath_cutoff") {
        s.bath_cutoff = parse_double(key, value);
    } else if (key == "temperature") {
        s.temperature = parse_double(key, value);
    } else if (key == "q_min") {
        s.q_grid.lo = parse_double(key, value);
    } else if (key == "q_max") {
        s.q_grid.hi = parse_double(key, value);
    } else if (key == "q_points") {
        s.q_grid.points = static_cast<std::size_t>(parse_count(key, value));
    } else if (key == "t_min") {
        s.t_grid.lo = parse_double(key, value);
    } else if (key == "t_max") {
        s.t_grid.hi = parse_double(key, value);
    } else if (key == "t_points") {
        s.t_grid.points = static_cast<std::size_t>(parse_count(key, value));
    } else if (key == "angle_a") {
        s.angle_a = parse_double(key, value);
    } else if (key == "angle_b") {
        s.angle_b = parse_double(key, value);
    } else if (key == "angle_c") {
        s.angle_c = parse_double(key, value);
    } else if (key == "mc_samples") {
        s.mc_samples = parse_count(key, value);
    } else if (key == "seed") {
        s.seed = parse_count(key, value);
    } else if (key == "conv_n_min") {
        s.conv_n_min = static_cast<std::size_t>(parse_count(key, value));
    } else if (key == "conv_n_max") {
        s.conv_n_max = static_cast<std::size_t>(parse_count(key, value));
    } else if (key == "conv_t") {
        s.conv_t = parse_double(key, value);
    } else {
        throw ConfigError("config: unknown key '" + key + "'");
    }
}

// Parses the config text: '#' comments, [scenario.<name>] sections, and
// key = value lines. New sections start from the builtin defaults (or from
// the builtin of the same name, so builtins can be partially overridden).
inline std::map<std::string, Scenario> parse_config(const std::string& text) {
    std::map<std::string, Scenario> scenarios = builtin_scenarios();
    Scenario* current = nullptr;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string line = detail::trim(text.substr(pos, eol - pos));
        pos = eol + 1;
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = detail::trim(line.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(line_no) + ": unterminated section");
            const std::string section = detail::trim(line.substr(1, line.size() - 2));
            const std::string prefix = "scenario.";
            if (section.rfind(prefix, 0) != 0)
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": sections must be [scenario.<name>]");
            const std::string name = section.substr(prefix.size());
            if (name.empty())
                throw ConfigError("config line " + std::to_string(line_no) + ": empty scenario name");
            auto it = scenarios.find(name);
            if (it == scenarios.end()) {
                Scenario s;
                s.name = name;
                s.experiment.clear(); // must be set by the section
                it = scenarios.emplace(name, std::move(s)).first;
            }
            current = &it->second;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        if (!current)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": key outside a [scenario.<name>] section");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        set_scenario_key(*current, key, value);
    }
    for (const auto& [name, sc] : scenarios) {
        if (!is_known_experiment(sc.experiment))
            throw ConfigError("config: scenario '" + name + "' references unknown experiment '" +
                              sc.experiment + "'");
    }
    return scenarios;
}

// ---------------------------------------------------------------------------
// Experiment execution
// ---------------------------------------------------------------------------
namespace detail {

inline io::CsvTable grid_table(const DensityGrid& grid) {
    io::CsvTable table;
    table.header = {"t", "q", "rho_plus", "rho_minus", "rho_total"};
    table.rows.reserve(grid.t_axis.size() * grid.q_axis.size());
    for (std::size_t it = 0; it < grid.t_axis.size(); ++it) {
        for (std::size_t iq = 0; iq < grid.q_axis.size(); ++iq) {
            const std::size_t k = grid.index(it, iq);
            table.rows.push_back({grid.t_axis[it], grid.q_axis[iq], grid.rho_plus[k],
                                  grid.rho_minus[k], grid.rho_total[k]});
        }
    }
    return table;
}

inline io::CsvTable width_table_csv(const WidthTable& w) {
    io::CsvTable table;
    table.header = {"t", "sigma_Q", "sigma_xi", "sigma_Qxi"};
    table.rows.reserve(w.t.size());
    for (std::size_t i = 0; i < w.t.size(); ++i)
        table.rows.push_back({w.t[i], w.sigma_Q[i], w.sigma_xi[i], w.sigma_Qxi[i]});
    return table;
}

inline nlohmann::json bell_to_json(const BellReport& r) {
    return {{"P_ab", r.P_ab}, {"P_ac", r.P_ac}, {"P_bc", r.P_bc},
            {"lhs", r.lhs},   {"rhs", r.rhs},   {"violated", r.violated}};
}

} // namespace detail

inline std::vector<io::ArtifactSummary> run_experiment(const Scenario& s,
                                                       const std::filesystem::path& out_dir,
                                                       unsigned threads = 1) {
    if (!is_known_experiment(s.experiment))
        throw UnknownExperimentError("unknown experiment '" + s.experiment + "'");
    s.params.validate();
    s.spin.validate();

    std::vector<io::ArtifactSummary> artifacts;
    const auto emit_csv = [&](const std::string& base, const io::CsvTable& table) {
        artifacts.push_back(io::write_artifact(out_dir / (base + ".csv"), table));
    };

    if (s.experiment == "fig1") {
        const BrownianSource src = s.brownian_source();
        const auto bare = density_grid(s.params, s.spin, src, s.q_grid, s.t_grid, false, threads);
        const auto dressed = density_grid(s.params, s.spin, src, s.q_grid, s.t_grid, true, threads);
        emit_csv(s.name + "_no_brownian", detail::grid_table(bare));
        emit_csv(s.name + "_with_brownian", detail::grid_table(dressed));
    } else if (s.experiment == "fig2a" || s.experiment == "widths") {
        const WidthTable w = width_curves(s.params, s.brownian_source(), s.t_grid, threads);
        emit_csv(s.name, detail::width_table_csv(w));
    } else if (s.experiment == "fig2b") {
        const BornWeights w = probability_weights(s.spin);
        io::CsvTable table;
        table.header = {"t", "p_plus", "p_minus", "p_total"};
        s.t_grid.validate("fig2b t");
        for (std::size_t i = 0; i < s.t_grid.points; ++i)
            table.rows.push_back({s.t_grid.value(i), w.p_plus, w.p_minus, w.p_plus + w.p_minus});
        emit_csv(s.name, table);
    } else if (s.experiment == "fig3") {
        const BrownianSource src = s.brownian_source();
        const std::vector<double> early = {0.0, 0.05};
        const std::vector<double> late = {0.0, 2.0};
        emit_csv(s.name + "a", detail::grid_table(density_grid(s.params, s.spin, src, s.q_grid,
                                                               early, false, threads)));
        emit_csv(s.name + "b_no_brownian",
                 detail::grid_table(density_grid(s.params, s.spin, src, s.q_grid, late, false,
                                                 threads)));
        emit_csv(s.name + "b_with_brownian",
                 detail::grid_table(density_grid(s.params, s.spin, src, s.q_grid, late, true,
                                                 threads)));
    } else if (s.experiment == "bath-convergence") {
        const double t = s.conv_t > 0.0 ? s.conv_t : 20.0 / s.params.eta;
        const double analytic = sigma_xi_sq_asymptotic(s.params).sigma_xi_sq;
        io::CsvTable table;
        table.header = {"n", "sigma_xi_sq", "sigma_xi_sq_analytic", "rel_error"};
        for (std::size_t n = s.conv_n_min; n <= s.conv_n_max; n *= 2) {
            const auto bath = build_ohmic_bath(s.params, n, s.effective_cutoff());
            const double sum = sigma_xi_sq_sum(s.params, bath, t, s.temperature).sigma_xi_sq;
            table.rows.push_back({static_cast<double>(n), sum, analytic,
                                  std::abs(sum - analytic) / analytic});
        }
        emit_csv(s.name, table);
    } else if (s.experiment == "bell") {
        const Setting a = Setting::from_angle(s.angle_a);
        const Setting b = Setting::from_angle(s.angle_b);
        const Setting c = Setting::from_angle(s.angle_c);
        const BellReport quantum = bell_check(a, b, c);
        const McBellReport classical =
            classical_bound_monte_carlo(a, b, c, s.mc_samples, s.seed);
        nlohmann::json j;
        j["settings"] = {{"angle_a", s.angle_a}, {"angle_b", s.angle_b}, {"angle_c", s.angle_c}};
        j["quantum"] = detail::bell_to_json(quantum);
        j["classical_monte_carlo"] = detail::bell_to_json(classical.bell);
        j["classical_monte_carlo"]["se_ab"] = classical.se_ab;
        j["classical_monte_carlo"]["se_ac"] = classical.se_ac;
        j["classical_monte_carlo"]["se_bc"] = classical.se_bc;
        j["classical_monte_carlo"]["samples"] = classical.samples;
        j["classical_monte_carlo"]["seed"] = classical.seed;
        artifacts.push_back(
            io::write_artifact(out_dir / (s.name + ".json"), j.dump(2) + "\n"));
    }
    return artifacts;
}

// ---------------------------------------------------------------------------
// Oracle suite behind `collapse-sim verify`
// ---------------------------------------------------------------------------
struct VerifyCheck {
    std::string name;
    double value = 0.0;
    double bound_lo = 0.0;
    double bound_hi = 0.0;
    bool pass = false;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_pass = true;

    void add(const std::string& name, double value, double lo, double hi) {
        const bool ok = value >= lo && value <= hi;
        checks.push_back({name, value, lo, hi, ok});
        all_pass = all_pass && ok;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["checks"] = nlohmann::json::array();
        for (const auto& c : checks) {
            j["checks"].push_back({{"name", c.name},
                                   {"value", c.value},
                                   {"bound_lo", c.bound_lo},
                                   {"bound_hi", c.bound_hi},
                                   {"pass", c.pass}});
        }
        j["all_pass"] = all_pass;
        return j;
    }
};

inline VerifyReport run_verify_suite() {
    VerifyReport rep;
    ModelParams p; // reference set

    // closed-form coefficients vs adaptive ODE integration
    {
        std::vector<double> grid;
        for (int i = 1; i <= 20; ++i) grid.push_back(0.5 * i);
        const auto a1 = ode_oracle(p, {}, grid, 1.0, 0.0);
        const auto a2 = ode_oracle(p, {}, grid, 0.0, 1.0);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const CoeffPair c = coeffs(p, grid[i]);
            worst = std::max(worst, std::abs(c.a1 - a1.q[i]));
            worst = std::max(worst, std::abs(c.a2 - a2.q[i]));
        }
        rep.add("coeffs_vs_ode_max_abs_err", worst, 0.0, 1e-8);
    }
    // bath coefficients vs driven-oscillator ODE
    {
        BathOscillator osc{1.0, 0.8 * p.omega0, p.mass};
        std::vector<double> grid;
        for (int i = 1; i <= 10; ++i) grid.push_back(0.8 * i);
        const auto t1 = ode_oracle(p, {ForcingKind::cosine, -1.0, osc.omega}, grid);
        const auto t2 = ode_oracle(p, {ForcingKind::sine_over_omega, -1.0, osc.omega}, grid);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const BathCoeffs b = bath_coeffs(p, osc, grid[i]);
            worst = std::max(worst, std::abs(b.b1 - t1.q[i]));
            worst = std::max(worst, std::abs(b.b2 - t2.q[i]));
        }
        rep.add("bath_coeffs_vs_ode_max_abs_err", worst, 0.0, 1e-8);
    }
    // Wronskian identity
    {
        double worst = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double t = 10.0 * i / 200.0;
            worst = std::max(worst, std::abs(wronskian(p, t) - std::exp(-p.eta * t)) /
                                        std::exp(-p.eta * t));
        }
        rep.add("wronskian_max_rel_err", worst, 0.0, 1e-10);
    }
    // asymptotic Brownian width vs quadrature
    {
        const double closed = sigma_xi_sq_asymptotic(p).sigma_xi_sq;
        const double quad = brownian_width_quadrature(p);
        rep.add("brownian_width_closed_vs_quadrature_rel_err",
                std::abs(closed - quad) / quad, 0.0, 1e-3);
    }
    // effective-Schroedinger residual convergence order
    {
        ResidualWindow win;
        rep.add("schrodinger_residual_order_field_off",
                schrodinger_residual(p, 0.0, win, 1e-4).order_estimate, 1.8, 2.2);
        rep.add("schrodinger_residual_order_field_on",
                schrodinger_residual(p, displacement(p), win, 1e-4).order_estimate, 1.8, 2.2);
    }
    // eigenfunction orthonormality spot check
    {
        const std::vector<double> q1 = {-0.5, 0.0, 0.7, 1.5};
        const OrthonormalityReport o = eigenfunction_orthonormality(p, 0.35, q1, 3.0);
        rep.add("orthonormality_diag_rel_err", o.diag_rel_err, 0.0, 0.01);
        rep.add("orthonormality_max_offdiag_ratio", o.max_offdiag_ratio, 0.0, 0.05);
    }
    return rep;
}

} // namespace collapse
