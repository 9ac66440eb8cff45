// collapse-sim — scenario runner for the damped spin-oscillator collapse
// model: reproduces the figure data grids, width tables, bath-convergence
// studies, and Bell-inequality reports as deterministic CSV/JSON artifacts.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "collapse/scenario.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_other = 1;
constexpr int exit_unknown_experiment = 2;
constexpr int exit_invalid_config = 3;
constexpr int exit_unsupported_regime = 4;
constexpr int exit_invalid_parameter = 5;
constexpr int exit_oracle_failure = 6;
constexpr int exit_io_error = 7;

int fail(const char* kind, const std::string& message, int code) {
    nlohmann::json j;
    j["error"] = {{"kind", kind}, {"message", message}, {"exit_code", code}};
    std::fprintf(stdout, "%s\n", j.dump().c_str());
    return code;
}

std::filesystem::path resolve_out_dir(const std::string& cli_out) {
    if (!cli_out.empty()) return cli_out;
    if (const char* env = std::getenv("COLLAPSE_SIM_OUT"); env && *env) return env;
    return ".";
}

int run_command(const std::string& experiment, const std::string& config_path,
                const std::string& out, const std::vector<std::string>& params,
                unsigned parallel) {
    auto scenarios = collapse::builtin_scenarios();
    if (!config_path.empty())
        scenarios = collapse::parse_config(collapse::io::read_file(config_path));

    const auto it = scenarios.find(experiment);
    if (it == scenarios.end())
        throw collapse::UnknownExperimentError("unknown experiment or scenario '" + experiment +
                                               "'");
    collapse::Scenario scenario = it->second;
    for (const auto& kv : params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw collapse::ConfigError("--param expects K=V, got '" + kv + "'");
        collapse::set_scenario_key(scenario, kv.substr(0, eq), kv.substr(eq + 1));
    }

    const bool uses_bath = scenario.experiment != "fig2b" && scenario.experiment != "bell";
    if (uses_bath && scenario.bath_mode == collapse::BathMode::discretized &&
        scenario.effective_cutoff() < 10.0 * scenario.params.omega0)
        std::fprintf(stderr, "warning: bath cutoff below 10*omega0; widths will be truncated\n");

    const auto out_dir = resolve_out_dir(out);
    const auto artifacts = collapse::run_experiment(scenario, out_dir, parallel);
    for (const auto& a : artifacts)
        std::fprintf(stdout, "wrote %s rows=%zu fnv1a64=%016llx\n", a.path.c_str(), a.rows,
                     static_cast<unsigned long long>(a.checksum));
    return exit_ok;
}

int verify_command(const std::string& out) {
    const collapse::VerifyReport report = collapse::run_verify_suite();
    const auto out_dir = resolve_out_dir(out);
    const auto artifact =
        collapse::io::write_artifact(out_dir / "verify_report.json", report.to_json().dump(2) + "\n");
    for (const auto& c : report.checks)
        std::fprintf(stdout, "%s %s value=%.6g bounds=[%.6g, %.6g]\n", c.pass ? "[PASS]" : "[FAIL]",
                     c.name.c_str(), c.value, c.bound_lo, c.bound_hi);
    std::fprintf(stdout, "wrote %s rows=%zu fnv1a64=%016llx\n", artifact.path.c_str(),
                 artifact.rows, static_cast<unsigned long long>(artifact.checksum));
    return report.all_pass ? exit_ok : exit_other;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"collapse-sim: damped spin-oscillator collapse model"};
    app.require_subcommand(1);

    std::string experiment;
    std::string config_path;
    std::string out_dir;
    std::vector<std::string> params;
    unsigned parallel = 1;

    auto* run = app.add_subcommand("run", "run a named experiment and emit its artifacts");
    run->add_option("experiment", experiment, "experiment or scenario name")->required();
    run->add_option("--config", config_path, "scenario config file");
    run->add_option("--out", out_dir, "output directory (default: $COLLAPSE_SIM_OUT or .)");
    run->add_option("--param", params, "override scenario keys, K=V (repeatable)");
    run->add_option("--parallel", parallel, "worker threads for grid evaluation");

    std::string verify_out;
    auto* verify = app.add_subcommand("verify", "run the oracle suite and emit a JSON report");
    verify->add_option("--out", verify_out, "output directory (default: $COLLAPSE_SIM_OUT or .)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return run_command(experiment, config_path, out_dir, params, parallel);
        return verify_command(verify_out);
    } catch (const collapse::UnknownExperimentError& e) {
        return fail("unknown_experiment", e.what(), exit_unknown_experiment);
    } catch (const collapse::ConfigError& e) {
        return fail("invalid_config", e.what(), exit_invalid_config);
    } catch (const collapse::UnsupportedRegimeError& e) {
        return fail("unsupported_regime", e.what(), exit_unsupported_regime);
    } catch (const collapse::ParameterError& e) {
        return fail("invalid_parameter", e.what(), exit_invalid_parameter);
    } catch (const collapse::OracleFailureError& e) {
        return fail("oracle_failure", e.what(), exit_oracle_failure);
    } catch (const collapse::IoError& e) {
        return fail("io_error", e.what(), exit_io_error);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), exit_other);
    }
}
