// qbd.cpp: Command-line front end (run, sweep, verify)

#include "qbd/config.hpp"
#include "qbd/report.hpp"
#include "qbd/sweep.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qbd::ConfigError({"config: cannot read " + path});
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw qbd::ConfigError({std::string("config: invalid JSON: ") + e.what()});
    }
}

// The sweep and verify commands fix the task list themselves.
qbd::RunConfig load_with_tasks(const std::string& path, const char* task) {
    auto j = read_json(path);
    if (task && j.is_object()) j["tasks"] = nlohmann::json::array({task});
    return qbd::parse_config(j);
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw qbd::PreconditionViolated("cannot write " + path);
    out << text;
}

int cmd_run(const std::string& path) {
    const auto cfg = load_with_tasks(path, nullptr);
    const auto result = qbd::run_tasks(cfg);
    emit(cfg.output.report, result.report.dump(2) + "\n");
    return result.exit_code;
}

int cmd_sweep(const std::string& path, bool progress) {
    const auto cfg = load_with_tasks(path, "sweep");
    qbd::SweepOptions options;
    options.peripheral_tol = cfg.peripheral_tol;
    if (progress)
        options.progress = [](int done, int total) { std::cerr << "\rpoint " << done << "/" << total << std::flush; };
    const auto rows = qbd::sweep_phase_diagram(cfg, options);
    if (progress) std::cerr << "\n";
    std::ostringstream os;
    qbd::write_sweep_csv(os, rows);
    emit(cfg.output.csv, os.str());
    for (const auto& r : rows)
        if (r.fixed_dim < 0) return kExitNumeric;
    return 0;
}

int cmd_verify(const std::string& path) {
    const auto cfg = load_with_tasks(path, "verify");
    const auto result = qbd::run_tasks(cfg);
    emit(cfg.output.report, result.report.dump(2) + "\n");
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum birth-and-death chains on a truncated Fock space"};
    app.require_subcommand(1);
    std::string config;
    bool progress = false;

    auto* run = app.add_subcommand("run", "Execute the tasks listed in a configuration");
    run->add_option("config", config, "JSON configuration")->required();
    auto* sweep = app.add_subcommand("sweep", "Sweep the (lambda, |zeta|) grid and write CSV");
    sweep->add_option("config", config, "JSON configuration")->required();
    sweep->add_flag("--progress", progress, "Report progress on stderr");
    auto* verify = app.add_subcommand("verify", "Run the property suite on the configured channel");
    verify->add_option("config", config, "JSON configuration")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (run->parsed()) return cmd_run(config);
        if (sweep->parsed()) return cmd_sweep(config, progress);
        return cmd_verify(config);
    } catch (const qbd::ConfigError& e) {
        for (const auto& p : e.problems()) std::cerr << "error: " << p << "\n";
        return kExitValidation;
    } catch (const qbd::Error& e) {
        std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
        return e.is_validation() ? kExitValidation : kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}
