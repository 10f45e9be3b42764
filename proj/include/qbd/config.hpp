// config.hpp: Run configuration, JSON schema validation and channel construction

#pragma once

#include "qbd/channel.hpp"
#include "qbd/errors.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qbd {

// Every problem found while validating a configuration, reported together.
class ConfigError : public Error {
public:
    explicit ConfigError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    std::vector<std::string> problems_;
};

enum class Task { evolve, stationary, spectrum, extremal, classical, verify, sweep };
std::string to_string(Task task);

struct ModelSpec {
    ModelKind kind = ModelKind::baby;
    ModelArgs args;
    std::optional<int> n_max;  // defaults to the truncation dimension
};

struct StateSpec {
    double lambda = 0.0;
    double zeta_re = 0.0;
    double zeta_im = 0.0;
};

struct AxisSpec {
    double min = 0.0;
    double max = 1.0;
    int steps = 1;
    double at(int i) const;  // min + (max - min) * i / (steps - 1)
};

struct GridSpec {
    AxisSpec lambda{0.0, 1.0, 21};
    AxisSpec abs_zeta{0.0, 1.0, 11};
    double zeta_phase = 0.0;  // radians; zeta = |zeta| exp(i phase)
};

struct OutputSpec {
    std::string report;    // JSON report path; empty writes to stdout
    std::string csv;       // sweep CSV path; empty writes to stdout for `qbd sweep`
    std::string matrices;  // directory for operator/state/spectrum CSV files; empty disables
};

struct RunConfig {
    ModelSpec model;
    std::optional<StateSpec> state;
    std::optional<GridSpec> grid;
    int truncation = 24;
    std::vector<Task> tasks;
    OutputSpec output;
    std::uint64_t seed = 20240917;
    double peripheral_tol = 1e-7;
    int evolve_steps = 10;
    int evolve_initial = 0;
};

// Parses and validates; throws ConfigError listing every problem.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// Model and state built from a validated configuration.
ModelParameters build_model(const RunConfig& cfg, int dim);
QubitState build_state(const StateSpec& spec);
Channel build_channel(const RunConfig& cfg);

bool has_task(const RunConfig& cfg, Task task);

}  // namespace qbd
