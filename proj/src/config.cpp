// config.cpp: Run configuration parsing and eager validation

#include "qbd/config.hpp"

#include "qbd/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace qbd {

using nlohmann::json;

namespace {

std::string join_problems(const std::vector<std::string>& problems) {
    std::ostringstream os;
    for (std::size_t i = 0; i < problems.size(); ++i) os << (i ? "; " : "") << problems[i];
    return os.str();
}

const std::vector<std::pair<Task, std::string>>& task_names() {
    static const std::vector<std::pair<Task, std::string>> names = {
        {Task::evolve, "evolve"},   {Task::stationary, "stationary"}, {Task::spectrum, "spectrum"},
        {Task::extremal, "extremal"}, {Task::classical, "classical"}, {Task::verify, "verify"},
        {Task::sweep, "sweep"}};
    return names;
}

// Collects problems instead of throwing on the first one.
class Checker {
public:
    std::vector<std::string> problems;

    void fail(const std::string& where, const std::string& what) { problems.push_back(where + ": " + what); }

    void allow_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
        for (const auto& [key, _] : obj.items()) {
            if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; }))
                fail(where, "unknown key \"" + key + "\"");
        }
    }

    std::optional<double> number(const json& obj, const char* key, const std::string& where, bool required) {
        if (!obj.contains(key)) {
            if (required) fail(where, std::string("missing \"") + key + "\"");
            return std::nullopt;
        }
        const auto& v = obj.at(key);
        if (!v.is_number()) {
            fail(where + "." + key, "expected a number");
            return std::nullopt;
        }
        const double d = v.get<double>();
        if (!std::isfinite(d)) {
            fail(where + "." + key, "must be finite");
            return std::nullopt;
        }
        return d;
    }

    std::optional<long long> integer(const json& obj, const char* key, const std::string& where) {
        if (!obj.contains(key)) return std::nullopt;
        const auto& v = obj.at(key);
        if (!v.is_number_integer()) {
            fail(where + "." + key, "expected an integer");
            return std::nullopt;
        }
        return v.get<long long>();
    }

    std::optional<std::string> string(const json& obj, const char* key, const std::string& where, bool required) {
        if (!obj.contains(key)) {
            if (required) fail(where, std::string("missing \"") + key + "\"");
            return std::nullopt;
        }
        const auto& v = obj.at(key);
        if (!v.is_string()) {
            fail(where + "." + key, "expected a string");
            return std::nullopt;
        }
        return v.get<std::string>();
    }

    bool object(const json& j, const std::string& where) {
        if (j.is_object()) return true;
        fail(where, "expected an object");
        return false;
    }

    std::vector<double> sequence(const json& obj, const char* key, const std::string& where) {
        std::vector<double> out;
        if (!obj.contains(key)) {
            fail(where, std::string("missing \"") + key + "\"");
            return out;
        }
        const auto& v = obj.at(key);
        if (!v.is_array()) {
            fail(where + "." + key, "expected an array of numbers");
            return out;
        }
        for (const auto& e : v) {
            if (!e.is_number()) {
                fail(where + "." + key, "expected an array of numbers");
                return {};
            }
            out.push_back(e.get<double>());
        }
        return out;
    }
};

void parse_model(Checker& c, const json& j, RunConfig& cfg) {
    if (!c.object(j, "model")) return;
    c.allow_keys(j, "model", {"kind", "alpha", "beta", "g", "alpha_seq", "beta_seq", "n_max"});
    const auto kind = c.string(j, "kind", "model", true);
    if (!kind) return;
    try {
        cfg.model.kind = model_kind_from_string(*kind);
    } catch (const std::exception& e) {
        c.fail("model.kind", e.what());
        return;
    }
    if (auto n = c.integer(j, "n_max", "model")) cfg.model.n_max = static_cast<int>(*n);
    auto& args = cfg.model.args;
    switch (cfg.model.kind) {
        case ModelKind::homogeneous: {
            const auto a = c.number(j, "alpha", "model", true);
            const auto b = c.number(j, "beta", "model", false);
            if (a) {
                args.bulk_alpha = *a;
                // beta defaults to the positive root of alpha^2 + beta^2 = 1.
                args.bulk_beta = b ? *b : std::sqrt(std::max(0.0, 1.0 - *a * *a));
            }
            break;
        }
        case ModelKind::jaynes_cummings:
            if (auto g = c.number(j, "g", "model", true)) args.g = *g;
            break;
        case ModelKind::general:
            args.alpha = c.sequence(j, "alpha_seq", "model");
            args.beta = c.sequence(j, "beta_seq", "model");
            if (args.alpha.size() != args.beta.size())
                c.fail("model", "alpha_seq and beta_seq must have the same length");
            break;
        case ModelKind::baby:
            break;
    }
}

void parse_state(Checker& c, const json& j, RunConfig& cfg) {
    if (!c.object(j, "state")) return;
    c.allow_keys(j, "state", {"preset", "lambda", "zeta_re", "zeta_im"});
    StateSpec spec;
    if (auto preset = c.string(j, "preset", "state", false)) {
        if (j.contains("lambda") || j.contains("zeta_re") || j.contains("zeta_im"))
            c.fail("state", "preset excludes lambda and zeta");
        if (*preset == "psi_plus") spec.lambda = 1.0;
        else if (*preset == "psi_minus") spec.lambda = 0.0;
        else c.fail("state.preset", "expected psi_plus or psi_minus");
        cfg.state = spec;
        return;
    }
    const auto l = c.number(j, "lambda", "state", true);
    spec.zeta_re = c.number(j, "zeta_re", "state", false).value_or(0.0);
    spec.zeta_im = c.number(j, "zeta_im", "state", false).value_or(0.0);
    if (!l) return;
    spec.lambda = *l;
    try {
        (void)build_state(spec);
    } catch (const Error& e) {
        c.fail("state", e.what());
        return;
    }
    cfg.state = spec;
}

void parse_axis(Checker& c, const json& j, const std::string& where, AxisSpec& axis) {
    if (!c.object(j, where)) return;
    c.allow_keys(j, where, {"min", "max", "steps"});
    const auto lo = c.number(j, "min", where, true);
    const auto hi = c.number(j, "max", where, true);
    const auto steps = c.integer(j, "steps", where);
    if (!steps) c.fail(where, "missing \"steps\"");
    if (!lo || !hi || !steps) return;
    if (*lo < 0.0 || *hi > 1.0 || *lo > *hi) c.fail(where, "range must satisfy 0 <= min <= max <= 1");
    if (*steps < 1) c.fail(where, "steps must be at least 1");
    if (*steps == 1 && *lo != *hi) c.fail(where, "a single step needs min = max");
    axis = AxisSpec{*lo, *hi, static_cast<int>(*steps)};
}

void parse_grid(Checker& c, const json& j, RunConfig& cfg) {
    if (!c.object(j, "grid")) return;
    c.allow_keys(j, "grid", {"lambda", "abs_zeta", "zeta_phase"});
    GridSpec grid;
    if (j.contains("lambda")) parse_axis(c, j.at("lambda"), "grid.lambda", grid.lambda);
    if (j.contains("abs_zeta")) parse_axis(c, j.at("abs_zeta"), "grid.abs_zeta", grid.abs_zeta);
    if (auto ph = c.number(j, "zeta_phase", "grid", false)) grid.zeta_phase = *ph;
    cfg.grid = grid;
}

void parse_tasks(Checker& c, const json& j, RunConfig& cfg) {
    if (!j.is_array()) {
        c.fail("tasks", "expected an array of task names");
        return;
    }
    std::set<std::string> seen;
    for (const auto& t : j) {
        if (!t.is_string()) {
            c.fail("tasks", "expected an array of task names");
            return;
        }
        const auto name = t.get<std::string>();
        const auto& names = task_names();
        auto it = std::find_if(names.begin(), names.end(), [&](const auto& p) { return p.second == name; });
        if (it == names.end()) {
            c.fail("tasks", "unknown task \"" + name + "\"");
            continue;
        }
        if (!seen.insert(name).second) {
            c.fail("tasks", "duplicate task \"" + name + "\"");
            continue;
        }
        cfg.tasks.push_back(it->first);
    }
}

// Preconditions that depend on several sections at once.
void check_preconditions(Checker& c, RunConfig& cfg, bool state_given) {
    const int dim = cfg.truncation;
    if (dim < 4) c.fail("truncation", "N must be at least 4");
    if (cfg.tasks.empty()) c.fail("tasks", "at least one task is required");
    const bool dense = has_task(cfg, Task::spectrum) || has_task(cfg, Task::sweep);
    if (dense && dim > dense_dimension_limit())
        c.fail("truncation", "N = " + std::to_string(dim) + " exceeds the dense limit " +
                                 std::to_string(dense_dimension_limit()) + " (set QBD_MAX_N to raise it)");
    const bool needs_state = std::any_of(cfg.tasks.begin(), cfg.tasks.end(), [](Task t) { return t != Task::sweep; });
    if (needs_state && !state_given) c.fail("state", "required by the requested tasks");
    if (has_task(cfg, Task::sweep) && !cfg.grid) c.fail("grid", "required by the sweep task");
    if (has_task(cfg, Task::evolve)) {
        if (cfg.evolve_steps < 0) c.fail("evolve.steps", "must be non-negative");
        if (cfg.evolve_initial < 0 || cfg.evolve_initial >= dim)
            c.fail("evolve.initial", "must index a basis vector below N");
    }
    if (!(cfg.peripheral_tol > 0.0 && cfg.peripheral_tol < 1e-2)) c.fail("tolerance.peripheral", "must lie in (0, 0.01)");
    if (dim < 4) return;
    if (cfg.model.n_max && *cfg.model.n_max < dim) c.fail("model.n_max", "must be at least the truncation N");
    if (cfg.model.kind == ModelKind::general && !cfg.model.args.alpha.empty() &&
        static_cast<int>(cfg.model.args.alpha.size()) < dim + 1)
        c.fail("model", "sequences need at least N + 1 entries");
    if (!c.problems.empty()) return;
    try {
        validate(build_model(cfg, dim));
    } catch (const Error& e) {
        c.fail("model", e.what());
    }
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : Error("ConfigError", join_problems(problems)), problems_(std::move(problems)) {}

std::string to_string(Task task) {
    for (const auto& [t, name] : task_names())
        if (t == task) return name;
    return "unknown";
}

double AxisSpec::at(int i) const {
    if (steps <= 1) return min;
    return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

bool has_task(const RunConfig& cfg, Task task) {
    return std::find(cfg.tasks.begin(), cfg.tasks.end(), task) != cfg.tasks.end();
}

RunConfig parse_config(const json& j) {
    Checker c;
    RunConfig cfg;
    if (!j.is_object()) throw ConfigError({"config: expected a JSON object"});
    c.allow_keys(j, "config", {"model", "state", "grid", "truncation", "tasks", "output", "seed", "tolerance", "evolve"});

    if (j.contains("model")) parse_model(c, j.at("model"), cfg);
    else c.fail("config", "missing \"model\"");
    if (j.contains("state")) parse_state(c, j.at("state"), cfg);
    if (j.contains("grid")) parse_grid(c, j.at("grid"), cfg);
    if (j.contains("truncation")) {
        if (auto n = c.integer(j, "truncation", "config")) cfg.truncation = static_cast<int>(*n);
    }
    if (j.contains("tasks")) parse_tasks(c, j.at("tasks"), cfg);
    else c.fail("config", "missing \"tasks\"");
    if (j.contains("output") && c.object(j.at("output"), "output")) {
        const auto& o = j.at("output");
        c.allow_keys(o, "output", {"report", "csv", "matrices"});
        cfg.output.report = c.string(o, "report", "output", false).value_or("");
        cfg.output.csv = c.string(o, "csv", "output", false).value_or("");
        cfg.output.matrices = c.string(o, "matrices", "output", false).value_or("");
    }
    if (j.contains("seed")) {
        const auto& s = j.at("seed");
        if (s.is_number_unsigned() || (s.is_number_integer() && s.get<long long>() >= 0)) cfg.seed = s.get<std::uint64_t>();
        else c.fail("config.seed", "expected a non-negative integer");
    }
    if (j.contains("tolerance") && c.object(j.at("tolerance"), "tolerance")) {
        c.allow_keys(j.at("tolerance"), "tolerance", {"peripheral"});
        if (auto t = c.number(j.at("tolerance"), "peripheral", "tolerance", false)) cfg.peripheral_tol = *t;
    }
    if (j.contains("evolve") && c.object(j.at("evolve"), "evolve")) {
        c.allow_keys(j.at("evolve"), "evolve", {"steps", "initial"});
        if (auto s = c.integer(j.at("evolve"), "steps", "evolve")) cfg.evolve_steps = static_cast<int>(*s);
        if (auto s = c.integer(j.at("evolve"), "initial", "evolve")) cfg.evolve_initial = static_cast<int>(*s);
    }
    check_preconditions(c, cfg, j.contains("state"));
    if (!c.problems.empty()) throw ConfigError(std::move(c.problems));
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"config: cannot read " + path});
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("config: invalid JSON: ") + e.what()});
    }
    return parse_config(j);
}

ModelParameters build_model(const RunConfig& cfg, int dim) {
    int n_max = cfg.model.n_max.value_or(dim);
    if (cfg.model.kind == ModelKind::general) n_max = static_cast<int>(cfg.model.args.alpha.size()) - 1;
    return make_model(cfg.model.kind, cfg.model.args, n_max);
}

QubitState build_state(const StateSpec& spec) { return qubit_state(spec.lambda, cplx{spec.zeta_re, spec.zeta_im}); }

Channel build_channel(const RunConfig& cfg) {
    if (!cfg.state) throw PreconditionViolated("a state is required to build the channel");
    return kraus_set(build_model(cfg, cfg.truncation), build_state(*cfg.state), make_truncation(cfg.truncation));
}

}  // namespace qbd
