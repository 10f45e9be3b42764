// report.hpp: Task execution, the property suite and JSON/CSV report emission

#pragma once

#include "qbd/config.hpp"
#include "qbd/spectral.hpp"
#include "qbd/stationary.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qbd {

using OrderedJson = nlohmann::ordered_json;

OrderedJson complex_json(cplx z);
OrderedJson verdict_json(const Verdict& v);
OrderedJson expected_json(const TheoremVerdicts& v);
OrderedJson model_json(const ModelParameters& model, int dim);
OrderedJson state_json(const QubitState& psi);

// ----- Property suite -----

struct PropertyCheck {
    std::string name;
    double value = 0.0;      // measured violation or margin
    double tolerance = 0.0;  // pass when value <= tolerance (or >= for margins)
    bool pass = false;
    std::string note;
};

// Structural identities of the channel on random interior inputs drawn from `seed`.
std::vector<PropertyCheck> property_suite(const Channel& ch, std::uint64_t seed);
OrderedJson property_suite_json(const std::vector<PropertyCheck>& checks);

// Closed form matching the model and state when one applies, otherwise the numeric solver.
InvariantStateResult select_invariant_state(const Channel& ch);

// ----- Running a configuration -----

struct RunResult {
    OrderedJson report;
    int exit_code = 0;  // 0 ok, 2 validation failure inside a task, 3 numeric failure
};

RunResult run_tasks(const RunConfig& cfg);

// Sparse triplet CSV: row,col,re,im for every entry with modulus above 1e-300.
void write_matrix_csv(std::ostream& out, const Matrix& m);
void write_matrix_csv(const std::string& path, const Matrix& m);

// Shortest round-trip text for a double; "nan"/"inf" spelled out.
std::string format_double(double v);

}  // namespace qbd
