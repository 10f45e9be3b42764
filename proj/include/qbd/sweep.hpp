// sweep.hpp: Phase-diagram sweep over the Bloch-disc parameters

#pragma once

#include "qbd/config.hpp"
#include "qbd/spectral.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace qbd {

struct SweepOptions {
    double peripheral_tol = 1e-7;
    int convergence_offset = 8;         // the gap is recomputed at N - offset
    double gap_change_tolerance = 0.1;  // relative change that marks the gap as unconverged
    std::function<void(int done, int total)> progress;
};

struct SweepRow {
    int lambda_index = 0;
    int zeta_index = 0;
    double lambda = 0.0;
    double abs_zeta = 0.0;
    Tri irreducible_expected = Tri::unknown;
    std::string irreducible_numeric;  // "no" when a subharmonic projection is found, else "yes"
    Tri inv_state_expected = Tri::unknown;
    std::string inv_state_numeric;    // "yes" when the numeric solver returns a state
    Tri weakmix_expected = Tri::unknown;
    int fixed_dim = -1;               // -1 when the point failed
    double gap = 0.0;
    std::vector<std::string> caveats;
    Tri pure_state_expected = Tri::not_applicable;
    std::string pure_state_numeric;   // "n/a" unless the state is pure
    TheoremVerdicts verdicts;         // full verdicts with citations
};

// Evaluates one grid point; errors are recorded in the row's caveats, never thrown.
SweepRow sweep_point(const ModelParameters& model, double lambda, cplx zeta, int dim, const SweepOptions& options);

// Row-major over (lambda, |zeta|), lambda outermost.
std::vector<SweepRow> sweep_phase_diagram(const RunConfig& cfg, const SweepOptions& options);
std::vector<SweepRow> sweep_phase_diagram(const RunConfig& cfg);

bool has_caveat(const SweepRow& row, const std::string& tag);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
nlohmann::ordered_json sweep_row_json(const SweepRow& row);

}  // namespace qbd
