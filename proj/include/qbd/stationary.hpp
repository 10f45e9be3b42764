// stationary.hpp: Invariant states, numeric solver and explicit fixed points

#pragma once

#include "qbd/channel.hpp"

#include <string>
#include <vector>

namespace qbd {

enum class InvariantKind { closed_form_diagonal, closed_form_pure, closed_form_baby, numeric, none };

std::string to_string(InvariantKind kind);

struct InvariantStateResult {
    InvariantKind kind = InvariantKind::none;
    Matrix rho;                    // Hermitian, PSD, trace 1 when kind != none
    double residual = 0.0;         // verify_invariant(ch, rho)
    double renormalization = 1.0;  // factor applied after truncating the tail
    double boundary_mass = 0.0;    // mass on the top boundary window
    std::string diagnosis;         // reason when kind == none
    cplx ratio{0.0, 0.0};          // geometric ratio r, or q for the pure state
    int iterations = 0;            // numeric solver only
};

InvariantStateResult invariant_state_diagonal(const Channel& ch);
InvariantStateResult invariant_pure_state_homogeneous(const Channel& ch);
InvariantStateResult invariant_state_baby(const Channel& ch);

// Mass threshold above which a numeric solution is diagnosed as escaping to infinity.
inline constexpr double kBoundaryMassThreshold = 0.10;

// Number of top indices forming the boundary window: max(2, ceil(N / 8)).
int boundary_window(int dim);
double boundary_mass(const Matrix& rho);

// Predual closed at the top level by a reflecting Kraus completion, so that it is
// trace preserving and completely positive at truncation.
Matrix apply_schrodinger_reflecting(const Channel& ch, const Matrix& rho);

InvariantStateResult solve_invariant_numeric(const Channel& ch, double tol = 1e-12, int max_iter = 200000);

// Fixed points y_1..y_count for lambda > 1/2. With zeta = 0 these are y_n = s^n x; for the baby
// model with zeta != 0 each y_n also carries lower bands coupled through zeta.
std::vector<Matrix> explicit_fixed_points(const Channel& ch, int count);
// Diagonal x of the zeta = 0 family (top-band profile for the baby model).
Matrix explicit_fixed_point_seed(const Channel& ch);

// Max-entry norm of T(y) - y over indices <= N-2-shift.
double fixed_point_residual(const Channel& ch, const Matrix& y, int shift);

// Trace norm of T_*(rho) - rho on the corner p_[0,N-2].
double verify_invariant(const Channel& ch, const Matrix& rho);

}  // namespace qbd
