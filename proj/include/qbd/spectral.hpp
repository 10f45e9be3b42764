// spectral.hpp: Superoperator spectra, subharmonic probe, extremality and expected verdicts

#pragma once

#include "qbd/channel.hpp"

#include <string>
#include <vector>

namespace qbd {

// ----- Superoperator -----

// How the matrix treats inputs just beyond the top index N-1.
//   compression:    plain corner compression; T(1) = 1 fails at index N-1.
//   reflected_jump: the downward jump lambda*beta_c*beta_d out of a virtual unit e_{c,d}
//                   (c or d = N) is folded back onto its own position, making the matrix unital
//                   while keeping every band intact. Exact on rows <= N-2, not positive.
enum class BoundaryClosure { compression, reflected_jump };

struct SuperoperatorMatrix {
    int dim = 0;
    BoundaryClosure closure = BoundaryClosure::reflected_jump;
    Matrix m;  // N^2 x N^2, idx(a, b) = a * N + b; column idx(c, d) holds T(e_{c,d})

    static int idx(int a, int b, int dim) { return a * dim + b; }
};

// Dense guard: default 64, overridden by the QBD_MAX_N environment variable.
int dense_dimension_limit();

SuperoperatorMatrix superoperator_matrix(const Channel& ch,
                                         BoundaryClosure closure = BoundaryClosure::reflected_jump);

// Reshape a vectorized operator (row-major flattening) to N x N.
Matrix unflatten(const Vector& v, int dim);

// ----- Spectrum -----

struct PeripheralEigenvalue {
    cplx value;
    double residual;  // max-entry of T(x) - mu x on the interior, x scaled to max-entry 1
};

struct SpectrumReport {
    int fixed_dim = 0;
    std::vector<PeripheralEigenvalue> peripheral;
    double gap = 0.0;
    std::vector<cplx> eigenvalues;  // sorted by decreasing modulus
    std::vector<Matrix> fixed_vectors;
    // Largest LAPACK error bound eps * |M| / rcond among eigenvalues that may lie in the peripheral band.
    // Above tol the counts reflect rounding of a highly non-normal matrix rather than the channel.
    double peripheral_error_bound = 0.0;
    bool well_conditioned(double tol) const { return peripheral_error_bound <= tol; }

    bool weakly_mixing() const { return fixed_dim == 1 && peripheral.size() == 1; }
};

// Eigenvalues of a dense complex matrix (LAPACK zgeev); right eigenvectors when requested.
void dense_eigen(const Matrix& a, Vector& values, Matrix* vectors);
// Balanced eigensolve (LAPACK zgeevx) with right eigenvectors and per-eigenvalue error bounds.
void dense_eigen_bounded(const Matrix& a, Vector& values, Matrix& vectors, RealVector& bounds);

SpectrumReport peripheral_spectrum(const Channel& ch, double tol = 1e-7);

// ----- Subharmonic projections -----

struct SubharmonicVerdict {
    bool found = false;
    Matrix projection;
    std::string label;            // e.g. "p_[0,0]" or "complement of p_[0,0]"
    double psd_margin = 0.0;      // min eigenvalue of T(p) - p on the interior
    double kraus_criterion = 0.0; // max-entry of t_i p - p t_i p on the interior
    int candidates_tested = 0;
};

struct ProbeCandidate {
    Matrix projection;
    std::string label;
};

// Tests p_[0,k] and complements, spectral projections of fixed elements, then `extra`.
SubharmonicVerdict subharmonic_probe(const Channel& ch, double tol = 1e-9, const SpectrumReport* spectrum = nullptr,
                                     const std::vector<ProbeCandidate>& extra = {});

// ----- Extremality -----

enum class Extremality { extremal, not_extremal, undetermined };
std::string to_string(Extremality e);

struct WeightedKraus {
    double weight;
    Matrix op;
};

struct ConvexPart {
    double weight;                    // convex weight of this part
    std::vector<WeightedKraus> kraus; // unital map x -> sum w k* x k
};

struct ExtremalityReport {
    Extremality verdict = Extremality::undetermined;
    int gram_rank = 0;   // rank of {sqrt(w_i w_j) t_i* t_j}
    int kraus_rank = 0;  // rank of {t_i}
    std::vector<ConvexPart> decomposition;
    double recombination_error = 0.0;
    double unitality_error = 0.0;
    cplx part1_p0_01{0.0, 0.0};  // <T_1(p_0) e_1, e_0>
    cplx part2_p0_01{0.0, 0.0};  // <T_2(p_0) e_1, e_0>
    double parts_distance = 0.0; // max-entry distance of T_1 and T_2 over interior matrix units
    double split_mu = 0.0;       // mu for the decompositions of psi_plus
};

Matrix apply_kraus_family(const std::vector<WeightedKraus>& family, const Matrix& x);

ExtremalityReport extremality_report(const Channel& ch);

// ----- Recursions -----

struct RecursionReport {
    double max_residual = 0.0;
    Eigen::Matrix2cd transfer;
    cplx omega1{0.0, 0.0};
    cplx omega2{0.0, 0.0};
    double det_identity_error = 0.0;    // |omega1 omega2 - det A|
    double trace_identity_error = 0.0;  // |omega1 + omega2 - tr A|
};

RecursionReport recursion_residuals(const Channel& ch, const Matrix& x, cplx mu);

// ----- Expected verdicts -----

enum class Tri { yes, no, unknown, not_applicable };
std::string to_string(Tri t);

struct Verdict {
    Tri value = Tri::unknown;
    std::string citation;
};

struct TheoremVerdicts {
    Verdict irreducible;
    Verdict invariant_state;
    Verdict weak_mixing;
    Verdict pure_invariant_state;  // homogeneous and baby models with a pure state only
};

TheoremVerdicts theorem_verdicts(const ModelParameters& model, const QubitState& psi);

// ----- psi_plus example with geometric beta -----

// beta_n = 2^-n, alpha_n = sqrt(1 - beta_n^2) for n >= 1.
ModelParameters make_halving_model(int n_max);

struct PsiPlusMixingReport {
    SpectrumReport spectrum;
    bool weakly_mixing_numeric = false;
    double min_growth_factor = 0.0;     // over k = 1..5, m = 0..10, worst mu on the circle
    bool growth_bound_ok = false;       // every factor >= 2^{k-1} + 2^{-k-1} >= 5/4
    double diagonal_factor_error = 0.0; // |2^{2m+2}(mu - (1 - 4^{-m-1})) - (2^{2m+2}(mu - 1) + 1)|
};

// Halving-model growth factor |2^{2m+k+2} (mu - sqrt((1 - 4^{-m-1})(1 - 4^{-m-k-1})))|.
double halving_growth_factor(int m, int k, cplx mu);

PsiPlusMixingReport example_psiplus_mixing_check(const Truncation& trunc);

}  // namespace qbd
