// model.hpp: Model-parameter sequences and the qubit state that drive a chain

#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qbd {

using cplx = std::complex<double>;
inline constexpr cplx I_UNIT{0.0, 1.0};

// ----- Model parameters -----

enum class ModelKind { general, homogeneous, baby, jaynes_cummings };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

inline constexpr double kTrappingTol = 1e-9;
inline constexpr double kNormalizationTol = 1e-12;

struct ModelParameters {
    ModelKind kind = ModelKind::general;
    std::vector<double> alpha;  // alpha[n] for n = 0..n_max
    std::vector<double> beta;   // beta[n] for n = 0..n_max
    double g = 0.0;             // field constant, jaynes_cummings only
    // Constant bulk pair (alpha, beta) for homogeneous models; baby stores (0, 1).
    std::optional<std::pair<double, double>> bulk;

    int n_max() const { return static_cast<int>(alpha.size()) - 1; }
};

// Arguments for make_model; fields not used by a kind are ignored.
struct ModelArgs {
    std::vector<double> alpha;  // general: explicit sequence of length n_max + 1
    std::vector<double> beta;
    double bulk_alpha = 0.0;    // homogeneous
    double bulk_beta = 0.0;
    double g = 0.0;             // jaynes_cummings
};

ModelParameters make_model(ModelKind kind, const ModelArgs& args, int n_max);

ModelParameters make_baby(int n_max);
ModelParameters make_homogeneous(double alpha, double beta, int n_max);
ModelParameters make_jaynes_cummings(double g, int n_max);
ModelParameters make_general(std::vector<double> alpha, std::vector<double> beta);

// Checks every invariant; throws TrappingState or NormalizationViolation.
void validate(const ModelParameters& model);

// ----- Qubit state -----

class QubitState {
public:
    QubitState() = default;
    double lambda() const { return lambda_; }
    cplx zeta() const { return zeta_; }
    // nu = i * zeta * sqrt(lambda (1 - lambda)), recomputed on every read.
    cplx nu() const;

private:
    friend QubitState qubit_state(double lambda, cplx zeta);
    friend QubitState rotate_state(const QubitState& psi, cplx theta);
    double lambda_ = 0.0;
    cplx zeta_{0.0, 0.0};
};

QubitState qubit_state(double lambda, cplx zeta);
inline QubitState psi_plus() { return qubit_state(1.0, 0.0); }
inline QubitState psi_minus() { return qubit_state(0.0, 0.0); }

// 2x2 density matrix, row-major: {rho11, rho12, rho21, rho22}.
struct Density2 {
    cplx r11, r12, r21, r22;
    cplx operator()(int i, int j) const;
    cplx det() const { return r11 * r22 - r12 * r21; }
};

Density2 density_matrix(const QubitState& psi);

QubitState rotate_state(const QubitState& psi, cplx theta);

struct StateFlags {
    bool faithful = false;
    bool pure = false;
    bool diagonal = false;
    bool operator==(const StateFlags&) const = default;
};

StateFlags classify_state(const QubitState& psi);

bool is_psi_plus(const QubitState& psi);
bool is_psi_minus(const QubitState& psi);

}  // namespace qbd
