// model.cpp: Model construction, validation and qubit-state helpers

#include "qbd/model.hpp"

#include "qbd/errors.hpp"

#include <cmath>

namespace qbd {

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::general: return "general";
        case ModelKind::homogeneous: return "homogeneous";
        case ModelKind::baby: return "baby";
        case ModelKind::jaynes_cummings: return "jaynes_cummings";
    }
    return "general";
}

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "general") return ModelKind::general;
    if (name == "homogeneous") return ModelKind::homogeneous;
    if (name == "baby") return ModelKind::baby;
    if (name == "jaynes_cummings") return ModelKind::jaynes_cummings;
    throw PreconditionViolated("unknown model kind '" + name + "'");
}

// ----- Model parameters -----

void validate(const ModelParameters& model) {
    const auto& a = model.alpha;
    const auto& b = model.beta;
    if (a.size() != b.size()) throw PreconditionViolated("alpha and beta lengths differ");
    if (a.size() < 3) throw PreconditionViolated("n_max must be at least 2");
    if (a[0] != 1.0 || b[0] != 0.0) throw NormalizationViolation("alpha_0 must be 1 and beta_0 must be 0");
    for (std::size_t n = 0; n < a.size(); ++n) {
        if (!std::isfinite(a[n]) || !std::isfinite(b[n]) || std::abs(a[n]) > 1.0 || std::abs(b[n]) > 1.0)
            throw NormalizationViolation("coefficients out of [-1, 1] at n = " + std::to_string(n));
        if (std::abs(a[n] * a[n] + b[n] * b[n] - 1.0) > kNormalizationTol)
            throw NormalizationViolation("alpha_n^2 + beta_n^2 != 1 at n = " + std::to_string(n));
    }
    for (std::size_t n = 1; n < b.size(); ++n)
        if (std::abs(b[n]) <= kTrappingTol) throw TrappingState(static_cast<int>(n));
}

ModelParameters make_baby(int n_max) {
    ModelArgs args;
    return make_model(ModelKind::baby, args, n_max);
}

ModelParameters make_homogeneous(double alpha, double beta, int n_max) {
    ModelArgs args;
    args.bulk_alpha = alpha;
    args.bulk_beta = beta;
    return make_model(ModelKind::homogeneous, args, n_max);
}

ModelParameters make_jaynes_cummings(double g, int n_max) {
    ModelArgs args;
    args.g = g;
    return make_model(ModelKind::jaynes_cummings, args, n_max);
}

ModelParameters make_general(std::vector<double> alpha, std::vector<double> beta) {
    ModelArgs args;
    const int n_max = static_cast<int>(alpha.size()) - 1;
    args.alpha = std::move(alpha);
    args.beta = std::move(beta);
    return make_model(ModelKind::general, args, n_max);
}

ModelParameters make_model(ModelKind kind, const ModelArgs& args, int n_max) {
    if (n_max < 2) throw PreconditionViolated("n_max must be at least 2");
    ModelParameters m;
    m.kind = kind;
    const auto len = static_cast<std::size_t>(n_max) + 1;
    m.alpha.assign(len, 0.0);
    m.beta.assign(len, 0.0);
    switch (kind) {
        case ModelKind::general:
            if (args.alpha.size() != len || args.beta.size() != len)
                throw PreconditionViolated("general model needs sequences of length n_max + 1");
            m.alpha = args.alpha;
            m.beta = args.beta;
            break;
        case ModelKind::homogeneous:
            if (std::abs(args.bulk_alpha * args.bulk_alpha + args.bulk_beta * args.bulk_beta - 1.0) >
                kNormalizationTol)
                throw NormalizationViolation("homogeneous pair must satisfy alpha^2 + beta^2 = 1");
            for (std::size_t n = 1; n < len; ++n) {
                m.alpha[n] = args.bulk_alpha;
                m.beta[n] = args.bulk_beta;
            }
            m.bulk = std::make_pair(args.bulk_alpha, args.bulk_beta);
            break;
        case ModelKind::baby:
            for (std::size_t n = 1; n < len; ++n) m.beta[n] = 1.0;
            m.bulk = std::make_pair(0.0, 1.0);
            break;
        case ModelKind::jaynes_cummings:
            m.g = args.g;
            for (std::size_t n = 1; n < len; ++n) {
                const double phase = args.g * std::sqrt(static_cast<double>(n));
                m.alpha[n] = std::cos(phase);
                m.beta[n] = -std::sin(phase);
            }
            break;
    }
    if (kind != ModelKind::general) {
        m.alpha[0] = 1.0;
        m.beta[0] = 0.0;
    }
    validate(m);
    return m;
}

// ----- Qubit state -----

cplx QubitState::nu() const { return I_UNIT * zeta_ * std::sqrt(lambda_ * (1.0 - lambda_)); }

QubitState qubit_state(double lambda, cplx zeta) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw OutOfRange("lambda out of range");
    if (!(std::abs(zeta) <= 1.0 + 1e-15)) throw OutOfRange("zeta out of range");
    QubitState psi;
    psi.lambda_ = lambda;
    psi.zeta_ = (lambda == 0.0 || lambda == 1.0) ? cplx{0.0, 0.0} : zeta;
    return psi;
}

cplx Density2::operator()(int i, int j) const {
    if (i == 0) return j == 0 ? r11 : r12;
    return j == 0 ? r21 : r22;
}

Density2 density_matrix(const QubitState& psi) {
    const double l = psi.lambda();
    const double c = std::sqrt(l * (1.0 - l));
    return Density2{l, std::conj(psi.zeta()) * c, psi.zeta() * c, 1.0 - l};
}

QubitState rotate_state(const QubitState& psi, cplx theta) {
    if (std::abs(std::abs(theta) - 1.0) > 1e-12) throw OutOfRange("rotation must have unit modulus");
    QubitState out = psi;
    cplx z = psi.zeta() * theta;
    if (std::abs(z) > 1.0) z /= std::abs(z);  // absorb rounding above the unit circle
    out.zeta_ = z;
    return out;
}

StateFlags classify_state(const QubitState& psi) {
    const double l = psi.lambda();
    const double z = std::abs(psi.zeta());
    StateFlags f;
    f.faithful = l > 0.0 && l < 1.0 && z < 1.0 - 1e-12;
    f.pure = l == 0.0 || l == 1.0 || std::abs(z - 1.0) <= 1e-12;
    f.diagonal = psi.zeta() == cplx{0.0, 0.0};
    return f;
}

bool is_psi_plus(const QubitState& psi) { return psi.lambda() == 1.0; }
bool is_psi_minus(const QubitState& psi) { return psi.lambda() == 0.0; }

}  // namespace qbd
