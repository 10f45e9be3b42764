// sweep.cpp: Phase-diagram sweep with per-point error isolation

#include "qbd/sweep.hpp"

#include "qbd/report.hpp"
#include "qbd/stationary.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <ostream>

namespace qbd {

namespace {

// 1 - (second largest modulus) when the leading eigenvalue sits at 1, else 0.
double gap_only(const Channel& ch, double tol) {
    const auto sup = superoperator_matrix(ch);
    Vector values;
    dense_eigen(sup.m, values, nullptr);
    std::vector<double> mods(values.size());
    for (Eigen::Index i = 0; i < values.size(); ++i) mods[i] = std::abs(values(i));
    std::sort(mods.begin(), mods.end(), std::greater<>());
    if (mods.size() < 2 || std::abs(mods[0] - 1.0) > tol) return 0.0;
    return 1.0 - mods[1];
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string tri_field(Tri t) { return t == Tri::not_applicable ? "n/a" : to_string(t); }

}  // namespace

bool has_caveat(const SweepRow& row, const std::string& tag) {
    return std::any_of(row.caveats.begin(), row.caveats.end(),
                       [&](const std::string& c) { return c == tag || c.rfind(tag + ":", 0) == 0; });
}

SweepRow sweep_point(const ModelParameters& model, double lambda, cplx zeta, int dim, const SweepOptions& options) {
    SweepRow row;
    row.lambda = lambda;
    row.abs_zeta = std::abs(zeta);
    row.pure_state_numeric = "n/a";
    try {
        const auto psi = qubit_state(lambda, zeta);
        if (row.abs_zeta > 0.0 && psi.zeta() == cplx{0.0, 0.0}) row.caveats.push_back("zeta_forced_zero");
        const auto flags = classify_state(psi);
        row.verdicts = theorem_verdicts(model, psi);
        row.irreducible_expected = row.verdicts.irreducible.value;
        row.inv_state_expected = row.verdicts.invariant_state.value;
        row.weakmix_expected = row.verdicts.weak_mixing.value;
        row.pure_state_expected = row.verdicts.pure_invariant_state.value;

        const auto ch = kraus_set(model, psi, make_truncation(dim));
        const auto spec = peripheral_spectrum(ch, options.peripheral_tol);
        row.fixed_dim = spec.fixed_dim;
        row.gap = spec.gap;
        const auto inv = solve_invariant_numeric(ch);
        row.inv_state_numeric = yes_no(inv.kind != InvariantKind::none);
        std::vector<ProbeCandidate> supports;
        if (flags.pure) {
            bool pure = false;
            if (inv.kind != InvariantKind::none) {
                Eigen::SelfAdjointEigenSolver<Matrix> es(inv.rho);
                pure = es.eigenvalues()(dim - 1) >= 0.99;
                const Vector v = es.eigenvectors().col(dim - 1);
                if (pure) supports.push_back({v * v.adjoint(), "support of the numeric invariant state"});
            }
            row.pure_state_numeric = yes_no(pure);
            if (model.bulk && psi.lambda() > 0.0 && psi.lambda() < 1.0) {
                const auto closed = invariant_pure_state_homogeneous(ch);
                if (closed.kind == InvariantKind::closed_form_pure) {
                    Eigen::SelfAdjointEigenSolver<Matrix> es(closed.rho);
                    const Vector v = es.eigenvectors().col(dim - 1);
                    supports.push_back({v * v.adjoint(), "support of the closed-form pure invariant state"});
                }
            }
        }
        row.irreducible_numeric = yes_no(!subharmonic_probe(ch, 1e-9, &spec, supports).found);

        const int coarse = dim - options.convergence_offset;
        if (spec.fixed_dim == 1 && options.convergence_offset > 0 && coarse >= 8) {
            const double g2 = gap_only(kraus_set(model, psi, make_truncation(coarse)), options.peripheral_tol);
            if (std::abs(g2 - spec.gap) > options.gap_change_tolerance * spec.gap) row.caveats.push_back("gap_not_converged");
        }
        if (!spec.well_conditioned(options.peripheral_tol)) row.caveats.push_back("ill_conditioned_spectrum");
        const bool mixing_numeric = spec.weakly_mixing();
        if ((row.weakmix_expected == Tri::yes && !mixing_numeric) || (row.weakmix_expected == Tri::no && mixing_numeric))
            row.caveats.push_back("weakmix_disagrees");
        if ((row.inv_state_expected == Tri::yes && inv.kind == InvariantKind::none) ||
            (row.inv_state_expected == Tri::no && inv.kind != InvariantKind::none))
            row.caveats.push_back("inv_state_disagrees");
    } catch (const Error& e) {
        row.caveats.push_back("error:" + e.code());
        row.fixed_dim = -1;
    } catch (const std::exception& e) {
        row.caveats.push_back("error:InternalError");
        row.fixed_dim = -1;
    }
    return row;
}

std::vector<SweepRow> sweep_phase_diagram(const RunConfig& cfg, const SweepOptions& options) {
    if (!cfg.grid) throw PreconditionViolated("sweep needs a grid");
    const auto& grid = *cfg.grid;
    const auto model = build_model(cfg, cfg.truncation);
    std::vector<SweepRow> rows;
    const int total = grid.lambda.steps * grid.abs_zeta.steps;
    for (int i = 0; i < grid.lambda.steps; ++i)
        for (int k = 0; k < grid.abs_zeta.steps; ++k) {
            const double l = grid.lambda.at(i);
            const double z = grid.abs_zeta.at(k);
            auto row = sweep_point(model, l, std::polar(z, grid.zeta_phase), cfg.truncation, options);
            row.lambda_index = i;
            row.zeta_index = k;
            row.abs_zeta = z;
            rows.push_back(std::move(row));
            if (options.progress) options.progress(static_cast<int>(rows.size()), total);
        }
    return rows;
}

std::vector<SweepRow> sweep_phase_diagram(const RunConfig& cfg) {
    SweepOptions options;
    options.peripheral_tol = cfg.peripheral_tol;
    return sweep_phase_diagram(cfg, options);
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "lambda,abs_zeta,irreducible_expected,irreducible_numeric,inv_state_expected,inv_state_numeric,"
           "weakmix_expected,fixed_dim,gap,caveat,pure_state_expected,pure_state_numeric\n";
    for (const auto& r : rows) {
        std::string caveat;
        for (std::size_t i = 0; i < r.caveats.size(); ++i) caveat += (i ? ";" : "") + r.caveats[i];
        const bool failed = r.fixed_dim < 0;
        out << format_double(r.lambda) << ',' << format_double(r.abs_zeta) << ',' << tri_field(r.irreducible_expected)
            << ',' << r.irreducible_numeric << ',' << tri_field(r.inv_state_expected) << ',' << r.inv_state_numeric
            << ',' << tri_field(r.weakmix_expected) << ',' << (failed ? "" : std::to_string(r.fixed_dim)) << ','
            << (failed ? "" : format_double(r.gap)) << ',' << caveat << ',' << tri_field(r.pure_state_expected) << ','
            << r.pure_state_numeric << '\n';
    }
}

nlohmann::ordered_json sweep_row_json(const SweepRow& r) {
    nlohmann::ordered_json j;
    j["lambda"] = r.lambda;
    j["abs_zeta"] = r.abs_zeta;
    j["expected"] = expected_json(r.verdicts);
    j["irreducible_numeric"] = r.irreducible_numeric;
    j["inv_state_numeric"] = r.inv_state_numeric;
    j["pure_state_numeric"] = r.pure_state_numeric;
    if (r.fixed_dim >= 0) {
        j["fixed_dim"] = r.fixed_dim;
        j["gap"] = r.gap;
    }
    j["caveats"] = r.caveats;
    return j;
}

}  // namespace qbd
