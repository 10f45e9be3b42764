// report.cpp: Task execution, property suite and report emission

#include "qbd/report.hpp"

#include "qbd/classical.hpp"
#include "qbd/sweep.hpp"

#include <Eigen/Eigenvalues>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

namespace qbd {

namespace {

constexpr double kPi = 3.14159265358979323846;

Matrix random_matrix(std::mt19937_64& rng, int dim, int support) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix x = Matrix::Zero(dim, dim);
    for (int i = 0; i < support; ++i)
        for (int j = 0; j < support; ++j) x(i, j) = cplx{gauss(rng), gauss(rng)};
    return x;
}

Matrix random_state(std::mt19937_64& rng, int dim, int support) {
    const Matrix g = random_matrix(rng, dim, support);
    Matrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

PropertyCheck at_most(std::string name, double value, double tol, std::string note = {}) {
    return {std::move(name), value, tol, value <= tol, std::move(note)};
}

PropertyCheck at_least(std::string name, double value, double tol, std::string note = {}) {
    return {std::move(name), value, tol, value >= tol, std::move(note)};
}

OrderedJson number_json(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

OrderedJson error_json(const std::exception& e) {
    OrderedJson j;
    if (const auto* qe = dynamic_cast<const Error*>(&e)) j["code"] = qe->code();
    else j["code"] = "InternalError";
    j["message"] = e.what();
    return j;
}

OrderedJson invariant_json(const InvariantStateResult& r) {
    OrderedJson j;
    j["kind"] = to_string(r.kind);
    if (r.kind != InvariantKind::none) {
        j["residual"] = r.residual;
        j["renormalization"] = r.renormalization;
        j["boundary_mass"] = r.boundary_mass;
        Eigen::SelfAdjointEigenSolver<Matrix> es(r.rho);
        j["largest_eigenvalue"] = es.eigenvalues().maxCoeff();
        OrderedJson pops = OrderedJson::array();
        for (int n = 0; n < std::min<int>(16, static_cast<int>(r.rho.rows())); ++n) pops.push_back(r.rho(n, n).real());
        j["populations_head"] = pops;
    } else {
        j["diagnosis"] = r.diagnosis;
        j["boundary_mass"] = r.boundary_mass;
    }
    if (r.kind == InvariantKind::numeric) j["iterations"] = r.iterations;
    else j["ratio"] = complex_json(r.ratio);
    return j;
}

std::filesystem::path matrix_path(const RunConfig& cfg, const std::string& name) {
    return std::filesystem::path(cfg.output.matrices) / (name + ".csv");
}

// ----- Individual tasks -----

OrderedJson task_evolve(const RunConfig& cfg, const Channel& ch) {
    const int dim = ch.dim();
    Matrix rho = matrix_unit(cfg.evolve_initial, cfg.evolve_initial, dim);
    OrderedJson steps = OrderedJson::array();
    for (int k = 1; k <= cfg.evolve_steps; ++k) {
        rho = apply_schrodinger(ch, rho);
        double mean = 0.0;
        for (int n = 0; n < dim; ++n) mean += n * rho(n, n).real();
        OrderedJson s;
        s["step"] = k;
        s["trace"] = rho.trace().real();
        s["mean_level"] = mean;
        s["boundary_mass"] = boundary_mass(rho);
        steps.push_back(s);
    }
    if (!cfg.output.matrices.empty()) write_matrix_csv(matrix_path(cfg, "evolved_state").string(), rho);
    OrderedJson j;
    j["initial_level"] = cfg.evolve_initial;
    j["steps"] = steps;
    return j;
}

OrderedJson task_stationary(const RunConfig& cfg, const Channel& ch) {
    OrderedJson j;
    const auto chosen = select_invariant_state(ch);
    j["selected"] = invariant_json(chosen);
    const auto numeric = solve_invariant_numeric(ch);
    j["numeric"] = invariant_json(numeric);
    if (chosen.kind != InvariantKind::none && chosen.kind != InvariantKind::numeric && numeric.kind != InvariantKind::none)
        j["closed_vs_numeric"] = trace_norm_hermitian(chosen.rho - numeric.rho);
    if (!cfg.output.matrices.empty() && chosen.kind != InvariantKind::none)
        write_matrix_csv(matrix_path(cfg, "invariant_state").string(), chosen.rho);

    const bool has_family = ch.psi.lambda() > 0.5 && ch.psi.lambda() < 1.0 &&
                            (ch.model.kind == ModelKind::baby ||
                             (ch.model.kind == ModelKind::homogeneous && ch.psi.zeta() == cplx{0.0, 0.0}));
    if (has_family && ch.dim() >= 8) {
        const int count = std::min(5, ch.dim() - 3);
        const auto ys = explicit_fixed_points(ch, count);
        OrderedJson res = OrderedJson::array();
        for (int n = 0; n < count; ++n) res.push_back(fixed_point_residual(ch, ys[n], n + 1));
        j["explicit_fixed_points"] = {{"count", count}, {"residuals", res}};
    }
    return j;
}

OrderedJson task_spectrum(const RunConfig& cfg, const Channel& ch) {
    const auto spec = peripheral_spectrum(ch, cfg.peripheral_tol);
    OrderedJson j;
    j["tolerance"] = cfg.peripheral_tol;
    j["fixed_dim"] = spec.fixed_dim;
    j["gap"] = spec.gap;
    j["weakly_mixing"] = spec.weakly_mixing();
    j["peripheral_error_bound"] = number_json(spec.peripheral_error_bound);
    j["well_conditioned"] = spec.well_conditioned(cfg.peripheral_tol);
    OrderedJson per = OrderedJson::array();
    for (const auto& p : spec.peripheral) per.push_back({{"value", complex_json(p.value)}, {"residual", p.residual}});
    j["peripheral"] = per;
    OrderedJson head = OrderedJson::array();
    for (std::size_t i = 0; i < std::min<std::size_t>(12, spec.eigenvalues.size()); ++i)
        head.push_back(complex_json(spec.eigenvalues[i]));
    j["leading_eigenvalues"] = head;

    const auto probe = subharmonic_probe(ch, 1e-9, &spec);
    OrderedJson pj;
    pj["found"] = probe.found;
    pj["evidence"] = probe.found ? "subharmonic projection exhibited" : "no subharmonic projection in the searched family (evidence, not proof)";
    if (probe.found) {
        pj["projection"] = probe.label;
        pj["psd_margin"] = probe.psd_margin;
        pj["kraus_criterion"] = probe.kraus_criterion;
    }
    pj["candidates_tested"] = probe.candidates_tested;
    j["subharmonic_probe"] = pj;

    if (!cfg.output.matrices.empty()) {
        std::ofstream out(matrix_path(cfg, "eigenvalues"));
        out << "index,re,im,abs\n";
        for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
            const cplx mu = spec.eigenvalues[i];
            out << i << ',' << format_double(mu.real()) << ',' << format_double(mu.imag()) << ','
                << format_double(std::abs(mu)) << '\n';
        }
    }
    return j;
}

OrderedJson task_extremal(const Channel& ch) {
    const auto rep = extremality_report(ch);
    OrderedJson j;
    j["verdict"] = to_string(rep.verdict);
    j["gram_rank"] = rep.gram_rank;
    j["kraus_rank"] = rep.kraus_rank;
    if (!rep.decomposition.empty()) {
        OrderedJson parts = OrderedJson::array();
        for (const auto& p : rep.decomposition) parts.push_back({{"weight", p.weight}, {"kraus_terms", p.kraus.size()}});
        j["decomposition"] = parts;
        j["recombination_error"] = rep.recombination_error;
        j["unitality_error"] = rep.unitality_error;
        j["part1_p0_01"] = complex_json(rep.part1_p0_01);
        j["part2_p0_01"] = complex_json(rep.part2_p0_01);
        j["parts_distance"] = rep.parts_distance;
        if (rep.split_mu > 0.0) j["split_mu"] = rep.split_mu;
    }
    return j;
}

OrderedJson task_classical(const RunConfig& cfg, const Channel& ch) {
    const auto chain = classical_transition_matrix(ch);
    const int dim = chain.dim;
    OrderedJson down = OrderedJson::array(), stay = OrderedJson::array(), up = OrderedJson::array();
    for (int n = 0; n < std::min(dim, 16); ++n) {
        down.push_back(n >= 1 ? chain.transition(n, n - 1) : 0.0);
        stay.push_back(chain.transition(n, n));
        up.push_back(n + 1 < dim ? chain.transition(n, n + 1) : 0.0);
    }
    OrderedJson j;
    j["rates_head"] = {{"down", down}, {"stay", stay}, {"up", up}};
    const auto st = classical_stationary(chain);
    OrderedJson sj;
    sj["exists"] = st.exists;
    sj["ratio"] = number_json(st.ratio);
    if (st.exists) {
        sj["residual"] = st.residual;
        sj["renormalization"] = st.renormalization;
        OrderedJson head = OrderedJson::array();
        for (int n = 0; n < std::min(dim, 16); ++n) head.push_back(st.pi(n));
        sj["pi_head"] = head;
    } else {
        sj["diagnosis"] = st.diagnosis;
    }
    j["stationary"] = sj;
    const auto inv = diagonal_invariance_check(ch);
    j["diagonal_invariance"] = {{"invariant", inv.invariant}, {"max_off_diagonal", inv.max_off_diagonal}};
    if (!cfg.output.matrices.empty())
        write_matrix_csv(matrix_path(cfg, "classical_transition").string(), chain.transition.cast<cplx>());
    return j;
}

}  // namespace

// ----- JSON helpers -----

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

OrderedJson complex_json(cplx z) {
    OrderedJson j;
    j["re"] = number_json(z.real());
    j["im"] = number_json(z.imag());
    return j;
}

OrderedJson verdict_json(const Verdict& v) {
    OrderedJson j;
    j["value"] = to_string(v.value);
    j["citation"] = v.citation;
    return j;
}

OrderedJson expected_json(const TheoremVerdicts& v) {
    OrderedJson j;
    j["irreducible"] = verdict_json(v.irreducible);
    j["invariant_state"] = verdict_json(v.invariant_state);
    j["weak_mixing"] = verdict_json(v.weak_mixing);
    j["pure_invariant_state"] = verdict_json(v.pure_invariant_state);
    return j;
}

OrderedJson model_json(const ModelParameters& model, int dim) {
    OrderedJson j;
    j["kind"] = to_string(model.kind);
    j["n_max"] = model.n_max();
    if (model.bulk) j["bulk"] = {{"alpha", model.bulk->first}, {"beta", model.bulk->second}};
    if (model.kind == ModelKind::jaynes_cummings) j["g"] = model.g;
    OrderedJson a = OrderedJson::array(), b = OrderedJson::array();
    for (int n = 0; n <= std::min(dim, model.n_max()) && n < 8; ++n) {
        a.push_back(model.alpha[n]);
        b.push_back(model.beta[n]);
    }
    j["alpha_head"] = a;
    j["beta_head"] = b;
    return j;
}

OrderedJson state_json(const QubitState& psi) {
    const auto flags = classify_state(psi);
    OrderedJson j;
    j["lambda"] = psi.lambda();
    j["zeta"] = complex_json(psi.zeta());
    j["faithful"] = flags.faithful;
    j["pure"] = flags.pure;
    j["diagonal"] = flags.diagonal;
    return j;
}

// ----- Property suite -----

std::vector<PropertyCheck> property_suite(const Channel& ch, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int dim = ch.dim();
    const int last = dim - 2;
    std::vector<PropertyCheck> out;

    double paths = 0.0;
    for (int r = 0; r < 20; ++r) {
        const Matrix x = random_matrix(rng, dim, dim - 1);
        const Matrix k = apply_heisenberg(ch, x, ApplyMode::kraus);
        paths = std::max({paths, max_abs(k - apply_heisenberg(ch, x, ApplyMode::dilation)),
                          max_abs(k - apply_heisenberg(ch, x, ApplyMode::coefficient))});
    }
    out.push_back(at_most("three_path_agreement", paths, 1e-12, "kraus vs dilation vs coefficient, 20 inputs"));

    const Matrix one = Matrix::Identity(dim, dim);
    out.push_back(at_most("unitality_interior", max_abs_corner(apply_heisenberg(ch, one) - one, last), 1e-12));

    double spill = 0.0;
    for (int m = 0; m <= last; ++m)
        for (int n = 0; n <= last; ++n) {
            const Matrix t = apply_heisenberg(ch, matrix_unit(m, n, dim), ApplyMode::coefficient);
            spill = std::max(spill, max_abs_outside(t, std::max(0, m - 1), m + 1, std::max(0, n - 1), n + 1));
        }
    out.push_back(at_most("locality_support", spill, 0.0, "T(e_mn) confined to neighbouring rows and columns"));

    double sandwich = INFINITY;
    for (int m = 1; m <= dim - 3; ++m)
        for (int n = m; n <= dim - 3; ++n) {
            const auto s = locality_sandwich_check(ch, m, n);
            sandwich = std::min({sandwich, s.lower_margin, s.upper_margin});
        }
    out.push_back(at_least("locality_sandwich_margin", sandwich, -1e-10, "p_[m+1,n-1] <= T(p_[m,n]) <= p_[m-1,n+1]"));

    const int small = std::min(dim, 8);
    const auto ch_small = kraus_set(ch.model, ch.psi, make_truncation(small));
    out.push_back(at_least("choi_min_eigenvalue", min_eigenvalue_hermitian(choi_matrix(ch_small)), -1e-10,
                           "complete positivity at N = " + std::to_string(small)));

    double ks = INFINITY;
    for (int r = 0; r < 10; ++r) {
        const Matrix x = random_matrix(rng, dim, dim - 2);
        const Matrix tx = apply_heisenberg(ch, x);
        ks = std::min(ks, min_eigenvalue_hermitian(corner(apply_heisenberg(ch, x.adjoint() * x) - tx.adjoint() * tx, last)));
    }
    out.push_back(at_least("kadison_schwarz_margin", ks, -1e-10, "T(x*x) - T(x)*T(x) on the interior"));

    double duality = 0.0;
    for (int r = 0; r < 10; ++r) {
        const Matrix rho = random_state(rng, dim, dim - 1);
        const Matrix x = random_matrix(rng, dim, dim - 1);
        const cplx lhs = (apply_schrodinger(ch, rho) * x).trace();
        const cplx rhs = (rho * apply_heisenberg(ch, x)).trace();
        duality = std::max(duality, std::abs(lhs - rhs) / std::max(1.0, max_abs(x)));
    }
    out.push_back(at_most("predual_duality", duality, 1e-12, "tr(T_*(rho) x) = tr(rho T(x))"));

    double cov = 0.0;
    for (cplx theta : {cplx{0.0, 1.0}, std::polar(1.0, kPi / 5.0), cplx{-1.0, 0.0}})
        for (int r = 0; r < 5; ++r) cov = std::max(cov, covariance_residual(ch, theta, random_matrix(rng, dim, dim)));
    out.push_back(at_most("rotation_covariance", cov, 1e-12, "theta in {i, exp(i pi/5), -1}"));

    out.push_back(at_most("time_reversal_unitality",
                          max_abs_corner(apply_time_reversed(ch, one) - one, last), 1e-12));

    if (ch.psi.zeta() == cplx{0.0, 0.0}) {
        const auto diag = diagonal_invariance_check(ch);
        out.push_back(at_most("diagonal_invariance", diag.max_off_diagonal, 1e-14, "T maps diagonal operators to diagonal operators"));
    }

    const auto chain = classical_transition_matrix(ch);
    double rates = 0.0;
    for (int n = 0; n <= last; ++n)
        for (int m = std::max(0, n - 1); m <= std::min(last, n + 1); ++m) {
            const Matrix t = apply_heisenberg(ch, matrix_unit(m, m, dim), ApplyMode::coefficient);
            rates = std::max(rates, std::abs(t(n, n).real() - chain.transition(n, m)));
        }
    out.push_back(at_most("classical_rates", rates, 1e-14, "P(n -> m) = <T(p_m) e_n, e_n>, independent of zeta"));

    const auto ext = extremality_report(ch);
    if (!ext.decomposition.empty()) {
        out.push_back(at_most("extremal_recombination", ext.recombination_error, 1e-12));
        out.push_back(at_most("extremal_parts_unital", ext.unitality_error, 1e-12));
    }
    return out;
}

OrderedJson property_suite_json(const std::vector<PropertyCheck>& checks) {
    OrderedJson arr = OrderedJson::array();
    for (const auto& c : checks) {
        OrderedJson j;
        j["name"] = c.name;
        j["value"] = number_json(c.value);
        j["tolerance"] = c.tolerance;
        j["pass"] = c.pass;
        if (!c.note.empty()) j["note"] = c.note;
        arr.push_back(j);
    }
    return arr;
}

InvariantStateResult select_invariant_state(const Channel& ch) {
    const auto flags = classify_state(ch.psi);
    if (ch.model.kind == ModelKind::baby) return invariant_state_baby(ch);
    if (flags.diagonal) return invariant_state_diagonal(ch);
    if (ch.model.bulk && flags.pure && ch.psi.lambda() > 0.0 && ch.psi.lambda() < 1.0)
        return invariant_pure_state_homogeneous(ch);
    return solve_invariant_numeric(ch);
}

// ----- Running -----

RunResult run_tasks(const RunConfig& cfg) {
    RunResult result;
    OrderedJson& rep = result.report;
    rep["truncation"] = cfg.truncation;
    rep["seed"] = cfg.seed;
    const auto model = build_model(cfg, cfg.truncation);
    rep["model"] = model_json(model, cfg.truncation);
    std::optional<Channel> ch;
    if (cfg.state) {
        ch = build_channel(cfg);
        rep["state"] = state_json(ch->psi);
        rep["expected"] = expected_json(theorem_verdicts(model, ch->psi));
        rep["boundary_leakage"] = boundary_leakage(*ch);
    }
    if (!cfg.output.matrices.empty()) std::filesystem::create_directories(cfg.output.matrices);

    OrderedJson tasks;
    for (Task t : cfg.tasks) {
        const auto name = to_string(t);
        try {
            switch (t) {
                case Task::evolve: tasks[name] = task_evolve(cfg, *ch); break;
                case Task::stationary: tasks[name] = task_stationary(cfg, *ch); break;
                case Task::spectrum: tasks[name] = task_spectrum(cfg, *ch); break;
                case Task::extremal: tasks[name] = task_extremal(*ch); break;
                case Task::classical: tasks[name] = task_classical(cfg, *ch); break;
                case Task::verify: {
                    const auto checks = property_suite(*ch, cfg.seed);
                    bool all = true;
                    for (const auto& c : checks) all = all && c.pass;
                    tasks[name] = {{"pass", all}, {"checks", property_suite_json(checks)}};
                    if (!all) result.exit_code = std::max(result.exit_code, 3);
                    break;
                }
                case Task::sweep: {
                    const auto rows = sweep_phase_diagram(cfg);
                    OrderedJson arr = OrderedJson::array();
                    for (const auto& r : rows) arr.push_back(sweep_row_json(r));
                    tasks[name] = {{"rows", arr}};
                    if (!cfg.output.csv.empty()) {
                        std::ofstream out(cfg.output.csv);
                        write_sweep_csv(out, rows);
                    }
                    break;
                }
            }
        } catch (const Error& e) {
            tasks[name] = {{"error", error_json(e)}};
            result.exit_code = std::max(result.exit_code, e.is_validation() ? 2 : 3);
        }
    }
    rep["tasks"] = tasks;
    return result;
}

void write_matrix_csv(std::ostream& out, const Matrix& m) {
    out << "row,col,re,im\n";
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            const cplx v = m(i, j);
            if (std::abs(v) <= 1e-300) continue;
            out << i << ',' << j << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
        }
}

void write_matrix_csv(const std::string& path, const Matrix& m) {
    std::ofstream out(path);
    if (!out) throw PreconditionViolated("cannot write " + path);
    write_matrix_csv(out, m);
}

}  // namespace qbd
