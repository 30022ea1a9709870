// Copyright 2026 The pite-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>

#include <Eigen/Eigenvalues>
#include <json.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "pite/grid_dynamics.hpp"
#include "pite/harness.hpp"
#include "pite/nonhermitian.hpp"
#include "pite/pite.hpp"
#include "pite/thermal.hpp"
#include "pite/two_level.hpp"

namespace pite::harness {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr std::size_t kWeightCount = 6;
constexpr double kFidelityTarget = 0.99;

int steps_param(const RunConfig &cfg, const std::string &key) {
    const auto n = cfg.integer(key);
    if (n < 1 || n > 100000) {
        fail(ErrorCode::InvalidArgument, key + " must lie in [1, 100000]");
    }
    return static_cast<int>(n);
}

int qubits_param(const RunConfig &cfg, int lo, int hi) {
    const auto n = cfg.integer("n_qubits");
    if (n < lo || n > hi) {
        fail(ErrorCode::Capacity, "n_qubits must lie in [" + std::to_string(lo) + ", " +
                                      std::to_string(hi) + "] for " + cfg.experiment);
    }
    return static_cast<int>(n);
}

Json json_number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json weights_json(const std::vector<double> &w) {
    Json a = Json::array();
    for (double x : w) {
        a.push_back(x);
    }
    return a;
}

void write_text(const fs::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        fail(ErrorCode::Io, "cannot write " + path.string());
    }
    out << text;
    if (!out) {
        fail(ErrorCode::Io, "write failed for " + path.string());
    }
}

TrajectoryOptions trajectory_options(const RunConfig &cfg, const HermitianOperator *ref,
                                     std::uint64_t stream) {
    TrajectoryOptions opt;
    opt.sampled = cfg.mode == Mode::Sampled;
    opt.seed = cfg.seed + stream;
    opt.reference = ref;
    opt.weight_count = kWeightCount;
    return opt;
}

// ---------------------------------------------------------------------------
// two_level

struct TwoLevelSetup {
    HermitianOperator h;
    StateVector psi0;
    two_level::Params params;
};

TwoLevelSetup two_level_setup(const RunConfig &cfg, double dtau) {
    two_level::Params p{cfg.real("e_gs"), cfg.real("e_ex"), cfg.real("m0"), dtau};
    const double w0 = cfg.real("w0");
    if (!(w0 >= 0.0) || !std::isfinite(w0)) {
        fail(ErrorCode::InvalidArgument, "w0 must be finite and non-negative");
    }
    RealVector e(2);
    e << p.e_gs, p.e_ex;
    auto h = HermitianOperator::from_spectrum(e, Matrix::Identity(2, 2));
    auto psi = StateVector::from_amplitudes({1.0, std::sqrt(w0)});
    return {std::move(h), std::move(psi), p};
}

double ratio(const StateDiagnostics &d) { return d.weights.at(1) / d.weights.at(0); }

Json run_two_level(const RunConfig &cfg, Table &table) {
    const int n_steps = steps_param(cfg, "n_steps");
    table.columns = {"dtau",     "k",        "p_exact", "p_approx",
                     "P_exact",  "P_approx", "w_exact", "w_approx"};
    Json per_dtau = Json::array();
    std::uint64_t stream = 0;
    for (double dtau : cfg.reals("dtau")) {
        const TwoLevelSetup s = two_level_setup(cfg, dtau);
        const PiteConfig exact_cfg(s.params.m0, dtau, CircuitKind::Exact);
        const PiteConfig approx_cfg(s.params.m0, dtau, CircuitKind::Approx);
        const ExactPiteCircuit exact(s.h, exact_cfg);
        const ApproxPiteCircuit approx(std::make_shared<SpectralRte>(s.h), approx_cfg);
        const Trajectory te =
            run_trajectory(s.psi0, exact, n_steps, trajectory_options(cfg, &s.h, stream++));
        const Trajectory ta =
            run_trajectory(s.psi0, approx, n_steps, trajectory_options(cfg, &s.h, stream++));

        double w_cf = cfg.real("w0");
        double w1_cf = w_cf;
        double res_p = 0.0, res_p1 = 0.0, res_w = 0.0, res_w1 = 0.0;
        for (int k = 0; k < n_steps; ++k) {
            const auto uk = static_cast<std::size_t>(k);
            const auto cf = two_level::exact_step(w_cf, s.params);
            const auto cf1 = two_level::approx_step(w1_cf, s.params);
            std::vector<std::optional<double>> row(8);
            row[0] = dtau;
            row[1] = k;
            if (uk < te.steps.size()) {
                const auto &r = te.steps[uk];
                row[2] = r.probability;
                row[4] = r.survival;
                row[6] = ratio(r.input);
                res_p = std::max(res_p, std::abs(r.probability - cf.probability));
                res_w = std::max(res_w, std::abs(*row[6] - w_cf));
            }
            if (uk < ta.steps.size()) {
                const auto &r = ta.steps[uk];
                row[3] = r.probability;
                row[5] = r.survival;
                row[7] = ratio(r.input);
                res_p1 = std::max(res_p1, std::abs(r.probability - cf1.probability));
                res_w1 = std::max(res_w1, std::abs(*row[7] - w1_cf));
            }
            table.rows.push_back(std::move(row));
            w_cf = cf.next_weight;
            w1_cf = cf1.next_weight;
        }

        const double g_ex = two_level::gamma(s.params.e_ex, s.params);
        const double g_gs = two_level::gamma(s.params.e_gs, s.params);
        Json entry;
        entry["dtau"] = dtau;
        entry["alpha"] = s.params.alpha();
        entry["alpha_approx"] = g_ex / g_gs;
        entry["max_residual_p_exact"] = res_p;
        entry["max_residual_p_approx"] = res_p1;
        entry["max_residual_w_exact"] = res_w;
        entry["max_residual_w_approx"] = res_w1;
        entry["saturated_probability"] =
            te.steps.empty() ? Json(nullptr) : Json(te.steps.back().probability);
        entry["saturated_probability_approx"] =
            ta.steps.empty() ? Json(nullptr) : Json(ta.steps.back().probability);
        entry["survival_final"] = te.steps.empty() ? 1.0 : te.steps.back().survival;
        entry["survival_final_approx"] = ta.steps.empty() ? 1.0 : ta.steps.back().survival;
        entry["final_fidelity_gs"] = te.final_diagnostics.ground_fidelity;
        entry["final_weights"] = weights_json(te.final_diagnostics.weights);
        entry["failed_step_exact"] = te.failed_step;
        entry["failed_step_approx"] = ta.failed_step;
        if (s.params.gap() > 0.0 && dtau > 0.0 && cfg.real("w0") > 1e-9) {
            entry["steps_estimate_to_1e-9"] =
                two_level::steps_to_weight(1e-9, cfg.real("w0"), s.params);
        }
        per_dtau.push_back(std::move(entry));
    }
    Json s;
    s["runs"] = std::move(per_dtau);
    return s;
}

// ---------------------------------------------------------------------------
// grid experiments

struct GridSetup {
    Grid1D grid;
    PotentialSpec potential;
    HermitianOperator h;
    std::unique_ptr<PiteStepper> stepper;
    StateVector psi0;
};

PotentialSpec grid_potential(const RunConfig &cfg) {
    if (cfg.experiment == "double_well") {
        return DoubleWellPotential{cfg.real("length"), cfg.real("d"), cfg.real("delta"),
                                   cfg.real("v0")};
    }
    return HarmonicPotential{cfg.real("omega"), cfg.real("length"), cfg.real("mass")};
}

StateVector grid_initial_state(const RunConfig &cfg, const Grid1D &grid,
                               const HermitianOperator &h) {
    const std::string &init = cfg.text("init");
    if (init == "double_peak" || init == "single_peak") {
        const double c = cfg.real("length") / 2.0;
        const double d = cfg.real("d");
        const StateVector lower = gaussian_state(grid, c + d / 2.0, d / 3.0);
        if (init == "single_peak") {
            return lower;
        }
        return superpose(lower, 1.0, gaussian_state(grid, c - d / 2.0, d / 3.0), 0.5);
    }
    const std::vector<Eigen::Index> picks =
        init == "lowest4" ? std::vector<Eigen::Index>{0, 1, 2, 3}
                          : std::vector<Eigen::Index>{1, 3, 5};
    Vector v = Vector::Zero(h.dimension());
    for (auto i : picks) {
        v += h.eigenvectors().col(i);
    }
    return StateVector::from_vector(v);
}

GridSetup grid_setup(const RunConfig &cfg) {
    const int n = qubits_param(cfg, 2, 10);
    Grid1D grid(n, cfg.real("length"), cfg.real("mass"));
    PotentialSpec pot = grid_potential(cfg);
    const HermitianOperator raw = build_grid_hamiltonian(grid, pot);
    const double e0 = raw.ground_energy();
    HermitianOperator h = shift_energy(raw, e0);

    const double m0 = cfg.real("m0");
    const double dtau = cfg.real("dtau");
    const std::string &circuit = cfg.text("circuit");
    std::unique_ptr<PiteStepper> stepper;
    if (circuit == "exact") {
        stepper = std::make_unique<ExactPiteCircuit>(h, PiteConfig(m0, dtau, CircuitKind::Exact));
    } else if (circuit == "approx") {
        stepper = std::make_unique<ApproxPiteCircuit>(std::make_shared<SpectralRte>(h),
                                                      PiteConfig(m0, dtau, CircuitKind::Approx));
    } else {
        stepper = std::make_unique<St1PiteCircuit>(single_particle_model(grid, pot, e0),
                                                   PiteConfig(m0, dtau, CircuitKind::Approx));
    }
    StateVector psi0 = grid_initial_state(cfg, grid, h);
    return {std::move(grid), std::move(pot), std::move(h), std::move(stepper), std::move(psi0)};
}

void push_grid_row(Table &table, int k, std::optional<bool> success, std::optional<double> p,
                   std::optional<double> survival, const StateDiagnostics &d) {
    std::vector<std::optional<double>> row{k};
    row.push_back(success ? std::optional<double>(*success ? 1.0 : 0.0) : std::nullopt);
    row.push_back(p);
    row.push_back(survival);
    row.push_back(d.ground_fidelity);
    row.push_back(d.energy);
    for (std::size_t i = 0; i < kWeightCount; ++i) {
        row.push_back(i < d.weights.size() ? std::optional<double>(d.weights[i]) : std::nullopt);
    }
    table.rows.push_back(std::move(row));
}

Json run_grid(const RunConfig &cfg, Table &table) {
    const int n_steps = steps_param(cfg, "n_steps");
    const GridSetup s = grid_setup(cfg);
    const Trajectory traj =
        run_trajectory(s.psi0, *s.stepper, n_steps, trajectory_options(cfg, &s.h, 0));

    table.columns = {"k", "success", "p", "P", "fidelity_gs", "energy"};
    for (std::size_t i = 0; i < kWeightCount; ++i) {
        table.columns.push_back("w" + std::to_string(i));
    }
    std::optional<int> reached;
    for (const auto &r : traj.steps) {
        push_grid_row(table, r.k, r.success, r.probability, r.survival, r.input);
        if (!reached && r.input.ground_fidelity >= kFidelityTarget) {
            reached = r.k;
        }
    }
    const int k_final = static_cast<int>(traj.steps.size());
    if (traj.failed_step < 0) {
        push_grid_row(table, k_final, std::nullopt, std::nullopt, std::nullopt,
                      traj.final_diagnostics);
        if (!reached && traj.final_diagnostics.ground_fidelity >= kFidelityTarget) {
            reached = k_final;
        }
    }

    Json out;
    out["ground_energy"] = build_grid_hamiltonian(s.grid, s.potential).ground_energy();
    out["final_fidelity_gs"] = traj.final_diagnostics.ground_fidelity;
    out["saturated_probability"] =
        traj.steps.empty() ? Json(nullptr) : Json(traj.steps.back().probability);
    out["survival_final"] = traj.steps.empty() ? 1.0 : traj.steps.back().survival;
    out["final_weights"] = weights_json(traj.final_diagnostics.weights);
    out["steps_to_fidelity_0.99"] = reached ? Json(*reached) : Json(nullptr);
    out["failed_step"] = traj.failed_step;
    return out;
}

// ---------------------------------------------------------------------------
// gibbs

Json run_gibbs(const RunConfig &cfg, Table &table) {
    const int n = qubits_param(cfg, 1, 6);
    const double beta = cfg.real("beta");
    const double m0 = cfg.real("m0");
    const auto shots = cfg.integer("shots");
    const auto slices = cfg.integer("slices");
    if (shots < 1) {
        fail(ErrorCode::InvalidArgument, "shots must be positive");
    }
    if (slices < 1 || slices > 1000) {
        fail(ErrorCode::InvalidArgument, "slices must lie in [1, 1000]");
    }
    Rng rng(cfg.seed);
    const HermitianOperator h = random_hermitian(n, rng, cfg.real("scale"));
    const GibbsResult g = gibbs_prepare(h, beta, m0, static_cast<int>(slices));
    const PartitionEstimate est =
        estimate_partition_sampled(h, beta, m0, static_cast<std::uint64_t>(shots), cfg.seed);

    double z = 0.0;
    for (Eigen::Index i = 0; i < h.eigenvalues().size(); ++i) {
        z += std::exp(-beta * h.eigenvalues()(i));
    }
    const Matrix oracle = h.function([beta](double l) { return std::exp(-beta * l); }) / z;

    table.columns = {"i", "j", "rho_re", "rho_im", "gibbs_re", "gibbs_im"};
    double max_err = 0.0;
    for (Eigen::Index i = 0; i < oracle.rows(); ++i) {
        for (Eigen::Index j = 0; j < oracle.cols(); ++j) {
            const Complex r = g.reduced_density(i, j);
            const Complex o = oracle(i, j);
            max_err = std::max(max_err, std::abs(r - o));
            table.rows.push_back({static_cast<double>(i), static_cast<double>(j), r.real(),
                                  r.imag(), o.real(), o.imag()});
        }
    }

    Json out;
    out["eigenvalues"] = Json::array();
    for (Eigen::Index i = 0; i < h.eigenvalues().size(); ++i) {
        out["eigenvalues"].push_back(h.eigenvalues()(i));
    }
    out["success_probability"] = g.success_probability;
    out["z_exact"] = z;
    out["z_estimate"] = g.z_estimate;
    out["free_energy"] = json_number(g.free_energy);
    out["free_energy_exact"] = -std::log(z) / beta;
    out["z_sampled"] = est.z_hat;
    out["z_sampled_stderr"] = est.stderr_z;
    out["successes"] = est.successes;
    out["shots"] = est.shots;
    out["entropy"] = von_neumann_entropy(g.reduced_density);
    out["entropy_exact"] = von_neumann_entropy(oracle);
    out["max_density_error"] = max_err;
    return out;
}

// ---------------------------------------------------------------------------
// nonhermitian

// Generator entries and the initial state, both drawn from the run seed.
std::pair<Matrix, StateVector> draw_generator(const RunConfig &cfg, int n) {
    const double scale = cfg.real("scale");
    if (!(scale >= 0.0)) {
        fail(ErrorCode::InvalidArgument, "scale must be non-negative");
    }
    Rng rng(cfg.seed);
    const auto dim = Eigen::Index{1} << n;
    Matrix l(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            const double re = scale * (2.0 * uniform01(rng) - 1.0);
            l(i, j) = {re, scale * (2.0 * uniform01(rng) - 1.0)};
        }
    }
    StateVector psi0 = random_state(n, rng);
    return {std::move(l), std::move(psi0)};
}

Json run_nonhermitian(const RunConfig &cfg, Table &table) {
    const int n = qubits_param(cfg, 1, 6);
    const int n_steps = steps_param(cfg, "n_steps");
    const double dt = cfg.real("dt");
    const double m0 = cfg.real("m0");
    const auto [l, psi0] = draw_generator(cfg, n);
    const NonHermitianCircuit circuit(GeneratorL(l), dt, m0);

    const Matrix map = 0.5 * (circuit.ops().m.matrix() + m0 * circuit.ops().u);
    Eigen::ComplexEigenSolver<Matrix> eig(map);
    Eigen::Index dominant = 0;
    eig.eigenvalues().cwiseAbs().maxCoeff(&dominant);
    const StateVector fixed = StateVector::from_vector(eig.eigenvectors().col(dominant));
    const Matrix step_exact = (l * dt).exp();

    table.columns = {"k", "success", "p", "P", "fidelity_exact", "fidelity_dominant"};
    Rng shots(cfg.seed + 1);
    StateVector psi = psi0;
    Vector exact = psi0.to_vector();
    double survival = 1.0;
    int failed = -1;
    const int anc[] = {n, n + 1};
    for (int k = 0; k < n_steps; ++k) {
        const StateVector pre = circuit.pre_measurement(psi);
        const double p = outcome_probabilities(pre.amplitudes(), pre.n_qubits(), anc)[0];
        survival *= p;
        const double f_exact = fidelity(psi, StateVector::from_vector(exact));
        const double f_dom = fidelity(psi, fixed);
        bool ok = true;
        if (cfg.mode == Mode::Sampled) {
            auto m = measure(pre, anc, shots);
            ok = m.outcome == 0;
            if (ok) {
                psi = std::move(m.post_state);
            }
        } else {
            psi = measure(pre, anc, PostSelect{0}).post_state;
        }
        table.rows.push_back({k, ok ? 1.0 : 0.0, p, survival, f_exact, f_dom});
        if (!ok) {
            failed = k;
            break;
        }
        exact = step_exact * exact;
        exact /= exact.norm();
    }
    if (failed < 0) {
        table.rows.push_back({n_steps, std::nullopt, std::nullopt, std::nullopt,
                              fidelity(psi, StateVector::from_vector(exact)),
                              fidelity(psi, fixed)});
    }

    Json out;
    out["survival_final"] = survival;
    out["final_fidelity_exact"] = fidelity(psi, StateVector::from_vector(exact));
    out["final_fidelity_dominant"] = fidelity(psi, fixed);
    out["dominant_eigenvalue_abs"] = std::abs(eig.eigenvalues()(dominant));
    out["failed_step"] = failed;
    return out;
}

// ---------------------------------------------------------------------------
// propagator

Json run_propagator(const RunConfig &cfg, Table &table, Table &checks) {
    const int n = qubits_param(cfg, 1, 12);
    const std::size_t points = std::size_t{1} << n;
    const long big = static_cast<long>(points);
    table.columns = {"lambda", "l", "re", "im", "abs"};
    checks.columns = {"lambda", "symmetry_residual", "sum_residual"};
    Json runs = Json::array();
    for (double lambda : cfg.reals("lambda")) {
        double sym = 0.0;
        Complex sum{0.0, 0.0};
        for (long ell = -(big - 1); ell < big; ++ell) {
            const Complex j = kinetic_propagator(ell, lambda, points);
            table.rows.push_back({lambda, static_cast<double>(ell), j.real(), j.imag(),
                                  std::abs(j)});
            sym = std::max(sym, std::abs(j - kinetic_propagator(-ell, lambda, points)));
            if (ell >= 0) {
                sum += j;
            }
        }
        const double sum_res = std::abs(sum - 1.0);
        checks.rows.push_back({lambda, sym, sum_res});
        Json e;
        e["lambda"] = lambda;
        e["symmetry_residual"] = sym;
        e["sum_residual"] = sum_res;
        runs.push_back(std::move(e));
    }
    Json out;
    out["points"] = points;
    out["runs"] = std::move(runs);
    return out;
}

void check_common(const RunConfig &cfg) {
    for (const auto &[key, value] : cfg.params) {
        if (const auto *d = std::get_if<double>(&value); d && !std::isfinite(*d)) {
            fail(ErrorCode::InvalidArgument, "parameter " + key + " is not finite");
        }
    }
}

} // namespace

void check_preconditions(const RunConfig &cfg) {
    check_common(cfg);
    const std::string &e = cfg.experiment;
    if (e == "two_level") {
        steps_param(cfg, "n_steps");
        for (double dtau : cfg.reals("dtau")) {
            const TwoLevelSetup s = two_level_setup(cfg, dtau);
            (void)ExactPiteCircuit(s.h, PiteConfig(s.params.m0, dtau, CircuitKind::Exact));
            (void)PiteConfig(s.params.m0, dtau, CircuitKind::Approx);
        }
    } else if (e == "double_well" || e == "harmonic" || e == "harmonic_odd") {
        steps_param(cfg, "n_steps");
        (void)grid_setup(cfg);
    } else if (e == "gibbs") {
        const int n = qubits_param(cfg, 1, 6);
        Rng rng(cfg.seed);
        const HermitianOperator h = random_hermitian(n, rng, cfg.real("scale"));
        if (cfg.integer("shots") < 1 || cfg.integer("slices") < 1) {
            fail(ErrorCode::InvalidArgument, "shots and slices must be positive");
        }
        if (!(cfg.real("beta") > 0.0)) {
            fail(ErrorCode::InvalidArgument, "beta must be positive");
        }
        (void)ExactPiteCircuit(
            h, PiteConfig(cfg.real("m0"), cfg.real("beta") / (2.0 * cfg.integer("slices"))));
    } else if (e == "nonhermitian") {
        const int n = qubits_param(cfg, 1, 6);
        steps_param(cfg, "n_steps");
        const auto [l, psi0] = draw_generator(cfg, n);
        (void)NonHermitianCircuit(GeneratorL(l), cfg.real("dt"), cfg.real("m0"));
    } else if (e == "propagator") {
        qubits_param(cfg, 1, 12);
    } else {
        (void)experiment_info(e);
    }
}

std::string format_csv(const Table &table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out += (i ? "," : "") + table.columns[i];
    }
    out += '\n';
    char buf[64];
    for (const auto &row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                out += ',';
            }
            if (row[i]) {
                std::snprintf(buf, sizeof buf, "%.17g", *row[i]);
                out += buf;
            }
        }
        out += '\n';
    }
    return out;
}

void write_csv(const Table &table, const fs::path &path) { write_text(path, format_csv(table)); }

RunResult run_experiment(const RunConfig &cfg, const fs::path &out_dir) {
    check_preconditions(cfg);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir)) {
        fail(ErrorCode::Io, "cannot create output directory " + out_dir.string());
    }

    Table table;
    std::optional<Table> extra;
    std::string extra_name;
    Json results;
    const std::string &e = cfg.experiment;
    if (e == "two_level") {
        results = run_two_level(cfg, table);
    } else if (e == "double_well" || e == "harmonic" || e == "harmonic_odd") {
        results = run_grid(cfg, table);
    } else if (e == "gibbs") {
        results = run_gibbs(cfg, table);
    } else if (e == "nonhermitian") {
        results = run_nonhermitian(cfg, table);
    } else {
        extra.emplace();
        extra_name = "propagator.csv";
        results = run_propagator(cfg, *extra, table);
    }

    Json summary;
    summary["experiment"] = cfg.experiment;
    summary["seed"] = cfg.seed;
    summary["mode"] = std::string(mode_name(cfg.mode));
    Json params;
    for (const auto &[key, value] : cfg.params) {
        std::visit([&](const auto &v) { params[key] = v; }, value);
    }
    summary["params"] = std::move(params);
    summary["results"] = std::move(results);

    RunResult r;
    r.files.push_back(out_dir / "trajectory.csv");
    write_csv(table, r.files.back());
    if (extra) {
        r.files.push_back(out_dir / extra_name);
        write_csv(*extra, r.files.back());
    }
    r.summary_json = summary.dump(2) + "\n";
    r.files.push_back(out_dir / "summary.json");
    write_text(r.files.back(), r.summary_json);
    return r;
}

} // namespace pite::harness
