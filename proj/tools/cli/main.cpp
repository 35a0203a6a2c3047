// covparam: stable stochastic linear systems with a prescribed stationary
// covariance, parametrized by a skew-symmetric matrix. Subcommands expose the
// parametrization, spectral sweeps, excitability bounds, spectral-density
// analyses, simulation, and random ensembles over CSV/JSON files.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "covparam/ensembles.hpp"
#include "covparam/errors.hpp"
#include "covparam/excitability.hpp"
#include "covparam/frequency.hpp"
#include "covparam/grids.hpp"
#include "covparam/linalg.hpp"
#include "covparam/lyapunov.hpp"
#include "covparam/matrix_io.hpp"
#include "covparam/parametrization.hpp"
#include "covparam/simulate.hpp"
#include "covparam/spectrum.hpp"
#include "covparam/version.hpp"

namespace cp = covparam;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string output;  // empty = stdout
    std::string format = "json";
    int threads = 1;
    cp::Tolerances tol;
};

int default_threads() {
    if (const char* env = std::getenv("COVPARAM_THREADS")) {
        try {
            return std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            // fall through to the default
        }
    }
    return 1;
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_format = true) {
    cmd->add_option("-o,--output", opts.output, "Output path (default: stdout)");
    if (with_format)
        cmd->add_option("--format", opts.format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}));
    opts.threads = default_threads();
    cmd->add_option("--threads", opts.threads, "Worker threads for grid evaluation")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--lyap-tol", opts.tol.lyap_residual, "Lyapunov residual tolerance");
    cmd->add_option("--spd-floor", opts.tol.spd_eig_floor, "Relative SPD eigenvalue floor");
    cmd->add_option("--skew-tol", opts.tol.skew_sym, "Skew-symmetry tolerance");
    cmd->add_option("--match-rel", opts.tol.match_rel, "Cross-check agreement tolerance");
}

json matrix_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

void emit(const CommonOpts& opts, const std::string& text) {
    if (opts.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opts.output);
    if (!out) throw cp::ValidationError("cannot open '" + opts.output + "' for writing");
    out << text;
}

// Every run echoes its effective configuration so results can be reproduced
// from logs alone.
void echo_config(const std::string& command, const json& options) {
    json j;
    j["command"] = command;
    j["options"] = options;
    j["version"] = cp::version;
    std::cerr << j.dump() << '\n';
}

json tol_json(const cp::Tolerances& tol) {
    return json{{"lyap_residual", tol.lyap_residual},
                {"spd_eig_floor", tol.spd_eig_floor},
                {"skew_sym", tol.skew_sym},
                {"match_rel", tol.match_rel}};
}

std::vector<double> make_alpha_grid(const std::string& spec, bool log) {
    return cp::make_grid(cp::parse_grid(spec, log));
}

// ---------------------------------------------------------------- commands

struct ParamForwardCmd {
    CommonOpts opts;
    std::string sigma_path, s_path, sigma_w_path;

    void run() const {
        echo_config("param-forward", {{"sigma", sigma_path},
                                      {"s", s_path},
                                      {"sigma_w", sigma_w_path},
                                      {"format", opts.format},
                                      {"tolerances", tol_json(opts.tol)}});
        cp::Parametrization p{cp::load_matrix_csv(sigma_path), cp::load_matrix_csv(s_path),
                              cp::load_matrix_csv(sigma_w_path)};
        const cp::SystemModel m = cp::forward_param(p, opts.tol);
        if (opts.format == "csv") {
            std::ostringstream out;
            cp::write_matrix_csv(out, m.A);
            emit(opts, out.str());
            return;
        }
        json j;
        j["n"] = m.A.rows();
        j["A"] = matrix_json(m.A);
        j["lyap_residual"] = cp::lyapunov_residual(m.A, p.Sigma, p.Sigma_w);
        j["hurwitz_margin"] = cp::hurwitz_margin(m.A);
        emit(opts, j.dump(2) + "\n");
    }
};

struct ParamInverseCmd {
    CommonOpts opts;
    std::string a_path, sigma_w_path;

    void run() const {
        echo_config("param-inverse", {{"a", a_path},
                                      {"sigma_w", sigma_w_path},
                                      {"format", opts.format},
                                      {"tolerances", tol_json(opts.tol)}});
        const cp::SystemModel m{cp::load_matrix_csv(a_path), cp::load_matrix_csv(sigma_w_path)};
        const cp::Parametrization p = cp::inverse_param(m, opts.tol);
        if (opts.format == "csv") {
            // Sigma block, blank line, S block.
            std::ostringstream out;
            cp::write_matrix_csv(out, p.Sigma);
            out << '\n';
            cp::write_matrix_csv(out, p.S);
            emit(opts, out.str());
            return;
        }
        json j;
        j["n"] = p.Sigma.rows();
        j["Sigma"] = matrix_json(p.Sigma);
        j["S"] = matrix_json(p.S);
        j["lyap_residual"] = cp::lyapunov_residual(m.A, p.Sigma, p.Sigma_w);
        j["s_norm"] = cp::spectral_norm(p.S);
        emit(opts, j.dump(2) + "\n");
    }
};

struct EigSweepCmd {
    CommonOpts opts;
    std::string sigma_path, sbar_path, sigma_w_path, alpha_spec;
    bool log_grid = false;

    void run() const {
        echo_config("eig-sweep", {{"sigma", sigma_path},
                                  {"sbar", sbar_path},
                                  {"sigma_w", sigma_w_path},
                                  {"alpha", alpha_spec},
                                  {"log", log_grid},
                                  {"format", opts.format},
                                  {"tolerances", tol_json(opts.tol)}});
        const cp::EigenLocus locus = cp::eigen_sweep(
            cp::load_matrix_csv(sigma_path), cp::load_matrix_csv(sigma_w_path),
            cp::load_matrix_csv(sbar_path), make_alpha_grid(alpha_spec, log_grid), opts.tol);

        if (opts.format == "json") {
            json rows = json::array();
            for (std::size_t k = 0; k < locus.alphas.size(); ++k)
                for (std::size_t i = 0; i < locus.branches[k].size(); ++i)
                    rows.push_back({{"alpha", locus.alphas[k]},
                                    {"branch_index", i},
                                    {"re", locus.branches[k][i].real()},
                                    {"im", locus.branches[k][i].imag()},
                                    {"asymptote_re", locus.asymptote_re[i]},
                                    {"asymptote_im_rate", locus.asymptote_im_rate[i]}});
            emit(opts, json{{"rows", rows}}.dump(2) + "\n");
            return;
        }
        std::ostringstream out;
        out << "alpha,branch_index,re,im,asymptote_re,asymptote_im_rate\n";
        for (std::size_t k = 0; k < locus.alphas.size(); ++k)
            for (std::size_t i = 0; i < locus.branches[k].size(); ++i)
                out << cp::format_double(locus.alphas[k]) << ',' << i << ','
                    << cp::format_double(locus.branches[k][i].real()) << ','
                    << cp::format_double(locus.branches[k][i].imag()) << ','
                    << cp::format_double(locus.asymptote_re[i]) << ','
                    << cp::format_double(locus.asymptote_im_rate[i]) << '\n';
        emit(opts, out.str());
    }
};

struct AbscissaCmd {
    CommonOpts opts;
    std::string sigma_path, sbar_path, sigma_w_path, alpha_spec, summary_path;
    bool log_grid = false;

    void run() const {
        echo_config("abscissa", {{"sigma", sigma_path},
                                 {"sbar", sbar_path},
                                 {"sigma_w", sigma_w_path},
                                 {"alpha", alpha_spec},
                                 {"log", log_grid},
                                 {"format", opts.format},
                                 {"tolerances", tol_json(opts.tol)}});
        const Eigen::MatrixXd sigma = cp::load_matrix_csv(sigma_path);
        const Eigen::MatrixXd sigma_w = cp::load_matrix_csv(sigma_w_path);
        const Eigen::MatrixXd s_bar = cp::load_matrix_csv(sbar_path);
        const std::vector<double> alphas = make_alpha_grid(alpha_spec, log_grid);
        const cp::AbscissaSweep sweep =
            cp::abscissa_bounds(sigma, sigma_w, s_bar, alphas, opts.tol);

        // Empirical zero crossing of omega over the swept range, if any.
        std::optional<double> threshold;
        for (std::size_t k = 1; k < sweep.omega.size(); ++k) {
            if ((sweep.omega[k - 1] < 0.0) != (sweep.omega[k] < 0.0)) {
                threshold = cp::find_excitability_threshold(
                    sigma, sigma_w, s_bar, sweep.alphas[k - 1], sweep.alphas[k], 1e-12,
                    opts.tol);
                break;
            }
        }

        json summary;
        summary["P_lambda_min"] = sweep.P_eigs.first;
        summary["P_lambda_max"] = sweep.P_eigs.second;
        summary["M_lambda_max"] = sweep.M_lambda_max;
        summary["sufficient_alpha"] =
            sweep.sufficient_alpha ? json(*sweep.sufficient_alpha) : json(nullptr);
        summary["threshold"] = threshold ? json(*threshold) : json(nullptr);

        if (opts.format == "json") {
            json rows = json::array();
            for (std::size_t k = 0; k < sweep.alphas.size(); ++k)
                rows.push_back({{"alpha", sweep.alphas[k]},
                                {"omega", sweep.omega[k]},
                                {"lower", sweep.lower_bound[k]},
                                {"upper", sweep.upper_bound[k]}});
            emit(opts, json{{"rows", rows}, {"summary", summary}}.dump(2) + "\n");
        } else {
            std::ostringstream out;
            out << "alpha,omega,lower,upper\n";
            for (std::size_t k = 0; k < sweep.alphas.size(); ++k)
                out << cp::format_double(sweep.alphas[k]) << ','
                    << cp::format_double(sweep.omega[k]) << ','
                    << cp::format_double(sweep.lower_bound[k]) << ','
                    << cp::format_double(sweep.upper_bound[k]) << '\n';
            emit(opts, out.str());
        }
        if (!summary_path.empty()) {
            std::ofstream out(summary_path);
            if (!out)
                throw cp::ValidationError("cannot open '" + summary_path + "' for writing");
            out << summary.dump(2) << '\n';
        }
    }
};

struct PsdCmd {
    CommonOpts opts;
    std::string a_path, sigma_path, sbar_path, sigma_w_path, alpha_spec, omega_spec;
    bool log_grid = false;

    void run() const {
        echo_config("psd", {{"a", a_path},
                            {"sigma", sigma_path},
                            {"sbar", sbar_path},
                            {"sigma_w", sigma_w_path},
                            {"alpha", alpha_spec},
                            {"omega", omega_spec},
                            {"threads", opts.threads},
                            {"format", opts.format},
                            {"tolerances", tol_json(opts.tol)}});
        const std::vector<double> omegas = cp::make_grid(cp::parse_grid(omega_spec));
        std::ostringstream out;
        if (!a_path.empty()) {
            // single-system mode
            const cp::SystemModel m{cp::load_matrix_csv(a_path),
                                    cp::load_matrix_csv(sigma_w_path)};
            cp::validate_system(m, opts.tol);
            out << "omega,tr_phi\n";
            for (double w : omegas)
                out << cp::format_double(w) << ','
                    << cp::format_double(cp::psd_trace(m, w, opts.tol)) << '\n';
            emit(opts, out.str());
            return;
        }
        if (sigma_path.empty() || sbar_path.empty() || alpha_spec.empty())
            throw cp::ValidationError(
                "psd needs either --a or the family inputs --sigma/--sbar/--sigma-w/--alpha");
        const cp::SpectrumTable table = cp::compute_spectrum_table(
            cp::load_matrix_csv(sigma_path), cp::load_matrix_csv(sigma_w_path),
            cp::load_matrix_csv(sbar_path), make_alpha_grid(alpha_spec, log_grid), omegas,
            /*keep_full=*/false, opts.threads, opts.tol);
        out << "omega,alpha,tr_phi\n";
        for (std::size_t a = 0; a < table.alphas.size(); ++a)
            for (std::size_t w = 0; w < table.omegas.size(); ++w)
                out << cp::format_double(table.omegas[w]) << ','
                    << cp::format_double(table.alphas[a]) << ','
                    << cp::format_double(table.at(a, w)) << '\n';
        emit(opts, out.str());
    }
};

struct EnergyCheckCmd {
    CommonOpts opts;
    std::string a_path, sigma_path, sbar_path, sigma_w_path, alpha_spec;
    double quad_tol = 1e-6;
    double omega_max = 0.0;

    json one_report(const cp::SystemModel& m) const {
        cp::QuadratureConfig cfg;
        cfg.rel_tol = quad_tol;
        cfg.omega_max = omega_max;
        const cp::EnergyCheckReport rep = cp::energy_identity_check(m, cfg, opts.tol);
        json j;
        j["n"] = m.A.rows();
        j["rel_error"] = rep.rel_error;
        j["quadrature_error"] = rep.quadrature_error;
        j["omega_max"] = rep.omega_max;
        j["panels"] = rep.panels;
        j["trace_quad"] = rep.sigma_quad.trace();
        j["trace_lyap"] = rep.sigma_lyap.trace();
        j["sigma_quad"] = matrix_json(rep.sigma_quad);
        j["sigma_lyap"] = matrix_json(rep.sigma_lyap);
        return j;
    }

    void run() const {
        echo_config("energy-check", {{"a", a_path},
                                     {"sigma", sigma_path},
                                     {"sbar", sbar_path},
                                     {"sigma_w", sigma_w_path},
                                     {"alpha", alpha_spec},
                                     {"quad_tol", quad_tol},
                                     {"omega_max", omega_max},
                                     {"tolerances", tol_json(opts.tol)}});
        if (!a_path.empty()) {
            const cp::SystemModel m{cp::load_matrix_csv(a_path),
                                    cp::load_matrix_csv(sigma_w_path)};
            emit(opts, one_report(m).dump(2) + "\n");
            return;
        }
        if (sigma_path.empty() || sbar_path.empty() || alpha_spec.empty())
            throw cp::ValidationError(
                "energy-check needs either --a or --sigma/--sbar/--sigma-w/--alpha");
        const Eigen::MatrixXd sigma = cp::load_matrix_csv(sigma_path);
        const Eigen::MatrixXd sigma_w = cp::load_matrix_csv(sigma_w_path);
        const Eigen::MatrixXd s_bar = cp::load_matrix_csv(sbar_path);
        json rows = json::array();
        for (double alpha : make_alpha_grid(alpha_spec, false)) {
            const cp::SystemModel m =
                cp::forward_param({sigma, alpha * s_bar, sigma_w}, opts.tol);
            json j = one_report(m);
            j["alpha"] = alpha;
            rows.push_back(std::move(j));
        }
        emit(opts, json{{"rows", rows}}.dump(2) + "\n");
    }
};

struct Resonance2dCmd {
    CommonOpts opts;
    double sigma2 = 2.0, d1 = 2.0, d2 = 1.0;
    std::string alpha_spec;
    bool log_grid = false;

    void run() const {
        echo_config("resonance2d", {{"sigma2", sigma2},
                                    {"d1", d1},
                                    {"d2", d2},
                                    {"alpha", alpha_spec},
                                    {"log", log_grid}});
        const cp::Resonance2d res =
            cp::resonance_2d(sigma2, d1, d2, make_alpha_grid(alpha_spec, log_grid), opts.tol);
        json rows = json::array();
        for (std::size_t k = 0; k < res.alphas.size(); ++k)
            rows.push_back(
                {{"alpha", res.alphas[k]},
                 {"omega_r_formula", res.omega_r[k] ? json(*res.omega_r[k]) : json(nullptr)},
                 {"omega_r_exact_argmax", res.omega_exact_argmax[k]},
                 {"zeta", res.zeta[k]}});
        emit(opts, json{{"alpha_th", res.alpha_th},
                        {"sigma2", sigma2},
                        {"d1", d1},
                        {"d2", d2},
                        {"rows", rows}}
                           .dump(2) +
                       "\n");
    }
};

struct SimulateCmd {
    CommonOpts opts;
    std::string a_path, sigma_w_path, dump_path;
    cp::SimConfig cfg;

    void run() const {
        echo_config("simulate", {{"a", a_path},
                                 {"sigma_w", sigma_w_path},
                                 {"dt", cfg.dt},
                                 {"steps", cfg.n_steps},
                                 {"burn_in", cfg.burn_in},
                                 {"seed", cfg.seed},
                                 {"trajectories", cfg.n_trajectories},
                                 {"dump", dump_path}});
        const cp::SystemModel m{cp::load_matrix_csv(a_path), cp::load_matrix_csv(sigma_w_path)};
        const std::vector<cp::Trajectory> traj = cp::simulate_ou(m, cfg, opts.tol);
        if (!dump_path.empty()) {
            std::ofstream out(dump_path);
            if (!out)
                throw cp::ValidationError("cannot open '" + dump_path + "' for writing");
            out << "t";
            for (Eigen::Index i = 0; i < m.A.rows(); ++i) out << ",x_" << (i + 1);
            out << '\n';
            for (const cp::Trajectory& t : traj)
                for (Eigen::Index k = 0; k < t.states.cols(); ++k) {
                    out << cp::format_double(t.t0 + static_cast<double>(k) * t.dt);
                    for (Eigen::Index i = 0; i < t.states.rows(); ++i)
                        out << ',' << cp::format_double(t.states(i, k));
                    out << '\n';
                }
        }
        const cp::EmpiricalStats stats = cp::estimate_stats(traj, cfg.dt, m.Sigma_w);
        json j;
        j["n"] = m.A.rows();
        j["seed"] = cfg.seed;
        j["n_samples"] = stats.n_samples;
        j["dt"] = cfg.dt;
        j["Sigma_hat"] = matrix_json(stats.Sigma_hat);
        j["DC_hat"] = matrix_json(stats.DC_hat);
        j["S_hat"] = matrix_json(stats.S_hat);
        emit(opts, j.dump(2) + "\n");
    }
};

struct EnsembleCmd {
    CommonOpts opts;
    cp::EnsembleSpec spec;
    std::string sigma_w_path, reference_dir, norm_name = "spectral";

    json group_json(const cp::SNormReport& rep) const {
        return json{{"norms", rep.norms},
                    {"box",
                     {{"min", rep.min},
                      {"q1", rep.q1},
                      {"median", rep.median},
                      {"q3", rep.q3},
                      {"max", rep.max}}}};
    }

    void run() {
        echo_config("ensemble", {{"n", spec.n},
                                 {"count", spec.count},
                                 {"margin", spec.target_margin},
                                 {"imag", spec.target_imag},
                                 {"seed", spec.seed},
                                 {"sigma_w", sigma_w_path},
                                 {"reference", reference_dir},
                                 {"norm", norm_name}});
        if (!sigma_w_path.empty()) spec.Sigma_w = cp::load_matrix_csv(sigma_w_path);
        const cp::NormKind norm =
            norm_name == "frobenius" ? cp::NormKind::frobenius : cp::NormKind::spectral;

        const std::vector<cp::SystemModel> models = cp::random_stable(spec, opts.tol);
        json j;
        j["spec"] = {{"n", spec.n},
                     {"count", spec.count},
                     {"target_margin", spec.target_margin},
                     {"target_imag", spec.target_imag},
                     {"seed", spec.seed},
                     {"norm", norm_name}};
        j["random"] = group_json(cp::s_norm_stats(models, norm, opts.tol));

        if (!reference_dir.empty()) {
            Eigen::MatrixXd sigma_w = spec.Sigma_w;
            std::vector<std::string> files;
            for (const auto& entry : std::filesystem::directory_iterator(reference_dir))
                if (entry.is_regular_file() && entry.path().extension() == ".csv")
                    files.push_back(entry.path().string());
            std::sort(files.begin(), files.end());
            if (files.empty())
                throw cp::ValidationError("no .csv matrices found in '" + reference_dir + "'");
            std::vector<cp::SystemModel> reference;
            for (const std::string& f : files) {
                Eigen::MatrixXd a = cp::load_matrix_csv(f);
                Eigen::MatrixXd w = sigma_w.size() > 0
                                        ? sigma_w
                                        : Eigen::MatrixXd::Identity(a.rows(), a.cols());
                if (w.rows() != a.rows())
                    throw cp::ValidationError("Sigma_w dimension does not match " + f);
                reference.push_back({std::move(a), std::move(w)});
            }
            json g = group_json(cp::s_norm_stats(reference, norm, opts.tol));
            g["files"] = files;
            j["reference"] = std::move(g);
        } else {
            j["reference"] = nullptr;
        }
        emit(opts, j.dump(2) + "\n");
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Covariance-constrained parametrization of stable linear stochastic systems"};
    app.set_version_flag("--version", std::string("covparam ") + cp::version);
    app.require_subcommand(1);

    ParamForwardCmd fwd;
    auto* c_fwd = app.add_subcommand("param-forward",
                                     "Build A = (-Sigma_w/2 + S) Sigma^{-1} from CSV inputs");
    c_fwd->add_option("--sigma", fwd.sigma_path, "Stationary covariance CSV")->required();
    c_fwd->add_option("--s", fwd.s_path, "Skew-symmetric S CSV")->required();
    c_fwd->add_option("--sigma-w", fwd.sigma_w_path, "Noise covariance CSV")->required();
    add_common(c_fwd, fwd.opts);

    ParamInverseCmd inv;
    auto* c_inv = app.add_subcommand("param-inverse",
                                     "Recover (Sigma, S) from a stable system (A, Sigma_w)");
    c_inv->add_option("--a", inv.a_path, "State matrix CSV")->required();
    c_inv->add_option("--sigma-w", inv.sigma_w_path, "Noise covariance CSV")->required();
    add_common(c_inv, inv.opts);

    EigSweepCmd sweep;
    auto* c_sweep = app.add_subcommand("eig-sweep",
                                       "Eigenvalue locus of A(alpha) with asymptotes");
    c_sweep->add_option("--sigma", sweep.sigma_path)->required();
    c_sweep->add_option("--sbar", sweep.sbar_path, "Skew direction CSV")->required();
    c_sweep->add_option("--sigma-w", sweep.sigma_w_path)->required();
    c_sweep->add_option("--alpha", sweep.alpha_spec, "Grid start:stop:count")->required();
    c_sweep->add_flag("--log", sweep.log_grid, "Log-spaced grid");
    sweep.opts.format = "csv";
    add_common(c_sweep, sweep.opts);

    AbscissaCmd absc;
    auto* c_absc = app.add_subcommand("abscissa",
                                      "Numerical abscissa sweep with linear bounds");
    c_absc->add_option("--sigma", absc.sigma_path)->required();
    c_absc->add_option("--sbar", absc.sbar_path)->required();
    c_absc->add_option("--sigma-w", absc.sigma_w_path)->required();
    c_absc->add_option("--alpha", absc.alpha_spec, "Grid start:stop:count")->required();
    c_absc->add_flag("--log", absc.log_grid, "Log-spaced grid");
    c_absc->add_option("--summary", absc.summary_path,
                       "Also write the JSON summary to this path");
    absc.opts.format = "csv";
    add_common(c_absc, absc.opts);

    PsdCmd psd;
    auto* c_psd = app.add_subcommand("psd", "Power spectral density trace over a grid");
    c_psd->add_option("--a", psd.a_path, "State matrix CSV (single-system mode)");
    c_psd->add_option("--sigma", psd.sigma_path, "Family mode: covariance CSV");
    c_psd->add_option("--sbar", psd.sbar_path, "Family mode: skew direction CSV");
    c_psd->add_option("--sigma-w", psd.sigma_w_path)->required();
    c_psd->add_option("--alpha", psd.alpha_spec, "Family mode grid start:stop:count");
    c_psd->add_option("--omega", psd.omega_spec, "Frequency grid start:stop:count")->required();
    c_psd->add_flag("--log", psd.log_grid, "Log-spaced alpha grid");
    psd.opts.format = "csv";
    add_common(c_psd, psd.opts, /*with_format=*/false);

    EnergyCheckCmd energy;
    auto* c_energy = app.add_subcommand(
        "energy-check", "Compare the integrated spectrum against the Lyapunov covariance");
    c_energy->add_option("--a", energy.a_path, "State matrix CSV (single-system mode)");
    c_energy->add_option("--sigma", energy.sigma_path, "Family mode: covariance CSV");
    c_energy->add_option("--sbar", energy.sbar_path, "Family mode: skew direction CSV");
    c_energy->add_option("--sigma-w", energy.sigma_w_path)->required();
    c_energy->add_option("--alpha", energy.alpha_spec, "Family mode grid start:stop:count");
    c_energy->add_option("--quad-tol", energy.quad_tol, "Quadrature relative tolerance");
    c_energy->add_option("--omega-max", energy.omega_max, "Truncation frequency override");
    add_common(c_energy, energy.opts, /*with_format=*/false);

    Resonance2dCmd res;
    auto* c_res = app.add_subcommand("resonance2d",
                                     "Resonance threshold and peak frequencies, 2-D family");
    c_res->add_option("--sigma2", res.sigma2, "Noise intensity sigma^2")->required();
    c_res->add_option("--d1", res.d1, "First eigenvalue of Sigma^{-1}")->required();
    c_res->add_option("--d2", res.d2, "Second eigenvalue of Sigma^{-1}")->required();
    c_res->add_option("--alpha", res.alpha_spec, "Grid start:stop:count")->required();
    c_res->add_flag("--log", res.log_grid, "Log-spaced grid");
    add_common(c_res, res.opts, /*with_format=*/false);

    SimulateCmd sim;
    auto* c_sim = app.add_subcommand("simulate",
                                     "Euler-Maruyama simulation and empirical statistics");
    c_sim->add_option("--a", sim.a_path, "State matrix CSV")->required();
    c_sim->add_option("--sigma-w", sim.sigma_w_path)->required();
    c_sim->add_option("--dt", sim.cfg.dt, "Time step");
    c_sim->add_option("--steps", sim.cfg.n_steps, "Retained steps");
    c_sim->add_option("--burn-in", sim.cfg.burn_in, "Discarded steps");
    c_sim->add_option("--seed", sim.cfg.seed, "RNG seed");
    c_sim->add_option("--trajectories", sim.cfg.n_trajectories, "Independent paths");
    c_sim->add_option("--dump", sim.dump_path, "Write the trajectory CSV here");
    add_common(c_sim, sim.opts, /*with_format=*/false);

    EnsembleCmd ens;
    auto* c_ens = app.add_subcommand("ensemble",
                                     "Random stable ensemble and ||S|| statistics");
    c_ens->add_option("--n", ens.spec.n, "Dimension");
    c_ens->add_option("--count", ens.spec.count, "Number of realizations");
    c_ens->add_option("--margin", ens.spec.target_margin, "Target max Re lambda (< 0)");
    c_ens->add_option("--imag", ens.spec.target_imag, "Target max |Im lambda|");
    c_ens->add_option("--seed", ens.spec.seed, "RNG seed");
    c_ens->add_option("--sigma-w", ens.sigma_w_path, "Noise covariance CSV (default identity)");
    c_ens->add_option("--reference", ens.reference_dir,
                      "Directory of CSV matrices to compare against");
    c_ens->add_option("--norm", ens.norm_name, "Matrix norm for ||S||")
        ->check(CLI::IsMember({"spectral", "frobenius"}));
    add_common(c_ens, ens.opts, /*with_format=*/false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_fwd->parsed()) fwd.run();
        if (c_inv->parsed()) inv.run();
        if (c_sweep->parsed()) sweep.run();
        if (c_absc->parsed()) absc.run();
        if (c_psd->parsed()) psd.run();
        if (c_energy->parsed()) energy.run();
        if (c_res->parsed()) res.run();
        if (c_sim->parsed()) sim.run();
        if (c_ens->parsed()) ens.run();
    } catch (const cp::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const cp::Error& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
