// qwrabi_cli.cpp — Command-line front end: single-point queries as JSON,
// (alpha, beta) sweeps as CSV, and crossing-boundary bisection.
//
// Exit codes: 0 success, 1 input error, 2 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "qwrabi/qwrabi.hpp"

using json = nlohmann::ordered_json;
using namespace qwrabi;

namespace {

constexpr int kSchemaVersion = 1;

struct CommonOpts {
    double g_factor = constants::reference_g_factor;
    double electron_mass = constants::reference_electron_mass;
    double mass_ratio = constants::reference_mass_ratio;
    double B = constants::anchor_B;
    double alpha = 0.0;
    double beta = 0.0;
    bool paper_anchored = false;
    std::string source = "approx";
    long truncation = 0;
    double fd_step = 0.0;
    double tol = 0.0; // per-subcommand meaning; 0 = default
    std::string out;
    int workers = 1;

    MaterialSpec material() const {
        if (paper_anchored) return anchored_material();
        return MaterialSpec{g_factor, electron_mass, mass_ratio};
    }
    qfi::GroundSource ground_source() const {
        if (source == "approx") return qfi::GroundSource::Approx;
        if (source == "oracle") return qfi::GroundSource::Oracle;
        throw input_error("unknown --source '" + source + "' (approx|oracle)");
    }
    double xi_tol() const { return tol > 0.0 ? tol : 1e-12; }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--g-factor", o.g_factor, "Lande factor");
    cmd->add_option("--electron-mass", o.electron_mass, "bare electron mass m0 [kg]");
    cmd->add_option("--mass-ratio", o.mass_ratio, "effective mass ratio m/m0");
    cmd->add_option("--B", o.B, "magnetic field [T]");
    cmd->add_option("--alpha", o.alpha, "Rashba SOC strength [m/s]");
    cmd->add_option("--beta", o.beta, "Dresselhaus SOC strength [m/s]");
    cmd->add_flag("--paper-anchored", o.paper_anchored,
                  "pin (Ea, Eb) to (1.35e9, 1.70e9) rad/s at B = 0.01 T");
    cmd->add_option("--source", o.source, "ground-state family: approx|oracle")
        ->check(CLI::IsMember({"approx", "oracle"}));
    cmd->add_option("--truncation", o.truncation, "Fock truncation N (0 = automatic)");
    cmd->add_option("--fd-step", o.fd_step, "finite-difference step [T] (0 = 1e-6 B)");
    cmd->add_option("--tol", o.tol, "tolerance (xi residual / crossing bracket [m/s])");
    cmd->add_option("--out", o.out, "write output to this path instead of stdout");
    cmd->add_option("--workers", o.workers, "worker threads for sweeps")
        ->check(CLI::PositiveNumber);
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw input_error("cannot open output file: " + o.out);
    f << text;
}

json complex_json(const std::complex<double>& z) { return json::array({z.real(), z.imag()}); }

json mapped_json(const MappedParams& p) {
    return {{"Ea", p.Ea},
            {"Eb", p.Eb},
            {"lambda1", complex_json(p.lambda1)},
            {"lambda2", complex_json(p.lambda2)},
            {"units", "rad/s"}};
}

json xi_json(const polaron::XiSolution& sol) {
    return {{"xi", complex_json(sol.xi)},
            {"residual", sol.residual},
            {"iterations", sol.iterations},
            {"converged", sol.converged},
            {"regime_warning", sol.regime_warning}};
}

json transformed_json(const polaron::TransformedParams& t) {
    return {{"eta", t.eta},
            {"Ea_tilde", t.Ea_tilde},
            {"Eb_tilde", t.Eb_tilde},
            {"Ec_tilde", complex_json(t.Ec_tilde)},
            {"g_tilde", complex_json(t.g_tilde)},
            {"E_shift", t.E_shift},
            {"Delta_tilde", t.Delta_tilde}};
}

const char* branch_name(polaron::ApproxBranch b) {
    switch (b) {
        case polaron::ApproxBranch::G1: return "G1";
        case polaron::ApproxBranch::G2: return "G2";
        case polaron::ApproxBranch::Degenerate: return "degenerate";
    }
    return "?";
}

json approx_json(const polaron::ApproxSpectrum& s) {
    return {{"E0d", s.E0d},
            {"E1d_plus", s.E1d_plus},
            {"E1d_minus", s.E1d_minus},
            {"gap", s.gap},
            {"theta_d", s.theta_d},
            {"phi", s.phi},
            {"ground_branch", branch_name(s.ground_branch)}};
}

const char* parity_name(Parity p) {
    switch (p) {
        case Parity::Plus: return "+1";
        case Parity::Minus: return "-1";
        case Parity::Mixed: return "mixed";
    }
    return "?";
}

json oracle_json(const fock::SpectrumExact& s, bool with_states) {
    json j = {{"schema_version", kSchemaVersion},
              {"truncation", s.truncation},
              {"converged", s.converged},
              {"energies", s.energies}};
    json parities = json::array();
    for (const StateVector& v : s.states) parities.push_back(parity_name(v.parity));
    j["parities"] = parities;
    if (with_states) {
        json states = json::array();
        for (const StateVector& v : s.states) {
            json amps = json::array();
            for (Eigen::Index i = 0; i < v.amplitudes.size(); ++i)
                amps.push_back(complex_json(v.amplitudes[i]));
            states.push_back(std::move(amps));
        }
        j["states"] = states;
    }
    return j;
}

const char* method_name(qfi::QfiMethod m) {
    switch (m) {
        case qfi::QfiMethod::AnalyticG1: return "analytic_g1";
        case qfi::QfiMethod::OverlapFD: return "overlap_fd";
        case qfi::QfiMethod::FidelitySusceptibility: return "fidelity_susceptibility";
    }
    return "?";
}

const char* branch_label_name(qfi::BranchLabel b) {
    switch (b) {
        case qfi::BranchLabel::G1: return "G1";
        case qfi::BranchLabel::G2: return "G2";
        case qfi::BranchLabel::ParityPlus: return "parity+1";
        case qfi::BranchLabel::ParityMinus: return "parity-1";
    }
    return "?";
}

json qfi_json(const qfi::QfiResult& r) {
    return {{"value", r.value},
            {"method", method_name(r.method)},
            {"step", r.step},
            {"gauge_overlap", r.gauge_overlap},
            {"units", "1/T^2"}};
}

sweep::SweepGrid make_grid(const CommonOpts& o, double amin, double amax, long acount,
                           double bmin, double bmax, long bcount) {
    sweep::SweepGrid g;
    g.alpha_min = amin;
    g.alpha_max = amax;
    g.alpha_count = static_cast<int>(acount);
    g.beta_min = bmin;
    g.beta_max = bmax;
    g.beta_count = static_cast<int>(bcount);
    g.B = o.B;
    g.material = o.material();
    return g;
}

sweep::ScanOptions scan_options(const CommonOpts& o) {
    sweep::ScanOptions opts;
    opts.source = o.ground_source();
    opts.truncation = o.truncation;
    opts.fd_step = o.fd_step;
    opts.xi_tol = o.xi_tol();
    opts.workers = o.workers;
    return opts;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"anisotropic-Rabi mapping of a 2D quantum well with Rashba and "
                 "Dresselhaus spin-orbit couplings: spectra, level crossing, and "
                 "ground-state quantum Fisher information"};
    app.require_subcommand(1);

    CommonOpts o;
    struct GridOpts {
        double amin = 0.0, amax = 1000.0, bmin = 0.0, bmax = 100.0;
        long acount = 101, bcount = 101;
    } grid;
    bool with_oracle = false, with_qfi = false, with_states = false;
    long levels = 6;
    std::string method = "overlap";
    double alpha_lo = 0.0, alpha_hi = 1000.0;

    CLI::App* map_cmd = app.add_subcommand("map", "mapped Rabi parameters as JSON");
    add_common(map_cmd, o);

    CLI::App* jc_cmd =
        app.add_subcommand("jc", "closed-form JC spectrum as JSON (requires beta = 0)");
    add_common(jc_cmd, o);

    CLI::App* xi_cmd = app.add_subcommand("xi", "transformation parameter xi as JSON");
    add_common(xi_cmd, o);

    CLI::App* spectrum_cmd = app.add_subcommand(
        "spectrum", "full single-point query as JSON (mapped, xi, transformed, spectrum)");
    add_common(spectrum_cmd, o);
    spectrum_cmd->add_flag("--with-oracle", with_oracle, "include exact oracle energies");
    spectrum_cmd->add_flag("--with-qfi", with_qfi, "include the ground-state QFI");

    CLI::App* oracle_cmd =
        app.add_subcommand("oracle", "exact truncated-diagonalization spectrum as JSON");
    add_common(oracle_cmd, o);
    oracle_cmd->add_option("--levels", levels, "number of eigenpairs");
    oracle_cmd->add_flag("--states", with_states, "embed eigenvector amplitudes");

    CLI::App* qfi_cmd = app.add_subcommand("qfi", "ground-state QFI at one point as JSON");
    add_common(qfi_cmd, o);
    qfi_cmd->add_option("--method", method, "overlap|fid-sus|analytic-g1")
        ->check(CLI::IsMember({"overlap", "fid-sus", "analytic-g1"}));

    CLI::App* scan_xi_cmd = app.add_subcommand("scan-xi", "xi over an (alpha, beta) grid, CSV");
    CLI::App* scan_gap_cmd = app.add_subcommand("scan-gap", "energy gap over a grid, CSV");
    CLI::App* scan_qfi_cmd = app.add_subcommand("scan-qfi", "ground-state QFI over a grid, CSV");
    for (CLI::App* cmd : {scan_xi_cmd, scan_gap_cmd, scan_qfi_cmd}) {
        add_common(cmd, o);
        cmd->add_option("--alpha-min", grid.amin);
        cmd->add_option("--alpha-max", grid.amax);
        cmd->add_option("--alpha-count", grid.acount)->check(CLI::PositiveNumber);
        cmd->add_option("--beta-min", grid.bmin);
        cmd->add_option("--beta-max", grid.bmax);
        cmd->add_option("--beta-count", grid.bcount)->check(CLI::PositiveNumber);
    }

    CLI::App* crossing_cmd = app.add_subcommand(
        "find-crossing", "bisect the gap sign change along alpha at fixed beta");
    add_common(crossing_cmd, o);
    crossing_cmd->add_option("--alpha-lo", alpha_lo, "bracket lower end [m/s]");
    crossing_cmd->add_option("--alpha-hi", alpha_hi, "bracket upper end [m/s]");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        const MaterialSpec material = o.material();
        const FieldPoint field{o.B};
        const SocStrengths soc{o.alpha, o.beta};

        if (map_cmd->parsed()) {
            json j = mapped_json(map_parameters(material, field, soc));
            j["schema_version"] = kSchemaVersion;
            emit(o, j.dump(2));
        } else if (jc_cmd->parsed()) {
            const MappedParams p = map_parameters(material, field, soc);
            const jc::JcSpectrum s = jc::jc_spectrum(p);
            const json j = {{"schema_version", kSchemaVersion},
                            {"E0", s.E0},
                            {"E1_plus", s.E1_plus},
                            {"E1_minus", s.E1_minus},
                            {"theta", s.theta},
                            {"Delta", s.Delta},
                            {"lambda1_crossing", s.lambda1_crossing},
                            {"units", "rad/s"}};
            emit(o, j.dump(2));
        } else if (xi_cmd->parsed()) {
            const MappedParams p = map_parameters(material, field, soc);
            const polaron::XiSolution sol = polaron::solve_xi(p, o.xi_tol());
            json j = xi_json(sol);
            j["schema_version"] = kSchemaVersion;
            emit(o, j.dump(2));
            if (!sol.converged) {
                std::cerr << json{{"error",
                                   {{"type", "numerical"},
                                    {"message", "xi solver did not converge"}}}}
                                 .dump()
                          << '\n';
                return 2;
            }
        } else if (spectrum_cmd->parsed()) {
            const MappedParams p = map_parameters(material, field, soc);
            const polaron::XiSolution sol = polaron::solve_xi(p, o.xi_tol());
            const polaron::TransformedParams t = polaron::transformed_params(p, sol);
            const polaron::ApproxSpectrum s = polaron::approx_spectrum(p, t);
            json j = {{"schema_version", kSchemaVersion},
                      {"inputs",
                       {{"B", o.B},
                        {"alpha", o.alpha},
                        {"beta", o.beta},
                        {"paper_anchored", o.paper_anchored}}},
                      {"mapped_params", mapped_json(p)},
                      {"xi", xi_json(sol)},
                      {"transformed_params", transformed_json(t)},
                      {"approx_spectrum", approx_json(s)}};
            if (with_oracle) {
                const fock::SpectrumExact ex =
                    o.truncation > 0
                        ? fock::exact_spectrum(p, o.truncation, levels)
                        : fock::converge_truncation(p, 16, o.tol > 0 ? o.tol : 1.0, levels);
                j["oracle"] = oracle_json(ex, false);
            }
            if (with_qfi) {
                const qfi::GroundQfi g =
                    qfi::qfi_ground(material, soc, o.B, o.fd_step, o.ground_source());
                j["qfi"] = qfi_json(g.qfi);
                j["qfi"]["branch"] = branch_label_name(g.branch);
            }
            emit(o, j.dump(2));
        } else if (oracle_cmd->parsed()) {
            const MappedParams p = map_parameters(material, field, soc);
            const fock::SpectrumExact ex =
                o.truncation > 0
                    ? fock::exact_spectrum(p, o.truncation, levels)
                    : fock::converge_truncation(p, 16, o.tol > 0 ? o.tol : 1.0, levels);
            if (!ex.converged && o.truncation == 0)
                throw numeric_error("oracle: truncation did not converge");
            emit(o, oracle_json(ex, with_states).dump(2));
        } else if (qfi_cmd->parsed()) {
            json j;
            if (method == "analytic-g1") {
                const qfi::QfiResult r =
                    qfi::qfi_analytic_g1(material, soc, o.B, o.fd_step, o.xi_tol());
                j = qfi_json(r);
                j["branch"] = "G1";
            } else {
                qfi::GroundOptions opts;
                opts.truncation = o.truncation;
                opts.xi_tol = o.xi_tol();
                if (method == "fid-sus") opts.method = qfi::QfiMethod::FidelitySusceptibility;
                const qfi::GroundQfi g = qfi::qfi_ground(material, soc, o.B, o.fd_step,
                                                         o.ground_source(), opts);
                j = qfi_json(g.qfi);
                j["branch"] = branch_label_name(g.branch);
            }
            j["schema_version"] = kSchemaVersion;
            emit(o, j.dump(2));
        } else if (scan_xi_cmd->parsed()) {
            emit(o, sweep::scan_xi(make_grid(o, grid.amin, grid.amax, grid.acount,
                                             grid.bmin, grid.bmax, grid.bcount),
                                   scan_options(o)));
        } else if (scan_gap_cmd->parsed()) {
            emit(o, sweep::scan_gap(make_grid(o, grid.amin, grid.amax, grid.acount,
                                              grid.bmin, grid.bmax, grid.bcount),
                                    scan_options(o)));
        } else if (scan_qfi_cmd->parsed()) {
            emit(o, sweep::scan_qfi(make_grid(o, grid.amin, grid.amax, grid.acount,
                                              grid.bmin, grid.bmax, grid.bcount),
                                    scan_options(o)));
        } else if (crossing_cmd->parsed()) {
            const sweep::CrossingPoint cp = sweep::find_crossing(
                material, o.B, o.beta, alpha_lo, alpha_hi, o.ground_source(),
                o.tol > 0.0 ? o.tol : 1e-3, scan_options(o));
            const json j = {{"schema_version", kSchemaVersion},
                            {"beta", cp.beta},
                            {"alpha_c", cp.alpha_c},
                            {"bracket", json::array({cp.bracket_lo, cp.bracket_hi})},
                            {"source", o.source},
                            {"units", "m/s"}};
            emit(o, j.dump(2));
        }
        return 0;
    } catch (const input_error& e) {
        std::cerr << json{{"error", {{"type", "input"}, {"message", e.what()}}}}.dump()
                  << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", {{"type", "numerical"}, {"message", e.what()}}}}.dump()
                  << '\n';
        return 2;
    }
}
