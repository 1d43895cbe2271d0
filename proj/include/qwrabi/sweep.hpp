// sweep.hpp — Parameter sweeps over (alpha, beta) at fixed field: xi, gap and
// QFI grids as CSV, and crossing-boundary location by bisection on the signed
// gap. Output bytes are deterministic for any worker count: rows are computed
// independently, buffered, and emitted in beta-major, alpha-ascending order.

#pragma once

#include <atomic>
#include <charconv>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "qwrabi/fock.hpp"
#include "qwrabi/parameters.hpp"
#include "qwrabi/polaron.hpp"
#include "qwrabi/qfi.hpp"

namespace qwrabi::sweep {

struct SweepGrid {
    double alpha_min = 0.0, alpha_max = 1000.0;
    int alpha_count = 101;
    double beta_min = 0.0, beta_max = 100.0;
    int beta_count = 101;
    double B = constants::anchor_B;
    MaterialSpec material{};
};

struct ScanOptions {
    qfi::GroundSource source = qfi::GroundSource::Approx;
    Eigen::Index truncation = 0; // 0: automatic
    double fd_step = 0.0;        // 0: default_fd_step(B)
    double xi_tol = 1e-12;
    double oracle_tol = 1.0;     // rad/s
    int workers = 1;
};

// Shortest round-trip decimal representation; the CSV/JSON float format.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::vector<double> axis(double lo, double hi, int count) {
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i)
        v[i] = count == 1 ? lo : lo + double(i) * (hi - lo) / double(count - 1);
    return v;
}

inline void validate(const SweepGrid& grid) {
    if (grid.alpha_count < 1 || grid.beta_count < 1)
        throw input_error("sweep: axis counts must be >= 1");
    if (grid.alpha_min > grid.alpha_max || grid.beta_min > grid.beta_max)
        throw input_error("sweep: axis min must be <= max");
    if (grid.alpha_min < 0.0 || grid.beta_min < 0.0)
        throw input_error("sweep: SOC strengths must be nonnegative");
    if (!(grid.B > 0.0))
        throw input_error("sweep: B must be positive");
}

template <class Fn>
void parallel_for_index(std::size_t n, int workers, Fn&& fn) {
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

template <class RowFn>
std::string run_grid(const SweepGrid& grid, int workers, const std::string& header,
                     RowFn&& row_fn) {
    validate(grid);
    const std::vector<double> alphas = axis(grid.alpha_min, grid.alpha_max, grid.alpha_count);
    const std::vector<double> betas = axis(grid.beta_min, grid.beta_max, grid.beta_count);
    const std::size_t n = alphas.size() * betas.size();

    std::vector<std::string> rows(n);
    parallel_for_index(n, workers, [&](std::size_t i) {
        const double beta = betas[i / alphas.size()];
        const double alpha = alphas[i % alphas.size()];
        rows[i] = row_fn(alpha, beta);
    });

    std::string out = header;
    out.push_back('\n');
    for (const std::string& r : rows) {
        out += r;
        out.push_back('\n');
    }
    return out;
}

inline const char* branch_name(qfi::BranchLabel b) {
    switch (b) {
        case qfi::BranchLabel::G1: return "G1";
        case qfi::BranchLabel::G2: return "G2";
        case qfi::BranchLabel::ParityPlus: return "parity+1";
        case qfi::BranchLabel::ParityMinus: return "parity-1";
    }
    return "?";
}

inline const char* method_name(qfi::QfiMethod m) {
    switch (m) {
        case qfi::QfiMethod::AnalyticG1: return "analytic_g1";
        case qfi::QfiMethod::OverlapFD: return "overlap_fd";
        case qfi::QfiMethod::FidelitySusceptibility: return "fidelity_susceptibility";
    }
    return "?";
}

} // namespace detail

// CSV: alpha,beta,re_xi,im_xi,residual,converged. Per-point solver failures are
// recorded in-row (converged=false); the sweep never aborts.
inline std::string scan_xi(const SweepGrid& grid, const ScanOptions& opts = {}) {
    return detail::run_grid(
        grid, opts.workers, "alpha,beta,re_xi,im_xi,residual,converged",
        [&](double alpha, double beta) {
            const MappedParams p =
                map_parameters(grid.material, FieldPoint{grid.B}, SocStrengths{alpha, beta});
            const polaron::XiSolution sol = polaron::solve_xi(p, opts.xi_tol);
            return format_double(alpha) + ',' + format_double(beta) + ',' +
                   format_double(sol.xi.real()) + ',' + format_double(sol.xi.imag()) + ',' +
                   format_double(sol.residual) + ',' + (sol.converged ? "true" : "false");
        });
}

// Signed gap per source: Approx uses the transformed-spectrum gap
// E1d_minus - E0d; Oracle uses E(lowest even parity) - E(lowest odd parity),
// the same branch-labelled observable evaluated exactly.
inline std::string scan_gap(const SweepGrid& grid, const ScanOptions& opts = {}) {
    const char* source = opts.source == qfi::GroundSource::Approx ? "approx" : "oracle";
    return detail::run_grid(
        grid, opts.workers, "alpha,beta,gap,ground_branch,source",
        [&](double alpha, double beta) {
            const std::string head = format_double(alpha) + ',' + format_double(beta) + ',';
            try {
                const MappedParams p = map_parameters(grid.material, FieldPoint{grid.B},
                                                      SocStrengths{alpha, beta});
                double gap = 0.0;
                std::string branch;
                if (opts.source == qfi::GroundSource::Approx) {
                    const polaron::XiSolution sol = polaron::solve_xi(p, opts.xi_tol);
                    const polaron::ApproxSpectrum s =
                        polaron::approx_spectrum(p, polaron::transformed_params(p, sol));
                    gap = s.gap;
                    branch = s.ground_branch == polaron::ApproxBranch::G1   ? "G1"
                             : s.ground_branch == polaron::ApproxBranch::G2 ? "G2"
                                                                            : "degenerate";
                } else {
                    Eigen::Index N = opts.truncation;
                    fock::SpectrumExact spec =
                        N > 0 ? fock::exact_spectrum(p, N, 6)
                              : fock::converge_truncation(p, 16, opts.oracle_tol);
                    if (N == 0 && !spec.converged)
                        throw numeric_error("truncation did not converge");
                    gap = fock::signed_parity_gap(spec);
                    branch = spec.states[0].parity == Parity::Minus  ? "parity-1"
                             : spec.states[0].parity == Parity::Plus ? "parity+1"
                                                                     : "degenerate";
                }
                return head + format_double(gap) + ',' + branch + ',' + source;
            } catch (const std::exception&) {
                return head + ",error," + source;
            }
        });
}

// CSV: alpha,beta,F_B,method,branch,step,flag. Points where the three field
// points straddle the crossing are emitted with an empty F_B and a
// branch_crossed flag.
inline std::string scan_qfi(const SweepGrid& grid, const ScanOptions& opts = {}) {
    const double step = opts.fd_step > 0.0 ? opts.fd_step : qfi::default_fd_step(grid.B);
    qfi::GroundOptions gopts;
    gopts.truncation = opts.truncation;
    gopts.xi_tol = opts.xi_tol;
    gopts.oracle_tol = opts.oracle_tol;
    return detail::run_grid(
        grid, opts.workers, "alpha,beta,F_B,method,branch,step,flag",
        [&](double alpha, double beta) {
            const std::string head = format_double(alpha) + ',' + format_double(beta) + ',';
            const std::string tail = ',' + std::string(detail::method_name(gopts.method)) +
                                     ',';
            try {
                const qfi::GroundQfi g = qfi::qfi_ground(
                    grid.material, SocStrengths{alpha, beta}, grid.B, step,
                    opts.source, gopts);
                return head + format_double(g.qfi.value) + tail +
                       detail::branch_name(g.branch) + ',' + format_double(step) + ',';
            } catch (const branch_crossed_error&) {
                return head + tail + ',' + format_double(step) + ",branch_crossed";
            } catch (const std::exception&) {
                return head + tail + ',' + format_double(step) + ",error";
            }
        });
}

struct CrossingPoint {
    double beta = 0.0;
    double alpha_c = 0.0;       // bracket midpoint after bisection
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    qfi::GroundSource source = qfi::GroundSource::Approx;
};

// Bisection on the signed gap along alpha at fixed beta; the bracket must
// straddle a sign change.
inline CrossingPoint find_crossing(const MaterialSpec& material, double B, double beta,
                                   double alpha_lo, double alpha_hi,
                                   qfi::GroundSource source, double tol = 1e-3,
                                   const ScanOptions& opts = {}) {
    if (!(tol > 0.0))
        throw input_error("find_crossing: tol must be positive");
    if (!(alpha_lo < alpha_hi))
        throw input_error("find_crossing: need alpha_lo < alpha_hi");

    const auto gap_at = [&](double alpha) {
        const MappedParams p =
            map_parameters(material, FieldPoint{B}, SocStrengths{alpha, beta});
        if (source == qfi::GroundSource::Approx) {
            const polaron::XiSolution sol = polaron::solve_xi(p, opts.xi_tol);
            return polaron::approx_spectrum(p, polaron::transformed_params(p, sol)).gap;
        }
        fock::SpectrumExact spec = opts.truncation > 0
                                       ? fock::exact_spectrum(p, opts.truncation, 6)
                                       : fock::converge_truncation(p, 16, opts.oracle_tol);
        if (opts.truncation == 0 && !spec.converged)
            throw numeric_error("find_crossing: truncation did not converge");
        return fock::signed_parity_gap(spec);
    };

    double lo = alpha_lo, hi = alpha_hi;
    const double glo = gap_at(lo);
    const double ghi = gap_at(hi);
    if (!(glo > 0.0) == !(ghi > 0.0))
        throw no_sign_change_error("find_crossing: gap does not change sign on the bracket");

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double gm = gap_at(mid);
        if ((gm > 0.0) == (glo > 0.0))
            lo = mid;
        else
            hi = mid;
    }

    CrossingPoint out;
    out.beta = beta;
    out.alpha_c = 0.5 * (lo + hi);
    out.bracket_lo = lo;
    out.bracket_hi = hi;
    out.source = source;
    return out;
}

} // namespace qwrabi::sweep
