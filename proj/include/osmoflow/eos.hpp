#pragma once
// Synthetic equation-of-state machinery: analytic reduced-Massieu
// derivatives of a polynomial residual form, a noisy state-point sampling
// oracle standing in for a molecular simulation run, weighted linear
// fitting of the coefficients, and state-point refinement around the
// estimated critical point and the coexistence region.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "osmoflow/errors.hpp"
#include "osmoflow/task.hpp"

namespace osmoflow::eos {

struct MissingParamError : Error { using Error::Error; };
struct EmptyResultsError : Error { using Error::Error; };
struct RankDeficientError : Error { using Error::Error; };
struct TooFewRowsError : Error { using Error::Error; };
struct NoCriticalEstimateError : Error { using Error::Error; };
struct ResultFileError : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// State points and the residual form

struct StatePoint {
    double T = 1.0;    // reduced temperature
    double rho = 0.1;  // reduced density
    int step = 0;      // refinement iteration the point was proposed in

    friend bool operator==(const StatePoint&, const StatePoint&) = default;
};

// a_res(tau, delta) = sum_k n_k tau^{t_k} delta^{d_k} with tau = 1/T,
// delta = rho; the exponent pairs are fixed a priori, the fit is linear
// in the coefficients n_k.
struct EosTermExp {
    double t = 0.0;
    double d = 0.0;
};

struct EosForm {
    std::vector<EosTermExp> terms;
};

// A three-term form producing a van-der-Waals-like loop, so that critical
// and coexistence-region refinement both have work to do. Synthetic values.
inline EosForm default_truth_form() {
    return {{{1.0, 1.0}, {2.0, 2.0}, {1.5, 3.0}}};
}
inline std::vector<double> default_truth_coefficients() { return {-1.5, -0.8, 0.6}; }

using DerivIndex = std::pair<int, int>;  // (n, m): tau order, delta order

inline std::vector<DerivIndex> default_deriv_set() {
    return {{0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 0}};
}

struct MassieuDerivs {
    StatePoint state;
    std::map<DerivIndex, double> values;
    std::map<DerivIndex, double> uncertainty;  // one-sigma, 0 for exact entries
};

// ---------------------------------------------------------------------------
// Analytic derivatives

namespace detail {

// falling factorial x (x-1) ... (x-k+1)
inline double falling(double x, int k) {
    double f = 1.0;
    for (int i = 0; i < k; ++i) f *= x - i;
    return f;
}

}  // namespace detail

// Reduced residual Massieu function at (tau, delta).
inline double a_res(const EosForm& form, const std::vector<double>& coeffs, double tau,
                    double delta) {
    double a = 0.0;
    for (std::size_t k = 0; k < form.terms.size(); ++k)
        a += coeffs[k] * std::pow(tau, form.terms[k].t) * std::pow(delta, form.terms[k].d);
    return a;
}

// Basis derivative of one term: A_nm contribution per unit coefficient,
// i.e. tau^n delta^m d^{n+m}(tau^t delta^d)/dtau^n ddelta^m
//    = ff(t,n) ff(d,m) tau^t delta^d.
inline double basis_derivative(const EosTermExp& term, int n, int m, double tau,
                               double delta) {
    return detail::falling(term.t, n) * detail::falling(term.d, m) *
           std::pow(tau, term.t) * std::pow(delta, term.d);
}

inline MassieuDerivs truth_derivs(const StatePoint& sp, const EosForm& form,
                                  const std::vector<double>& coeffs,
                                  const std::vector<DerivIndex>& derivs =
                                      default_deriv_set()) {
    const double tau = 1.0 / sp.T;
    const double delta = sp.rho;
    MassieuDerivs out;
    out.state = sp;
    for (const auto& [n, m] : derivs) {
        double v = 0.0;
        for (std::size_t k = 0; k < form.terms.size(); ++k)
            v += coeffs[k] * basis_derivative(form.terms[k], n, m, tau, delta);
        out.values[{n, m}] = v;
        out.uncertainty[{n, m}] = 0.0;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Pressure along the fitted form: p(T, delta) = T [delta + sum_k n_k d_k
// tau^{t_k} delta^{d_k + 1}], the ideal part plus the residual virial term
// delta^2 da_res/ddelta expressed through A_01.

inline double pressure(const EosForm& form, const std::vector<double>& coeffs, double T,
                       double delta) {
    const double tau = 1.0 / T;
    double p = delta;
    for (std::size_t k = 0; k < form.terms.size(); ++k) {
        const auto& e = form.terms[k];
        p += coeffs[k] * e.d * std::pow(tau, e.t) * std::pow(delta, e.d + 1.0);
    }
    return T * p;
}

inline double pressure_ddelta(const EosForm& form, const std::vector<double>& coeffs,
                              double T, double delta) {
    const double tau = 1.0 / T;
    double p = 1.0;
    for (std::size_t k = 0; k < form.terms.size(); ++k) {
        const auto& e = form.terms[k];
        p += coeffs[k] * e.d * (e.d + 1.0) * std::pow(tau, e.t) * std::pow(delta, e.d);
    }
    return T * p;
}

inline double pressure_d2delta(const EosForm& form, const std::vector<double>& coeffs,
                               double T, double delta) {
    const double tau = 1.0 / T;
    double p = 0.0;
    for (std::size_t k = 0; k < form.terms.size(); ++k) {
        const auto& e = form.terms[k];
        if (e.d == 0.0) continue;
        p += coeffs[k] * e.d * (e.d + 1.0) * e.d * std::pow(tau, e.t) *
             std::pow(delta, e.d - 1.0);
    }
    return T * p;
}

// ---------------------------------------------------------------------------
// Result files (one per task, plain-text key=value)

namespace detail {

inline std::string fmt(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace detail

inline void write_result_file(const std::filesystem::path& path,
                              const MassieuDerivs& d) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw ResultFileError("cannot write " + path.string());
    out << "# state-point sampling result\n";
    out << "# A_<n>_<m>: reduced Massieu derivative samples; sigma_<n>_<m>: "
           "one-sigma uncertainties\n";
    out << "T=" << detail::fmt(d.state.T) << "\n";
    out << "rho=" << detail::fmt(d.state.rho) << "\n";
    out << "step=" << d.state.step << "\n";
    for (const auto& [idx, v] : d.values) {
        out << "A_" << idx.first << "_" << idx.second << "=" << detail::fmt(v) << "\n";
        out << "sigma_" << idx.first << "_" << idx.second << "="
            << detail::fmt(d.uncertainty.at(idx)) << "\n";
    }
}

inline MassieuDerivs read_result_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ResultFileError("cannot read " + path.string());
    MassieuDerivs d;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ResultFileError("malformed line in " + path.string() + ": " + line);
        std::string key = line.substr(0, eq);
        double value = std::stod(line.substr(eq + 1));
        if (key == "T") d.state.T = value;
        else if (key == "rho") d.state.rho = value;
        else if (key == "step") d.state.step = int(value);
        else if (key.rfind("A_", 0) == 0 || key.rfind("sigma_", 0) == 0) {
            bool sigma = key[0] == 's';
            std::string idx = key.substr(sigma ? 6 : 2);
            auto us = idx.find('_');
            if (us == std::string::npos)
                throw ResultFileError("malformed key in " + path.string() + ": " + key);
            DerivIndex di{std::stoi(idx.substr(0, us)), std::stoi(idx.substr(us + 1))};
            (sigma ? d.uncertainty : d.values)[di] = value;
        } else {
            throw ResultFileError("unknown key in " + path.string() + ": " + key);
        }
    }
    return d;
}

// ---------------------------------------------------------------------------
// Sampling oracle

namespace detail {

// deterministic standard normals per (seed, task id, entry ordinal)
inline double gaussian(std::uint64_t seed, long long task_id, int ordinal) {
    std::uint64_t s = seed * 0x9E3779B97F4A7C15ULL ^
                      (std::uint64_t(task_id) + 1) * 0xBF58476D1CE4E5B9ULL ^
                      (std::uint64_t(ordinal) + 1) * 0x94D049BB133111EBULL;
    auto next = [&s]() {
        s += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    };
    double u1 = (next() >> 11) * 0x1p-53 + 0x1p-54;
    double u2 = (next() >> 11) * 0x1p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace detail

// Samples the analytic derivatives with additive Gaussian noise of relative
// width sigma_rel, deterministic per (task id, seed), and writes the result
// file under workroot/taskdir.
inline MassieuDerivs simulate_state_point(const wms::TaskObject& task,
                                          const EosForm& truth,
                                          const std::vector<double>& coeffs,
                                          double sigma_rel, std::uint64_t seed,
                                          const std::filesystem::path& workroot,
                                          const std::vector<DerivIndex>& derivs =
                                              default_deriv_set()) {
    for (const char* p : {"T", "rho", "step"})
        if (!task.params.count(p))
            throw MissingParamError(std::string("task params lack ") + p);
    StatePoint sp{task.params.at("T"), task.params.at("rho"),
                  int(task.params.at("step"))};
    MassieuDerivs d = truth_derivs(sp, truth, coeffs, derivs);
    int ordinal = 0;
    for (auto& [idx, v] : d.values) {
        double sigma = sigma_rel * std::abs(v);
        if (sigma > 0.0) v += sigma * detail::gaussian(seed, task.id, ordinal);
        d.uncertainty[idx] = sigma;
        ++ordinal;
    }
    if (!task.taskdir.empty())
        write_result_file(workroot / task.taskdir / "result.dat", d);
    return d;
}

// ---------------------------------------------------------------------------
// Fit input assembly

struct FitRow {
    double T = 0.0, rho = 0.0;
    int n = 0, m = 0;
    double value = 0.0;
    double weight = 1.0;  // inverse variance; 1 when sigma = 0
};

struct FitInput {
    std::vector<FitRow> rows;
};

// Flattens sampled derivatives to weighted regression rows; exact state-point
// repeats merge by inverse-variance averaging.
inline FitInput create_eos_input_from_results(const std::vector<MassieuDerivs>& results) {
    if (results.empty()) throw EmptyResultsError("no sampled state points");
    FitInput input;
    for (const auto& r : results) {
        for (const auto& [idx, v] : r.values) {
            double sigma = 0.0;
            if (auto it = r.uncertainty.find(idx); it != r.uncertainty.end())
                sigma = it->second;
            double w = sigma > 0.0 ? 1.0 / (sigma * sigma) : 1.0;
            bool merged = false;
            for (auto& row : input.rows) {
                if (row.T == r.state.T && row.rho == r.state.rho && row.n == idx.first &&
                    row.m == idx.second) {
                    row.value = (row.weight * row.value + w * v) / (row.weight + w);
                    row.weight += w;
                    merged = true;
                    break;
                }
            }
            if (!merged)
                input.rows.push_back({r.state.T, r.state.rho, idx.first, idx.second, v, w});
        }
    }
    return input;
}

// ---------------------------------------------------------------------------
// Weighted least squares over all derivative rows simultaneously

struct EosFit {
    std::vector<double> coefficients;
    double rms_residual = 0.0;
    std::optional<double> T_c, rho_c;
    double T_lo = 0, T_hi = 0, rho_lo = 0, rho_hi = 0;  // sampled envelope
    int iteration = 0;
};

namespace detail {

// Gaussian elimination with partial pivoting; throws on rank deficiency.
inline std::vector<double> solve_normal(std::vector<std::vector<double>> A,
                                        std::vector<double> b) {
    const std::size_t n = A.size();
    double scale = 0.0;
    for (const auto& row : A)
        for (double v : row) scale = std::max(scale, std::abs(v));
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(A[r][col]) > std::abs(A[pivot][col])) pivot = r;
        if (std::abs(A[pivot][col]) <= scale * 1e-13)
            throw RankDeficientError("normal equations are singular");
        std::swap(A[col], A[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = A[r][col] / A[col][col];
            for (std::size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= A[i][j] * x[j];
        x[i] = s / A[i][i];
    }
    return x;
}

}  // namespace detail

inline EosFit fit_vle_curve(const FitInput& input, const EosForm& form,
                            int critical_grid = 200) {
    const std::size_t K = form.terms.size();
    if (input.rows.size() < K)
        throw TooFewRowsError("fit needs at least " + std::to_string(K) + " rows, have " +
                              std::to_string(input.rows.size()));

    std::vector<std::vector<double>> A(K, std::vector<double>(K, 0.0));
    std::vector<double> b(K, 0.0);
    for (const auto& row : input.rows) {
        const double tau = 1.0 / row.T;
        std::vector<double> x(K);
        for (std::size_t k = 0; k < K; ++k)
            x[k] = basis_derivative(form.terms[k], row.n, row.m, tau, row.rho);
        for (std::size_t i = 0; i < K; ++i) {
            for (std::size_t j = 0; j < K; ++j) A[i][j] += row.weight * x[i] * x[j];
            b[i] += row.weight * x[i] * row.value;
        }
    }

    EosFit fit;
    fit.coefficients = detail::solve_normal(std::move(A), std::move(b));

    double rss = 0.0;
    for (const auto& row : input.rows) {
        const double tau = 1.0 / row.T;
        double pred = 0.0;
        for (std::size_t k = 0; k < K; ++k)
            pred += fit.coefficients[k] *
                    basis_derivative(form.terms[k], row.n, row.m, tau, row.rho);
        rss += (pred - row.value) * (pred - row.value);
    }
    fit.rms_residual = std::sqrt(rss / double(input.rows.size()));

    fit.T_lo = fit.T_hi = input.rows.front().T;
    fit.rho_lo = fit.rho_hi = input.rows.front().rho;
    for (const auto& row : input.rows) {
        fit.T_lo = std::min(fit.T_lo, row.T);
        fit.T_hi = std::max(fit.T_hi, row.T);
        fit.rho_lo = std::min(fit.rho_lo, row.rho);
        fit.rho_hi = std::max(fit.rho_hi, row.rho);
    }

    // critical estimate: the grid state minimizing |dp/ddelta| + |d2p/ddelta2|
    // over the sampled envelope
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < critical_grid; ++i) {
        double T = critical_grid == 1
                       ? fit.T_lo
                       : fit.T_lo + (fit.T_hi - fit.T_lo) * double(i) /
                                        double(critical_grid - 1);
        for (int j = 0; j < critical_grid; ++j) {
            double rho = critical_grid == 1
                             ? fit.rho_lo
                             : fit.rho_lo + (fit.rho_hi - fit.rho_lo) * double(j) /
                                                double(critical_grid - 1);
            if (rho <= 0.0 || T <= 0.0) continue;
            double obj = std::abs(pressure_ddelta(form, fit.coefficients, T, rho)) +
                         std::abs(pressure_d2delta(form, fit.coefficients, T, rho));
            if (obj < best) {
                best = obj;
                fit.T_c = T;
                fit.rho_c = rho;
            }
        }
    }
    return fit;
}

// ---------------------------------------------------------------------------
// Refinement

struct RefineConfig {
    std::vector<double> critical_T_factors = {0.98, 1.00, 1.02};
    std::vector<double> critical_rho_factors = {0.9, 1.0, 1.1};
    std::vector<double> vle_T_factors = {0.85, 0.90, 0.95};
    double bisect_tol = 1e-6;
    double scan_lo = 1e-3;        // density scan window for spinodal brackets
    double scan_hi_factor = 1.5;  // times the sampled density envelope
    int scan_points = 2000;
    double dedupe_rel = 1e-9;
};

struct RefineOutcome {
    std::vector<StatePoint> points;
    std::vector<std::string> warnings;
};

namespace detail {

inline bool same_state(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

inline bool already_sampled(const std::vector<StatePoint>& sampled, double T, double rho,
                            double rel) {
    for (const auto& s : sampled)
        if (same_state(s.T, T, rel) && same_state(s.rho, rho, rel)) return true;
    return false;
}

}  // namespace detail

// A 3x3 grid of states around the current critical estimate.
inline std::vector<StatePoint> refine_around_critical_point(
    const EosFit& fit, const std::vector<StatePoint>& sampled, int next_step,
    const RefineConfig& cfg = {}) {
    if (!fit.T_c || !fit.rho_c)
        throw NoCriticalEstimateError("fit carries no critical-point estimate");
    std::vector<StatePoint> out;
    for (double ft : cfg.critical_T_factors)
        for (double fr : cfg.critical_rho_factors) {
            double T = *fit.T_c * ft;
            double rho = *fit.rho_c * fr;
            if (T <= 0.0 || rho <= 0.0) continue;
            if (detail::already_sampled(sampled, T, rho, cfg.dedupe_rel)) continue;
            if (detail::already_sampled(out, T, rho, cfg.dedupe_rel)) continue;
            out.push_back({T, rho, next_step});
        }
    return out;
}

// For sub-critical temperatures, the two densities where the fitted
// dp/ddelta crosses zero (the spinodal brackets), by sign scan plus
// bisection. Temperatures without a sign change are skipped with a warning.
inline RefineOutcome refine_around_vle(const EosFit& fit, const EosForm& form,
                                       const std::vector<StatePoint>& sampled,
                                       int next_step, const RefineConfig& cfg = {}) {
    if (!fit.T_c || !fit.rho_c)
        throw NoCriticalEstimateError("fit carries no critical-point estimate");
    RefineOutcome out;
    const double lo = cfg.scan_lo;
    const double hi = std::max(fit.rho_hi * cfg.scan_hi_factor, lo * 10.0);

    for (double ft : cfg.vle_T_factors) {
        const double T = *fit.T_c * ft;
        auto f = [&](double rho) { return pressure_ddelta(form, fit.coefficients, T, rho); };

        // all sign-change brackets along the scan
        std::vector<std::pair<double, double>> brackets;
        double prev_rho = lo, prev_val = f(lo);
        for (int i = 1; i < cfg.scan_points; ++i) {
            double rho = lo + (hi - lo) * double(i) / double(cfg.scan_points - 1);
            double val = f(rho);
            if ((prev_val < 0.0) != (val < 0.0)) brackets.push_back({prev_rho, rho});
            prev_rho = rho;
            prev_val = val;
        }
        if (brackets.empty()) {
            out.warnings.push_back("no spinodal sign change at T=" + detail::fmt(T));
            continue;
        }
        auto bisect = [&](std::pair<double, double> br) {
            auto [a, b] = br;
            double fa = f(a);
            while (b - a > cfg.bisect_tol) {
                double mid = 0.5 * (a + b);
                double fm = f(mid);
                if ((fa < 0.0) == (fm < 0.0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            return 0.5 * (a + b);
        };
        // the outermost crossings bracket the unstable region
        std::vector<double> roots{bisect(brackets.front())};
        if (brackets.size() > 1) roots.push_back(bisect(brackets.back()));
        for (double rho : roots) {
            if (detail::already_sampled(sampled, T, rho, cfg.dedupe_rel)) continue;
            if (detail::already_sampled(out.points, T, rho, cfg.dedupe_rel)) continue;
            out.points.push_back({T, rho, next_step});
        }
    }
    return out;
}

}  // namespace osmoflow::eos
