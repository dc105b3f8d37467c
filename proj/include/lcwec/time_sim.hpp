// Time-domain integration of the closed-loop converter dynamics with a
// classical fixed-step 4th-order Runge-Kutta scheme, plus trace
// post-processing: tail averaging, harmonic extraction, settling detection.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lcwec/model.hpp"

namespace lcwec {

/// Raised when the integration produces non-physical growth (fixed-step
/// instability). Distinct from std::invalid_argument so callers can map
/// configuration errors and numerical diagnostics to different exit paths.
class diagnostic_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Fixed-step integration window and initial state.
struct SimConfig {
    double dt = 0.01;  ///< step [s]
    double t_end = 0;  ///< final time [s]
    double x0 = 0;     ///< initial displacement [m]
    double v0 = 0;     ///< initial velocity [m/s]

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

inline void validate(const SimConfig& cfg) {
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt))
        throw std::invalid_argument("SimConfig: dt must be positive");
    if (!(cfg.t_end >= cfg.dt) || !std::isfinite(cfg.t_end))
        throw std::invalid_argument("SimConfig: t_end must be at least dt");
    if (!std::isfinite(cfg.x0) || !std::isfinite(cfg.v0))
        throw std::invalid_argument("SimConfig: initial state must be finite");
}

/// Uniformly sampled time series of the state and derived signals.
/// Column names match the CSV schema; `column` resolves them by name.
struct SimTrace {
    double dt = 0;     ///< sample spacing [s]
    double omega = 0;  ///< forcing frequency the trace was generated at [rad/s]

    std::vector<double> t;
    std::vector<double> x, x_dot, x_ddot;
    std::vector<double> f_w, f_pto, f_r_sub, f_l_sub, f_c_sub;
    std::vector<double> v, i, i_r, i_l, i_c;
    std::vector<double> p_elec, p_abs;

    std::size_t size() const { return t.size(); }

    const std::vector<double>* column(std::string_view name) const {
        static constexpr std::array<std::string_view, 16> names{
            "t",   "x", "x_dot", "x_ddot", "f_w", "f_pto", "f_r_sub", "f_l_sub",
            "f_c_sub", "v", "i",  "i_r",   "i_l", "i_c",   "p_elec",  "p_abs"};
        const std::vector<double>* cols[] = {
            &t,   &x, &x_dot, &x_ddot, &f_w, &f_pto, &f_r_sub, &f_l_sub,
            &f_c_sub, &v, &i,  &i_r,   &i_l, &i_c,   &p_elec,  &p_abs};
        for (std::size_t k = 0; k < names.size(); ++k)
            if (names[k] == name) return cols[k];
        return nullptr;
    }
};

/// Integration kernel. Amplitude 0 is allowed here (free decay from a
/// nonzero initial state); the public `simulate` front end takes a validated
/// WaveForcing and therefore always a positive amplitude.
///
/// The state is (x, x'); x'' is recovered algebraically from the equation of
/// motion at each sample, never by differencing, so the capacitor current and
/// sub-force columns carry no differentiation noise. Growth of |x| beyond
/// 1e6 times the static deflection of the forcing (or the initial state for
/// free decay) is reported as a diagnostic error.
inline SimTrace simulate_forced(const MechanicalParams& mech,
                                const GeneratorParams& gen, const RlcLoad& load,
                                double amplitude, double omega,
                                const SimConfig& cfg) {
    validate(cfg);
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw std::invalid_argument("simulate: omega must be positive");
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude))
        throw std::invalid_argument("simulate: amplitude must be nonnegative");

    const ElectricInduced eind = electric_induced(gen, load);
    const ClosedLoopCoefficients coef = closed_loop_coefficients(mech, eind);
    const double inv_mass = 1.0 / coef.total_mass;
    const auto accel = [&](double t, double x, double v) {
        return (amplitude * std::cos(omega * t) - coef.total_damping * v -
                coef.total_stiffness * x) * inv_mass;
    };

    // Growth guard reference: static deflection, or the initial excursion
    // when there is no forcing.
    const double x_ref = std::max({amplitude / coef.total_stiffness,
                                   std::abs(cfg.x0), std::abs(cfg.v0) / omega});
    const double x_limit = 1e6 * std::max(x_ref, 1e-30);

    const double dt = cfg.dt;
    const std::size_t steps =
        static_cast<std::size_t>(std::floor(cfg.t_end / dt + 1e-9));

    SimTrace tr;
    tr.dt = dt;
    tr.omega = omega;
    for (auto* col : {&tr.t, &tr.x, &tr.x_dot, &tr.x_ddot, &tr.f_w, &tr.f_pto,
                      &tr.f_r_sub, &tr.f_l_sub, &tr.f_c_sub, &tr.v, &tr.i,
                      &tr.i_r, &tr.i_l, &tr.i_c, &tr.p_elec, &tr.p_abs})
        col->reserve(steps + 1);

    const double inv_l = effective_inverse_inductance(load);
    const double cap = effective_capacitance(load);
    const auto push_sample = [&](double t, double x, double v) {
        const double a = accel(t, x, v);
        const double volt = gen.k_e * v;
        const double cur_r = gen.k_e * v / load.resistance;
        const double cur_l = gen.k_e * inv_l * x;
        const double cur_c = cap * gen.k_e * a;
        const double cur = cur_r + cur_l + cur_c;
        tr.t.push_back(t);
        tr.x.push_back(x);
        tr.x_dot.push_back(v);
        tr.x_ddot.push_back(a);
        tr.f_w.push_back(amplitude * std::cos(omega * t));
        tr.f_pto.push_back(gen.k_t * cur);
        tr.f_r_sub.push_back(gen.k_t * cur_r);
        tr.f_l_sub.push_back(gen.k_t * cur_l);
        tr.f_c_sub.push_back(gen.k_t * cur_c);
        tr.v.push_back(volt);
        tr.i.push_back(cur);
        tr.i_r.push_back(cur_r);
        tr.i_l.push_back(cur_l);
        tr.i_c.push_back(cur_c);
        tr.p_elec.push_back(volt * cur);
        tr.p_abs.push_back(amplitude * std::cos(omega * t) * v);
    };

    double x = cfg.x0, v = cfg.v0;
    push_sample(0.0, x, v);
    for (std::size_t n = 0; n < steps; ++n) {
        const double t = static_cast<double>(n) * dt;
        const double k1x = v, k1v = accel(t, x, v);
        const double k2x = v + 0.5 * dt * k1v;
        const double k2v = accel(t + 0.5 * dt, x + 0.5 * dt * k1x, k2x);
        const double k3x = v + 0.5 * dt * k2v;
        const double k3v = accel(t + 0.5 * dt, x + 0.5 * dt * k2x, k3x);
        const double k4x = v + dt * k3v;
        const double k4v = accel(t + dt, x + dt * k3x, k4x);
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        const double t_next = static_cast<double>(n + 1) * dt;
        if (!std::isfinite(x) || !std::isfinite(v) || std::abs(x) > x_limit)
            throw diagnostic_error(
                "simulate: step instability at t = " + std::to_string(t_next) +
                " s, |x| exceeded 1e6 times the static deflection; reduce dt");
        push_sample(t_next, x, v);
    }
    return tr;
}

/// Integrates the closed-loop equation of motion under the given wave forcing
/// from the configured initial state (static start by default).
inline SimTrace simulate(const MechanicalParams& mech, const GeneratorParams& gen,
                         const RlcLoad& load, const WaveForcing& wave,
                         const SimConfig& cfg) {
    return simulate_forced(mech, gen, load, wave.amplitude, wave.omega, cfg);
}

// =============================================================================
// Trace post-processing
// =============================================================================

/// Mean of sample(index) over exactly n_periods forcing periods at the trace
/// tail, trapezoidal rule. The window start rarely falls on a sample, so the
/// first partial interval is handled by linear interpolation.
template <typename F>
double tail_period_mean(const SimTrace& trace, int n_periods, F&& sample) {
    if (n_periods < 1) throw std::invalid_argument("tail_period_mean: n_periods must be >= 1");
    if (trace.size() < 2) throw std::invalid_argument("tail_period_mean: trace too short");
    const double period = 2.0 * std::numbers::pi / trace.omega;
    const double window = n_periods * period;
    const double t_hi = trace.t.back();
    const double t_lo = t_hi - window;
    if (t_lo < -1e-9 * window)
        throw std::invalid_argument("tail_period_mean: trace shorter than averaging window");

    const double dt = trace.dt;
    std::size_t j = static_cast<std::size_t>(std::max(0.0, std::ceil(t_lo / dt - 1e-9)));
    double integral = 0.0;
    double prev = sample(j);
    for (std::size_t k = j + 1; k < trace.size(); ++k) {
        const double cur = sample(k);
        integral += 0.5 * dt * (prev + cur);
        prev = cur;
    }
    const double lead = trace.t[j] - t_lo;  // partial interval before sample j
    if (lead > 1e-12 && j > 0) {
        const double frac = lead / dt;
        const double s_j = sample(j), s_jm1 = sample(j - 1);
        const double s_lo = s_j + (s_jm1 - s_j) * frac;
        integral += 0.5 * lead * (s_lo + s_j);
    }
    return integral / window;
}

struct AveragePowers {
    double p_active_avg;    ///< mean electrical power [W]
    double p_absorbed_avg;  ///< mean mechanical absorption [W]
};

/// Average electric and absorbed power over the last n_periods full periods.
inline AveragePowers average_powers(const SimTrace& trace, int n_periods) {
    return AveragePowers{
        tail_period_mean(trace, n_periods, [&](std::size_t k) { return trace.p_elec[k]; }),
        tail_period_mean(trace, n_periods, [&](std::size_t k) { return trace.p_abs[k]; }),
    };
}

/// Amplitude and phase (against cos(omega·t)) of a trace column, extracted by
/// least-squares fit of a·cos + b·sin + offset over the tail window.
struct Harmonic {
    double amplitude;
    double phase;  ///< in (-pi, pi]
};

inline Harmonic tail_amplitude_phase(const SimTrace& trace,
                                     std::string_view column_name,
                                     int n_periods = 5) {
    const std::vector<double>* col = trace.column(column_name);
    if (col == nullptr || column_name == "t")
        throw std::invalid_argument("tail_amplitude_phase: unknown signal column");
    if (n_periods < 1) throw std::invalid_argument("tail_amplitude_phase: n_periods must be >= 1");
    const double period = 2.0 * std::numbers::pi / trace.omega;
    const double t_lo = trace.t.back() - n_periods * period;
    if (t_lo < -1e-9 * period)
        throw std::invalid_argument("tail_amplitude_phase: trace shorter than fit window");
    const std::size_t j =
        static_cast<std::size_t>(std::max(0.0, std::ceil(t_lo / trace.dt - 1e-9)));

    // Normal equations for [a b c] over the tail samples. Near-integer-period
    // windows keep the system well conditioned.
    double m[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    double rhs[3] = {0, 0, 0};
    for (std::size_t k = j; k < trace.size(); ++k) {
        const double ct = std::cos(trace.omega * trace.t[k]);
        const double st = std::sin(trace.omega * trace.t[k]);
        const double basis[3] = {ct, st, 1.0};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) m[r][c] += basis[r] * basis[c];
            rhs[r] += basis[r] * (*col)[k];
        }
    }
    // Gaussian elimination with partial pivoting on the 3x3 system.
    int order[3] = {0, 1, 2};
    for (int p = 0; p < 3; ++p) {
        int best = p;
        for (int r = p + 1; r < 3; ++r)
            if (std::abs(m[order[r]][p]) > std::abs(m[order[best]][p])) best = r;
        std::swap(order[p], order[best]);
        const double pivot = m[order[p]][p];
        if (pivot == 0.0) throw std::invalid_argument("tail_amplitude_phase: degenerate fit");
        for (int r = p + 1; r < 3; ++r) {
            const double factor = m[order[r]][p] / pivot;
            for (int c = p; c < 3; ++c) m[order[r]][c] -= factor * m[order[p]][c];
            rhs[order[r]] -= factor * rhs[order[p]];
        }
    }
    double sol[3];
    for (int p = 2; p >= 0; --p) {
        double acc = rhs[order[p]];
        for (int c = p + 1; c < 3; ++c) acc -= m[order[p]][c] * sol[c];
        sol[p] = acc / m[order[p]][p];
    }
    const double a = sol[0], b = sol[1];
    return Harmonic{std::hypot(a, b), std::atan2(-b, a)};
}

/// Earliest time after which every per-period peak of the signal stays within
/// rel_tol of the final-period peak: the trace is partitioned into complete
/// forcing periods and the timestamp of the last out-of-band peak is
/// returned (0 when no period violates the band, i.e. settled from the
/// start). Returns nullopt when the criterion is not met by t_end or cannot
/// be confirmed by at least 3 clean full periods after the candidate point.
inline std::optional<double> settling_time(const SimTrace& trace,
                                           std::string_view column_name,
                                           double rel_tol = 0.02) {
    const std::vector<double>* col = trace.column(column_name);
    if (col == nullptr || column_name == "t")
        throw std::invalid_argument("settling_time: unknown signal column");
    if (!(rel_tol > 0.0)) throw std::invalid_argument("settling_time: rel_tol must be positive");
    const double period = 2.0 * std::numbers::pi / trace.omega;
    const double dt = trace.dt;
    const std::size_t n = trace.size();
    const auto windows =
        static_cast<std::size_t>((static_cast<double>(n - 1) * dt + 1e-9 * dt) / period);
    if (windows < 3)
        throw std::invalid_argument("settling_time: trace holds fewer than 3 full periods");

    std::vector<double> peak(windows, 0.0);
    std::vector<std::size_t> peak_at(windows, 0);
    for (std::size_t w = 0; w < windows; ++w) {
        const auto lo = static_cast<std::size_t>(std::llround(static_cast<double>(w) * period / dt));
        auto hi = static_cast<std::size_t>(std::llround(static_cast<double>(w + 1) * period / dt));
        hi = std::min(hi, n - 1);
        double best = -1.0;
        std::size_t best_k = lo;
        for (std::size_t k = lo; k <= hi; ++k) {
            if (std::abs((*col)[k]) > best) {
                best = std::abs((*col)[k]);
                best_k = k;
            }
        }
        peak[w] = best;
        peak_at[w] = best_k;
    }
    const double reference = peak[windows - 1];
    if (reference == 0.0) return 0.0;  // identically quiet signal

    std::size_t last_violation = windows;  // sentinel: none
    for (std::size_t w = 0; w + 1 < windows; ++w)
        if (std::abs(peak[w] - reference) > rel_tol * reference) last_violation = w;
    if (last_violation == windows) return 0.0;
    if (windows - 1 - last_violation < 3) return std::nullopt;  // unconfirmed by t_end
    return trace.t[peak_at[last_violation]];
}

}  // namespace lcwec
