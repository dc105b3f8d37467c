// Frequency sweeps comparing tuned and untuned operation, and the
// time-domain cross-check of the analytical rows.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lcwec/freq_analysis.hpp"
#include "lcwec/model.hpp"
#include "lcwec/time_sim.hpp"
#include "lcwec/tuning.hpp"

namespace lcwec {

enum class SweepMode { Tuned, Untuned };

/// One frequency point of a sweep. Effective (RMS) quantities: f_pto_eff is
/// K_t times the RMS current, f_w_eff the RMS of the wave force.
struct SweepRow {
    double omega;
    SweepMode mode;
    std::optional<double> tuned_c;  ///< [F], present only when Rule 2 applied
    std::optional<double> tuned_l;  ///< [H], present only when Rule 3 applied
    double i_rms;
    double f_pto_eff;
    double f_w_eff;
    double s_apparent;
    double p_active;
    double p_absorbed;
    double power_factor;
};

/// n uniformly spaced points covering [lo, hi] inclusive.
inline std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
    if (n < 2 || !(lo > 0.0) || !(hi > lo))
        throw std::invalid_argument("uniform_grid: need n >= 2 and 0 < lo < hi");
    std::vector<double> grid(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n; ++k) grid[k] = lo + static_cast<double>(k) * step;
    grid.back() = hi;
    return grid;
}

/// Evaluates the analytical steady state across the grid. Tuned mode applies
/// the tuning rules at each frequency before evaluating; untuned connects
/// the resistor alone.
inline std::vector<SweepRow> sweep(const MechanicalParams& mech,
                                   const GeneratorParams& gen, double r,
                                   double wave_amp,
                                   const std::vector<double>& omegas,
                                   SweepMode mode) {
    std::vector<SweepRow> rows;
    rows.reserve(omegas.size());
    const double f_w_eff = wave_amp / std::numbers::sqrt2;
    for (const double omega : omegas) {
        if (!(omega > 0.0)) throw std::invalid_argument("sweep: omegas must be positive");
        std::optional<double> c, l;
        RlcLoad load(r);
        if (mode == SweepMode::Tuned) {
            const TuningDecision decision = tune(mech, gen, omega);
            load = to_load(decision, r);
            c = decision.capacitance;
            l = decision.inductance;
        }
        const SteadyStateReport ss = steady_state(mech, gen, load, WaveForcing(wave_amp, omega));
        rows.push_back(SweepRow{omega, mode, c, l, ss.curr_rms, ss.f_pto_eff,
                                f_w_eff, ss.s_apparent, ss.p_active,
                                ss.p_absorbed, ss.power_factor});
    }
    return rows;
}

/// Deviation of one time-domain run from its analytical sweep row.
struct SweepDeviation {
    double omega;
    SweepMode mode;
    double dev_p_active;    ///< relative
    double dev_p_absorbed;  ///< relative
    double dev_i_rms;       ///< relative
};

/// Cross-validation report for a subsample of sweep rows.
struct SweepOracleReport {
    std::vector<SweepDeviation> entries;
    double max_dev_p_active = 0;
    double max_dev_p_absorbed = 0;
    double max_dev_i_rms = 0;
};

/// Re-runs the selected rows through the ODE path and compares tail-window
/// power means and RMS current against the analytical values. `r` must be the
/// resistance the rows were swept with; the LC branches are rebuilt from the
/// row itself. The configured t_end is treated as a floor: each run is
/// extended as needed to pass the transient (nine closed-loop time constants)
/// plus five averaging periods, so every comparison happens at steady state.
inline SweepOracleReport sweep_oracle_check(const std::vector<SweepRow>& rows,
                                            const MechanicalParams& mech,
                                            const GeneratorParams& gen, double r,
                                            double wave_amp, const SimConfig& cfg,
                                            const std::vector<std::size_t>& indices) {
    constexpr int n_periods = 5;
    SweepOracleReport report;
    for (const std::size_t idx : indices) {
        if (idx >= rows.size())
            throw std::invalid_argument("sweep_oracle_check: row index out of range");
        const SweepRow& row = rows[idx];
        const RlcLoad load(r, row.tuned_l, row.tuned_c);
        const WaveForcing wave(wave_amp, row.omega);

        const ClosedLoopCoefficients coef =
            closed_loop_coefficients(mech, electric_induced(gen, load));
        const double tau = 2.0 * coef.total_mass / coef.total_damping;
        const double period = 2.0 * std::numbers::pi / row.omega;
        SimConfig run = cfg;
        run.t_end = std::max(cfg.t_end, 9.0 * tau + n_periods * period + 1.0);

        const SimTrace trace = simulate(mech, gen, load, wave, run);
        const AveragePowers avg = average_powers(trace, n_periods);
        const double i_rms_sim =
            tail_amplitude_phase(trace, "i", n_periods).amplitude / std::numbers::sqrt2;

        const auto rel = [](double got, double want) {
            return std::abs(got - want) / std::abs(want);
        };
        const SweepDeviation dev{row.omega, row.mode,
                                 rel(avg.p_active_avg, row.p_active),
                                 rel(avg.p_absorbed_avg, row.p_absorbed),
                                 rel(i_rms_sim, row.i_rms)};
        report.entries.push_back(dev);
        report.max_dev_p_active = std::max(report.max_dev_p_active, dev.dev_p_active);
        report.max_dev_p_absorbed = std::max(report.max_dev_p_absorbed, dev.dev_p_absorbed);
        report.max_dev_i_rms = std::max(report.max_dev_i_rms, dev.dev_i_rms);
    }
    return report;
}

}  // namespace lcwec
