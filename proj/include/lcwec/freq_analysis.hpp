// Analytical steady-state (phasor) solution of the closed-loop converter:
// frequency response, motion amplitudes and phases, generator voltage and
// current, sub-forces, and every mechanical/electrical power quantity.
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "lcwec/model.hpp"

namespace lcwec {

/// Wraps an angle to (-pi, pi].
inline double wrap_phase(double angle) {
    const double two_pi = 2.0 * std::numbers::pi;
    double a = std::remainder(angle, two_pi);  // (-pi, pi], except -pi for ties
    if (a <= -std::numbers::pi) a += two_pi;
    return a;
}

/// Complex frequency response from wave force to displacement,
///   H(j·omega) = 1 / [(K_m+K_ei) - omega^2·(M_m+M_ei) + j·omega·(B_m+B_ei)].
/// The denominator never vanishes since total damping is positive.
struct FrequencyResponse {
    std::complex<double> h;  ///< [m/N]
    double magnitude;        ///< |h| [m/N]
    double phase;            ///< arg(h), in (-pi, pi]
};

inline FrequencyResponse frequency_response(const MechanicalParams& mech,
                                            const ElectricInduced& eind,
                                            double omega) {
    if (!(omega > 0.0)) throw std::invalid_argument("frequency_response: omega must be positive");
    const ClosedLoopCoefficients c = closed_loop_coefficients(mech, eind);
    const std::complex<double> den(c.total_stiffness - omega * omega * c.total_mass,
                                   omega * c.total_damping);
    const std::complex<double> h = 1.0 / den;
    return FrequencyResponse{h, std::abs(h), std::arg(h)};
}

/// Full phasor solution at one frequency. Phases are measured against the
/// cos(omega·t) wave force; psi is the current-vs-voltage phase with the
/// capacitive (current leading) direction positive, so q_reactive > 0 means
/// capacitive operation.
struct SteadyStateReport {
    double x_amp;         ///< displacement amplitude [m]
    double x_phase;       ///< displacement phase [rad]
    double v_amp;         ///< velocity amplitude [m/s]
    double v_phase;       ///< velocity phase [rad]
    double a_amp;         ///< acceleration amplitude [m/s^2]
    double volt_rms;      ///< generator voltage V [V]
    double curr_rms;      ///< total load current I [A]
    double psi;           ///< current-vs-voltage phase [rad]
    double power_factor;  ///< cos(psi)
    double p_active;      ///< active electric power P = V^2/R [W]
    double s_apparent;    ///< apparent power S = V·I [VA]
    double q_reactive;    ///< reactive power Q = S·sin(psi) [VAR]
    double p_absorbed;    ///< average mechanical absorption P_a [W]
    double p_radiated;    ///< part re-radiated through B_m (P_m) [W]
    double p_generator;   ///< part entering the generator (P_ei) [W]
    double f_r_amp;       ///< resistor sub-force amplitude B_ei·v_amp [N]
    double f_l_amp;       ///< inductor sub-force amplitude K_ei·x_amp [N]
    double f_c_amp;       ///< capacitor sub-force amplitude M_ei·a_amp [N]
    double f_pto_eff;     ///< effective PTO force K_t·I [N]
};

inline SteadyStateReport steady_state(const MechanicalParams& mech,
                                      const GeneratorParams& gen,
                                      const RlcLoad& load,
                                      const WaveForcing& wave) {
    const double omega = wave.omega;
    const ElectricInduced eind = electric_induced(gen, load);
    const FrequencyResponse fr = frequency_response(mech, eind, omega);

    SteadyStateReport r{};
    r.x_amp = wave.amplitude * fr.magnitude;
    r.x_phase = fr.phase;
    r.v_amp = omega * r.x_amp;
    r.v_phase = wrap_phase(fr.phase + 0.5 * std::numbers::pi);
    r.a_amp = omega * omega * r.x_amp;

    // Electrical side: voltage phasor K_e·(velocity), load admittance
    // 1/R + j·(omega·C - 1/(omega·L)).
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    const double susceptance =
        omega * effective_capacitance(load) - effective_inverse_inductance(load) / omega;
    r.volt_rms = gen.k_e * r.v_amp * inv_sqrt2;
    r.curr_rms = r.volt_rms * std::hypot(1.0 / load.resistance, susceptance);
    r.psi = std::atan2(susceptance, 1.0 / load.resistance);
    r.power_factor = std::cos(r.psi);

    r.p_active = r.volt_rms * r.volt_rms / load.resistance;
    r.s_apparent = r.volt_rms * r.curr_rms;
    r.q_reactive = r.s_apparent * std::sin(r.psi);

    // Mechanical side: only the velocity-proportional force components absorb
    // average power, so P_a splits exactly into radiated and generator parts.
    r.p_radiated = 0.5 * mech.damping * r.v_amp * r.v_amp;
    r.p_generator = 0.5 * eind.b_ei * r.v_amp * r.v_amp;
    r.p_absorbed = r.p_radiated + r.p_generator;

    r.f_r_amp = eind.b_ei * r.v_amp;
    r.f_l_amp = eind.k_ei * r.x_amp;
    r.f_c_amp = eind.m_ei * r.a_amp;
    r.f_pto_eff = gen.k_t * r.curr_rms;
    return r;
}

/// Closed-form optimum of the resistive load: B_ei* = B_m, reached at
/// R* = K_t·K_e/B_m, with the frequency-independent power ceilings
/// P* = A_w^2/(8·B_m) and P_a* = A_w^2/(4·B_m) at the tuned resonance.
struct OptimalLoad {
    double r_star;     ///< [ohm]
    double b_ei_star;  ///< [N·s/m]
    double p_star;     ///< maximal active electric power [W]
    double p_a_star;   ///< maximal mechanical absorption [W]
};

inline OptimalLoad optimal_load(const MechanicalParams& mech,
                                const GeneratorParams& gen, double wave_amp) {
    if (!(wave_amp > 0.0)) throw std::invalid_argument("optimal_load: wave_amp must be positive");
    const double a2 = wave_amp * wave_amp;
    return OptimalLoad{
        gen.k_t * gen.k_e / mech.damping,
        mech.damping,
        a2 / (8.0 * mech.damping),
        a2 / (4.0 * mech.damping),
    };
}

}  // namespace lcwec
