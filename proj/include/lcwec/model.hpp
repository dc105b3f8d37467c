// Core physical model of an LC-tuned point-absorber wave energy converter:
// parameter types, the electrical load, and the mapping from the load to the
// electrically induced mechanical coefficients of the closed-loop oscillator.
#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace lcwec {

// =============================================================================
// Parameter types
// =============================================================================

/// Lumped mechanical parameters of the floating oscillator.
///
/// `mass_total` already includes the hydrodynamic added mass; `damping` is the
/// radiation damping and `stiffness` the hydrostatic restoring coefficient.
struct MechanicalParams {
    double mass_total;  ///< M_m [kg]
    double damping;     ///< B_m [N·s/m]
    double stiffness;   ///< K_m [N/m]

    MechanicalParams(double mass_total_, double damping_, double stiffness_)
        : mass_total(mass_total_), damping(damping_), stiffness(stiffness_) {
        if (!(mass_total > 0.0) || !std::isfinite(mass_total))
            throw std::invalid_argument("MechanicalParams: mass_total must be positive");
        if (!(damping > 0.0) || !std::isfinite(damping))
            throw std::invalid_argument("MechanicalParams: damping must be positive");
        if (!(stiffness > 0.0) || !std::isfinite(stiffness))
            throw std::invalid_argument("MechanicalParams: stiffness must be positive");
    }

    friend bool operator==(const MechanicalParams&, const MechanicalParams&) = default;
};

/// Electric (voltage) and force constants of the permanent magnet linear
/// generator. Physically the two are equal; unequal values are allowed for
/// sensitivity studies, see `generator_constant_mismatch`.
struct GeneratorParams {
    double k_e;  ///< electric constant [V·s/m]
    double k_t;  ///< force constant [N/A]

    GeneratorParams(double k_e_, double k_t_) : k_e(k_e_), k_t(k_t_) {
        if (!(k_e > 0.0) || !std::isfinite(k_e))
            throw std::invalid_argument("GeneratorParams: k_e must be positive");
        if (!(k_t > 0.0) || !std::isfinite(k_t))
            throw std::invalid_argument("GeneratorParams: k_t must be positive");
    }

    friend bool operator==(const GeneratorParams&, const GeneratorParams&) = default;
};

/// Returns a warning message when the generator constants differ. The model
/// formulas remain valid for unequal constants, but the instantaneous
/// electrical power then no longer equals the PTO mechanical power.
inline std::optional<std::string>
generator_constant_mismatch(const GeneratorParams& gen) {
    if (gen.k_e == gen.k_t) return std::nullopt;
    return "generator constants differ (k_e = " + std::to_string(gen.k_e) +
           ", k_t = " + std::to_string(gen.k_t) +
           "); electrical and PTO mechanical power will not coincide";
}

/// Resistive load plus the optional parallel LC tuning network.
///
/// Disconnected branches are absent optionals, not sentinel numerics: an
/// absent inductor behaves as L = inf (no current path), an absent capacitor
/// as C = 0. `effective_capacitance` and `effective_inverse_inductance`
/// expose those limits for admittance arithmetic.
struct RlcLoad {
    double resistance;                  ///< R [ohm]
    std::optional<double> inductance;   ///< L [H], absent = disconnected
    std::optional<double> capacitance;  ///< C [F], absent = disconnected

    explicit RlcLoad(double resistance_,
                     std::optional<double> inductance_ = std::nullopt,
                     std::optional<double> capacitance_ = std::nullopt)
        : resistance(resistance_), inductance(inductance_), capacitance(capacitance_) {
        if (!(resistance > 0.0) || !std::isfinite(resistance))
            throw std::invalid_argument("RlcLoad: resistance must be positive and finite");
        if (inductance && (!(*inductance > 0.0) || !std::isfinite(*inductance)))
            throw std::invalid_argument("RlcLoad: inductance must be positive when connected");
        if (capacitance && (!(*capacitance > 0.0) || !std::isfinite(*capacitance)))
            throw std::invalid_argument("RlcLoad: capacitance must be positive when connected");
    }

    friend bool operator==(const RlcLoad&, const RlcLoad&) = default;
};

/// C with a disconnected capacitor behaving as 0 F.
inline double effective_capacitance(const RlcLoad& load) {
    return load.capacitance.value_or(0.0);
}

/// 1/L with a disconnected inductor behaving as L = inf.
inline double effective_inverse_inductance(const RlcLoad& load) {
    return load.inductance ? 1.0 / *load.inductance : 0.0;
}

/// Electrically induced mass, damping and stiffness: the mechanical
/// coefficients the oscillator feels through the generator coupling,
///   M_ei = K_t·K_e·C,  B_ei = K_t·K_e/R,  K_ei = K_t·K_e/L.
struct ElectricInduced {
    double m_ei;  ///< [kg], from the capacitor branch
    double b_ei;  ///< [N·s/m], from the resistor branch
    double k_ei;  ///< [N/m], from the inductor branch
};

/// Regular (single-frequency) wave excitation f_w(t) = amplitude·cos(omega·t).
struct WaveForcing {
    double amplitude;  ///< A_w [N]
    double omega;      ///< wave angular frequency [rad/s]

    WaveForcing(double amplitude_, double omega_)
        : amplitude(amplitude_), omega(omega_) {
        if (!(amplitude > 0.0) || !std::isfinite(amplitude))
            throw std::invalid_argument("WaveForcing: amplitude must be positive");
        if (!(omega > 0.0) || !std::isfinite(omega))
            throw std::invalid_argument("WaveForcing: omega must be positive");
    }

    friend bool operator==(const WaveForcing&, const WaveForcing&) = default;
};

/// Wave force sample at time t.
inline double wave_force(const WaveForcing& wave, double t) {
    return wave.amplitude * std::cos(wave.omega * t);
}

// =============================================================================
// Load <-> induced-coefficient mapping
// =============================================================================

/// Maps the electrical load to the induced mechanical coefficients.
/// Disconnected capacitor gives m_ei = 0; disconnected inductor gives k_ei = 0.
inline ElectricInduced electric_induced(const GeneratorParams& gen,
                                        const RlcLoad& load) {
    const double coupling = gen.k_t * gen.k_e;
    return ElectricInduced{
        coupling * effective_capacitance(load),
        coupling / load.resistance,
        coupling * effective_inverse_inductance(load),
    };
}

/// Inverse of `electric_induced`: the unique load realizing the given induced
/// coefficients. Zero m_ei / k_ei map back to disconnected branches.
inline RlcLoad load_for(const GeneratorParams& gen, const ElectricInduced& eind) {
    if (!(eind.b_ei > 0.0))
        throw std::invalid_argument("load_for: b_ei must be positive (finite resistance)");
    if (eind.m_ei < 0.0 || eind.k_ei < 0.0)
        throw std::invalid_argument("load_for: induced coefficients must be nonnegative");
    const double coupling = gen.k_t * gen.k_e;
    std::optional<double> l, c;
    if (eind.k_ei > 0.0) l = coupling / eind.k_ei;
    if (eind.m_ei > 0.0) c = eind.m_ei / coupling;
    return RlcLoad(coupling / eind.b_ei, l, c);
}

/// Coefficients of the closed-loop equation of motion
///   (M_m+M_ei)·x'' + (B_m+B_ei)·x' + (K_m+K_ei)·x = f_w(t).
struct ClosedLoopCoefficients {
    double total_mass;       ///< M_m + M_ei [kg]
    double total_damping;    ///< B_m + B_ei [N·s/m]
    double total_stiffness;  ///< K_m + K_ei [N/m]
};

inline ClosedLoopCoefficients
closed_loop_coefficients(const MechanicalParams& mech, const ElectricInduced& eind) {
    return ClosedLoopCoefficients{
        mech.mass_total + eind.m_ei,
        mech.damping + eind.b_ei,
        mech.stiffness + eind.k_ei,
    };
}

}  // namespace lcwec
