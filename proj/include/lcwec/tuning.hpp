// LC tuning rules: choose the capacitor or inductor that places the
// closed-loop resonance exactly at the incoming wave frequency.
#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

#include "lcwec/model.hpp"

namespace lcwec {

/// Undamped natural frequency of the bare oscillator, sqrt(K_m/M_m) [rad/s].
inline double natural_frequency(const MechanicalParams& mech) {
    return std::sqrt(mech.stiffness / mech.mass_total);
}

/// Relative tolerance under which a wave frequency counts as equal to the
/// natural frequency. Exact comparison is meaningless for floating point.
inline constexpr double k_at_natural_rel_tol = 1e-6;

enum class TuningRule {
    AtNatural,       ///< omega = omega_0: disconnect both branches
    CapacitorTuned,  ///< omega < omega_0: add inertia through C
    InductorTuned,   ///< omega > omega_0: add stiffness through L
};

/// Outcome of `tune`: the rule chosen and the prescribed branch values.
/// Exactly one of capacitance/inductance is present unless the rule is
/// AtNatural, in which case both are absent.
struct TuningDecision {
    TuningRule rule;
    std::optional<double> capacitance;  ///< [F]
    std::optional<double> inductance;   ///< [H]
    double omega;                       ///< frequency tuned for [rad/s]
};

/// Resonance defect (K_m+K_ei) - omega^2·(M_m+M_ei) [N/m]. Zero exactly when
/// the closed loop resonates at omega.
inline double resonance_residual(const MechanicalParams& mech,
                                 const ElectricInduced& eind, double omega) {
    if (!(omega > 0.0)) throw std::invalid_argument("resonance_residual: omega must be positive");
    const ClosedLoopCoefficients c = closed_loop_coefficients(mech, eind);
    return c.total_stiffness - omega * omega * c.total_mass;
}

/// Selects the branch and value that zero the resonance residual at omega:
///
///   omega = omega_0:  no tuning needed, both branches disconnected;
///   omega < omega_0:  C = (K_m/omega^2 - M_m)/(K_t·K_e), L disconnected;
///   omega > omega_0:  L = K_t·K_e/(omega^2·M_m - K_m), C disconnected.
///
/// The prescribed C grows without bound as omega -> 0; no cap is applied
/// here, callers decide whether a value is practical.
inline TuningDecision tune(const MechanicalParams& mech,
                           const GeneratorParams& gen, double omega) {
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw std::invalid_argument("tune: omega must be positive");
    const double omega0 = natural_frequency(mech);
    const double coupling = gen.k_t * gen.k_e;
    if (std::abs(omega - omega0) <= k_at_natural_rel_tol * omega0)
        return TuningDecision{TuningRule::AtNatural, std::nullopt, std::nullopt, omega};
    if (omega < omega0) {
        const double c = (mech.stiffness / (omega * omega) - mech.mass_total) / coupling;
        return TuningDecision{TuningRule::CapacitorTuned, c, std::nullopt, omega};
    }
    const double l = coupling / (omega * omega * mech.mass_total - mech.stiffness);
    return TuningDecision{TuningRule::InductorTuned, std::nullopt, l, omega};
}

/// Load realizing a tuning decision with the given resistor.
inline RlcLoad to_load(const TuningDecision& decision, double resistance) {
    return RlcLoad(resistance, decision.inductance, decision.capacitance);
}

}  // namespace lcwec
