// Scenario configuration: flat dotted-key config files, the built-in case
// presets, and resolution of the "auto" load through the tuning rules.
#pragma once

#include <charconv>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lcwec/csv.hpp"
#include "lcwec/model.hpp"
#include "lcwec/sweep.hpp"
#include "lcwec/time_sim.hpp"
#include "lcwec/tuning.hpp"

namespace lcwec {

/// Parsed configuration: dotted keys to raw values, ordered for
/// deterministic serialization.
using ConfigMap = std::map<std::string, std::string>;

/// Grid description for the sweep command.
struct SweepSpec {
    double omega_min = 0.5;
    double omega_max = 2.7;
    std::size_t points = 45;
    SweepMode mode = SweepMode::Tuned;

    friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

/// Fully concrete run description; nothing left to resolve.
struct Scenario {
    MechanicalParams mech;
    GeneratorParams gen;
    RlcLoad load;
    WaveForcing wave;
    SimConfig sim;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Scenario plus the sweep grid and, when the load was requested as "auto",
/// the tuning decision that produced it.
struct ResolvedScenario {
    Scenario scenario;
    SweepSpec sweep;
    std::optional<TuningDecision> tuning;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline double parse_number(std::string_view key, std::string_view value) {
    double out = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto res = std::from_chars(begin, end, out);
    if (res.ec != std::errc{} || res.ptr != end)
        throw std::invalid_argument("config: key '" + std::string(key) +
                                    "' has non-numeric value '" + std::string(value) + "'");
    return out;
}

inline const std::vector<std::string_view>& known_keys() {
    static const std::vector<std::string_view> keys{
        "mech.mass_total", "mech.damping", "mech.stiffness",
        "gen.k_e", "gen.k_t",
        "load", "load.resistance", "load.inductance", "load.capacitance",
        "wave.amplitude", "wave.omega",
        "sim.dt", "sim.t_end", "sim.x0", "sim.v0",
        "sweep.omega_min", "sweep.omega_max", "sweep.points", "sweep.mode",
    };
    return keys;
}

}  // namespace detail

/// Parses `key = value` lines; '#' starts a comment, blank lines are skipped,
/// a repeated key keeps its last value.
inline ConfigMap parse_config_text(std::string_view text) {
    ConfigMap map;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                        " is not of the form key = value");
        const std::string_view key = detail::trim(line.substr(0, eq));
        const std::string_view value = detail::trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                        " has an empty key or value");
        map[std::string(key)] = std::string(value);
    }
    return map;
}

inline const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{
        "case1", "case2", "case3", "sweep-tuned", "sweep-untuned"};
    return names;
}

/// Built-in scenarios. The three cases share the reference converter
/// parameters (the resolver's defaults) and differ in wave frequency; the
/// sweep presets select the grid mode.
inline ConfigMap preset_config(std::string_view name) {
    const MechanicalParams reference_mech(10000.0, 4000.0, 31580.0);
    if (name == "case1")
        return ConfigMap{{"load", "auto"},
                         {"wave.omega", format_double(natural_frequency(reference_mech))},
                         {"sim.t_end", "40"}};
    if (name == "case2")
        return ConfigMap{{"load", "auto"}, {"wave.omega", "1"}, {"sim.t_end", "60"}};
    if (name == "case3")
        return ConfigMap{{"load", "auto"}, {"wave.omega", "2.3"}, {"sim.t_end", "40"}};
    if (name == "sweep-tuned")
        return ConfigMap{{"load", "auto"}, {"sweep.mode", "tuned"}};
    if (name == "sweep-untuned")
        return ConfigMap{{"load", "auto"}, {"sweep.mode", "untuned"}};
    throw std::invalid_argument("unknown preset '" + std::string(name) +
                                "' (available: case1, case2, case3, sweep-tuned, sweep-untuned)");
}

/// Builds the concrete scenario. Missing keys fall back to the reference
/// converter parameters; `load = auto` (the default) applies the tuning rules
/// at the wave frequency with R = K_t·K_e/B_m unless load.resistance is given.
inline ResolvedScenario resolve_scenario(const ConfigMap& map) {
    for (const auto& [key, value] : map) {
        bool known = false;
        for (const std::string_view k : detail::known_keys()) known |= (k == key);
        if (!known) throw std::invalid_argument("config: unknown key '" + key + "'");
        (void)value;
    }
    const auto lookup = [&](std::string_view key) -> std::optional<std::string_view> {
        const auto it = map.find(std::string(key));
        if (it == map.end()) return std::nullopt;
        return std::string_view(it->second);
    };
    const auto number_or = [&](std::string_view key, double fallback) {
        const auto raw = lookup(key);
        return raw ? detail::parse_number(key, *raw) : fallback;
    };
    const auto optional_number = [&](std::string_view key) -> std::optional<double> {
        const auto raw = lookup(key);
        if (!raw) return std::nullopt;
        return detail::parse_number(key, *raw);
    };

    const MechanicalParams mech(number_or("mech.mass_total", 10000.0),
                                number_or("mech.damping", 4000.0),
                                number_or("mech.stiffness", 31580.0));
    const GeneratorParams gen(number_or("gen.k_e", 842.0), number_or("gen.k_t", 842.0));
    const WaveForcing wave(number_or("wave.amplitude", 10000.0),
                           number_or("wave.omega", natural_frequency(mech)));
    SimConfig sim;
    sim.dt = number_or("sim.dt", sim.dt);
    sim.t_end = number_or("sim.t_end", 40.0);
    sim.x0 = number_or("sim.x0", sim.x0);
    sim.v0 = number_or("sim.v0", sim.v0);

    SweepSpec sweep;
    sweep.omega_min = number_or("sweep.omega_min", sweep.omega_min);
    sweep.omega_max = number_or("sweep.omega_max", sweep.omega_max);
    const double points = number_or("sweep.points", static_cast<double>(sweep.points));
    if (!(points >= 2.0) || points != static_cast<double>(static_cast<std::size_t>(points)))
        throw std::invalid_argument("config: sweep.points must be an integer >= 2");
    sweep.points = static_cast<std::size_t>(points);
    if (const auto mode = lookup("sweep.mode")) {
        if (*mode == "tuned") sweep.mode = SweepMode::Tuned;
        else if (*mode == "untuned") sweep.mode = SweepMode::Untuned;
        else throw std::invalid_argument("config: sweep.mode must be 'tuned' or 'untuned'");
    }

    const std::string_view load_mode = lookup("load").value_or("auto");
    std::optional<TuningDecision> tuning;
    std::optional<RlcLoad> load;
    if (load_mode == "auto") {
        if (lookup("load.inductance") || lookup("load.capacitance"))
            throw std::invalid_argument("config: 'load = auto' does not take explicit L or C");
        const double r = number_or("load.resistance", gen.k_t * gen.k_e / mech.damping);
        tuning = tune(mech, gen, wave.omega);
        load = to_load(*tuning, r);
    } else if (load_mode == "explicit") {
        const double r = number_or("load.resistance", gen.k_t * gen.k_e / mech.damping);
        load = RlcLoad(r, optional_number("load.inductance"), optional_number("load.capacitance"));
    } else {
        throw std::invalid_argument("config: load must be 'auto' or 'explicit'");
    }

    return ResolvedScenario{Scenario{mech, gen, *load, wave, sim}, sweep, tuning};
}

/// Flat config text reproducing the scenario exactly; resolving the output
/// yields the same scenario field for field.
inline std::string serialize_scenario(const Scenario& s) {
    std::string out;
    const auto line = [&out](std::string_view key, const std::string& value) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    };
    line("mech.mass_total", format_double(s.mech.mass_total));
    line("mech.damping", format_double(s.mech.damping));
    line("mech.stiffness", format_double(s.mech.stiffness));
    line("gen.k_e", format_double(s.gen.k_e));
    line("gen.k_t", format_double(s.gen.k_t));
    line("load", "explicit");
    line("load.resistance", format_double(s.load.resistance));
    if (s.load.inductance) line("load.inductance", format_double(*s.load.inductance));
    if (s.load.capacitance) line("load.capacitance", format_double(*s.load.capacitance));
    line("wave.amplitude", format_double(s.wave.amplitude));
    line("wave.omega", format_double(s.wave.omega));
    line("sim.dt", format_double(s.sim.dt));
    line("sim.t_end", format_double(s.sim.t_end));
    line("sim.x0", format_double(s.sim.x0));
    line("sim.v0", format_double(s.sim.v0));
    return out;
}

}  // namespace lcwec
