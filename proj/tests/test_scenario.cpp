#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>

#include "lcwec/csv.hpp"
#include "lcwec/scenario.hpp"

using Catch::Approx;
using namespace lcwec;

namespace {
constexpr double kRStar = 842.0 * 842.0 / 4000.0;
constexpr double kOmega0 = 1.7770762504743571;
}  // namespace

TEST_CASE("parse_config_text", "[scenario]") {
    SECTION("keys, comments, and whitespace") {
        const ConfigMap map = parse_config_text(
            "# full line comment\n"
            "wave.omega = 1.25\n"
            "  load.resistance=200  # trailing comment\n"
            "\n"
            "load = explicit\n");
        REQUIRE(map.size() == 3);
        REQUIRE(map.at("wave.omega") == "1.25");
        REQUIRE(map.at("load.resistance") == "200");
        REQUIRE(map.at("load") == "explicit");
    }
    SECTION("last duplicate wins") {
        const ConfigMap map = parse_config_text("sim.dt = 0.1\nsim.dt = 0.02\n");
        REQUIRE(map.at("sim.dt") == "0.02");
    }
    SECTION("malformed lines are rejected") {
        REQUIRE_THROWS_AS(parse_config_text("just words\n"), std::invalid_argument);
        REQUIRE_THROWS_AS(parse_config_text("= 5\n"), std::invalid_argument);
        REQUIRE_THROWS_AS(parse_config_text("wave.omega =\n"), std::invalid_argument);
    }
}

TEST_CASE("resolve_scenario defaults and overrides", "[scenario]") {
    SECTION("empty config yields the reference converter at resonance") {
        const ResolvedScenario r = resolve_scenario(ConfigMap{});
        REQUIRE(r.scenario.mech.mass_total == 10000.0);
        REQUIRE(r.scenario.mech.damping == 4000.0);
        REQUIRE(r.scenario.mech.stiffness == 31580.0);
        REQUIRE(r.scenario.gen.k_e == 842.0);
        REQUIRE(r.scenario.gen.k_t == 842.0);
        REQUIRE(r.scenario.wave.amplitude == 10000.0);
        REQUIRE(r.scenario.wave.omega == Approx(kOmega0).epsilon(1e-15));
        REQUIRE(r.scenario.sim.dt == 0.01);
        REQUIRE(r.scenario.load.resistance == Approx(kRStar).epsilon(1e-15));
        // at resonance the auto load disconnects both branches
        REQUIRE(r.tuning.has_value());
        REQUIRE(r.tuning->rule == TuningRule::AtNatural);
        REQUIRE_FALSE(r.scenario.load.capacitance.has_value());
        REQUIRE_FALSE(r.scenario.load.inductance.has_value());
    }
    SECTION("auto load tunes at the configured frequency") {
        const ResolvedScenario r =
            resolve_scenario(parse_config_text("wave.omega = 1\n"));
        REQUIRE(r.tuning.has_value());
        REQUIRE(r.tuning->rule == TuningRule::CapacitorTuned);
        REQUIRE(r.scenario.load.capacitance.has_value());
        REQUIRE(*r.scenario.load.capacitance == Approx(0.0304).epsilon(0.005));
    }
    SECTION("auto load accepts a resistance override") {
        const ResolvedScenario r = resolve_scenario(
            parse_config_text("wave.omega = 1\nload.resistance = 250\n"));
        REQUIRE(r.scenario.load.resistance == 250.0);
        REQUIRE(r.scenario.load.capacitance.has_value());
    }
    SECTION("explicit load takes branch values verbatim") {
        const ResolvedScenario r = resolve_scenario(parse_config_text(
            "load = explicit\nload.resistance = 150\nload.inductance = 20\n"));
        REQUIRE_FALSE(r.tuning.has_value());
        REQUIRE(r.scenario.load.resistance == 150.0);
        REQUIRE(r.scenario.load.inductance == 20.0);
        REQUIRE_FALSE(r.scenario.load.capacitance.has_value());
    }
    SECTION("conflicting and invalid settings are rejected") {
        REQUIRE_THROWS_AS(resolve_scenario(parse_config_text("load.capacitance = 0.03\n")),
                          std::invalid_argument);  // auto + explicit C
        REQUIRE_THROWS_AS(resolve_scenario(parse_config_text("load = maybe\n")),
                          std::invalid_argument);
        REQUIRE_THROWS_AS(resolve_scenario(parse_config_text("wave.omega = fast\n")),
                          std::invalid_argument);
        REQUIRE_THROWS_AS(resolve_scenario(parse_config_text("wave.omega = -1\n")),
                          std::invalid_argument);
        REQUIRE_THROWS_AS(resolve_scenario(parse_config_text("mech.typo = 1\n")),
                          std::invalid_argument);
        REQUIRE_THROWS_AS(resolve_scenario(parse_config_text("sweep.points = 2.5\n")),
                          std::invalid_argument);
    }
    SECTION("sweep block") {
        const ResolvedScenario r = resolve_scenario(parse_config_text(
            "sweep.omega_min = 0.6\nsweep.omega_max = 2\nsweep.points = 15\n"
            "sweep.mode = untuned\n"));
        REQUIRE(r.sweep.omega_min == 0.6);
        REQUIRE(r.sweep.omega_max == 2.0);
        REQUIRE(r.sweep.points == 15);
        REQUIRE(r.sweep.mode == SweepMode::Untuned);
    }
}

TEST_CASE("presets", "[scenario]") {
    SECTION("case1: resonant, both branches disconnected") {
        const ResolvedScenario r = resolve_scenario(preset_config("case1"));
        REQUIRE(r.scenario.wave.omega == Approx(kOmega0).epsilon(1e-15));
        REQUIRE(r.tuning->rule == TuningRule::AtNatural);
        REQUIRE(r.scenario.sim.t_end == 40.0);
    }
    SECTION("case2: capacitor-tuned at omega = 1") {
        const ResolvedScenario r = resolve_scenario(preset_config("case2"));
        REQUIRE(r.scenario.wave.omega == 1.0);
        REQUIRE(r.tuning->rule == TuningRule::CapacitorTuned);
        REQUIRE(*r.scenario.load.capacitance == Approx(0.030438781094667713).epsilon(1e-13));
        REQUIRE(r.scenario.sim.t_end == 60.0);
    }
    SECTION("case3: inductor-tuned at omega = 2.3") {
        const ResolvedScenario r = resolve_scenario(preset_config("case3"));
        REQUIRE(r.scenario.wave.omega == 2.3);
        REQUIRE(r.tuning->rule == TuningRule::InductorTuned);
        REQUIRE(*r.scenario.load.inductance == Approx(33.25347091932459).epsilon(1e-13));
    }
    SECTION("sweep presets select the mode") {
        REQUIRE(resolve_scenario(preset_config("sweep-tuned")).sweep.mode == SweepMode::Tuned);
        REQUIRE(resolve_scenario(preset_config("sweep-untuned")).sweep.mode ==
                SweepMode::Untuned);
    }
    SECTION("unknown preset") {
        REQUIRE_THROWS_AS(preset_config("case9"), std::invalid_argument);
    }
    SECTION("all presets resolve") {
        for (const std::string& name : preset_names())
            REQUIRE_NOTHROW(resolve_scenario(preset_config(name)));
    }
}

TEST_CASE("scenario round trip through serialization", "[scenario][property]") {
    for (const std::string& name : preset_names()) {
        const Scenario original = resolve_scenario(preset_config(name)).scenario;
        const std::string text = serialize_scenario(original);
        const Scenario reparsed = resolve_scenario(parse_config_text(text)).scenario;
        CAPTURE(name);
        REQUIRE(reparsed == original);
    }
    // and one with every field off its default
    const Scenario custom = resolve_scenario(parse_config_text(
        "mech.mass_total = 8000\nmech.damping = 3500\nmech.stiffness = 28000\n"
        "gen.k_e = 800\ngen.k_t = 810\nload = explicit\nload.resistance = 190\n"
        "load.capacitance = 0.04\nwave.amplitude = 9000\nwave.omega = 1.1\n"
        "sim.dt = 0.02\nsim.t_end = 55\nsim.x0 = 0.1\nsim.v0 = -0.2\n")).scenario;
    const Scenario reparsed =
        resolve_scenario(parse_config_text(serialize_scenario(custom))).scenario;
    REQUIRE(reparsed == custom);
}

TEST_CASE("format_double", "[csv]") {
    REQUIRE(format_double(3125.0) == "3125");
    REQUIRE(format_double(0.5) == "0.5");
    REQUIRE(format_double(-1.25) == "-1.25");
    REQUIRE(format_double(0.0) == "0");
    // 17 significant digits round-trip exactly
    const double value = 0.030438781094667713;
    REQUIRE(std::stod(format_double(value)) == value);
    const double omega0 = 1.7770762504743571;
    REQUIRE(std::stod(format_double(omega0)) == omega0);
}

TEST_CASE("trace CSV schema", "[csv]") {
    const ResolvedScenario r = resolve_scenario(parse_config_text("sim.t_end = 1\n"));
    const SimTrace trace = simulate(r.scenario.mech, r.scenario.gen, r.scenario.load,
                                    r.scenario.wave, r.scenario.sim);
    std::ostringstream out;
    write_trace_csv(out, trace);
    const std::string text = out.str();
    REQUIRE(text.rfind("t,x,x_dot,x_ddot,f_w,f_pto,f_r_sub,f_l_sub,f_c_sub,"
                       "v,i,i_r,i_l,i_c,p_elec,p_abs\n", 0) == 0);
    // header + one line per sample
    std::size_t lines = 0;
    for (const char c : text) lines += (c == '\n');
    REQUIRE(lines == trace.size() + 1);
    // first data row starts at t = 0 with zero state
    REQUIRE(text.find("\n0,0,0,") != std::string::npos);
}

TEST_CASE("sweep CSV schema and empty optional fields", "[csv]") {
    const std::vector<double> grid{1.0, 1.7770762504743571, 2.3};
    const MechanicalParams mech(10000.0, 4000.0, 31580.0);
    const GeneratorParams gen(842.0, 842.0);
    const auto rows = sweep(mech, gen, kRStar, 10000.0, grid, SweepMode::Tuned);
    std::ostringstream out;
    write_sweep_csv(out, rows);
    const std::string text = out.str();
    REQUIRE(text.rfind("omega,mode,tuned_c,tuned_l,i_rms,f_pto_eff,f_w_eff,"
                       "s_apparent,p_active,p_absorbed,power_factor\n", 0) == 0);
    // row 1: capacitor value present, inductor empty
    REQUIRE(text.find("\n1,tuned,0.030438781094667713,,") != std::string::npos);
    // row 2 (at the natural frequency): both tuning fields empty
    REQUIRE(text.find(",tuned,,,") != std::string::npos);
    // row 3: inductor present, capacitor empty
    REQUIRE(text.find(",tuned,,33.253470919324592,") != std::string::npos);
}

TEST_CASE("CSV output is deterministic", "[csv]") {
    const ResolvedScenario r = resolve_scenario(preset_config("case2"));
    SimConfig quick = r.scenario.sim;
    quick.t_end = 5.0;
    const auto render = [&] {
        const SimTrace trace = simulate(r.scenario.mech, r.scenario.gen,
                                        r.scenario.load, r.scenario.wave, quick);
        std::ostringstream out;
        write_trace_csv(out, trace);
        return out.str();
    };
    REQUIRE(render() == render());
}
