// Command line front end: the four analysis verbs over scenario configs and
// the built-in case presets.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "lcwec/lcwec.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitDiagnostic = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string_view rule_name(lcwec::TuningRule rule) {
    switch (rule) {
        case lcwec::TuningRule::AtNatural: return "AtNatural";
        case lcwec::TuningRule::CapacitorTuned: return "CapacitorTuned";
        case lcwec::TuningRule::InductorTuned: return "InductorTuned";
    }
    return "?";
}

void print_kv(std::ostream& out, std::string_view key, double value) {
    out << key << ": " << lcwec::format_double(value) << '\n';
}

void warn_generator_constants(const lcwec::GeneratorParams& gen) {
    if (const auto warning = lcwec::generator_constant_mismatch(gen))
        std::cerr << "warning: " << *warning << '\n';
}

void cmd_tune(const lcwec::ResolvedScenario& resolved, double c_warn_threshold) {
    const lcwec::Scenario& s = resolved.scenario;
    warn_generator_constants(s.gen);
    const lcwec::TuningDecision decision = lcwec::tune(s.mech, s.gen, s.wave.omega);
    const lcwec::RlcLoad load = lcwec::to_load(decision, s.load.resistance);
    const lcwec::SteadyStateReport ss = lcwec::steady_state(s.mech, s.gen, load, s.wave);

    std::cout << "rule: " << rule_name(decision.rule) << '\n';
    print_kv(std::cout, "omega_rad_s", decision.omega);
    print_kv(std::cout, "natural_frequency_rad_s", lcwec::natural_frequency(s.mech));
    if (decision.capacitance) print_kv(std::cout, "capacitance_f", *decision.capacitance);
    if (decision.inductance) print_kv(std::cout, "inductance_h", *decision.inductance);
    print_kv(std::cout, "resistance_ohm", load.resistance);
    print_kv(std::cout, "power_factor", ss.power_factor);
    print_kv(std::cout, "p_active_w", ss.p_active);
    print_kv(std::cout, "p_absorbed_w", ss.p_absorbed);
    print_kv(std::cout, "s_apparent_va", ss.s_apparent);
    print_kv(std::cout, "q_reactive_var", ss.q_reactive);

    if (decision.capacitance && *decision.capacitance > c_warn_threshold)
        std::cerr << "warning: prescribed capacitance "
                  << lcwec::format_double(*decision.capacitance) << " F exceeds "
                  << lcwec::format_double(c_warn_threshold)
                  << " F; a generator with a matching VA rating ("
                  << lcwec::format_double(ss.s_apparent) << " VA) is required\n";
}

void write_report_csv(const std::string& path, const lcwec::SteadyStateReport& r) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    out << "x_amp,x_phase,v_amp,v_phase,a_amp,volt_rms,curr_rms,psi,power_factor,"
           "p_active,s_apparent,q_reactive,p_absorbed,p_radiated,p_generator,"
           "f_r_amp,f_l_amp,f_c_amp,f_pto_eff\n";
    const double fields[] = {r.x_amp, r.x_phase, r.v_amp, r.v_phase, r.a_amp,
                             r.volt_rms, r.curr_rms, r.psi, r.power_factor,
                             r.p_active, r.s_apparent, r.q_reactive, r.p_absorbed,
                             r.p_radiated, r.p_generator, r.f_r_amp, r.f_l_amp,
                             r.f_c_amp, r.f_pto_eff};
    for (std::size_t k = 0; k < std::size(fields); ++k)
        out << (k ? "," : "") << lcwec::format_double(fields[k]);
    out << '\n';
}

void cmd_analyze(const lcwec::ResolvedScenario& resolved, const std::string& out_path) {
    const lcwec::Scenario& s = resolved.scenario;
    warn_generator_constants(s.gen);
    const lcwec::SteadyStateReport r = lcwec::steady_state(s.mech, s.gen, s.load, s.wave);
    print_kv(std::cout, "omega_rad_s", s.wave.omega);
    print_kv(std::cout, "x_amp_m", r.x_amp);
    print_kv(std::cout, "x_phase_rad", r.x_phase);
    print_kv(std::cout, "v_amp_m_s", r.v_amp);
    print_kv(std::cout, "v_phase_rad", r.v_phase);
    print_kv(std::cout, "a_amp_m_s2", r.a_amp);
    print_kv(std::cout, "volt_rms_v", r.volt_rms);
    print_kv(std::cout, "curr_rms_a", r.curr_rms);
    print_kv(std::cout, "psi_rad", r.psi);
    print_kv(std::cout, "power_factor", r.power_factor);
    print_kv(std::cout, "p_active_w", r.p_active);
    print_kv(std::cout, "s_apparent_va", r.s_apparent);
    print_kv(std::cout, "q_reactive_var", r.q_reactive);
    print_kv(std::cout, "p_absorbed_w", r.p_absorbed);
    print_kv(std::cout, "p_radiated_w", r.p_radiated);
    print_kv(std::cout, "p_generator_w", r.p_generator);
    print_kv(std::cout, "f_r_amp_n", r.f_r_amp);
    print_kv(std::cout, "f_l_amp_n", r.f_l_amp);
    print_kv(std::cout, "f_c_amp_n", r.f_c_amp);
    print_kv(std::cout, "f_pto_eff_n", r.f_pto_eff);
    if (!out_path.empty()) write_report_csv(out_path, r);
}

void cmd_simulate(const lcwec::ResolvedScenario& resolved, const std::string& out_path) {
    if (out_path.empty()) throw std::invalid_argument("simulate requires --out PATH");
    const lcwec::Scenario& s = resolved.scenario;
    warn_generator_constants(s.gen);
    const lcwec::SimTrace trace = lcwec::simulate(s.mech, s.gen, s.load, s.wave, s.sim);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write '" + out_path + "'");
    lcwec::write_trace_csv(out, trace);
    std::cout << "wrote " << trace.size() << " samples to " << out_path << '\n';
}

void cmd_sweep(const lcwec::ResolvedScenario& resolved, const std::string& out_path) {
    if (out_path.empty()) throw std::invalid_argument("sweep requires --out PATH");
    const lcwec::Scenario& s = resolved.scenario;
    warn_generator_constants(s.gen);
    const std::vector<double> grid = lcwec::uniform_grid(
        resolved.sweep.omega_min, resolved.sweep.omega_max, resolved.sweep.points);
    const std::vector<lcwec::SweepRow> rows =
        lcwec::sweep(s.mech, s.gen, s.load.resistance, s.wave.amplitude, grid,
                     resolved.sweep.mode);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write '" + out_path + "'");
    lcwec::write_sweep_csv(out, rows);
    std::cout << "wrote " << rows.size() << " rows to " << out_path << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LC-tuned point-absorber wave energy converter toolkit"};
    app.require_subcommand(1);

    std::string config_path, preset, out_path;
    double omega = 0, resistance = 0, dt = 0, t_end = 0;
    double c_warn_threshold = 10.0;
    std::size_t grid_points = 0;

    CLI::Option* config_opt =
        app.add_option("--config", config_path, "scenario config file (key = value lines)");
    CLI::Option* preset_opt = app.add_option(
        "--preset", preset, "built-in scenario: case1, case2, case3, sweep-tuned, sweep-untuned");
    app.add_option("--out", out_path, "output CSV path");
    CLI::Option* omega_opt =
        app.add_option("--omega", omega, "wave frequency override [rad/s]");
    CLI::Option* resistance_opt =
        app.add_option("--resistance", resistance, "load resistance override [ohm]");
    CLI::Option* dt_opt = app.add_option("--dt", dt, "integration step override [s]");
    CLI::Option* t_end_opt = app.add_option("--t-end", t_end, "simulation length override [s]");
    CLI::Option* grid_opt =
        app.add_option("--grid", grid_points, "number of sweep grid points override");
    app.add_option("--c-warn-threshold", c_warn_threshold,
                   "report capacitances above this value [F]");

    CLI::App* tune_cmd = app.add_subcommand("tune", "pick the LC branch for the wave frequency");
    CLI::App* analyze_cmd =
        app.add_subcommand("analyze", "analytical steady-state report at one frequency");
    CLI::App* simulate_cmd =
        app.add_subcommand("simulate", "integrate the closed-loop dynamics to a trace CSV");
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "tuned/untuned frequency sweep to a CSV table");
    for (CLI::App* sub : {tune_cmd, analyze_cmd, simulate_cmd, sweep_cmd})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitConfigError;
    }

    try {
        lcwec::ConfigMap map;
        if (preset_opt->count()) map = lcwec::preset_config(preset);
        if (config_opt->count())
            for (const auto& [key, value] : lcwec::parse_config_text(read_file(config_path)))
                map[key] = value;
        if (omega_opt->count()) map["wave.omega"] = lcwec::format_double(omega);
        if (resistance_opt->count())
            map["load.resistance"] = lcwec::format_double(resistance);
        if (dt_opt->count()) map["sim.dt"] = lcwec::format_double(dt);
        if (t_end_opt->count()) map["sim.t_end"] = lcwec::format_double(t_end);
        if (grid_opt->count()) map["sweep.points"] = std::to_string(grid_points);

        const lcwec::ResolvedScenario resolved = lcwec::resolve_scenario(map);
        if (*tune_cmd) cmd_tune(resolved, c_warn_threshold);
        if (*analyze_cmd) cmd_analyze(resolved, out_path);
        if (*simulate_cmd) cmd_simulate(resolved, out_path);
        if (*sweep_cmd) cmd_sweep(resolved, out_path);
        return kExitOk;
    } catch (const lcwec::diagnostic_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDiagnostic;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfigError;
    }
}
