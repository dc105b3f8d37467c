// CSV emission. All numbers are written through std::to_chars with 17
// significant digits: locale independent, '.' decimal separator, and
// deterministic, so repeated runs produce byte-identical files.
#pragma once

#include <charconv>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lcwec/sweep.hpp"
#include "lcwec/time_sim.hpp"

namespace lcwec {

inline constexpr std::string_view k_trace_csv_header =
    "t,x,x_dot,x_ddot,f_w,f_pto,f_r_sub,f_l_sub,f_c_sub,v,i,i_r,i_l,i_c,p_elec,p_abs";

inline constexpr std::string_view k_sweep_csv_header =
    "omega,mode,tuned_c,tuned_l,i_rms,f_pto_eff,f_w_eff,s_apparent,p_active,"
    "p_absorbed,power_factor";

/// Full-precision decimal rendering of a double.
inline std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value,
                                   std::chars_format::general, 17);
    if (res.ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

inline std::string_view to_string(SweepMode mode) {
    return mode == SweepMode::Tuned ? "tuned" : "untuned";
}

inline void write_trace_csv(std::ostream& out, const SimTrace& trace) {
    out << k_trace_csv_header << '\n';
    const std::vector<double>* cols[] = {
        &trace.t,   &trace.x, &trace.x_dot, &trace.x_ddot, &trace.f_w,
        &trace.f_pto, &trace.f_r_sub, &trace.f_l_sub, &trace.f_c_sub,
        &trace.v,   &trace.i, &trace.i_r,   &trace.i_l,   &trace.i_c,
        &trace.p_elec, &trace.p_abs};
    for (std::size_t row = 0; row < trace.size(); ++row) {
        for (std::size_t c = 0; c < std::size(cols); ++c) {
            if (c != 0) out << ',';
            out << format_double((*cols[c])[row]);
        }
        out << '\n';
    }
}

/// Sweep rows; disconnected tuning branches appear as empty fields.
inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << k_sweep_csv_header << '\n';
    const auto opt_field = [](const std::optional<double>& v) {
        return v ? format_double(*v) : std::string();
    };
    for (const SweepRow& row : rows) {
        out << format_double(row.omega) << ',' << to_string(row.mode) << ','
            << opt_field(row.tuned_c) << ',' << opt_field(row.tuned_l) << ','
            << format_double(row.i_rms) << ',' << format_double(row.f_pto_eff) << ','
            << format_double(row.f_w_eff) << ',' << format_double(row.s_apparent) << ','
            << format_double(row.p_active) << ',' << format_double(row.p_absorbed) << ','
            << format_double(row.power_factor) << '\n';
    }
}

}  // namespace lcwec
