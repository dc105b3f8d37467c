#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "lcwec/sweep.hpp"

using Catch::Approx;
using namespace lcwec;

namespace {
const MechanicalParams kMech(10000.0, 4000.0, 31580.0);
const GeneratorParams kGen(842.0, 842.0);
constexpr double kWaveAmp = 10000.0;
constexpr double kRStar = 842.0 * 842.0 / 4000.0;
constexpr double kOmega0 = 1.7770762504743571;

std::vector<double> default_grid() { return uniform_grid(0.5, 2.7, 45); }
}  // namespace

TEST_CASE("uniform_grid spans the interval inclusively", "[sweep]") {
    const std::vector<double> g = uniform_grid(0.5, 2.7, 45);
    REQUIRE(g.size() == 45);
    REQUIRE(g.front() == 0.5);
    REQUIRE(g.back() == 2.7);
    REQUIRE(g[1] - g[0] == Approx(2.2 / 44.0));
    REQUIRE_THROWS_AS(uniform_grid(0.5, 2.7, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(uniform_grid(2.7, 0.5, 45), std::invalid_argument);
    REQUIRE_THROWS_AS(uniform_grid(0.0, 2.7, 45), std::invalid_argument);
}

TEST_CASE("tuned sweep delivers flat active power", "[sweep]") {
    const auto rows = sweep(kMech, kGen, kRStar, kWaveAmp, default_grid(), SweepMode::Tuned);
    REQUIRE(rows.size() == 45);
    for (const SweepRow& row : rows) {
        CAPTURE(row.omega);
        REQUIRE(row.p_active == Approx(3125.0).epsilon(1e-9));
        REQUIRE(row.p_absorbed == Approx(6250.0).epsilon(1e-9));
        REQUIRE(row.mode == SweepMode::Tuned);
        // exactly one branch below/above the natural frequency
        if (std::abs(row.omega - kOmega0) > 1e-6 * kOmega0)
            REQUIRE(row.tuned_c.has_value() != row.tuned_l.has_value());
    }
}

TEST_CASE("untuned sweep peaks at the natural frequency and stays below tuned",
          "[sweep]") {
    const auto grid = default_grid();
    const auto untuned = sweep(kMech, kGen, kRStar, kWaveAmp, grid, SweepMode::Untuned);
    const auto tuned = sweep(kMech, kGen, kRStar, kWaveAmp, grid, SweepMode::Tuned);

    std::size_t argmax = 0;
    for (std::size_t k = 0; k < untuned.size(); ++k) {
        REQUIRE_FALSE(untuned[k].tuned_c.has_value());
        REQUIRE_FALSE(untuned[k].tuned_l.has_value());
        if (untuned[k].p_active > untuned[argmax].p_active) argmax = k;
        // strictly below the tuned ceiling away from resonance
        REQUIRE(untuned[k].p_active <= tuned[k].p_active + 1e-9);
        // the wave always out-muscles the untuned PTO force
        REQUIRE(untuned[k].f_pto_eff < untuned[k].f_w_eff);
    }
    std::size_t nearest = 0;
    for (std::size_t k = 0; k < grid.size(); ++k)
        if (std::abs(grid[k] - kOmega0) < std::abs(grid[nearest] - kOmega0)) nearest = k;
    REQUIRE(argmax == nearest);
}

TEST_CASE("sweep row bookkeeping", "[sweep]") {
    const auto rows = sweep(kMech, kGen, kRStar, kWaveAmp, default_grid(), SweepMode::Tuned);
    const double f_w_eff = kWaveAmp / std::numbers::sqrt2;
    for (const SweepRow& row : rows) {
        REQUIRE(row.f_pto_eff == kGen.k_t * row.i_rms);  // exact by construction
        REQUIRE(row.f_w_eff == f_w_eff);
    }
}

TEST_CASE("tuned current is smallest at the natural frequency", "[sweep][property]") {
    const auto rows = sweep(kMech, kGen, kRStar, kWaveAmp, default_grid(), SweepMode::Tuned);
    std::size_t nearest = 0;
    for (std::size_t k = 0; k < rows.size(); ++k)
        if (std::abs(rows[k].omega - kOmega0) < std::abs(rows[nearest].omega - kOmega0))
            nearest = k;
    for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
        CAPTURE(rows[k].omega);
        if (k + 1 <= nearest) {
            REQUIRE(rows[k].i_rms > rows[k + 1].i_rms);
            REQUIRE(rows[k].s_apparent > rows[k + 1].s_apparent);
        }
        if (k >= nearest) {
            REQUIRE(rows[k + 1].i_rms > rows[k].i_rms);
            REQUIRE(rows[k + 1].s_apparent > rows[k].s_apparent);
        }
    }
}

TEST_CASE("a tuned row at the natural frequency equals the untuned row", "[sweep]") {
    const std::vector<double> grid{kOmega0};
    const auto tuned = sweep(kMech, kGen, kRStar, kWaveAmp, grid, SweepMode::Tuned);
    const auto untuned = sweep(kMech, kGen, kRStar, kWaveAmp, grid, SweepMode::Untuned);
    REQUIRE_FALSE(tuned[0].tuned_c.has_value());
    REQUIRE_FALSE(tuned[0].tuned_l.has_value());
    REQUIRE(tuned[0].i_rms == untuned[0].i_rms);
    REQUIRE(tuned[0].p_active == untuned[0].p_active);
    REQUIRE(tuned[0].power_factor == untuned[0].power_factor);
}

TEST_CASE("sweep rejects invalid grids", "[sweep]") {
    REQUIRE_THROWS_AS(sweep(kMech, kGen, kRStar, kWaveAmp, {0.5, -1.0}, SweepMode::Tuned),
                      std::invalid_argument);
}

TEST_CASE("time-domain oracle validates the analytical rows", "[sweep][oracle]") {
    const auto rows = sweep(kMech, kGen, kRStar, kWaveAmp, default_grid(), SweepMode::Tuned);
    SECTION("subsampled tuned rows deviate under one percent") {
        const std::vector<std::size_t> picks{0, 11, 22, 33, 44};
        const SweepOracleReport report = sweep_oracle_check(
            rows, kMech, kGen, kRStar, kWaveAmp, SimConfig{0.01, 60.0, 0, 0}, picks);
        REQUIRE(report.entries.size() == picks.size());
        REQUIRE(report.max_dev_p_active < 0.01);
        REQUIRE(report.max_dev_p_absorbed < 0.01);
        REQUIRE(report.max_dev_i_rms < 0.01);
    }
    SECTION("empty subsample gives an empty report") {
        const SweepOracleReport report = sweep_oracle_check(
            rows, kMech, kGen, kRStar, kWaveAmp, SimConfig{0.01, 60.0, 0, 0}, {});
        REQUIRE(report.entries.empty());
        REQUIRE(report.max_dev_p_active == 0.0);
    }
    SECTION("out-of-range subsample index is rejected") {
        REQUIRE_THROWS_AS(sweep_oracle_check(rows, kMech, kGen, kRStar, kWaveAmp,
                                             SimConfig{0.01, 60.0, 0, 0}, {99}),
                          std::invalid_argument);
    }
}
