#include <catch2/catch_amalgamated.hpp>

#include "irsradar/scene.hpp"

using namespace irsradar;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// The experiment-section scene: radar at the origin, two IRS 141 m out,
// target 5 km up moving diagonally.
SceneConfig reference_scene() {
    SceneConfig sc;
    sc.radar_pos = {0.0, 0.0};
    sc.target_pos = {0.0, 5000.0};
    sc.target_vel = {10.0, 10.0};
    sc.carrier_freq = 1.0e9;
    sc.bandwidth = 1.0e8;
    sc.num_subcarriers = 4;
    sc.num_pulses = 50;
    sc.pri = 2.0e-5;
    sc.pulse_width = 5.0e-8;
    sc.irs.push_back({{100.0, 100.0}, 8, 0.0, {1.0, 0.0}});
    sc.irs.push_back({{-100.0, 100.0}, 8, 0.0, {1.0, 0.0}});
    return sc;
}

} // namespace

TEST_CASE("reference scene path parameters") {
    const SceneConfig sc = reference_scene();
    const PathParams p = compute_path_params(sc);

    // Hand evaluation of the delay/Doppler formulas on this geometry.
    CHECK_THAT(p.nu0, WithinRel(6.666666666666667e-08, 1e-12));
    CHECK_THAT(p.tau0, WithinRel(3.333333333333333e-05, 1e-12));
    CHECK_THAT(p.d_ri[0], WithinRel(141.4213562373095, 1e-12));
    CHECK_THAT(p.d_it[0], WithinRel(4901.020301937138, 1e-12));
    CHECK_THAT(p.tau[0], WithinRel(3.361627772116299e-05, 1e-10));
    CHECK_THAT(p.nu[0], WithinRel(6.529252692006179e-08, 1e-10));
    // Second IRS mirrors the first in x, so distances repeat but the
    // velocity projection differs.
    CHECK_THAT(p.tau[1], WithinRel(p.tau[0], 1e-12));
    CHECK_THAT(p.nu[1], WithinRel(6.801304887506438e-08, 1e-10));
    CHECK(p.max_delay_spread < 0.01);
}

TEST_CASE("stationary target has zero Doppler on every path") {
    SceneConfig sc = reference_scene();
    sc.target_vel = {0.0, 0.0};
    const PathParams p = compute_path_params(sc);
    CHECK(p.nu0 == 0.0);
    for (double nu : p.nu) CHECK(nu == 0.0);
}

TEST_CASE("path parameters are translation invariant") {
    const SceneConfig sc = reference_scene();
    SceneConfig shifted = sc;
    const Vec2 offset{1234.5, -321.0};
    shifted.radar_pos = shifted.radar_pos + offset;
    shifted.target_pos = shifted.target_pos + offset;
    for (auto& a : shifted.irs) a.first_element_pos = a.first_element_pos + offset;

    const PathParams p0 = compute_path_params(sc);
    const PathParams p1 = compute_path_params(shifted);
    CHECK_THAT(p1.tau0, WithinRel(p0.tau0, 1e-12));
    CHECK_THAT(p1.nu0, WithinRel(p0.nu0, 1e-12));
    for (std::size_t m = 0; m < p0.nu.size(); ++m) {
        CHECK_THAT(p1.tau[m], WithinRel(p0.tau[m], 1e-12));
        CHECK_THAT(p1.nu[m], WithinRel(p0.nu[m], 1e-12));
    }
}

TEST_CASE("doubling range along the radar-target ray doubles the delay") {
    SceneConfig sc = reference_scene();
    const PathParams p0 = compute_path_params(sc);
    sc.target_pos = {0.0, 10000.0};
    const PathParams p1 = compute_path_params(sc);
    CHECK_THAT(p1.tau0, WithinRel(2.0 * p0.tau0, 1e-14));
}

TEST_CASE("degenerate geometry is rejected with the offending pair named") {
    SceneConfig sc = reference_scene();
    sc.target_pos = sc.radar_pos;
    CHECK_THROWS_WITH(compute_path_params(sc),
                      Catch::Matchers::ContainsSubstring("radar"));
}

TEST_CASE("broadside and diagonal angles") {
    SceneConfig sc = reference_scene();

    // Radar straight up from an x-axis array sits on broadside.
    sc.irs[0].first_element_pos = {0.0, -500.0};
    PathAngles ang = path_angles(sc, 0);
    CHECK_THAT(ang.theta_ri, WithinAbs(0.0, 1e-15));
    CHECK_FALSE(ang.grazing);

    // Radar at [0,0] seen from [100,100] along an x-axis array: -45 degrees.
    sc = reference_scene();
    ang = path_angles(sc, 0);
    CHECK_THAT(ang.theta_ri, WithinAbs(-0.7853981633974483, 1e-12));
    CHECK(ang.theta_ir == ang.theta_ri);
    CHECK(ang.theta_it == ang.theta_ti);
}

TEST_CASE("grazing incidence is flagged, not rejected") {
    SceneConfig sc = reference_scene();
    sc.irs[0].first_element_pos = {0.0, 5000.0};
    sc.irs[0].orientation = {0.0, 1.0};  // radar straight down the array axis
    const PathAngles ang = path_angles(sc, 0);
    CHECK(ang.grazing);
    CHECK_THAT(std::abs(ang.theta_ri), WithinAbs(kPi / 2.0, 1e-12));
}

TEST_CASE("steering vector basics") {
    const double f = 1.0e9;
    const double d = kSpeedOfLight / (2.0 * f);

    SECTION("broadside gives all ones") {
        const cx_vec b = steering_vector(0.0, f, 6, d);
        for (const cx& z : b) CHECK(std::abs(z - cx(1.0, 0.0)) < 1e-14);
    }
    SECTION("single element is [1]") {
        const cx_vec b = steering_vector(0.4, f, 1, d);
        REQUIRE(b.n_elem == 1);
        CHECK(std::abs(b[0] - cx(1.0, 0.0)) < 1e-15);
    }
    SECTION("endfire at half-wavelength spacing alternates sign") {
        const cx_vec b = steering_vector(kPi / 2.0, f, 4, d);
        CHECK(std::abs(b[0] - cx(1.0, 0.0)) < 1e-12);
        CHECK(std::abs(b[1] - cx(-1.0, 0.0)) < 1e-12);
        CHECK(std::abs(b[2] - cx(1.0, 0.0)) < 1e-12);
        CHECK(std::abs(b[3] - cx(-1.0, 0.0)) < 1e-12);
    }
    SECTION("every entry has unit modulus") {
        const cx_vec b = steering_vector(0.3123, 1.7e9, 32, 0.11);
        for (const cx& z : b) CHECK(std::abs(std::abs(z) - 1.0) < 1e-12);
    }
}

TEST_CASE("scene invariant violations are caught") {
    SceneConfig sc = reference_scene();
    sc.bandwidth = 2.0e9;  // exceeds the carrier
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);

    sc = reference_scene();
    sc.pulse_width = 1.0e-7;  // breaks B/(L+1) == 1/T
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);

    sc = reference_scene();
    sc.irs[0].orientation = {2.0, 0.0};
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
}
