#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "irsradar/core.hpp"

namespace irsradar {

/// Uniform linear array of passive reflecting elements.
struct IrsArray {
    Vec2 first_element_pos;
    std::size_t num_elements = 1;
    double spacing = 0.0;          ///< inter-element spacing d (m); 0 = half carrier wavelength
    Vec2 orientation{1.0, 0.0};    ///< unit vector along the array axis
};

/**
 * @brief 2-D geometry plus waveform timing parameters.
 *
 * Subcarrier spacing is bandwidth/(L+1) and must equal 1/pulse_width; this
 * keeps the subcarriers orthogonal over one pulse.
 */
struct SceneConfig {
    Vec2 radar_pos{0.0, 0.0};
    std::vector<IrsArray> irs;
    Vec2 target_pos{0.0, 0.0};
    Vec2 target_vel{0.0, 0.0};
    double carrier_freq = 0.0;   ///< f_c (Hz)
    double bandwidth = 0.0;      ///< B (Hz)
    std::size_t num_subcarriers = 1;  ///< L
    std::size_t num_pulses = 1;       ///< N
    double pri = 0.0;            ///< pulse repetition interval (s)
    double pulse_width = 0.0;    ///< T (s)

    std::size_t num_irs() const { return irs.size(); }

    double subcarrier_spacing() const {
        return bandwidth / static_cast<double>(num_subcarriers + 1);
    }

    double subcarrier_freq(std::size_t l) const {
        return carrier_freq + static_cast<double>(l) * subcarrier_spacing();
    }

    /// Spacing of IRS m, defaulting to half the carrier wavelength.
    double irs_spacing(std::size_t m) const {
        const double d = irs[m].spacing;
        return d > 0.0 ? d : kSpeedOfLight / (2.0 * carrier_freq);
    }

    std::size_t total_elements() const {
        std::size_t n = 0;
        for (const auto& a : irs) n += a.num_elements;
        return n;
    }

    /// Offset of IRS m's block inside the concatenated phase-shift vector.
    std::size_t element_offset(std::size_t m) const {
        std::size_t n = 0;
        for (std::size_t i = 0; i < m; ++i) n += irs[i].num_elements;
        return n;
    }

    void validate() const {
        require(num_subcarriers >= 1, "num_subcarriers must be >= 1");
        require(num_pulses >= 1, "num_pulses must be >= 1");
        require(bandwidth > 0.0, "bandwidth must be positive");
        require(carrier_freq > bandwidth, "carrier frequency must exceed bandwidth");
        require(pri > 0.0, "pri must be positive");
        require(pulse_width > 0.0, "pulse_width must be positive");
        const double df = subcarrier_spacing();
        require(std::abs(df * pulse_width - 1.0) < 1e-9,
                "subcarrier spacing B/(L+1) must equal 1/pulse_width");
        require((target_pos - radar_pos).norm() > 0.0,
                "target co-located with radar");
        for (std::size_t m = 0; m < irs.size(); ++m) {
            const auto& a = irs[m];
            require(a.num_elements >= 1, "IRS " + std::to_string(m + 1) + ": num_elements must be >= 1");
            require(irs_spacing(m) > 0.0, "IRS " + std::to_string(m + 1) + ": spacing must be positive");
            require(std::abs(a.orientation.norm() - 1.0) < 1e-9,
                    "IRS " + std::to_string(m + 1) + ": orientation must be a unit vector");
            require((target_pos - a.first_element_pos).norm() > 0.0,
                    "target co-located with IRS " + std::to_string(m + 1));
            require((radar_pos - a.first_element_pos).norm() > 0.0,
                    "radar co-located with IRS " + std::to_string(m + 1));
        }
    }
};

/**
 * @brief Round-trip delays and fractional Doppler shifts per path.
 *
 * Doppler values are dimensionless (radial-velocity projection over c);
 * consumers multiply by the subcarrier frequency. Index 0 is the direct
 * radar-target path, index m >= 1 the radar-IRS_m-target-IRS_m-radar path.
 */
struct PathParams {
    double tau0 = 0.0;
    double nu0 = 0.0;
    std::vector<double> tau;   ///< tau_m, m = 1..M
    std::vector<double> nu;    ///< nu_m, m = 1..M
    double d_tr = 0.0;
    std::vector<double> d_ri;
    std::vector<double> d_it;
    double max_delay_spread = 0.0;  ///< diagnostic: max_m |tau_m - tau0| / tau0
};

inline PathParams compute_path_params(const SceneConfig& scene) {
    scene.validate();
    PathParams p;
    const Vec2 rt = scene.target_pos - scene.radar_pos;
    p.d_tr = rt.norm();
    if (p.d_tr <= 0.0) throw std::domain_error("degenerate geometry: radar-target distance is zero");
    p.tau0 = 2.0 * p.d_tr / kSpeedOfLight;
    p.nu0 = 2.0 * scene.target_vel.dot(rt) / p.d_tr / kSpeedOfLight;
    for (std::size_t m = 0; m < scene.num_irs(); ++m) {
        const Vec2 ri = scene.irs[m].first_element_pos - scene.radar_pos;
        const Vec2 it = scene.target_pos - scene.irs[m].first_element_pos;
        const double d_ri = ri.norm();
        const double d_it = it.norm();
        if (d_ri <= 0.0)
            throw std::domain_error("degenerate geometry: radar-IRS" + std::to_string(m + 1) + " distance is zero");
        if (d_it <= 0.0)
            throw std::domain_error("degenerate geometry: IRS" + std::to_string(m + 1) + "-target distance is zero");
        p.d_ri.push_back(d_ri);
        p.d_it.push_back(d_it);
        p.tau.push_back(2.0 * (d_ri + d_it) / kSpeedOfLight);
        p.nu.push_back(2.0 * scene.target_vel.dot(it) / d_it / kSpeedOfLight);
        p.max_delay_spread = std::max(p.max_delay_spread, std::abs(p.tau.back() - p.tau0) / p.tau0);
    }
    return p;
}

/**
 * @brief Directions of radar and target as seen from one IRS.
 *
 * Angles are measured from broadside (normal to the array axis) so that
 * sin(theta) is the projection of the unit direction onto the axis; a
 * monostatic ULA cannot tell front from back, so angles live in
 * [-pi/2, pi/2]. By reciprocity theta_ir == theta_ri and theta_it == theta_ti.
 */
struct PathAngles {
    double theta_ri = 0.0;  ///< IRS -> radar (incoming from radar)
    double theta_ir = 0.0;  ///< IRS -> radar (outgoing to radar)
    double theta_ti = 0.0;  ///< IRS -> target (incoming)
    double theta_it = 0.0;  ///< IRS -> target (outgoing)
    bool grazing = false;   ///< endpoint on the array axis, angle pinned at +-pi/2
};

inline PathAngles path_angles(const SceneConfig& scene, std::size_t m) {
    require(m < scene.num_irs(), "path_angles: IRS index out of range");
    const IrsArray& a = scene.irs[m];
    const auto angle_to = [&](const Vec2& endpoint, bool& grazing) {
        Vec2 u = endpoint - a.first_element_pos;
        const double n = u.norm();
        u = {u.x / n, u.y / n};
        double s = u.dot(a.orientation);
        s = std::clamp(s, -1.0, 1.0);
        if (std::abs(std::abs(s) - 1.0) < 1e-12) grazing = true;
        return std::asin(s);
    };
    PathAngles out;
    out.theta_ri = angle_to(scene.radar_pos, out.grazing);
    out.theta_ti = angle_to(scene.target_pos, out.grazing);
    out.theta_ir = out.theta_ri;
    out.theta_it = out.theta_ti;
    return out;
}

/// Space-frequency ULA response: entry k = exp(j 2 pi f/c d k sin(theta)).
inline cx_vec steering_vector(double theta, double freq, std::size_t num_elements, double spacing) {
    require(freq > 0.0, "steering_vector: frequency must be positive");
    cx_vec b(num_elements);
    const double phase_step = 2.0 * kPi * freq / kSpeedOfLight * spacing * std::sin(theta);
    for (std::size_t k = 0; k < num_elements; ++k) {
        b[k] = std::polar(1.0, phase_step * static_cast<double>(k));
    }
    return b;
}

} // namespace irsradar
