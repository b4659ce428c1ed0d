#pragma once

#include <armadillo>
#include <complex>
#include <stdexcept>
#include <string>

namespace irsradar {

using cx = std::complex<double>;
using arma::cx_mat;
using arma::cx_vec;

// Propagation speed used throughout the geometry (m/s).
inline constexpr double kSpeedOfLight = 3.0e8;

inline constexpr double kPi = 3.14159265358979323846;

/// 2-D position/velocity vector in meters (or m/s).
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::sqrt(x * x + y * y); }
};

/// True when every entry of v has unit modulus to within tol.
inline bool is_unimodular(const cx_vec& v, double tol = 1e-12) {
    for (const cx& z : v) {
        if (std::abs(std::abs(z) - 1.0) > tol) return false;
    }
    return true;
}

/// Snap every entry back onto the unit circle (phase preserved).
inline cx_vec renormalize_phases(const cx_vec& v) {
    cx_vec out(v.n_elem);
    for (arma::uword i = 0; i < v.n_elem; ++i) {
        out[i] = v[i] == cx(0.0, 0.0) ? cx(1.0, 0.0) : v[i] / std::abs(v[i]);
    }
    return out;
}

inline void require(bool cond, const std::string& what) {
    if (!cond) throw std::invalid_argument(what);
}

} // namespace irsradar
