#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>

#include "irsradar/core.hpp"
#include "irsradar/rng.hpp"
#include "irsradar/scene.hpp"

namespace irsradar {

/// Unit-norm OFDM coefficient vector 1_L / sqrt(L).
inline cx_vec uniform_waveform(std::size_t L) {
    cx_vec a(L);
    a.fill(cx(1.0 / std::sqrt(static_cast<double>(L)), 0.0));
    return a;
}

inline void validate_waveform(const cx_vec& a, double tol = 1e-9) {
    require(std::abs(arma::norm(a) - 1.0) < tol, "waveform must have unit l2 norm");
}

/**
 * @brief Slow-time phase matrix P (LM x N).
 *
 * Row (l, m), column n holds exp(-j 2 pi f_l tau0) exp(j 2 pi f_l nu_m n T_PRI):
 * the common range-cell delay times the per-pulse Doppler progression. Rows
 * are ordered subcarrier-major, path-minor, matching the stacked gain vector.
 * The delay factor is statistically inert and can be dropped.
 */
inline cx_mat doppler_matrix(const SceneConfig& scene, const PathParams& paths,
                             bool include_delay_factor = true) {
    const std::size_t L = scene.num_subcarriers;
    const std::size_t M = paths.nu.size();
    const std::size_t N = scene.num_pulses;
    require(M >= 1, "doppler_matrix: no propagation paths");
    cx_mat P(L * M, N);
    for (std::size_t l = 0; l < L; ++l) {
        const double fl = scene.subcarrier_freq(l);
        const cx delay = include_delay_factor
                             ? std::polar(1.0, -2.0 * kPi * fl * paths.tau0)
                             : cx(1.0, 0.0);
        for (std::size_t m = 0; m < M; ++m) {
            const double step = 2.0 * kPi * fl * paths.nu[m] * scene.pri;
            for (std::size_t n = 0; n < N; ++n) {
                P(l * M + m, n) = delay * std::polar(1.0, step * static_cast<double>(n));
            }
        }
    }
    return P;
}

/// Doppler matrix for an arbitrary per-path fractional-Doppler list.
inline cx_mat doppler_matrix_for(const SceneConfig& scene, double tau0,
                                 const std::vector<double>& nus,
                                 bool include_delay_factor = true) {
    PathParams p;
    p.tau0 = tau0;
    p.nu = nus;
    return doppler_matrix(scene, p, include_delay_factor);
}

/**
 * @brief Temporally white, spectrally correlated noise: Sigma[i][j] =
 * sigma2 * rho^|i-j|, a Hermitian Toeplitz family that stays positive
 * definite for any rho in [0, 1).
 */
struct NoiseModel {
    cx_mat sigma;        ///< L x L covariance
    cx_mat chol_lower;   ///< lower Cholesky factor of sigma
    double sigma2 = 1.0;
    double rho = 0.0;
};

inline NoiseModel make_noise_model(std::size_t L, double sigma2, double rho) {
    require(sigma2 > 0.0, "make_noise_model: sigma2 must be positive");
    require(rho >= 0.0 && rho < 1.0, "make_noise_model: rho must be in [0, 1)");
    NoiseModel nm;
    nm.sigma2 = sigma2;
    nm.rho = rho;
    nm.sigma.set_size(L, L);
    for (std::size_t i = 0; i < L; ++i) {
        for (std::size_t j = 0; j < L; ++j) {
            nm.sigma(i, j) = sigma2 * std::pow(rho, std::abs(static_cast<int>(i) - static_cast<int>(j)));
        }
    }
    if (!arma::chol(nm.chol_lower, nm.sigma, "lower")) {
        throw std::runtime_error("noise covariance is not positive definite");
    }
    return nm;
}

enum class Hypothesis { h0, h1 };

/**
 * @brief Draw one L x N measurement matrix: noise only under H0, signal
 * A X P plus noise under H1. Noise columns are i.i.d. CN(0, Sigma).
 */
inline cx_mat synthesize(Hypothesis hyp, const cx_vec& a, const cx_mat& X, const cx_mat& P,
                         const NoiseModel& noise, CounterRng& rng) {
    const std::size_t L = a.n_elem;
    const std::size_t N = P.n_cols;
    require(X.n_rows == L && X.n_cols == P.n_rows, "synthesize: non-conformable X and P");
    require(noise.sigma.n_rows == L, "synthesize: noise covariance size mismatch");
    cx_mat Y = noise.chol_lower * random_cx_gaussian(rng, L, N);
    if (hyp == Hypothesis::h1) {
        Y += arma::diagmat(a) * X * P;
    }
    return Y;
}

// Binary dump of a measurement matrix for cross-implementation regression:
// 8-byte magic "IRSRADY1", uint32 L, uint32 N, then row-major float32
// (re, im) pairs, little-endian.

inline void dump_measurements(const cx_mat& Y, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("dump_measurements: cannot open " + path);
    const char magic[8] = {'I', 'R', 'S', 'R', 'A', 'D', 'Y', '1'};
    os.write(magic, 8);
    const std::uint32_t L = static_cast<std::uint32_t>(Y.n_rows);
    const std::uint32_t N = static_cast<std::uint32_t>(Y.n_cols);
    os.write(reinterpret_cast<const char*>(&L), 4);
    os.write(reinterpret_cast<const char*>(&N), 4);
    for (std::uint32_t i = 0; i < L; ++i) {
        for (std::uint32_t j = 0; j < N; ++j) {
            const float re = static_cast<float>(Y(i, j).real());
            const float im = static_cast<float>(Y(i, j).imag());
            os.write(reinterpret_cast<const char*>(&re), 4);
            os.write(reinterpret_cast<const char*>(&im), 4);
        }
    }
}

inline cx_mat load_measurements(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("load_measurements: cannot open " + path);
    char magic[8];
    is.read(magic, 8);
    if (!is || std::memcmp(magic, "IRSRADY1", 8) != 0) {
        throw std::runtime_error("load_measurements: bad magic in " + path);
    }
    std::uint32_t L = 0, N = 0;
    is.read(reinterpret_cast<char*>(&L), 4);
    is.read(reinterpret_cast<char*>(&N), 4);
    cx_mat Y(L, N);
    for (std::uint32_t i = 0; i < L; ++i) {
        for (std::uint32_t j = 0; j < N; ++j) {
            float re = 0.0f, im = 0.0f;
            is.read(reinterpret_cast<char*>(&re), 4);
            is.read(reinterpret_cast<char*>(&im), 4);
            Y(i, j) = cx(re, im);
        }
    }
    if (!is) throw std::runtime_error("load_measurements: truncated file " + path);
    return Y;
}

} // namespace irsradar
