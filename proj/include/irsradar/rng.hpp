#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

#include "irsradar/core.hpp"

namespace irsradar {

namespace detail {

inline void mulhilo64(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

} // namespace detail

/// One Philox4x64-10 block: 256 bits of output from (counter, key).
inline std::array<std::uint64_t, 4> philox4x64_10(std::array<std::uint64_t, 4> ctr,
                                                  std::array<std::uint64_t, 2> key) {
    constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
    constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
    constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
    constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;
    for (int round = 0; round < 10; ++round) {
        std::uint64_t hi0, lo0, hi1, lo1;
        detail::mulhilo64(kMul0, ctr[0], hi0, lo0);
        detail::mulhilo64(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

/**
 * @brief Counter-based random stream.
 *
 * Stream identity is (seed, stream), so trial i of a Monte Carlo run always
 * sees the same numbers regardless of how trials are partitioned over
 * threads. Gaussian variates come from Box-Muller on 53-bit uniforms.
 */
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_{seed, stream} {}

    std::uint64_t next_u64() {
        if (pos_ == 4) {
            increment_counter();
            block_ = philox4x64_10(counter_, key_);
            pos_ = 0;
        }
        return block_[pos_++];
    }

    /// Uniform in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Standard real normal N(0, 1).
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_double();
        while (u1 == 0.0) u1 = next_double();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * kPi * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * kPi * u2);
    }

    /// Standard complex normal CN(0, 1): real/imag parts N(0, 1/2).
    cx next_cx_gaussian() {
        const double re = next_gaussian();
        const double im = next_gaussian();
        return cx(re, im) / std::sqrt(2.0);
    }

    /// Unit-modulus entry with uniform phase.
    cx next_unit_phase() {
        const double phi = 2.0 * kPi * next_double();
        return std::polar(1.0, phi);
    }

private:
    void increment_counter() {
        for (int i = 0; i < 4; ++i) {
            if (++counter_[i] != 0) break;
        }
    }

    std::array<std::uint64_t, 2> key_;
    std::array<std::uint64_t, 4> counter_{0, 0, 0, 0};
    std::array<std::uint64_t, 4> block_{};
    int pos_ = 4;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Length-n unimodular vector with i.i.d. uniform phases.
inline cx_vec random_unimodular(CounterRng& rng, arma::uword n) {
    cx_vec v(n);
    for (arma::uword i = 0; i < n; ++i) v[i] = rng.next_unit_phase();
    return v;
}

/// Matrix of i.i.d. CN(0,1) entries.
inline cx_mat random_cx_gaussian(CounterRng& rng, arma::uword rows, arma::uword cols) {
    cx_mat z(rows, cols);
    for (arma::uword j = 0; j < cols; ++j)
        for (arma::uword i = 0; i < rows; ++i) z(i, j) = rng.next_cx_gaussian();
    return z;
}

} // namespace irsradar
