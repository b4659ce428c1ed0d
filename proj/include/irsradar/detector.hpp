#pragma once

#include <limits>

#include "irsradar/core.hpp"
#include "irsradar/stats.hpp"

namespace irsradar {

/// Degrees-of-freedom convention for the asymptotic null distribution:
/// rL on N ln T, or 2rL on 2N ln T (with 2*delta as the noncentrality).
enum class DofConvention { rl, two_rl };

/// Which likelihood ratio to evaluate: the clairvoyant form with X known,
/// or the projection form with the signal coordinates estimated.
enum class GlrVariant { clairvoyant_x, estimated_x };

struct DetectorConfig {
    double pfa = 1e-2;
    DofConvention dof_convention = DofConvention::two_rl;
    GlrVariant variant = GlrVariant::estimated_x;
    double rank_tol = 1e-9;

    void validate() const {
        require(pfa > 0.0 && pfa < 1.0, "detector pfa must be in (0, 1)");
        require(rank_tol > 0.0 && rank_tol < 1.0, "rank_tol must be in (0, 1)");
    }
};

struct GlrResult {
    double statistic = 0.0;       ///< T_GLR (determinant ratio)
    double log_statistic = 0.0;   ///< N ln T
    std::size_t rank = 0;         ///< effective rank of P used
    DofConvention dof_convention = DofConvention::two_rl;
    bool saturated = false;       ///< zero residual, T reported as +inf
};

/// Number of singular values above tol times the largest.
inline std::size_t effective_rank(const cx_mat& P, double tol) {
    require(P.n_elem > 0, "effective_rank: empty matrix");
    const arma::vec s = arma::svd(P);
    const double cutoff = tol * s.max();
    return static_cast<std::size_t>(arma::sum(s > cutoff));
}

/// Orthonormal basis (N x r) of the row space of P, with the dimension
/// decided by the relative singular-value cutoff.
inline cx_mat row_space_basis(const cx_mat& P, double tol, std::size_t* rank_out = nullptr) {
    cx_mat U, V;
    arma::vec s;
    if (!arma::svd_econ(U, s, V, P)) throw std::runtime_error("row_space_basis: SVD failed");
    const double cutoff = tol * s.max();
    std::size_t r = 0;
    while (r < s.n_elem && s[r] > cutoff) ++r;
    if (rank_out) *rank_out = r;
    if (r == 0) return cx_mat(P.n_cols, 0);
    return V.cols(0, r - 1);
}

/// Projector onto the orthogonal complement of the row space of P (N x N).
inline cx_mat row_space_complement(const cx_mat& P, double tol, std::size_t* rank_out = nullptr) {
    const cx_mat Vr = row_space_basis(P, tol, rank_out);
    return arma::eye<cx_mat>(P.n_cols, P.n_cols) - Vr * Vr.t();
}

namespace detail {
inline double log_det_psd(const cx_mat& G, bool& ok) {
    double val = 0.0;
    ok = arma::log_det_sympd(val, G);
    return val;
}
} // namespace detail

/**
 * @brief GLRT statistic for one measurement matrix.
 *
 * Clairvoyant: T = det(Y Y^H) / det((Y - A X P)(Y - A X P)^H), the
 * determinant ratio of the L x L sample covariances under the two
 * hypotheses with X known. Estimated: T = det(Y Y^H) / det(Y Pi_P_perp Y^H)
 * with the mean estimated inside the row space of P; this form is always
 * >= 1 by projection optimality.
 */
inline GlrResult glr_statistic(const cx_mat& Y, const cx_vec& a, const cx_mat& X,
                               const cx_mat& P, GlrVariant variant, double rank_tol = 1e-9) {
    const std::size_t L = Y.n_rows;
    const std::size_t N = Y.n_cols;
    require(a.n_elem == L, "glr_statistic: waveform length mismatch");
    require(P.n_cols == N, "glr_statistic: P column count must equal pulse count");
    if (N < L) {
        throw std::runtime_error(
            "glr_statistic: need at least as many pulses as subcarriers (N >= L); increase N");
    }

    GlrResult out;
    bool ok0 = false, ok1 = false;
    const double logdet0 = detail::log_det_psd(Y * Y.t(), ok0);
    if (!ok0) {
        throw std::runtime_error("glr_statistic: Y Y^H is singular; increase N or check the data");
    }

    double logdet1 = 0.0;
    if (variant == GlrVariant::clairvoyant_x) {
        const cx_mat R = Y - arma::diagmat(a) * X * P;
        out.rank = effective_rank(P, rank_tol);
        logdet1 = detail::log_det_psd(R * R.t(), ok1);
    } else {
        std::size_t r = 0;
        const cx_mat Vr = row_space_basis(P, rank_tol, &r);
        out.rank = r;
        if (N < L + r) {
            throw std::runtime_error(
                "glr_statistic: residual sample covariance is rank deficient (need N >= L + rank(P)); "
                "increase N");
        }
        const cx_mat R = Y - (Y * Vr) * Vr.t();  // Y projected off the row space of P
        logdet1 = detail::log_det_psd(R * R.t(), ok1);
    }

    if (!ok1) {
        // Zero (or numerically zero) residual: the ratio diverges.
        out.saturated = true;
        out.statistic = std::numeric_limits<double>::infinity();
        out.log_statistic = std::numeric_limits<double>::infinity();
        return out;
    }
    const double log_t = logdet0 - logdet1;
    out.statistic = std::exp(log_t);
    out.log_statistic = static_cast<double>(N) * log_t;
    return out;
}

/// Noncentrality delta = Tr(Sigma^{-1} A X P P^H X^H A^H), real and >= 0.
inline double noncentrality(const cx_vec& a, const cx_mat& X, const cx_mat& P, const cx_mat& sigma) {
    const cx_mat B = arma::diagmat(a) * X * P;
    cx_mat sigma_inv;
    if (!arma::inv_sympd(sigma_inv, sigma)) {
        throw std::runtime_error("noncentrality: noise covariance is singular");
    }
    return std::real(arma::trace(sigma_inv * B * B.t()));
}

inline double dof_for(DofConvention conv, std::size_t r, std::size_t L) {
    const double rl = static_cast<double>(r) * static_cast<double>(L);
    return conv == DofConvention::rl ? rl : 2.0 * rl;
}

/// Detection threshold gamma = chi2_isf(pfa, dof); compare against
/// N ln T for the rL convention and 2N ln T for the 2rL convention.
inline double threshold_for_pfa(double pfa, std::size_t r, std::size_t L, DofConvention conv) {
    return stats::chi2_isf(pfa, dof_for(conv, r, L));
}

/// The GLR statistic on the scale matching the convention's threshold.
inline double scaled_statistic(const GlrResult& res, DofConvention conv) {
    return conv == DofConvention::rl ? res.log_statistic : 2.0 * res.log_statistic;
}

/// Asymptotic detection probability at the threshold for the given pfa.
inline double theoretical_pd(double delta, double pfa, std::size_t r, std::size_t L,
                             DofConvention conv) {
    require(delta >= 0.0, "theoretical_pd: delta must be nonnegative");
    const double dof = dof_for(conv, r, L);
    const double gamma = stats::chi2_isf(pfa, dof);
    const double delta_eff = conv == DofConvention::rl ? delta : 2.0 * delta;
    return stats::marcum_q(dof / 2.0, std::sqrt(delta_eff), std::sqrt(gamma));
}

} // namespace irsradar
