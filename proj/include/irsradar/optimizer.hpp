#pragma once

#include <iostream>
#include <utility>
#include <vector>

#include "irsradar/channel.hpp"
#include "irsradar/core.hpp"
#include "irsradar/detector.hpp"
#include "irsradar/rng.hpp"
#include "irsradar/signal.hpp"

namespace irsradar {

/// Largest eigenvalue of a Hermitian matrix. Dense decomposition up to
/// n = 256; beyond that a shifted power iteration (tol 1e-10, cap 1000).
inline double max_eigenvalue(const cx_mat& H) {
    const arma::uword n = H.n_rows;
    const cx_mat Hs = (H + H.t()) / 2.0;
    if (n <= 256) {
        arma::vec ev;
        if (!arma::eig_sym(ev, Hs)) throw std::runtime_error("max_eigenvalue: eig_sym failed");
        return ev.back();
    }
    // Gershgorin shift makes the iterate converge to the algebraically largest.
    const double shift = arma::norm(Hs, "inf");
    const cx_mat B = Hs + shift * arma::eye<cx_mat>(n, n);
    cx_vec q(n, arma::fill::ones);
    for (arma::uword i = 0; i < n; ++i) q[i] += cx(0.0, 1e-3 * static_cast<double>(i + 1) / n);
    q /= arma::norm(q);
    double lam = 0.0;
    for (int it = 0; it < 1000; ++it) {
        cx_vec z = B * q;
        const double nz = arma::norm(z);
        if (nz == 0.0) return -shift;
        q = z / nz;
        const double next = std::real(arma::cdot(q, B * q));
        if (std::abs(next - lam) <= 1e-10 * std::max(1.0, std::abs(next))) {
            lam = next;
            break;
        }
        lam = next;
    }
    return lam - shift;
}

/**
 * @brief Quadratic-form matrix W with delta = h^H W h.
 *
 * W = C^H U^H [(P P^H)^T x Sigma^{-1}] U C, U = Diag(vec(A D)). Hermitian
 * PSD of size LM x LM.
 */
inline cx_mat build_W(const cx_vec& a, const cx_mat& D, const cx_mat& P, const cx_mat& sigma,
                      const cx_mat& selector) {
    cx_mat sigma_inv;
    if (!arma::inv_sympd(sigma_inv, sigma)) {
        throw std::runtime_error("build_W: noise covariance is singular");
    }
    const cx_mat AD = arma::diagmat(a) * D;
    const cx_vec u = arma::vectorise(AD);
    const cx_mat gram = arma::kron((P * P.t()).st(), sigma_inv);
    const cx_mat UC = arma::diagmat(u) * selector;
    cx_mat W = UC.t() * gram * UC;
    return (W + W.t()) / 2.0;
}

/// E(v) = (Q1(v)^H W Q1(v) + Q2(v)^H W Q2(v)) / 2; Hermitian PSD, and
/// g(u, v) = u^H E(v) u is symmetric in its two arguments.
inline cx_mat biquadratic_E(const ChannelStructure& ch, const cx_mat& W, const cx_vec& v) {
    const cx_mat Q1 = ch.q1(v);
    const cx_mat Q2 = ch.q2(v);
    cx_mat E = (Q1.t() * W * Q1 + Q2.t() * W * Q2) / 2.0;
    return (E + E.t()) / 2.0;
}

/// Diagonal loading: Etilde = lambda_max(E) I - E, so that minimizing the
/// loaded form over unimodular vectors maximizes the original one.
inline std::pair<cx_mat, double> diagonal_load(const cx_mat& E) {
    const double lam = max_eigenvalue(E);
    return {lam * arma::eye<cx_mat>(E.n_rows, E.n_cols) - E, lam};
}

/**
 * @brief Lifted, loaded matrix for the penalized consensus subproblem.
 *
 * The pre-load matrix couples the free copy to the fixed one so that
 * [v;1]^H Ecal [v;1] = v^H Etilde v + 2 eta (M N_m - Re(v^H v_other));
 * loading by its largest eigenvalue gives the PSD maximization target
 * [lambda I - Etilde, eta v_other; eta v_other^H, lambda - 2 eta M N_m].
 */
inline std::pair<cx_mat, double> lift(const cx_mat& e_tilde, const cx_vec& v_other, double eta) {
    require(eta >= 0.0, "lift: eta must be nonnegative");
    const arma::uword n = v_other.n_elem;
    cx_mat ecal(n + 1, n + 1, arma::fill::zeros);
    ecal.submat(0, 0, n - 1, n - 1) = e_tilde;
    ecal.submat(0, n, n - 1, n) = -eta * v_other;
    ecal.submat(n, 0, n, n - 1) = (-eta * v_other).t();
    ecal(n, n) = cx(2.0 * eta * static_cast<double>(n), 0.0);
    const double lam_hat = max_eigenvalue(ecal);
    return {lam_hat * arma::eye<cx_mat>(n + 1, n + 1) - ecal, lam_hat};
}

/// One power-method-like iteration: s' = exp(j arg(G s)) entrywise; zero
/// entries of G s keep the previous phase. Monotone ascent for PSD G.
inline cx_vec pmli_step(const cx_mat& G, const cx_vec& s) {
    const cx_vec g = G * s;
    cx_vec out(s.n_elem);
    for (arma::uword i = 0; i < s.n_elem; ++i) {
        out[i] = g[i] == cx(0.0, 0.0) ? s[i] : g[i] / std::abs(g[i]);
    }
    return out;
}

/// PMLI step on the lifted vector [v; 1] with the trailing entry pinned.
inline cx_vec lifted_pmli_step(const cx_mat& e_hat, const cx_vec& v) {
    const arma::uword n = v.n_elem;
    cx_vec vbar(n + 1);
    vbar.head(n) = v;
    vbar[n] = cx(1.0, 0.0);
    const cx_vec g = e_hat * vbar;
    cx_vec out(n);
    for (arma::uword i = 0; i < n; ++i) {
        out[i] = g[i] == cx(0.0, 0.0) ? v[i] : g[i] / std::abs(g[i]);
    }
    return out;
}

/// Objective of the lifted UQP at [v; 1].
inline double lifted_objective(const cx_mat& e_hat, const cx_vec& v) {
    cx_vec vbar(v.n_elem + 1);
    vbar.head(v.n_elem) = v;
    vbar[v.n_elem] = cx(1.0, 0.0);
    return std::real(arma::as_scalar(vbar.t() * e_hat * vbar));
}

/// Rayleigh-quotient target of the waveform subproblem:
/// M_a = (X P P^H X^H)^T . Sigma^{-1} (Hadamard), PSD by the Schur product
/// theorem.
inline cx_mat waveform_matrix(const cx_mat& X, const cx_mat& P, const cx_mat& sigma) {
    cx_mat sigma_inv;
    if (!arma::inv_sympd(sigma_inv, sigma)) {
        throw std::runtime_error("waveform_matrix: noise covariance is singular");
    }
    const cx_mat K = X * P * P.t() * X.t();
    cx_mat Ma = K.st() % sigma_inv;
    return (Ma + Ma.t()) / 2.0;
}

/// One normalized power step a' = M_a a / ||M_a a||. If a is orthogonal to
/// the range of M_a the step restarts from a random unit-norm vector.
inline cx_vec waveform_update(const cx_mat& Ma, const cx_vec& a, CounterRng* rng = nullptr) {
    cx_vec z = Ma * a;
    double nz = arma::norm(z);
    if (nz == 0.0) {
        std::cerr << "waveform_update: iterate orthogonal to range, restarting from random waveform\n";
        cx_vec fresh(a.n_elem);
        if (rng) {
            for (arma::uword i = 0; i < fresh.n_elem; ++i) fresh[i] = rng->next_cx_gaussian();
        } else {
            fresh.ones();
            for (arma::uword i = 0; i < fresh.n_elem; ++i) fresh[i] += cx(0.0, 1e-3 * (i + 1.0));
        }
        fresh /= arma::norm(fresh);
        z = Ma * fresh;
        nz = arma::norm(z);
        if (nz == 0.0) return fresh;  // M_a == 0, nothing to optimize
    }
    return z / nz;
}

/// Power method on M_a until the iterate stabilizes (or the cap is hit).
inline cx_vec waveform_power_method(const cx_mat& Ma, cx_vec a, CounterRng* rng = nullptr,
                                    double tol = 1e-12, std::size_t cap = 2000) {
    for (std::size_t it = 0; it < cap; ++it) {
        const cx_vec next = waveform_update(Ma, a, rng);
        const double gap = arma::norm(next - a);
        a = next;
        if (gap < tol) break;
    }
    return a;
}

struct DesignConfig {
    double eta = 1.0;
    std::size_t outer_iters = 10;   ///< Gamma_1
    std::size_t inner_iters = 30;   ///< Gamma_2
    std::uint64_t seed = 1;
    double rel_tol = 1e-6;          ///< early stop on relative delta gain per outer iteration
};

struct DesignState {
    cx_vec a;   ///< designed waveform, unit norm
    cx_vec v;   ///< designed phase shifts, unimodular
    cx_vec v1;  ///< consensus copies at the end of the last inner loop
    cx_vec v2;
    std::vector<std::pair<std::size_t, double>> delta_trace;  ///< (outer iteration, delta)
    std::vector<double> inner_merit;  ///< penalized consensus objective per half-step
    double max_phase_gap = 0.0;       ///< max entrywise phase distance between v1 and v2
};

inline double max_phase_distance(const cx_vec& u, const cx_vec& w) {
    double worst = 0.0;
    for (arma::uword i = 0; i < u.n_elem; ++i) {
        worst = std::max(worst, std::abs(std::arg(u[i] * std::conj(w[i]))));
    }
    return worst;
}

/**
 * @brief Alternating waveform / phase-shift design.
 *
 * Each outer iteration freezes the waveform, runs Gauss-Seidel PMLI on the
 * two consensus copies of the phase-shift vector (v1 from v2, then v2 from
 * the fresh v1), collapses to v = v1, rebuilds the cascade gains, and
 * re-solves the waveform subproblem by the power method. Stops early when
 * the relative delta gain over an outer iteration falls below rel_tol.
 */
inline DesignState algorithm1(const ChannelStructure& ch, const cx_mat& P, const NoiseModel& noise,
                              const cx_mat& alpha, const DesignConfig& cfg) {
    require(cfg.outer_iters >= 1 && cfg.inner_iters >= 1, "algorithm1: iteration budgets must be >= 1");
    const std::size_t L = ch.num_subcarriers();
    CounterRng rng(cfg.seed, 0);

    DesignState st;
    st.v1 = random_unimodular(rng, ch.total_elements());
    st.v2 = st.v1;
    st.a = uniform_waveform(L);

    const cx_mat D = ch.assemble_D(alpha);
    cx_vec h = ch.channel_vector(st.v1);
    cx_mat X = ch.assemble_X(h, alpha);
    double delta = noncentrality(st.a, X, P, noise.sigma);
    st.delta_trace.emplace_back(0, delta);

    const auto merit = [&](const cx_mat& E_fixed, const cx_vec& v_free, const cx_vec& v_fixed,
                           double eta) {
        const double quad = std::real(arma::as_scalar(v_free.t() * E_fixed * v_free));
        return quad + 2.0 * eta * std::real(arma::cdot(v_fixed, v_free));
    };

    for (std::size_t s = 1; s <= cfg.outer_iters; ++s) {
        const cx_mat W = build_W(st.a, D, P, noise.sigma, ch.selector());
        for (std::size_t t = 0; t < cfg.inner_iters; ++t) {
            const cx_mat E2 = biquadratic_E(ch, W, st.v2);
            const auto [etilde2, lam2] = diagonal_load(E2);
            const auto [ehat2, lhat2] = lift(etilde2, st.v2, cfg.eta);
            st.v1 = lifted_pmli_step(ehat2, st.v1);
            st.inner_merit.push_back(merit(E2, st.v1, st.v2, cfg.eta));

            const cx_mat E1 = biquadratic_E(ch, W, st.v1);
            const auto [etilde1, lam1] = diagonal_load(E1);
            const auto [ehat1, lhat1] = lift(etilde1, st.v1, cfg.eta);
            st.v2 = lifted_pmli_step(ehat1, st.v2);
            st.inner_merit.push_back(merit(E1, st.v2, st.v1, cfg.eta));
        }
        st.max_phase_gap = max_phase_distance(st.v1, st.v2);
        st.v = st.v1;

        h = ch.channel_vector(st.v);
        X = ch.assemble_X(h, alpha);
        const cx_mat Ma = waveform_matrix(X, P, noise.sigma);
        st.a = waveform_power_method(Ma, st.a, &rng);

        const double next_delta = noncentrality(st.a, X, P, noise.sigma);
        st.delta_trace.emplace_back(s, next_delta);
        const double gain = (next_delta - delta) / std::max(1e-300, std::abs(delta));
        delta = next_delta;
        st.v1 = st.v;
        st.v2 = st.v;
        if (s > 1 && gain >= 0.0 && gain < cfg.rel_tol) break;
    }
    return st;
}

} // namespace irsradar
