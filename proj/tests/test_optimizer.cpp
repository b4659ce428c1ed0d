#include <catch2/catch_amalgamated.hpp>

#include "irsradar/optimizer.hpp"

using namespace irsradar;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

SceneConfig design_scene(std::size_t L, std::size_t M, std::size_t Nm, std::size_t N) {
    SceneConfig sc;
    sc.radar_pos = {0.0, 0.0};
    sc.target_pos = {0.0, 5000.0};
    sc.target_vel = {10.0, 10.0};
    sc.carrier_freq = 1.0e9;
    sc.bandwidth = 1.0e8;
    sc.num_subcarriers = L;
    sc.num_pulses = N;
    sc.pulse_width = static_cast<double>(L + 1) / 1.0e8;
    sc.pri = 2.0e-5;
    const Vec2 spots[2] = {{100.0, 100.0}, {-100.0, 100.0}};
    for (std::size_t m = 0; m < M; ++m) sc.irs.push_back({spots[m % 2], Nm, 0.0, {1.0, 0.0}});
    return sc;
}

cx_mat random_psd(CounterRng& rng, std::size_t n) {
    const cx_mat B = random_cx_gaussian(rng, n, n);
    return B * B.t();
}

double quad(const cx_mat& G, const cx_vec& s) {
    return std::real(arma::as_scalar(s.t() * G * s));
}

} // namespace

TEST_CASE("max eigenvalue: power-iteration path agrees with dense decomposition") {
    CounterRng rng(70, 0);
    const std::size_t n = 300;  // beyond the dense cutoff
    cx_mat H = random_cx_gaussian(rng, n, n);
    H = (H + H.t()) / 2.0;
    arma::vec ev;
    REQUIRE(arma::eig_sym(ev, H));
    const double lam = max_eigenvalue(H);
    CHECK_THAT(lam, WithinRel(ev.back(), 1e-8));
}

TEST_CASE("W construction") {
    SECTION("single-carrier scalar case matches hand computation") {
        const SceneConfig sc = design_scene(1, 1, 1, 6);
        const ChannelStructure ch(sc);
        const cx_vec a{cx(1.0, 0.0)};
        const cx alpha11(0.8, -0.6);
        const cx_mat alpha(1, 1, arma::fill::value(alpha11));
        const cx_mat D = ch.assemble_D(alpha);
        const PathParams paths = compute_path_params(sc);
        const cx_mat P = doppler_matrix(sc, paths);
        const NoiseModel nm = make_noise_model(1, 2.0, 0.0);
        const cx_mat W = build_W(a, D, P, nm.sigma, ch.selector());
        REQUIRE(W.n_rows == 1);
        const double want = std::norm(alpha11) * std::real(arma::as_scalar(P * P.t())) / 2.0;
        CHECK_THAT(std::real(W(0, 0)), WithinRel(want, 1e-12));
    }
    SECTION("Hermitian and consistent with the trace form") {
        const SceneConfig sc = design_scene(3, 2, 4, 9);
        const ChannelStructure ch(sc);
        CounterRng rng(3, 0);
        cx_vec a = random_cx_gaussian(rng, 3, 1);
        a /= arma::norm(a);
        const cx_mat alpha = random_cx_gaussian(rng, 3, 2);
        const PathParams paths = compute_path_params(sc);
        const cx_mat P = doppler_matrix(sc, paths);
        const NoiseModel nm = make_noise_model(3, 1.2, 0.6);
        const cx_mat W = build_W(a, ch.assemble_D(alpha), P, nm.sigma, ch.selector());
        CHECK(arma::norm(W - W.t(), "fro") < 1e-12 * arma::norm(W, "fro"));

        const cx_vec v = random_unimodular(rng, ch.total_elements());
        const cx_vec h = ch.channel_vector(v);
        const cx_mat X = ch.assemble_X(h, alpha);
        const double d_trace = noncentrality(a, X, P, nm.sigma);
        CHECK_THAT(quad(W, h), WithinRel(d_trace, 1e-10));
    }
}

TEST_CASE("biquadratic form") {
    const SceneConfig sc = design_scene(2, 2, 3, 8);
    const ChannelStructure ch(sc);
    CounterRng rng(8, 0);
    cx_vec a = random_cx_gaussian(rng, 2, 1);
    a /= arma::norm(a);
    const cx_mat alpha = random_cx_gaussian(rng, 2, 2);
    const PathParams paths = compute_path_params(sc);
    const cx_mat P = doppler_matrix(sc, paths);
    const NoiseModel nm = make_noise_model(2, 0.9, 0.4);
    const cx_mat W = build_W(a, ch.assemble_D(alpha), P, nm.sigma, ch.selector());

    const cx_vec v = random_unimodular(rng, ch.total_elements());
    const cx_vec u = random_unimodular(rng, ch.total_elements());

    SECTION("diagonal evaluation equals the noncentrality") {
        const cx_mat X = ch.assemble_X(ch.channel_vector(v), alpha);
        const double delta = noncentrality(a, X, P, nm.sigma);
        CHECK_THAT(quad(biquadratic_E(ch, W, v), v), WithinRel(delta, 1e-10));
    }
    SECTION("two-argument symmetry") {
        const double guv = quad(biquadratic_E(ch, W, v), u);
        const double gvu = quad(biquadratic_E(ch, W, u), v);
        CHECK_THAT(guv, WithinRel(gvu, 1e-10));
    }
    SECTION("zero W gives zero E") {
        const cx_mat E = biquadratic_E(ch, cx_mat(8, 8, arma::fill::zeros), v);
        CHECK(arma::norm(E, "fro") == 0.0);
    }
}

TEST_CASE("diagonal loading") {
    SECTION("identity loads to zero") {
        const auto [etilde, lam] = diagonal_load(arma::eye<cx_mat>(3, 3));
        CHECK_THAT(lam, WithinAbs(1.0, 1e-12));
        CHECK(arma::norm(etilde, "fro") < 1e-12);
    }
    SECTION("argmax of the original equals argmin of the loaded form") {
        CounterRng rng(15, 0);
        cx_mat E = random_cx_gaussian(rng, 3, 3);
        E = (E + E.t()) / 2.0;
        const auto [etilde, lam] = diagonal_load(E);
        // 4-point phase grid exhaustive over n = 3
        const cx phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        double best_orig = -1e300, worst_loaded = 1e300;
        cx_vec argmax_orig, argmin_loaded;
        for (int i = 0; i < 64; ++i) {
            cx_vec s(3);
            s[0] = phases[i & 3];
            s[1] = phases[(i >> 2) & 3];
            s[2] = phases[(i >> 4) & 3];
            const double orig = quad(E, s);
            const double loaded = quad(etilde, s);
            // loading identity: v^H Etilde v = lam*n - v^H E v
            CHECK_THAT(loaded, WithinAbs(lam * 3.0 - orig, 1e-10));
            if (orig > best_orig) {
                best_orig = orig;
                argmax_orig = s;
            }
            if (loaded < worst_loaded) {
                worst_loaded = loaded;
                argmin_loaded = s;
            }
        }
        CHECK(arma::norm(argmax_orig - argmin_loaded) < 1e-12);
    }
}

TEST_CASE("lift") {
    CounterRng rng(25, 0);
    const std::size_t n = 5;
    cx_mat E = random_psd(rng, n);
    const auto [etilde, lam] = diagonal_load(E);
    const cx_vec v_other = random_unimodular(rng, n);
    const double eta = 1.7;
    const auto [ehat, lam_hat] = lift(etilde, v_other, eta);
    const cx_mat ecal = lam_hat * arma::eye<cx_mat>(n + 1, n + 1) - ehat;

    SECTION("lifted matrix is PSD after loading") {
        arma::vec ev;
        REQUIRE(arma::eig_sym(ev, ehat));
        CHECK(ev[0] > -1e-10);
    }
    SECTION("penalty identity on random unimodular vectors") {
        for (int rep = 0; rep < 10; ++rep) {
            const cx_vec vk = random_unimodular(rng, n);
            cx_vec vbar(n + 1);
            vbar.head(n) = vk;
            vbar[n] = cx(1.0, 0.0);
            const double lhs = std::real(arma::as_scalar(vbar.t() * ecal * vbar));
            const double rhs = quad(etilde, vk) +
                               2.0 * eta * (static_cast<double>(n) -
                                            std::real(arma::cdot(vk, v_other)));
            CHECK_THAT(lhs, WithinRel(rhs, 1e-10));
        }
    }
    SECTION("equal copies make the penalty vanish") {
        cx_vec vbar(n + 1);
        vbar.head(n) = v_other;
        vbar[n] = cx(1.0, 0.0);
        const double lhs = std::real(arma::as_scalar(vbar.t() * ecal * vbar));
        CHECK_THAT(lhs, WithinAbs(quad(etilde, v_other), 1e-9));
    }
    SECTION("eta = 0 decouples: lifted iterates equal plain loaded iterates") {
        const auto [ehat0, lam0] = lift(etilde, v_other, 0.0);
        cx_vec s_lift = random_unimodular(rng, n);
        cx_vec s_plain = s_lift;
        const cx_mat loaded_max = lam0 * arma::eye<cx_mat>(n, n) - etilde;
        for (int it = 0; it < 10; ++it) {
            s_lift = lifted_pmli_step(ehat0, s_lift);
            s_plain = pmli_step(loaded_max, s_plain);
            CHECK(arma::norm(s_lift - s_plain) < 1e-12);
        }
    }
}

TEST_CASE("pmli step") {
    CounterRng rng(35, 0);

    SECTION("identity matrix is a fixed point") {
        const cx_vec s = random_unimodular(rng, 6);
        const cx_vec s2 = pmli_step(arma::eye<cx_mat>(6, 6), s);
        CHECK(arma::norm(s2 - s) < 1e-14);
    }
    SECTION("rank-one target reaches the global optimum n^2") {
        const std::size_t n = 7;
        const cx_vec q = random_unimodular(rng, n);
        const cx_mat Gh = q * q.t();  // q q^H, PSD rank one
        cx_vec s = random_unimodular(rng, n);
        for (int it = 0; it < 50; ++it) s = pmli_step(Gh, s);
        CHECK_THAT(quad(Gh, s), WithinRel(static_cast<double>(n * n), 1e-10));
    }
    SECTION("monotone ascent on random PSD matrices") {
        for (int rep = 0; rep < 5; ++rep) {
            const cx_mat G = random_psd(rng, 6);
            cx_vec s = random_unimodular(rng, 6);
            double prev = quad(G, s);
            for (int it = 0; it < 40; ++it) {
                s = pmli_step(G, s);
                const double cur = quad(G, s);
                CHECK(cur >= prev - 1e-9 * std::max(1.0, std::abs(prev)));
                prev = cur;
            }
        }
    }
    SECTION("beats 0.9x of the exhaustive 4-point-grid optimum") {
        const cx phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        int wins = 0;
        for (int rep = 0; rep < 10; ++rep) {
            const cx_mat G = random_psd(rng, 3);
            cx_vec s = random_unimodular(rng, 3);
            for (int it = 0; it < 50; ++it) s = pmli_step(G, s);
            double best = 0.0;
            for (int i = 0; i < 64; ++i) {
                cx_vec g(3);
                g[0] = phases[i & 3];
                g[1] = phases[(i >> 2) & 3];
                g[2] = phases[(i >> 4) & 3];
                best = std::max(best, quad(G, g));
            }
            if (quad(G, s) >= 0.9 * best) ++wins;
        }
        CHECK(wins == 10);
    }
    SECTION("zero rows keep their previous phase") {
        cx_mat G(3, 3, arma::fill::zeros);
        G(0, 0) = 4.0;
        const cx_vec s{std::polar(1.0, 0.3), std::polar(1.0, 1.1), std::polar(1.0, -2.0)};
        const cx_vec s2 = pmli_step(G, s);
        CHECK(std::abs(s2[1] - s[1]) < 1e-15);
        CHECK(std::abs(s2[2] - s[2]) < 1e-15);
    }
}

TEST_CASE("waveform update") {
    SECTION("diagonal 2x1 converges to the dominant axis") {
        cx_mat Ma(2, 2, arma::fill::zeros);
        Ma(0, 0) = 2.0;
        Ma(1, 1) = 1.0;
        cx_vec a{cx(1.0 / std::sqrt(2.0), 0.0), cx(1.0 / std::sqrt(2.0), 0.0)};
        for (int it = 0; it < 20; ++it) a = waveform_update(Ma, a);
        CHECK(std::abs(a[0]) > 1.0 - 1e-6);
        CHECK(std::abs(a[1]) < 1e-2);
    }
    SECTION("identity leaves the waveform unchanged") {
        const cx_vec a = uniform_waveform(4);
        const cx_vec a2 = waveform_update(arma::eye<cx_mat>(4, 4), a);
        CHECK(arma::norm(a2 - a) < 1e-14);
    }
    SECTION("rayleigh quotient never decreases") {
        CounterRng rng(44, 0);
        const cx_mat Ma = random_psd(rng, 5);
        cx_vec a = random_cx_gaussian(rng, 5, 1);
        a /= arma::norm(a);
        double prev = quad(Ma, a);
        for (int it = 0; it < 30; ++it) {
            a = waveform_update(Ma, a);
            const double cur = quad(Ma, a);
            CHECK(cur >= prev - 1e-10 * std::max(1.0, prev));
            prev = cur;
        }
    }
    SECTION("converged waveform matches the dominant eigenvector") {
        CounterRng rng(45, 0);
        const cx_mat Ma = random_psd(rng, 4);
        const cx_vec a = waveform_power_method(Ma, uniform_waveform(4), &rng);
        arma::vec ev;
        cx_mat V;
        REQUIRE(arma::eig_sym(ev, V, Ma));
        cx_vec u = V.col(3);
        u *= std::polar(1.0, std::arg(arma::cdot(u, a)));  // align global phase
        CHECK(arma::norm(a - u) < 1e-6);
    }
}

TEST_CASE("algorithm1") {
    const SceneConfig sc = design_scene(2, 2, 4, 10);
    const ChannelStructure ch(sc);
    const PathParams paths = compute_path_params(sc);
    const cx_mat P = doppler_matrix(sc, paths);
    const NoiseModel nm = make_noise_model(2, 1.0, 0.5);
    const cx_mat alpha(2, 2, arma::fill::ones);

    SECTION("budgets of one equal a manual composition, bitwise") {
        DesignConfig cfg;
        cfg.outer_iters = 1;
        cfg.inner_iters = 1;
        cfg.seed = 77;
        cfg.eta = 1.0;
        const DesignState got = algorithm1(ch, P, nm, alpha, cfg);

        // Manual composition with the same stream.
        CounterRng rng(77, 0);
        cx_vec v1 = random_unimodular(rng, ch.total_elements());
        cx_vec v2 = v1;
        cx_vec a = uniform_waveform(2);
        const cx_mat W = build_W(a, ch.assemble_D(alpha), P, nm.sigma, ch.selector());
        const cx_mat E2 = biquadratic_E(ch, W, v2);
        const auto [et2, l2] = diagonal_load(E2);
        const auto [eh2, lh2] = lift(et2, v2, cfg.eta);
        v1 = lifted_pmli_step(eh2, v1);
        const cx_mat E1 = biquadratic_E(ch, W, v1);
        const auto [et1, l1] = diagonal_load(E1);
        const auto [eh1, lh1] = lift(et1, v1, cfg.eta);
        v2 = lifted_pmli_step(eh1, v2);
        const cx_vec v = v1;
        const cx_mat X = ch.assemble_X(ch.channel_vector(v), alpha);
        const cx_mat Ma = waveform_matrix(X, P, nm.sigma);
        a = waveform_power_method(Ma, a, &rng);

        CHECK(arma::norm(got.v - v) == 0.0);
        CHECK(arma::norm(got.a - a) == 0.0);
    }

    SECTION("eta sweep always improves the initial design") {
        for (double eta : {0.1, 1.0, 10.0}) {
            DesignConfig cfg;
            cfg.eta = eta;
            cfg.outer_iters = 6;
            cfg.inner_iters = 15;
            cfg.seed = 5;
            const DesignState st = algorithm1(ch, P, nm, alpha, cfg);
            REQUIRE(st.delta_trace.size() >= 2);
            CHECK(st.delta_trace.back().second >= st.delta_trace.front().second);
        }
    }

    SECTION("invariants along the run") {
        DesignConfig cfg;
        cfg.outer_iters = 4;
        cfg.inner_iters = 10;
        cfg.seed = 11;
        const DesignState st = algorithm1(ch, P, nm, alpha, cfg);

        CHECK(is_unimodular(st.v, 1e-12));
        CHECK_THAT(arma::norm(st.a), WithinAbs(1.0, 1e-12));
        CHECK(st.max_phase_gap < 1e-6);  // penalty drives the copies together

        // consensus merit nondecreasing within each outer iteration
        const std::size_t per_outer = 2 * cfg.inner_iters;
        for (std::size_t outer = 0; outer < st.inner_merit.size() / per_outer; ++outer) {
            for (std::size_t i = 1; i < per_outer; ++i) {
                const double prev = st.inner_merit[outer * per_outer + i - 1];
                const double cur = st.inner_merit[outer * per_outer + i];
                CHECK(cur >= prev - 1e-9 * std::max(1.0, std::abs(prev)));
            }
        }

        // four-way delta agreement at the final design
        const cx_vec h = ch.channel_vector(st.v);
        const cx_mat X = ch.assemble_X(h, alpha);
        const double d_trace = noncentrality(st.a, X, P, nm.sigma);
        const cx_mat W = build_W(st.a, ch.assemble_D(alpha), P, nm.sigma, ch.selector());
        CHECK_THAT(quad(W, h), WithinRel(d_trace, 1e-10));
        CHECK_THAT(quad(biquadratic_E(ch, W, st.v), st.v), WithinRel(d_trace, 1e-10));
        CHECK_THAT(quad(waveform_matrix(X, P, nm.sigma), st.a), WithinRel(d_trace, 1e-10));
        CHECK_THAT(st.delta_trace.back().second, WithinRel(d_trace, 1e-10));
    }
}
