#pragma once

#include <atomic>
#include <cstdio>
#include <mutex>
#include <thread>

#include "irsradar/channel.hpp"
#include "irsradar/config.hpp"
#include "irsradar/core.hpp"
#include "irsradar/detector.hpp"
#include "irsradar/optimizer.hpp"
#include "irsradar/rng.hpp"
#include "irsradar/scene.hpp"
#include "irsradar/signal.hpp"
#include "irsradar/stats.hpp"

namespace irsradar {

enum class Scenario { los_only, specular_2path, irs_m1, irs_m2 };

inline const char* scenario_name(Scenario s) {
    switch (s) {
        case Scenario::los_only: return "los_only";
        case Scenario::specular_2path: return "specular_2path";
        case Scenario::irs_m1: return "irs_M1";
        case Scenario::irs_m2: return "irs_M2";
    }
    return "?";
}

inline Scenario parse_scenario(const std::string& s) {
    if (s == "los_only") return Scenario::los_only;
    if (s == "specular_2path") return Scenario::specular_2path;
    if (s == "irs_M1") return Scenario::irs_m1;
    if (s == "irs_M2") return Scenario::irs_m2;
    throw std::runtime_error("unknown scenario '" + s +
                             "' (expected los_only, specular_2path, irs_M1 or irs_M2)");
}

/// How the design phase fixes the nominal reflectivities.
enum class DesignAlpha { ones, draw };

struct ExperimentConfig {
    SceneConfig scene;
    Scenario scenario = Scenario::irs_m2;
    std::size_t trials = 1000;
    std::vector<double> pfa_grid{1e-3, 1e-2, 1e-1};
    std::uint64_t seed = 1;
    unsigned threads = 0;              ///< 0 = hardware concurrency
    bool freeze_alpha = false;         ///< one alpha draw reused across trials
    bool specular_alpha = false;       ///< fixed alpha = 1 instead of CN(0,1)
    bool include_delay_factor = true;
    bool calibrate = false;            ///< run DoF calibration before the experiment
    std::size_t calibration_trials = 5000;
    double target_delta = 25.0;        ///< SNR knob: initial-design delta
    double noise_rho = 0.5;
    double noise_sigma2 = 0.0;         ///< 0 = derive from target_delta
    DetectorConfig detector;
    DesignConfig design;
    DesignAlpha design_alpha = DesignAlpha::ones;

    void validate() const {
        scene.validate();
        detector.validate();
        require(trials >= 100, "trials must be >= 100");
        require(!pfa_grid.empty(), "pfa_grid must not be empty");
        for (std::size_t i = 0; i < pfa_grid.size(); ++i) {
            require(pfa_grid[i] > 0.0 && pfa_grid[i] < 1.0, "pfa values must lie in (0, 1)");
            if (i > 0) require(pfa_grid[i] > pfa_grid[i - 1], "pfa_grid must be strictly increasing");
        }
        require(target_delta > 0.0, "target_delta must be positive");
        require(noise_rho >= 0.0 && noise_rho < 1.0, "noise rho must be in [0, 1)");
    }

    static ExperimentConfig from_file(const std::string& path) {
        ConfigDoc doc = ConfigDoc::parse_file(path);
        return from_doc(doc);
    }

    static ExperimentConfig from_doc(ConfigDoc& doc) {
        ExperimentConfig cfg;
        cfg.scenario = parse_scenario(doc.get_string("scenario", "irs_M2"));
        cfg.trials = static_cast<std::size_t>(doc.get_int("trials", 1000));
        cfg.pfa_grid = doc.get_list("pfa_grid", cfg.pfa_grid);
        cfg.seed = static_cast<std::uint64_t>(doc.get_int("seed", 1));
        cfg.threads = static_cast<unsigned>(doc.get_int("threads", 0));
        cfg.freeze_alpha = doc.get_bool("freeze_alpha", false);
        cfg.specular_alpha = doc.get_bool("specular_alpha", false);
        cfg.include_delay_factor = doc.get_bool("include_delay_factor", true);
        cfg.calibrate = doc.get_bool("calibrate", false);
        cfg.calibration_trials = static_cast<std::size_t>(doc.get_int("calibration_trials", 5000));
        cfg.target_delta = doc.get_double("target_delta", 25.0);
        cfg.noise_rho = doc.get_double("noise.rho", 0.5);
        cfg.noise_sigma2 = doc.get_double("noise.sigma2", 0.0);

        cfg.detector.pfa = doc.get_double("detector.pfa", 1e-2);
        const std::string conv = doc.get_string("detector.dof_convention", "2rL");
        if (conv == "rL") cfg.detector.dof_convention = DofConvention::rl;
        else if (conv == "2rL") cfg.detector.dof_convention = DofConvention::two_rl;
        else throw std::runtime_error("detector.dof_convention must be rL or 2rL");
        const std::string variant = doc.get_string("detector.variant", "estimated-X");
        if (variant == "estimated-X") cfg.detector.variant = GlrVariant::estimated_x;
        else if (variant == "clairvoyant-X") cfg.detector.variant = GlrVariant::clairvoyant_x;
        else throw std::runtime_error("detector.variant must be estimated-X or clairvoyant-X");
        cfg.detector.rank_tol = doc.get_double("detector.rank_tol", 1e-9);

        cfg.design.eta = doc.get_double("design.eta", 1.0);
        cfg.design.outer_iters = static_cast<std::size_t>(doc.get_int("design.outer_iters", 10));
        cfg.design.inner_iters = static_cast<std::size_t>(doc.get_int("design.inner_iters", 30));
        cfg.design.seed = cfg.seed;
        const std::string da = doc.get_string("design.alpha", "ones");
        if (da == "ones") cfg.design_alpha = DesignAlpha::ones;
        else if (da == "draw") cfg.design_alpha = DesignAlpha::draw;
        else throw std::runtime_error("design.alpha must be ones or draw");

        SceneConfig& sc = cfg.scene;
        sc.carrier_freq = doc.get_double("scene.carrier_freq_hz", 1.0e9);
        sc.bandwidth = doc.get_double("scene.bandwidth_hz", 1.0e8);
        sc.num_subcarriers = static_cast<std::size_t>(doc.get_int("scene.num_subcarriers", 4));
        sc.num_pulses = static_cast<std::size_t>(doc.get_int("scene.num_pulses", 50));
        sc.pri = doc.get_double("scene.pri_s", 2.0e-5);
        sc.pulse_width = doc.get_double("scene.pulse_width_s", 5.0e-8);
        sc.radar_pos = doc.get_vec2("scene.radar_pos_m", {0.0, 0.0});
        sc.target_pos = doc.get_vec2("scene.target_pos_m", {0.0, 5000.0});
        sc.target_vel = doc.get_vec2("scene.target_vel_mps", {10.0, 10.0});
        for (std::size_t k = 1;; ++k) {
            const std::string base = "irs." + std::to_string(k) + ".";
            if (!doc.has(base + "pos_m")) break;
            IrsArray arr;
            arr.first_element_pos = doc.get_vec2(base + "pos_m", {0.0, 0.0});
            arr.num_elements = static_cast<std::size_t>(doc.get_int(base + "num_elements", 8));
            arr.spacing = doc.get_double(base + "spacing_m", 0.0);
            arr.orientation = doc.get_vec2(base + "orientation", {1.0, 0.0});
            sc.irs.push_back(arr);
        }
        doc.finish();
        cfg.validate();
        return cfg;
    }
};

// Stream ids for the counter-based generator: the design phase, the nominal
// alpha draw, the frozen-alpha draw, then one stream per Monte Carlo trial.
inline constexpr std::uint64_t kDesignStream = 0;
inline constexpr std::uint64_t kAlphaStream = 1;
inline constexpr std::uint64_t kTrialStreamBase = 1ULL << 32;

/// Everything needed to run Monte Carlo trials for one scenario.
struct ScenarioSetup {
    Scenario scenario = Scenario::irs_m2;
    std::size_t L = 0;
    std::size_t num_paths = 0;
    cx_vec a;       ///< transmit waveform (designed or uniform)
    cx_vec h;       ///< cascade gains, length L * num_paths
    cx_mat P;       ///< Doppler matrix
    NoiseModel noise;
    std::size_t rank = 0;
    DesignState design;   ///< populated for the IRS scenarios
    bool designed = false;
};

namespace detail {

inline SceneConfig scene_with_irs_count(const SceneConfig& scene, std::size_t m) {
    SceneConfig out = scene;
    out.irs.resize(m);
    return out;
}

/// X = D . H for a scenario without IRS structure (gains given directly).
inline cx_mat assemble_X_flat(std::size_t L, std::size_t M, const cx_vec& h, const cx_mat& alpha) {
    cx_mat X(L, L * M, arma::fill::zeros);
    for (std::size_t l = 0; l < L; ++l)
        for (std::size_t m = 0; m < M; ++m) X(l, l * M + m) = alpha(l, m) * h[l * M + m];
    return X;
}

} // namespace detail

/// Noise power from the SNR knob: sigma2 such that the configured scene's
/// initial design point (seeded v0, uniform a, alpha = 1) sits at
/// target_delta. One anchor for all scenarios keeps them comparable.
inline double sigma2_from_knob(const ExperimentConfig& cfg) {
    if (cfg.noise_sigma2 > 0.0) return cfg.noise_sigma2;
    require(cfg.scene.num_irs() >= 1, "SNR knob needs at least one IRS in the scene");
    const ChannelStructure ch(cfg.scene);
    const PathParams paths = compute_path_params(cfg.scene);
    CounterRng rng(cfg.seed, kDesignStream);
    const cx_vec v0 = random_unimodular(rng, ch.total_elements());
    const cx_vec a0 = uniform_waveform(cfg.scene.num_subcarriers);
    const cx_mat alpha(cfg.scene.num_subcarriers, cfg.scene.num_irs(),
                       arma::fill::ones);
    const cx_mat P = doppler_matrix(cfg.scene, paths, cfg.include_delay_factor);
    const NoiseModel unit = make_noise_model(cfg.scene.num_subcarriers, 1.0, cfg.noise_rho);
    const cx_mat X = ch.assemble_X(ch.channel_vector(v0), alpha);
    const double delta_at_unit_noise = noncentrality(a0, X, P, unit.sigma);
    return delta_at_unit_noise / cfg.target_delta;
}

inline cx_mat design_alpha_matrix(const ExperimentConfig& cfg, std::size_t L, std::size_t M) {
    if (cfg.design_alpha == DesignAlpha::ones) return cx_mat(L, M, arma::fill::ones);
    CounterRng rng(cfg.seed, kAlphaStream);
    return random_cx_gaussian(rng, L, M);
}

inline ScenarioSetup build_scenario(const ExperimentConfig& cfg, Scenario scenario) {
    cfg.validate();
    const std::size_t L = cfg.scene.num_subcarriers;
    const PathParams paths = compute_path_params(cfg.scene);
    const double sigma2 = sigma2_from_knob(cfg);

    ScenarioSetup setup;
    setup.scenario = scenario;
    setup.L = L;
    setup.noise = make_noise_model(L, sigma2, cfg.noise_rho);

    std::vector<double> nus;
    switch (scenario) {
        case Scenario::los_only: {
            setup.num_paths = 1;
            nus = {paths.nu0};
            setup.a = uniform_waveform(L);
            setup.h = cx_vec(L, arma::fill::ones);
            break;
        }
        case Scenario::specular_2path: {
            require(cfg.scene.num_irs() >= 2, "specular_2path needs two path geometries (two IRS entries)");
            setup.num_paths = 2;
            nus = {paths.nu[0], paths.nu[1]};
            setup.a = uniform_waveform(L);
            setup.h = cx_vec(2 * L, arma::fill::ones);
            break;
        }
        case Scenario::irs_m1:
        case Scenario::irs_m2: {
            const std::size_t m = scenario == Scenario::irs_m1 ? 1 : 2;
            require(cfg.scene.num_irs() >= m, "scene does not define enough IRS arrays");
            const SceneConfig sub = detail::scene_with_irs_count(cfg.scene, m);
            const ChannelStructure ch(sub);
            const PathParams sub_paths = compute_path_params(sub);
            const cx_mat P = doppler_matrix(sub, sub_paths, cfg.include_delay_factor);
            const cx_mat alpha = design_alpha_matrix(cfg, L, m);
            DesignConfig dc = cfg.design;
            dc.seed = cfg.seed;
            setup.design = algorithm1(ch, P, setup.noise, alpha, dc);
            setup.designed = true;
            setup.num_paths = m;
            nus.assign(sub_paths.nu.begin(), sub_paths.nu.end());
            setup.a = setup.design.a;
            setup.h = ch.channel_vector(setup.design.v);
            break;
        }
    }
    setup.P = doppler_matrix_for(cfg.scene, paths.tau0, nus, cfg.include_delay_factor);
    setup.rank = effective_rank(setup.P, cfg.detector.rank_tol);
    return setup;
}

/// One row of the RoC table.
struct RocRecord {
    std::string scenario;
    double pfa_target = 0.0;
    double pfa_emp = 0.0, pfa_lo = 0.0, pfa_hi = 0.0;
    double pd_emp = 0.0, pd_lo = 0.0, pd_hi = 0.0;
    double pd_theory = 0.0;
    double delta = 0.0;   ///< mean noncentrality across trials
    std::size_t trials = 0;
    std::uint64_t seed = 0;
};

namespace detail {

inline void parallel_for_trials(std::size_t n, unsigned threads,
                                const std::function<void(std::size_t)>& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace detail

/**
 * @brief Monte Carlo RoC for one scenario: per trial draw reflectivities,
 * synthesize H0 and H1 measurements, evaluate the GLR, and threshold at
 * every target false-alarm rate. Per-trial RNG streams make the result
 * independent of the thread partitioning.
 */
inline std::vector<RocRecord> run_roc(const ExperimentConfig& cfg, const ScenarioSetup& setup) {
    const std::size_t n = cfg.trials;
    const std::size_t L = setup.L;
    const std::size_t M = setup.num_paths;
    const std::size_t npfa = cfg.pfa_grid.size();

    std::vector<double> gammas(npfa);
    for (std::size_t j = 0; j < npfa; ++j) {
        gammas[j] = threshold_for_pfa(cfg.pfa_grid[j], setup.rank, L, cfg.detector.dof_convention);
    }

    cx_mat frozen_alpha;
    if (cfg.freeze_alpha && !cfg.specular_alpha) {
        CounterRng arng(cfg.seed, kAlphaStream);
        frozen_alpha = random_cx_gaussian(arng, L, M);
    }

    std::vector<double> stat0(n), stat1(n), delta_trial(n);
    detail::parallel_for_trials(n, cfg.threads, [&](std::size_t trial) {
        CounterRng rng(cfg.seed, kTrialStreamBase + trial);
        cx_mat alpha;
        if (cfg.specular_alpha) {
            alpha = cx_mat(L, M, arma::fill::ones);
            random_cx_gaussian(rng, L, M);  // keep stream alignment with random-alpha runs
        } else if (cfg.freeze_alpha) {
            alpha = frozen_alpha;
            random_cx_gaussian(rng, L, M);
        } else {
            alpha = random_cx_gaussian(rng, L, M);
        }
        const cx_mat X = detail::assemble_X_flat(L, M, setup.h, alpha);
        const cx_mat Y0 = synthesize(Hypothesis::h0, setup.a, X, setup.P, setup.noise, rng);
        const cx_mat Y1 = synthesize(Hypothesis::h1, setup.a, X, setup.P, setup.noise, rng);
        const GlrResult r0 =
            glr_statistic(Y0, setup.a, X, setup.P, cfg.detector.variant, cfg.detector.rank_tol);
        const GlrResult r1 =
            glr_statistic(Y1, setup.a, X, setup.P, cfg.detector.variant, cfg.detector.rank_tol);
        stat0[trial] = scaled_statistic(r0, cfg.detector.dof_convention);
        stat1[trial] = scaled_statistic(r1, cfg.detector.dof_convention);
        delta_trial[trial] = noncentrality(setup.a, X, setup.P, setup.noise.sigma);
    });

    std::vector<RocRecord> records;
    records.reserve(npfa);
    for (std::size_t j = 0; j < npfa; ++j) {
        RocRecord rec;
        rec.scenario = scenario_name(setup.scenario);
        rec.pfa_target = cfg.pfa_grid[j];
        rec.trials = n;
        rec.seed = cfg.seed;
        std::size_t k0 = 0, k1 = 0;
        double delta_sum = 0.0, pd_theory_sum = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            if (stat0[t] > gammas[j]) ++k0;
            if (stat1[t] > gammas[j]) ++k1;
            delta_sum += delta_trial[t];
            pd_theory_sum += theoretical_pd(delta_trial[t], cfg.pfa_grid[j], setup.rank, L,
                                            cfg.detector.dof_convention);
        }
        rec.pfa_emp = static_cast<double>(k0) / static_cast<double>(n);
        rec.pd_emp = static_cast<double>(k1) / static_cast<double>(n);
        std::tie(rec.pfa_lo, rec.pfa_hi) = stats::wilson_interval(k0, n);
        std::tie(rec.pd_lo, rec.pd_hi) = stats::wilson_interval(k1, n);
        rec.delta = delta_sum / static_cast<double>(n);
        rec.pd_theory = pd_theory_sum / static_cast<double>(n);
        records.push_back(rec);
    }
    return records;
}

inline std::vector<RocRecord> run_roc(const ExperimentConfig& cfg) {
    return run_roc(cfg, build_scenario(cfg, cfg.scenario));
}

/// Outcome of the null-distribution calibration run.
struct CalibrationReport {
    DofConvention selected = DofConvention::two_rl;
    double d_rl = 0.0, p_rl = 0.0;
    double d_2rl = 0.0, p_2rl = 0.0;
    bool aborted = false;   ///< both conventions rejected at p < 1e-4
    bool skipped = false;   ///< statistic degenerate, calibration not applicable
    std::string reason;
    std::size_t rank = 0;
    std::size_t trials = 0;
    std::vector<double> sample;  ///< N ln T samples (for diagnostics)
};

/**
 * @brief Fit H0-only GLR samples against the two candidate chi-square
 * conventions and keep the better one. N ln T is compared with chi2(rL),
 * 2N ln T with chi2(2rL); the larger KS p-value wins.
 */
inline CalibrationReport calibrate_dof(const ExperimentConfig& cfg, const ScenarioSetup& setup) {
    require(cfg.calibration_trials >= 2000, "calibration needs at least 2000 trials");
    const std::size_t n = cfg.calibration_trials;
    const std::size_t L = setup.L;
    const std::size_t M = setup.num_paths;

    CalibrationReport rep;
    rep.rank = setup.rank;
    rep.trials = n;

    if (cfg.detector.variant == GlrVariant::clairvoyant_x && arma::norm(setup.h) == 0.0) {
        rep.skipped = true;
        rep.reason = "clairvoyant statistic with X = 0 is degenerate (T = 1 identically)";
        return rep;
    }

    std::vector<double> sample(n);
    detail::parallel_for_trials(n, cfg.threads, [&](std::size_t trial) {
        CounterRng rng(cfg.seed, kTrialStreamBase + trial);
        cx_mat alpha;
        if (cfg.specular_alpha) {
            alpha = cx_mat(L, M, arma::fill::ones);
            random_cx_gaussian(rng, L, M);
        } else {
            alpha = random_cx_gaussian(rng, L, M);
        }
        const cx_mat X = detail::assemble_X_flat(L, M, setup.h, alpha);
        const cx_mat Y0 = synthesize(Hypothesis::h0, setup.a, X, setup.P, setup.noise, rng);
        const GlrResult r0 =
            glr_statistic(Y0, setup.a, X, setup.P, cfg.detector.variant, cfg.detector.rank_tol);
        sample[trial] = r0.log_statistic;  // N ln T
    });
    rep.sample = sample;

    const double dof_rl = dof_for(DofConvention::rl, setup.rank, L);
    const double dof_2rl = dof_for(DofConvention::two_rl, setup.rank, L);
    rep.d_rl = stats::ks_statistic(sample, [&](double x) { return 1.0 - stats::chi2_sf(std::max(0.0, x), dof_rl); });
    std::vector<double> doubled(sample);
    for (double& x : doubled) x *= 2.0;
    rep.d_2rl = stats::ks_statistic(doubled, [&](double x) { return 1.0 - stats::chi2_sf(std::max(0.0, x), dof_2rl); });
    rep.p_rl = stats::ks_pvalue(rep.d_rl, n);
    rep.p_2rl = stats::ks_pvalue(rep.d_2rl, n);
    rep.selected = rep.p_2rl >= rep.p_rl ? DofConvention::two_rl : DofConvention::rl;
    rep.aborted = std::max(rep.p_rl, rep.p_2rl) < 1e-4;
    return rep;
}

inline CalibrationReport calibrate_dof(const ExperimentConfig& cfg) {
    return calibrate_dof(cfg, build_scenario(cfg, cfg.scenario));
}

/// Ordering flags for one pfa grid point of the four-scenario comparison.
struct OrderingCheck {
    double pfa = 0.0;
    bool m2_ge_m1 = false;
    bool m1_ge_los = false;
    bool m2_ge_specular = false;
    bool tie_m2_m1 = false;
    bool tie_m1_los = false;
    bool tie_m2_specular = false;

    bool ok() const {
        return (m2_ge_m1 || tie_m2_m1) && (m1_ge_los || tie_m1_los) &&
               (m2_ge_specular || tie_m2_specular);
    }
};

struct SuiteReport {
    std::vector<RocRecord> records;  ///< all scenarios, grouped by scenario
    std::vector<OrderingCheck> orderings;
    DofConvention convention = DofConvention::two_rl;
    CalibrationReport calibration;  ///< only meaningful when cfg.calibrate
    bool calibrated = false;
};

/**
 * @brief The four-scenario comparison on a common noise level: LoS-only,
 * two specular paths, one designed IRS, two designed IRS. Reports the
 * RoC rows plus, at each pfa, whether the expected ordering holds (ties
 * count when the Wilson intervals overlap).
 */
inline SuiteReport run_scenario_suite(const ExperimentConfig& cfg) {
    SuiteReport rep;
    ExperimentConfig local = cfg;
    if (cfg.calibrate) {
        rep.calibration = calibrate_dof(cfg, build_scenario(cfg, Scenario::irs_m2));
        rep.calibrated = true;
        if (!rep.calibration.skipped) local.detector.dof_convention = rep.calibration.selected;
    }
    rep.convention = local.detector.dof_convention;

    const Scenario order[4] = {Scenario::los_only, Scenario::specular_2path, Scenario::irs_m1,
                               Scenario::irs_m2};
    std::map<Scenario, std::vector<RocRecord>> per;
    for (Scenario s : order) {
        const auto recs = run_roc(local, build_scenario(local, s));
        per[s] = recs;
        rep.records.insert(rep.records.end(), recs.begin(), recs.end());
    }

    const auto overlaps = [](const RocRecord& x, const RocRecord& y) {
        return x.pd_lo <= y.pd_hi && y.pd_lo <= x.pd_hi;
    };
    for (std::size_t j = 0; j < cfg.pfa_grid.size(); ++j) {
        OrderingCheck chk;
        chk.pfa = cfg.pfa_grid[j];
        const RocRecord& los = per[Scenario::los_only][j];
        const RocRecord& spec = per[Scenario::specular_2path][j];
        const RocRecord& m1 = per[Scenario::irs_m1][j];
        const RocRecord& m2 = per[Scenario::irs_m2][j];
        chk.m2_ge_m1 = m2.pd_emp >= m1.pd_emp;
        chk.m1_ge_los = m1.pd_emp >= los.pd_emp;
        chk.m2_ge_specular = m2.pd_emp >= spec.pd_emp;
        chk.tie_m2_m1 = overlaps(m2, m1);
        chk.tie_m1_los = overlaps(m1, los);
        chk.tie_m2_specular = overlaps(m2, spec);
        rep.orderings.push_back(chk);
    }
    return rep;
}

// ---- persistence ----------------------------------------------------------

inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

inline const char* kRocCsvHeader =
    "scenario,pfa_target,pfa_emp,pfa_lo,pfa_hi,pd_emp,pd_lo,pd_hi,pd_theory,delta,trials,seed";

inline std::string roc_csv(const std::vector<RocRecord>& records) {
    std::string out = kRocCsvHeader;
    out += "\n";
    for (const RocRecord& r : records) {
        out += r.scenario + "," + format_double(r.pfa_target) + "," + format_double(r.pfa_emp) +
               "," + format_double(r.pfa_lo) + "," + format_double(r.pfa_hi) + "," +
               format_double(r.pd_emp) + "," + format_double(r.pd_lo) + "," +
               format_double(r.pd_hi) + "," + format_double(r.pd_theory) + "," +
               format_double(r.delta) + "," + std::to_string(r.trials) + "," +
               std::to_string(r.seed) + "\n";
    }
    return out;
}

/// Plotter-friendly wide table: one row per pfa, one pd column per scenario.
inline std::string suite_plot_tsv(const std::vector<RocRecord>& records,
                                  const std::vector<double>& pfa_grid) {
    std::vector<std::string> scenarios;
    for (const RocRecord& r : records) {
        if (std::find(scenarios.begin(), scenarios.end(), r.scenario) == scenarios.end()) {
            scenarios.push_back(r.scenario);
        }
    }
    std::string out = "pfa";
    for (const auto& s : scenarios) out += "\t" + s;
    out += "\n";
    for (double pfa : pfa_grid) {
        out += format_double(pfa);
        for (const auto& s : scenarios) {
            for (const RocRecord& r : records) {
                if (r.scenario == s && r.pfa_target == pfa) {
                    out += "\t" + format_double(r.pd_emp);
                    break;
                }
            }
        }
        out += "\n";
    }
    return out;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << content;
}

} // namespace irsradar
