#pragma once

#include <vector>

#include "irsradar/core.hpp"
#include "irsradar/scene.hpp"

namespace irsradar {

/**
 * @brief Rank-one factor of the cascaded gain on subcarrier l via IRS m.
 *
 * S_lm = (b(theta_ir) . b(theta_ti)) (b(theta_ri) . b(theta_it))^T with "."
 * the elementwise product, so the cascade gain is the quadratic form
 * v_m^T S_lm v_m.
 */
inline cx_mat build_rank1_factor(const SceneConfig& scene, std::size_t m, std::size_t l) {
    require(m < scene.num_irs(), "build_rank1_factor: IRS index out of range");
    require(l < scene.num_subcarriers, "build_rank1_factor: subcarrier index out of range");
    const PathAngles ang = path_angles(scene, m);
    const double fl = scene.subcarrier_freq(l);
    const std::size_t n = scene.irs[m].num_elements;
    const double d = scene.irs_spacing(m);
    const cx_vec b_ri = steering_vector(ang.theta_ri, fl, n, d);
    const cx_vec b_ir = steering_vector(ang.theta_ir, fl, n, d);
    const cx_vec b_ti = steering_vector(ang.theta_ti, fl, n, d);
    const cx_vec b_it = steering_vector(ang.theta_it, fl, n, d);
    return (b_ir % b_ti) * (b_ri % b_it).st();
}

/**
 * @brief Cascade gain evaluated directly from the double reflection:
 * b(theta_ir)^T Phi b(theta_ti) * b(theta_it)^T Phi b(theta_ri),
 * Phi = Diag(v_m). Identical to v_m^T S_lm v_m; kept as an independent route.
 */
inline cx channel_gain_direct(const cx_vec& v_m, const cx_vec& b_ri, const cx_vec& b_ir,
                              const cx_vec& b_ti, const cx_vec& b_it) {
    require(v_m.n_elem == b_ri.n_elem && v_m.n_elem == b_ir.n_elem &&
                v_m.n_elem == b_ti.n_elem && v_m.n_elem == b_it.n_elem,
            "channel_gain_direct: phase-shift/steering length mismatch");
    const cx first = arma::accu(b_ir % v_m % b_ti);
    const cx second = arma::accu(b_it % v_m % b_ri);
    return first * second;
}

/**
 * @brief Selector matrix C with vec(BlockDiag(h_0^T,...,h_{L-1}^T)) = C h.
 *
 * C is (L^2 M) x (L M) with 0/1 entries; column-major vec convention.
 */
inline cx_mat build_selector(std::size_t L, std::size_t M) {
    require(L >= 1 && M >= 1, "build_selector: L and M must be >= 1");
    // H is L x LM with row l holding h_l^T in columns lM..lM+M-1.
    // vec(H) index of (row l, col lM+m) is (lM+m)*L + l.
    cx_mat C(L * L * M, L * M, arma::fill::zeros);
    for (std::size_t l = 0; l < L; ++l) {
        for (std::size_t m = 0; m < M; ++m) {
            const std::size_t col = l * M + m;             // index into h
            const std::size_t row = (l * M + m) * L + l;   // index into vec(H)
            C(row, col) = cx(1.0, 0.0);
        }
    }
    return C;
}

/**
 * @brief Per-scene cascade structure: cached rank-one factors and the maps
 * they induce between phase-shifts, stacked gains h, and the matrix X.
 */
class ChannelStructure {
public:
    explicit ChannelStructure(const SceneConfig& scene)
        : L_(scene.num_subcarriers), M_(scene.num_irs()), scene_(scene) {
        require(M_ >= 1, "ChannelStructure: scene has no IRS");
        factors_.resize(L_);
        for (std::size_t l = 0; l < L_; ++l) {
            factors_[l].reserve(M_);
            for (std::size_t m = 0; m < M_; ++m) {
                factors_[l].push_back(build_rank1_factor(scene, m, l));
            }
        }
        selector_ = build_selector(L_, M_);
        offsets_.resize(M_ + 1, 0);
        for (std::size_t m = 0; m < M_; ++m) {
            offsets_[m + 1] = offsets_[m] + scene.irs[m].num_elements;
        }
    }

    std::size_t num_subcarriers() const { return L_; }
    std::size_t num_paths() const { return M_; }
    std::size_t total_elements() const { return offsets_.back(); }
    const cx_mat& factor(std::size_t l, std::size_t m) const { return factors_[l][m]; }
    const cx_mat& selector() const { return selector_; }
    const SceneConfig& scene() const { return scene_; }

    /// Stacked gain vector h (length LM), h[lM+m] = v_m^T S_lm v_m.
    cx_vec channel_vector(const cx_vec& v) const {
        check_length(v);
        cx_vec h(L_ * M_);
        for (std::size_t l = 0; l < L_; ++l) {
            for (std::size_t m = 0; m < M_; ++m) {
                const cx_vec vm = block(v, m);
                h[l * M_ + m] = arma::as_scalar(vm.st() * factors_[l][m] * vm);
            }
        }
        return h;
    }

    /// Q1(v): h = Q1(v) v, built from vec(S_lm)^T (v_m x I_{N_m}).
    cx_mat q1(const cx_vec& v) const { return q_matrix(v, /*first_slot=*/true); }

    /// Q2(v): h = Q2(v) v, built from vec(S_lm)^T (I_{N_m} x v_m).
    cx_mat q2(const cx_vec& v) const { return q_matrix(v, /*first_slot=*/false); }

    /// Reflectivity layout matrix D (L x LM): row l carries alpha_l^T in its block.
    cx_mat assemble_D(const cx_mat& alpha) const {
        require(alpha.n_rows == L_ && alpha.n_cols == M_, "assemble_D: alpha must be L x M");
        cx_mat D(L_, L_ * M_, arma::fill::zeros);
        for (std::size_t l = 0; l < L_; ++l) {
            for (std::size_t m = 0; m < M_; ++m) D(l, l * M_ + m) = alpha(l, m);
        }
        return D;
    }

    /// X = D . H (Hadamard of the two block-diagonal layouts), L x LM.
    cx_mat assemble_X(const cx_vec& h, const cx_mat& alpha) const {
        require(h.n_elem == L_ * M_, "assemble_X: h must have length L*M");
        require(alpha.n_rows == L_ && alpha.n_cols == M_, "assemble_X: alpha must be L x M");
        cx_mat X(L_, L_ * M_, arma::fill::zeros);
        for (std::size_t l = 0; l < L_; ++l) {
            for (std::size_t m = 0; m < M_; ++m) {
                X(l, l * M_ + m) = alpha(l, m) * h[l * M_ + m];
            }
        }
        return X;
    }

    /// Block of the concatenated phase-shift vector belonging to IRS m.
    cx_vec block(const cx_vec& v, std::size_t m) const {
        return v.subvec(offsets_[m], offsets_[m + 1] - 1);
    }

private:
    void check_length(const cx_vec& v) const {
        require(v.n_elem == total_elements(),
                "phase-shift vector has wrong length for this scene");
    }

    cx_mat q_matrix(const cx_vec& v, bool first_slot) const {
        check_length(v);
        cx_mat out(L_ * M_, total_elements(), arma::fill::zeros);
        for (std::size_t l = 0; l < L_; ++l) {
            for (std::size_t m = 0; m < M_; ++m) {
                const cx_vec vm = block(v, m);
                const std::size_t n = vm.n_elem;
                const cx_mat& S = factors_[l][m];
                // row = vec(S)^T (v x I) or vec(S)^T (I x v), without forming the Kronecker:
                // (v x I)_{(p,q),(k)}: entry for column k sums S(:,q) weighted by v.
                cx_vec row(n, arma::fill::zeros);
                if (first_slot) {
                    // vec(S)^T (v_m x I_n): column k picks sum_q v_q S(k, q).
                    row = S * vm;    // S row k dot v  -> (S v)_k
                } else {
                    // vec(S)^T (I_n x v_m): column k picks sum_p v_p S(p, k).
                    row = S.st() * vm;
                }
                out(arma::span(l * M_ + m, l * M_ + m),
                    arma::span(offsets_[m], offsets_[m + 1] - 1)) = row.st();
            }
        }
        return out;
    }

    std::size_t L_;
    std::size_t M_;
    SceneConfig scene_;
    std::vector<std::vector<cx_mat>> factors_;
    cx_mat selector_;
    std::vector<std::size_t> offsets_;
};

} // namespace irsradar
