#include "ddest/matrix_pencil.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace ddest {

void MpConfig::validate(const SystemDims& dims, int p_tot) const {
    if (M_pencil < 1 || M_pencil > dims.M)
        throw std::invalid_argument("MpConfig: 1 <= M_pencil <= M violated");
    if (N_pencil < 1 || N_pencil > dims.N)
        throw std::invalid_argument("MpConfig: 1 <= N_pencil <= N violated");
    if (K_M(dims) < 1) throw std::invalid_argument("MpConfig: K_M >= 1 violated");
    if (K_N(dims) < 2) throw std::invalid_argument("MpConfig: K_N >= 2 violated");
    if (M_pencil * N_pencil < p_tot)
        throw std::invalid_argument("MpConfig: M_pencil*N_pencil >= P_tot violated");
    if (K_M(dims) * (K_N(dims) - 1) < p_tot)
        throw std::invalid_argument("MpConfig: K_M*(K_N-1) >= P_tot violated");
}

PencilState build_block_hankel(const TFPilotGrid& grid, const MpConfig& cfg) {
    const int M = static_cast<int>(grid.grid.rows());
    const int N = static_cast<int>(grid.grid.cols());
    PencilState st;
    st.M_pencil = cfg.M_pencil;
    st.N_pencil = cfg.N_pencil;
    st.K_M = M - cfg.M_pencil + 1;
    st.K_N = N - cfg.N_pencil + 1;
    if (st.K_M < 1 || st.K_N < 1)
        throw std::invalid_argument("build_block_hankel: pencil exceeds grid dims");

    const int Mp = cfg.M_pencil, Np = cfg.N_pencil;
    st.X.resize(Mp * Np, st.K_M * st.K_N);
    // block (i, j) = R_{i+j}, with R_n[a, b] = R_TF[a+b, n]
    for (int j = 0; j < st.K_N; ++j)
        for (int i = 0; i < Np; ++i) {
            const int n = i + j;
            for (int b = 0; b < st.K_M; ++b)
                for (int a = 0; a < Mp; ++a)
                    st.X(i * Mp + a, j * st.K_M + b) = grid.grid(a + b, n);
        }
    return st;
}

void pencil_split(PencilState& state) {
    if (state.K_N < 2) throw std::invalid_argument("pencil_split: K_N >= 2 violated");
    const int cols = state.K_M * (state.K_N - 1);
    state.X_left = state.X.leftCols(cols);
    state.X_right = state.X.rightCols(cols);
}

DopplerPoles doppler_poles(const PencilState& state, int p_tot, int N) {
    if (state.X_left.size() == 0)
        throw std::invalid_argument("doppler_poles: pencil not split");
    DopplerPoles out;
    if (p_tot == 0) return out;

    Eigen::BDCSVD<MatC> svd(state.X_left, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const VecD& sv = svd.singularValues();
    int order = std::min<int>(p_tot, static_cast<int>(sv.size()));
    const double tol = 1e-12 * sv[0];
    while (order > 0 && sv[order - 1] <= tol) --order;
    if (order < p_tot) out.flags.rank_deficient = true;
    if (order == 0) return out;

    const MatC Us = svd.matrixU().leftCols(order);
    const MatC Vs = svd.matrixV().leftCols(order);
    const VecD ss = sv.head(order);
    const MatC T = ss.cwiseInverse().asDiagonal() * (Us.adjoint() * state.X_right * Vs);

    Eigen::ComplexEigenSolver<MatC> es(T, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("doppler_poles: eigenvalue iteration failed");
    for (int i = 0; i < order; ++i) {
        const cplx z = es.eigenvalues()[i];
        out.poles.push_back(z);
        out.kappa_obs.push_back(wrap_to_period(N * std::arg(z) / kTwoPi, N));
    }
    for (size_t i = 0; i < out.poles.size() && !out.flags.clustered_poles; ++i)
        for (size_t j = i + 1; j < out.poles.size(); ++j)
            if (std::abs(wrap_to_centered(std::arg(out.poles[i]) - std::arg(out.poles[j]),
                                          kTwoPi)) < 1e-6) {
                out.flags.clustered_poles = true;
                break;
            }
    return out;
}

DelayProjection delay_from_projection(const TFPilotGrid& grid,
                                      const std::vector<cplx>& poles,
                                      const VecC& spectrum, int p_tot) {
    DelayProjection out;
    const int P = static_cast<int>(poles.size());
    if (P == 0) return out;
    const int M = static_cast<int>(grid.grid.rows());
    const int N = static_cast<int>(grid.grid.cols());
    (void)p_tot;

    // Theta columns are the raw pole power ramps over the Doppler dimension.
    MatC theta(N, P);
    for (int i = 0; i < P; ++i) {
        cplx zp = 1.0;
        for (int n = 0; n < N; ++n, zp *= poles[i]) theta(n, i) = zp;
    }
    for (int i = 0; i < P && !out.flags.clustered_poles; ++i)
        for (int j = i + 1; j < P; ++j)
            if (std::abs(wrap_to_centered(std::arg(poles[i]) - std::arg(poles[j]), kTwoPi)) <
                1e-8) {
                out.flags.clustered_poles = true;
                break;
            }

    // G_hat = R_TF Theta^* (Theta^T Theta^*)^{-1}; fall back to a
    // rank-revealing solve when the Gram matrix is near singular.
    MatC G(M, P);
    const MatC gram = theta.transpose() * theta.conjugate();
    const MatC rhs = grid.grid * theta.conjugate();
    Eigen::JacobiSVD<MatC> gsvd(gram);
    const double cond = gsvd.singularValues()[0] /
                        std::max(gsvd.singularValues()[P - 1], 1e-300);
    if (cond > 1e10) {
        out.flags.ill_conditioned = true;
        // min ||R^T - Theta G^T|| via complete orthogonal decomposition
        Eigen::CompleteOrthogonalDecomposition<MatC> cod(theta);
        G = cod.solve(grid.grid.transpose()).transpose();
    } else {
        G = gram.transpose().partialPivLu().solve(rhs.transpose()).transpose();
    }

    // Deconvolve the pilot and average the phase slope across rows, weighted
    // by |x_f[m] x_f[m+1]|^2; near-zero pilot bins are excluded.
    const double xmax = spectrum.cwiseAbs().maxCoeff();
    const double xtol = 1e-12 * xmax;
    for (int i = 0; i < P; ++i) {
        cplx acc = 0.0;
        for (int m = 0; m + 1 < M; ++m) {
            if (std::abs(spectrum[m]) < xtol || std::abs(spectrum[m + 1]) < xtol) continue;
            const cplx gt_next = G(m + 1, i) / spectrum[m + 1];
            const cplx gt = G(m, i) / spectrum[m];
            const double w = std::norm(spectrum[m] * spectrum[m + 1]);
            acc += w * gt_next * std::conj(gt);
        }
        out.delays.push_back(wrap_to_period(-M * std::arg(acc) / kTwoPi, M));
    }
    return out;
}

EstimationResult run_mp(const TFPilotGrid& grid, const SystemDims& dims,
                        const PilotConfig& pilot_cfg, const MpConfig& cfg, int p_tot) {
    dims.validate();
    pilot_cfg.validate(dims);
    cfg.validate(dims, p_tot);

    EstimationResult result;
    PencilState state = build_block_hankel(grid, cfg);
    pencil_split(state);
    DopplerPoles poles = doppler_poles(state, p_tot, dims.N);
    result.flags.merge(poles.flags);
    if (poles.poles.empty()) return result;

    DelayProjection proj =
        delay_from_projection(grid, poles.poles, grid.spectrum, p_tot);
    result.flags.merge(proj.flags);

    const UserAssociation assoc = associate_users(poles.kappa_obs, dims, pilot_cfg);
    for (const auto& [idx, obs] : assoc.unassigned)
        result.flags.unassigned_dopplers.push_back(obs);
    for (int q = 0; q < pilot_cfg.Q; ++q)
        for (const AssignedDoppler& ad : assoc.per_user[q]) {
            PathEstimate est;
            est.user = q;
            est.delay = proj.delays[ad.source_index];
            est.doppler = ad.doppler;
            result.estimates.push_back(est);
        }
    return result;
}

}  // namespace ddest
