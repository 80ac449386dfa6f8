#include "ddest/wmusic.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ddest {

namespace {

// Block-diagonal sums of E_eff: C_b = sum_n E_blocks[n, n+b], so that on the
// unit circle D(z) = sum_b z^b C_b. Index k = b + (N'-1).
std::vector<MatC> block_diag_sums(const SubspaceState& state) {
    const int Mp = state.M_sub, Np = state.N_sub;
    std::vector<MatC> C(2 * Np - 1, MatC::Zero(Mp, Mp));
    for (int n = 0; n < Np; ++n)
        for (int nb = 0; nb < Np; ++nb)
            C[nb - n + Np - 1] += state.effective.block(n * Mp, nb * Mp, Mp, Mp);
    return C;
}

struct LogDet {
    double log_mag = 0.0;
    double arg = 0.0;
    bool zero = false;
};

LogDet log_det(const MatC& A) {
    Eigen::PartialPivLU<MatC> lu(A);
    LogDet out;
    const MatC& LU = lu.matrixLU();
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        const cplx u = LU(i, i);
        if (u == cplx(0.0, 0.0)) {
            out.zero = true;
            return out;
        }
        out.log_mag += std::log(std::abs(u));
        out.arg += std::arg(u);
    }
    if (lu.permutationP().determinant() < 0) out.arg += kPi;
    return out;
}

}  // namespace

void WMusicConfig::validate(const SystemDims& dims) const {
    if (M_sub < 1 || M_sub > dims.M)
        throw std::invalid_argument("WMusicConfig: 1 <= M_sub <= M violated");
    if (N_sub < 1 || N_sub > dims.N)
        throw std::invalid_argument("WMusicConfig: 1 <= N_sub <= N violated");
    if (G < 1) throw std::invalid_argument("WMusicConfig: G >= 1 violated");
    if (Q_sample < 2 * G + 1)
        throw std::invalid_argument("WMusicConfig: Q_sample >= 2G+1 violated");
    if (eps_rel <= 0) throw std::invalid_argument("WMusicConfig: eps_rel > 0 violated");
    if (min_angle_sep < 0)
        throw std::invalid_argument("WMusicConfig: min_angle_sep >= 0 violated");
}

MatC snapshots(const TFPilotGrid& grid, const WMusicConfig& cfg) {
    const int M = static_cast<int>(grid.grid.rows());
    const int N = static_cast<int>(grid.grid.cols());
    if (cfg.N_sub > N) throw std::invalid_argument("snapshots: N_sub > N");
    if (cfg.M_sub > M) throw std::invalid_argument("snapshots: M_sub > M");
    const int l_snap = N - cfg.N_sub + 1;
    MatC snaps(cfg.M_sub * cfg.N_sub, l_snap);
    for (int j = 0; j < l_snap; ++j) {
        const auto sub = grid.grid.block(0, j, cfg.M_sub, cfg.N_sub);
        snaps.col(j) = Eigen::Map<const VecC>(MatC(sub).data(), cfg.M_sub * cfg.N_sub);
    }
    return snaps;
}

SubspaceState covariance_and_noise_subspace(const MatC& snaps, int p_tot) {
    const int dim = static_cast<int>(snaps.rows());
    const int l_snap = static_cast<int>(snaps.cols());
    if (l_snap < 1) throw std::invalid_argument("covariance: L_snap >= 1 violated");
    if (p_tot < 0 || p_tot >= dim)
        throw std::invalid_argument("covariance: P_tot < M'N' violated");

    SubspaceState state;
    state.covariance.noalias() = snaps * snaps.adjoint() / static_cast<double>(l_snap);
    state.covariance = 0.5 * (state.covariance + state.covariance.adjoint()).eval();

    // decompose the trace-normalized matrix so the basis does not depend on
    // the overall grid scale
    const double scale = state.covariance.real().trace();
    Eigen::SelfAdjointEigenSolver<MatC> es(scale > 0 ? MatC(state.covariance / scale)
                                                     : state.covariance);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("covariance: eigendecomposition failed");
    state.eigenvalues = (scale > 0 ? scale : 1.0) * es.eigenvalues();  // ascending
    state.noise_basis = es.eigenvectors().leftCols(dim - p_tot);
    state.signal_basis = es.eigenvectors().rightCols(p_tot);
    return state;
}

void effective_projection(SubspaceState& state, const VecC& spectrum) {
    if (state.noise_basis.size() == 0)
        throw std::invalid_argument("effective_projection: noise basis not computed");
    const int Mp = state.M_sub, Np = state.N_sub;
    const int dim = Mp * Np;
    if (spectrum.size() < Mp)
        throw std::invalid_argument("effective_projection: spectrum shorter than M'");
    if (state.covariance.rows() != dim)
        throw std::invalid_argument("effective_projection: state dims inconsistent");

    const double xmax = spectrum.head(Mp).cwiseAbs().maxCoeff();
    state.spectrum_warning = (spectrum.head(Mp).cwiseAbs().minCoeff() < 1e-12 * xmax);

    // E_n E_n^H = I - E_s E_s^H (complete orthonormal eigenbasis); the signal
    // side is the cheaper product.
    MatC proj = MatC::Identity(dim, dim);
    if (state.signal_basis.cols() > 0)
        proj.noalias() -= state.signal_basis * state.signal_basis.adjoint();

    VecC xp(dim);
    for (int i = 0; i < dim; ++i) xp[i] = spectrum[i % Mp];
    state.effective = xp.conjugate().asDiagonal() * proj * xp.asDiagonal();
    state.effective = 0.5 * (state.effective + state.effective.adjoint()).eval();
}

MatC doppler_null_matrix(const SubspaceState& state, cplx z) {
    if (state.effective.size() == 0)
        throw std::invalid_argument("doppler_null_matrix: effective projection not filled");
    const int Mp = state.M_sub, Np = state.N_sub;
    VecC v(Np);
    cplx zp = 1.0;
    for (int n = 0; n < Np; ++n, zp *= z) v[n] = zp;
    MatC D = MatC::Zero(Mp, Mp);
    for (int n = 0; n < Np; ++n)
        for (int nb = 0; nb < Np; ++nb)
            D += std::conj(v[n]) * v[nb] * state.effective.block(n * Mp, nb * Mp, Mp, Mp);
    return D;
}

DopplerEstimates estimate_dopplers(const SubspaceState& state, const WMusicConfig& cfg,
                                   int p_tot, int N) {
    DopplerEstimates out;
    if (p_tot == 0) return out;
    const auto C = block_diag_sums(state);
    const int Mp = state.M_sub, Np = state.N_sub;

    UnitCircleSamples samples;
    samples.angles = uniform_circle_angles(cfg.Q_sample);
    samples.values.resize(cfg.Q_sample);
    std::vector<LogDet> dets(cfg.Q_sample);
    double ref = -std::numeric_limits<double>::infinity();
    for (int m = 0; m < cfg.Q_sample; ++m) {
        const double phi = samples.angles[m];
        MatC D = C[Np - 1];
        for (int b = 1; b < Np; ++b) {
            const cplx zb = std::polar(1.0, phi * b);
            D += zb * C[Np - 1 + b] + std::conj(zb) * C[Np - 1 - b];
        }
        dets[m] = log_det(D);
        if (!dets[m].zero) ref = std::max(ref, dets[m].log_mag);
    }
    // rescale so max |d| = 1; det magnitudes only matter relatively
    for (int m = 0; m < cfg.Q_sample; ++m)
        samples.values[m] = dets[m].zero
                                ? cplx(0.0, 0.0)
                                : std::polar(std::exp(dets[m].log_mag - ref), dets[m].arg);

    const FourierPoly fit = wls_fourier_fit(samples, cfg.G, cfg.eps_rel);
    const std::vector<cplx> roots = laurent_roots(fit.coeffs, fit.G);
    const RootSelection sel =
        select_inside_roots(roots, p_tot, cfg.min_angle_sep * kTwoPi / N);
    out.flags.root_shortfall = sel.shortfall;
    out.flags.separation_relaxed = sel.separation_relaxed;
    out.roots = sel.roots;
    for (const cplx& z : sel.roots)
        out.kappa_obs.push_back(wrap_to_period(N * std::arg(z) / kTwoPi, N));
    return out;
}

DelayEstimate estimate_delay_for_root(const SubspaceState& state, cplx z_kappa,
                                      const WMusicConfig& cfg, int M) {
    const cplx z_eval = cfg.project_roots_to_circle && std::abs(z_kappa) > 0
                            ? z_kappa / std::abs(z_kappa)
                            : z_kappa;
    const MatC D = doppler_null_matrix(state, z_eval);
    const int Mp = state.M_sub;

    // J(z) = b^H(z) D b(z); the z^k Laurent coefficient is the k-th
    // diagonal sum of D (column minus row index = k).
    const int Gd = Mp - 1;
    VecC coeffs = VecC::Zero(2 * Gd + 1);
    for (int a = 0; a < Mp; ++a)
        for (int b = 0; b < Mp; ++b) coeffs[b - a + Gd] += D(a, b);

    DelayEstimate out;
    std::vector<cplx> roots;
    try {
        roots = laurent_roots(coeffs, Gd);
    } catch (const std::invalid_argument&) {
        out.no_root = true;
        return out;
    }
    if (roots.empty()) {
        out.no_root = true;
        return out;
    }
    const cplx* best = nullptr;
    double best_gap = 0.0;
    for (const cplx& z : roots) {
        if (std::abs(z) >= 1.0) continue;
        const double gap = 1.0 - std::abs(z);
        if (!best || gap < best_gap) {
            best = &z;
            best_gap = gap;
        }
    }
    if (!best) {
        out.inside_fallback = true;
        for (const cplx& z : roots) {
            const double gap = std::abs(1.0 - std::abs(z));
            if (!best || gap < best_gap) {
                best = &z;
                best_gap = gap;
            }
        }
    }
    // convention z_ell = e^{-j 2 pi ell / M}
    out.ell = wrap_to_period(-M * std::arg(*best) / kTwoPi, M);
    return out;
}

EstimationResult run_wmusic(const TFPilotGrid& grid, const SystemDims& dims,
                            const PilotConfig& pilot_cfg, const WMusicConfig& cfg,
                            int p_tot) {
    dims.validate();
    pilot_cfg.validate(dims);
    cfg.validate(dims);
    if (cfg.M_sub * cfg.N_sub <= p_tot)
        throw std::invalid_argument("WMusicConfig: M_sub*N_sub > P_tot violated");

    EstimationResult result;
    const MatC snaps = snapshots(grid, cfg);
    SubspaceState state = covariance_and_noise_subspace(snaps, p_tot);
    state.M_sub = cfg.M_sub;
    state.N_sub = cfg.N_sub;
    effective_projection(state, grid.spectrum);
    if (state.spectrum_warning) result.flags.ill_conditioned = true;

    DopplerEstimates dopplers = estimate_dopplers(state, cfg, p_tot, dims.N);
    result.flags.merge(dopplers.flags);

    const UserAssociation assoc = associate_users(dopplers.kappa_obs, dims, pilot_cfg);
    for (const auto& [idx, obs] : assoc.unassigned)
        result.flags.unassigned_dopplers.push_back(obs);

    for (int q = 0; q < pilot_cfg.Q; ++q) {
        for (const AssignedDoppler& ad : assoc.per_user[q]) {
            const DelayEstimate de =
                estimate_delay_for_root(state, dopplers.roots[ad.source_index], cfg, dims.M);
            result.flags.delay_root_fallback |= de.inside_fallback;
            result.flags.root_shortfall |= de.no_root;
            if (de.no_root) continue;
            PathEstimate est;
            est.user = q;
            est.delay = de.ell;
            est.doppler = ad.doppler;
            result.estimates.push_back(est);
        }
    }
    return result;
}

}  // namespace ddest
