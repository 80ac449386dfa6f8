#include "ddest/pilot.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ddest {

VecC zc_sequence(int M_ZC, int u) {
    if (M_ZC < 1) throw std::invalid_argument("zc_sequence: M_ZC >= 1 violated");
    if (u < 1 || std::gcd(u, M_ZC) != 1)
        throw std::invalid_argument("zc_sequence: gcd(u, M_ZC) = 1 violated");
    VecC x(M_ZC);
    for (int l = 0; l < M_ZC; ++l) {
        // keep the quadratic phase argument modulo 2*M_ZC before scaling
        const long long quad = (M_ZC % 2 == 0) ? static_cast<long long>(l) * l
                                               : static_cast<long long>(l) * (l + 1);
        const long long m = (static_cast<long long>(u) * quad) % (2LL * M_ZC);
        x[l] = std::polar(1.0, -kPi * static_cast<double>(m) / M_ZC);
    }
    return x;
}

int doppler_index(int q, int N, int Q) {
    if (Q < 1 || q < 0 || q >= Q)
        throw std::invalid_argument("doppler_index: 0 <= q < Q violated");
    const int stride = N / Q;
    return stride / 2 + q * stride;
}

bool capacity_check(int N, double kappa_max, int Q) {
    return Q <= static_cast<int>(std::floor(N / (2.0 * kappa_max + 1.0)));
}

MatC pcp_grid(const PilotConfig& cfg, const SystemDims& dims, int q) {
    cfg.validate(dims);
    if (cfg.M_PCP() >= dims.M)
        throw std::invalid_argument("pcp_grid: M_PCP < M violated");
    const VecC zc = zc_sequence(cfg.M_ZC, cfg.zc_root);
    const int kq = doppler_index(q, dims.N, cfg.Q);
    MatC grid = MatC::Zero(dims.M, dims.N);
    for (int l = 0; l < cfg.M_CP; ++l)
        grid(l, kq) = zc[cfg.M_ZC - cfg.M_CP + l];  // CP: last M_CP ZC samples
    for (int l = 0; l < cfg.M_ZC; ++l) grid(cfg.M_CP + l, kq) = zc[l];
    return grid;
}

VecC pilot_spectrum(const PilotConfig& cfg, int M) {
    if (M < cfg.M_ZC)
        throw std::invalid_argument("pilot_spectrum: M >= M_ZC violated");
    const VecC zc = zc_sequence(cfg.M_ZC, cfg.zc_root);
    VecC xf(M);
    for (int m = 0; m < M; ++m) {
        cplx acc = 0;
        for (int l = 0; l < cfg.M_ZC; ++l)
            acc += zc[l] * std::polar(1.0, -kTwoPi * m * l / static_cast<double>(M));
        xf[m] = acc;
    }
    return xf;
}

UserAssociation associate_users(const std::vector<double>& observed_dopplers,
                                const SystemDims& dims, const PilotConfig& cfg) {
    if (!capacity_check(dims.N, dims.kappa_max, cfg.Q))
        throw std::invalid_argument(
            "associate_users: overlapping user windows (capacity check fails)");
    UserAssociation out;
    out.per_user.resize(cfg.Q);
    for (int i = 0; i < static_cast<int>(observed_dopplers.size()); ++i) {
        const double obs = observed_dopplers[i];
        if (!(obs >= 0.0 && obs < dims.N))
            throw std::invalid_argument("associate_users: observed value in [0, N) violated");
        bool placed = false;
        for (int q = 0; q < cfg.Q && !placed; ++q) {
            const double d = wrap_to_centered(obs - doppler_index(q, dims.N, cfg.Q), dims.N);
            if (std::abs(d) <= dims.kappa_max) {
                out.per_user[q].push_back({i, d});
                placed = true;
            }
        }
        if (!placed) out.unassigned.emplace_back(i, obs);
    }
    return out;
}

}  // namespace ddest
