#include "ddest/gains.hpp"

#include <cmath>
#include <stdexcept>

#include "ddest/dd_operators.hpp"
#include "ddest/pilot.hpp"

namespace ddest {

VecC dictionary_atom(const PathEstimate& est, const VecC& spectrum,
                     const SystemDims& dims, const PilotConfig& pilot_cfg) {
    if (est.user < 0 || est.user >= pilot_cfg.Q)
        throw std::invalid_argument("dictionary_atom: user index out of range");
    const int kq = doppler_index(est.user, dims.N, pilot_cfg.Q);
    const VecC col = spectrum.cwiseProduct(steering_delay(est.delay, dims.M));
    const VecC row = steering_doppler(est.doppler + kq, dims.N);
    VecC atom(dims.grid_size());
    for (int n = 0; n < dims.N; ++n)
        for (int m = 0; m < dims.M; ++m) atom[n * dims.M + m] = col[m] * row[n];
    return atom;
}

GainSolve ls_gains(const TFPilotGrid& grid, std::vector<PathEstimate> estimates,
                   const SystemDims& dims, const PilotConfig& pilot_cfg) {
    if (estimates.empty()) throw std::invalid_argument("ls_gains: estimates nonempty violated");
    const int P = static_cast<int>(estimates.size());
    MatC psi(dims.grid_size(), P);
    for (int i = 0; i < P; ++i)
        psi.col(i) = dictionary_atom(estimates[i], grid.spectrum, dims, pilot_cfg);

    const Eigen::Map<const VecC> r(grid.grid.data(), grid.grid.size());
    Eigen::ColPivHouseholderQR<MatC> qr(psi);
    GainSolve out;
    const auto& R = qr.matrixR();
    const double r0 = std::abs(R(0, 0));
    const double rP = std::abs(R(P - 1, P - 1));
    if (!(rP > 0) || r0 / rP > 1e10) out.ill_posed = true;

    const VecC h = qr.solve(r);
    for (int i = 0; i < P; ++i) estimates[i].gain = h[i];
    out.estimates = std::move(estimates);
    return out;
}

}  // namespace ddest
