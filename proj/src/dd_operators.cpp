#include "ddest/dd_operators.hpp"

#include <cmath>
#include <stdexcept>

namespace ddest {

namespace {

VecC phase_ramp(double step, int len) {
    VecC v(len);
    for (int k = 0; k < len; ++k) v[k] = std::polar(1.0, step * k);
    return v;
}

}  // namespace

VecC steering_delay(double ell, int M) {
    if (M < 1) throw std::invalid_argument("steering_delay: M >= 1 violated");
    return phase_ramp(-kTwoPi * ell / M, M);
}

VecC steering_delay_interblock(double ell, int M, int N) {
    if (M < 1 || N < 1)
        throw std::invalid_argument("steering_delay_interblock: M,N >= 1 violated");
    return phase_ramp(-kTwoPi * ell / (static_cast<double>(M) * N), N);
}

VecC steering_doppler(double kappa, int N) {
    if (N < 1) throw std::invalid_argument("steering_doppler: N >= 1 violated");
    return phase_ramp(kTwoPi * kappa / N, N);
}

VecC steering_doppler_interblock(double kappa, int M, int N) {
    if (M < 1 || N < 1)
        throw std::invalid_argument("steering_doppler_interblock: M,N >= 1 violated");
    return phase_ramp(kTwoPi * kappa / (static_cast<double>(M) * N), M);
}

VecC delay_phase_diag(double ell, const SystemDims& dims) {
    dims.validate();
    // kron(b_M, b_N)[m*N + n] collapses to a single ramp in p = m*N + n.
    return phase_ramp(-kTwoPi * ell / dims.grid_size(), dims.grid_size());
}

VecC doppler_phase_diag(double kappa, const SystemDims& dims) {
    dims.validate();
    // kron(v_N, v_M)[n*M + m] collapses to a single ramp in l = n*M + m.
    return phase_ramp(kTwoPi * kappa / dims.grid_size(), dims.grid_size());
}

cplx geometric_phase_sum(double x, int L) {
    const double r = x - L * std::round(x / L);
    if (std::abs(r) < 1e-12) return cplx(L, 0.0);
    const cplx num = 1.0 - std::polar(1.0, kTwoPi * x);
    const cplx den = 1.0 - std::polar(1.0, kTwoPi * x / L);
    return num / den;
}

MatC delay_operator(double ell, const SystemDims& dims) {
    dims.validate();
    const int L = dims.grid_size();
    // Pi^ell = F^H diag(ramp) F is circulant: Pi[a,b] = c[(a-b) mod L]
    // with c[d] = S(d - ell) / L.
    VecC c(L);
    for (int d = 0; d < L; ++d) c[d] = geometric_phase_sum(d - ell, L) / static_cast<double>(L);
    MatC P(L, L);
    for (int b = 0; b < L; ++b)
        for (int a = 0; a < L; ++a) P(a, b) = c[(a - b + L) % L];
    return P;
}

MatC doppler_operator(double kappa, const SystemDims& dims) {
    return MatC(doppler_phase_diag(kappa, dims).asDiagonal());
}

MatC channel_matrix(const std::vector<DDPath>& paths, const SystemDims& dims) {
    dims.validate();
    const int L = dims.grid_size();
    MatC H = MatC::Zero(L, L);
    VecC c(L);
    for (const DDPath& p : paths) {
        for (int d = 0; d < L; ++d)
            c[d] = geometric_phase_sum(d - p.delay, L) / static_cast<double>(L);
        const VecC dop = doppler_phase_diag(p.doppler, dims);
        // H += h * Pi^ell * Delta^kappa; the Doppler diagonal scales columns.
        for (int b = 0; b < L; ++b) {
            const cplx s = p.gain * dop[b];
            cplx* col = H.col(b).data();
            // rows a >= b use c[a-b], rows a < b wrap to c[L+a-b]
            for (int a = b; a < L; ++a) col[a] += s * c[a - b];
            for (int a = 0; a < b; ++a) col[a] += s * c[L + a - b];
        }
    }
    return H;
}

cplx operator_inner_product(double ell1, double kappa1, double ell2,
                            double kappa2, const SystemDims& dims) {
    const int L = dims.grid_size();
    return geometric_phase_sum(-(ell1 - ell2), L) / static_cast<double>(L) *
           geometric_phase_sum(kappa1 - kappa2, L);
}

}  // namespace ddest
