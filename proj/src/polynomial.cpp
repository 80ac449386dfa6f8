#include "ddest/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ddest {

VecD uniform_circle_angles(int q_sample) {
    VecD phi(q_sample);
    for (int m = 0; m < q_sample; ++m) phi[m] = -kPi + kTwoPi * m / q_sample;
    return phi;
}

FourierPoly wls_fourier_fit(const UnitCircleSamples& samples, int G, double eps_rel) {
    const int n = static_cast<int>(samples.angles.size());
    const int width = 2 * G + 1;
    if (samples.values.size() != n)
        throw std::invalid_argument("wls_fourier_fit: angles/values length mismatch");
    if (n < width)
        throw std::invalid_argument("wls_fourier_fit: Q_sample >= 2G+1 violated");
    for (int m = 1; m < n; ++m)
        if (!(samples.angles[m] > samples.angles[m - 1]))
            throw std::invalid_argument("wls_fourier_fit: angles strictly increasing violated");

    const double dmax = samples.values.cwiseAbs().maxCoeff();
    const double eps = eps_rel * dmax;
    // weighted system: sqrt(gamma_m) * (Phi f - d), gamma_m = 1/(|d_m| + eps)
    MatC A(n, width);
    VecC b(n);
    for (int m = 0; m < n; ++m) {
        const double w = std::sqrt(1.0 / (std::abs(samples.values[m]) + eps));
        for (int k = 0; k < width; ++k)
            A(m, k) = w * std::polar(1.0, samples.angles[m] * (k - G));
        b[m] = w * samples.values[m];
    }
    Eigen::ColPivHouseholderQR<MatC> qr(A);
    if (qr.rank() < width)
        throw std::runtime_error("wls_fourier_fit: ill-conditioned normal matrix");
    FourierPoly out;
    out.G = G;
    out.coeffs = qr.solve(b);
    return out;
}

std::vector<cplx> laurent_roots(const VecC& coeffs, int G) {
    if (coeffs.size() != 2 * G + 1)
        throw std::invalid_argument("laurent_roots: coefficient length != 2G+1");
    const double cmax = coeffs.cwiseAbs().maxCoeff();
    if (cmax == 0.0) throw std::invalid_argument("laurent_roots: all-zero polynomial");

    // z^G * sum_g f_g z^g has standard coefficients a_k = f_{k-G}, k = 0..2G.
    int hi = 2 * G;
    while (hi > 0 && std::abs(coeffs[hi]) < 1e-12 * cmax) --hi;
    // z = 0 roots are artifacts of the z^G lift, not Laurent roots
    int lo = 0;
    while (lo < hi && std::abs(coeffs[lo]) < 1e-12 * cmax) ++lo;
    const int deg = hi - lo;
    if (deg == 0) return {};

    MatC companion = MatC::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -coeffs[lo + i] / coeffs[hi];
    Eigen::ComplexEigenSolver<MatC> es(companion, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("laurent_roots: eigenvalue iteration failed");
    const VecC ev = es.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

RootSelection select_inside_roots(const std::vector<cplx>& roots, int count,
                                  double min_angle_sep) {
    if (count < 1) throw std::invalid_argument("select_inside_roots: count >= 1 violated");
    std::vector<cplx> inside;
    for (const cplx& z : roots)
        if (std::abs(z) < 1.0) inside.push_back(z);
    std::stable_sort(inside.begin(), inside.end(), [](const cplx& a, const cplx& b) {
        return 1.0 - std::abs(a) < 1.0 - std::abs(b);
    });

    auto pick = [&](double sep) {
        std::vector<cplx> kept;
        for (const cplx& z : inside) {
            if (static_cast<int>(kept.size()) == count) break;
            bool clear = true;
            for (const cplx& k : kept)
                if (std::abs(wrap_to_centered(std::arg(z) - std::arg(k), kTwoPi)) < sep) {
                    clear = false;
                    break;
                }
            if (clear) kept.push_back(z);
        }
        return kept;
    };

    RootSelection sel;
    sel.roots = pick(min_angle_sep);
    if (static_cast<int>(sel.roots.size()) < count && min_angle_sep > 0.0) {
        sel.roots = pick(0.0);
        sel.separation_relaxed = true;
    }
    if (static_cast<int>(sel.roots.size()) < count) sel.shortfall = true;
    return sel;
}

}  // namespace ddest
