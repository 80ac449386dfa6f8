#pragma once

#include "ddest/types.hpp"

namespace ddest {

/// Samples of a function on the unit circle at strictly increasing angles.
struct UnitCircleSamples {
    VecD angles;  // phi_m in [-pi, pi), strictly increasing
    VecC values;  // d_m
};

/// Laurent polynomial sum_{g=-G}^{G} f_g z^g; coeffs[k] stores f_{k-G}.
struct FourierPoly {
    VecC coeffs;  // length 2G+1
    int G = 0;
};

/// Q_sample uniformly spaced angles over [-pi, pi).
VecD uniform_circle_angles(int q_sample);

/// Weighted least-squares Fourier fit of the samples with weight
/// 1/(|d_m| + eps), eps = eps_rel * max_m |d_m|. Requires >= 2G+1 samples.
FourierPoly wls_fourier_fit(const UnitCircleSamples& samples, int G, double eps_rel);

/// All roots of z^G * sum_g f_g z^g via the companion matrix of the
/// degree-2G standard polynomial. Negligible leading coefficients
/// (relative threshold 1e-12) are trimmed first. A constant polynomial
/// has no roots; an all-zero polynomial is rejected.
std::vector<cplx> laurent_roots(const VecC& coeffs, int G);

struct RootSelection {
    std::vector<cplx> roots;
    bool shortfall = false;           // fewer inside roots than requested
    bool separation_relaxed = false;  // angle separation dropped to fill count
};

/// From all roots keeps those inside the unit circle, sorted by closeness
/// to the circle, greedily enforcing a minimum angular separation; relaxes
/// the separation if it cannot fill `count`, and flags a shortfall when
/// fewer than `count` inside roots exist at all.
RootSelection select_inside_roots(const std::vector<cplx>& roots, int count,
                                  double min_angle_sep);

}  // namespace ddest
