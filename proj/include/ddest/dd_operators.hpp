#pragma once

#include "ddest/types.hpp"

namespace ddest {

// Steering vectors along the delay/Doppler grid dimensions. b_* carry the
// negative-exponent (delay) convention, v_* the positive (Doppler) one.

/// b_M(ell): entry m = exp(-j 2 pi m ell / M), length M.
VecC steering_delay(double ell, int M);

/// b_N(ell): entry n = exp(-j 2 pi n ell / (M N)), length N.
VecC steering_delay_interblock(double ell, int M, int N);

/// v_N(kappa): entry n = exp(+j 2 pi n kappa / N), length N.
VecC steering_doppler(double kappa, int N);

/// v_M(kappa): entry m = exp(+j 2 pi m kappa / (M N)), length M.
VecC steering_doppler_interblock(double kappa, int M, int N);

/// Diagonal of B^ell = diag(b_M(ell) kron b_N(ell)); at flat index
/// p = m*N + n it reduces to exp(-j 2 pi ell p / (M N)).
VecC delay_phase_diag(double ell, const SystemDims& dims);

/// Diagonal of Delta^kappa = diag(v_N(kappa) kron v_M(kappa)); at flat
/// index l = n*M + m it reduces to exp(+j 2 pi kappa l / (M N)).
VecC doppler_phase_diag(double kappa, const SystemDims& dims);

/// Fractional delay operator Pi^ell = F^H B^ell F (dense MN x MN).
/// Circulant; for integer ell it is the cyclic down-shift by ell samples.
MatC delay_operator(double ell, const SystemDims& dims);

/// Doppler shift operator Delta^kappa as a dense diagonal matrix.
MatC doppler_operator(double kappa, const SystemDims& dims);

/// Parametric channel matrix H = sum_i h_i Pi^{ell_i} Delta^{kappa_i}.
/// An empty path list yields the zero matrix.
MatC channel_matrix(const std::vector<DDPath>& paths, const SystemDims& dims);

/// Geometric phase sum S(x) = sum_{p=0}^{L-1} exp(j 2 pi x p / L).
/// Equals L when x is an integer multiple of L.
cplx geometric_phase_sum(double x, int L);

/// Frobenius inner product <Pi^{l1} Delta^{k1}, Pi^{l2} Delta^{k2}>_F
/// evaluated in closed form: S(-(l1-l2))/L * S(k1-k2) with L = M*N.
cplx operator_inner_product(double ell1, double kappa1, double ell2,
                            double kappa2, const SystemDims& dims);

}  // namespace ddest
