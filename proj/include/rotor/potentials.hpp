#pragma once

#include <complex>

#include "rotor/model.hpp"

namespace rotor::potentials {

/// Fourier transform of one peak centred at the origin, with the convention
///   V~(q) = (1/2pi) Int d^2r exp(-i q.r) V(r).
///   gaussian:            (V0 D^2 / 2) exp(-(q D)^2 / 4)
///   polynomial_gaussian: (V0 q^2 D^4 / 8) exp(-(q D)^2 / 4)
double ft_peak(const PeakShape& shape, double q_mag);

/// Sum over peaks of exp(-i q_x c_j) ft_peak(shape_j, |q|), accumulated in
/// the canonical peak order, so any permutation of the peak list
/// gives identical bits.
std::complex<double> ft_total(const PotentialSpec& spec, double q_x, double q_y);

/// sin((2N+1) x / 2) / sin(x / 2), with the removable singularity at
/// x = 0 (mod 2 pi) taken from a Taylor expansion.
double dirichlet_amplitude(double x, int n);

/// dirichlet_amplitude(s * d, n), with the product s * d carried to twice
/// working precision.
double dirichlet_amplitude(double s, double d, int n);

/// 2N+1 copies of shape centred at j d, j = -N..N.
PotentialSpec make_grating(int n, double d, const PeakShape& shape);

}  // namespace rotor::potentials
