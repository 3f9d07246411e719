#pragma once

#include <vector>

namespace rotor::specfun {

/// Largest |n| accepted by the Bessel routines.
inline constexpr int kMaxBesselOrder = 20000;

/// Largest argument accepted; the recurrence length grows linearly with x.
inline constexpr double kMaxBesselArgument = 1e6;

struct BesselOrderRange {
  int n_max = 0;
};

/// Integer-order Bessel function of the first kind J_n(x), x >= 0.
///
/// Small arguments (x <= 1) use the ascending series; larger arguments use
/// Miller's downward recurrence normalized with J_0^2 + 2 sum J_n^2 = 1. The
/// whole order sequence for a given x is computed one canonical way, so
/// bessel_j(n, x) and bessel_j_batch({m}, x)[n] agree bit for bit.
///
/// Throws std::domain_error for negative, non-finite or too large x and
/// std::out_of_range for |n| > kMaxBesselOrder.
double bessel_j(int n, double x);

/// J_0(x) .. J_{n_max}(x).
std::vector<double> bessel_j_batch(BesselOrderRange range, double x);

}  // namespace rotor::specfun
