#pragma once

#include <complex>
#include <stdexcept>

#include "rotor/model.hpp"

// Brute-force quadrature references for the closed forms. Nothing here uses
// the Bessel routines, the analytic form factors or the Born engines.
namespace rotor::oracle {

enum class Precision {
  standard,  // double
  extended,  // __float128 node values and accumulation
};

struct QuadratureSpec {
  int node_count = 64;         // starting number of trapezoid intervals, power of two >= 64
  double radial_cutoff = 12.0;  // half-width of the 2D integration square in units of width
  double abs_tol = 1e-12;
  /// Node budget: 2^20 for the angular rule, and 2^20 grid points in total
  /// (1024 per axis) for the 2D rule.
  long max_nodes = 1L << 20;
  Precision precision = Precision::extended;
};

/// Thrown when doubling reaches the node budget without converging.
class OracleFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (1/2pi) Int d^2r exp(-i (q_x x + q_y y)) V(x, y) for one peak at the
/// origin, by the tensor-product trapezoid rule on a square of half-width
/// radial_cutoff * width, doubling the grid until successive estimates
/// differ by less than abs_tol.
std::complex<double> ft_numeric(const PeakShape& shape, double q_x, double q_y,
                                const QuadratureSpec& quad = {});

/// Sum over peaks of exp(-i q_x c_j) ft_numeric(shape_j, q).
std::complex<double> ft_total_numeric(const PotentialSpec& spec, double q_x, double q_y,
                                      const QuadratureSpec& quad = {});

/// <kappa u_hat, l_out | V | k y_hat, l_in> from the angular integral over the
/// rotor orientation, summed over both atoms (displacements +-alpha):
///   (1/(2pi)^2) V~(q) sum_{+-} Int_0^2pi dphi exp(i n phi)
///        exp(-+i kappa alpha sin(theta) cos(phi)) exp(+-i (k - kappa cos(theta)) alpha sin(phi))
/// with n = l_in - l_out, the periodic trapezoid rule, and V~ from
/// ft_total_numeric.
std::complex<double> matrix_element_quadrature(const PotentialSpec& spec,
                                               const Molecule& molecule, double k,
                                               double theta, int l_in, int l_out,
                                               double kappa, const QuadratureSpec& quad = {});

/// Only the angular part: sum over both atoms of the phi integral.
std::complex<double> angular_integral(double k, double kappa, double theta, double alpha,
                                      int n, const QuadratureSpec& quad = {});

}  // namespace rotor::oracle
