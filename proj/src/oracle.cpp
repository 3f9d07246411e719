#include "rotor/oracle.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <type_traits>
#include <vector>

namespace rotor::oracle {
namespace {

using quad_t = __float128;

// Overloads so the quadrature can be written once for both precisions.
inline double exp_(double x) { return std::exp(x); }
inline double cos_(double x) { return std::cos(x); }
inline double sin_(double x) { return std::sin(x); }
inline quad_t exp_(quad_t x) { return expq(x); }
inline quad_t cos_(quad_t x) { return cosq(x); }
inline quad_t sin_(quad_t x) { return sinq(x); }

template <typename Real>
Real pi() {
  if constexpr (std::is_same_v<Real, quad_t>) {
    return M_PIq;
  } else {
    return std::numbers::pi;
  }
}

template <typename Real>
struct Cx {
  Real re;
  Real im;
};

// One trapezoid estimate with `intervals` panels per axis.
template <typename Real>
std::complex<double> ft_grid(const PeakShape& shape, double q_x, double q_y, double cutoff,
                             long intervals) {
  const Real width = shape.width();
  const Real half = Real(cutoff) * width;
  const Real h = Real(2) * half / Real(intervals);
  const auto n = static_cast<std::size_t>(intervals) + 1;

  const Real inv_w2 = Real(1) / (width * width);
  std::vector<Real> weight(n, Real(1));
  weight.front() = weight.back() = Real(0.5);
  std::vector<Real> s2(n);     // (x / width)^2 at each node
  std::vector<Real> decay(n);  // exp(-(x / width)^2)
  std::vector<Cx<Real>> phase_x(n), phase_y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Real pos = -half + Real(static_cast<double>(i)) * h;
    s2[i] = pos * pos * inv_w2;
    decay[i] = exp_(-s2[i]);
    const Real ax = -Real(q_x) * pos;
    const Real ay = -Real(q_y) * pos;
    phase_x[i] = {cos_(ax), sin_(ax)};
    phase_y[i] = {cos_(ay), sin_(ay)};
  }

  const Real strength = shape.strength();
  const bool polynomial = shape.variant() == PeakVariant::polynomial_gaussian;
  Real total_re = 0, total_im = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Real row_re = 0, row_im = 0;
    for (std::size_t j = 0; j < n; ++j) {
      // V(x, y) = V0 [1 - r^2/D^2] exp(-x^2/D^2) exp(-y^2/D^2)
      Real v = weight[j] * strength * decay[i] * decay[j];
      if (polynomial) v *= Real(1) - s2[i] - s2[j];
      row_re += v * phase_y[j].re;
      row_im += v * phase_y[j].im;
    }
    const Real wx = weight[i];
    total_re += wx * (row_re * phase_x[i].re - row_im * phase_x[i].im);
    total_im += wx * (row_re * phase_x[i].im + row_im * phase_x[i].re);
  }
  const Real norm = h * h / (Real(2) * pi<Real>());
  return {static_cast<double>(total_re * norm), static_cast<double>(total_im * norm)};
}

void check_start(const QuadratureSpec& quad) {
  if (quad.node_count < 64 || (quad.node_count & (quad.node_count - 1)) != 0) {
    throw std::invalid_argument("node_count must be a power of two >= 64");
  }
  if (!(quad.radial_cutoff > 0.0)) throw std::invalid_argument("radial_cutoff must be > 0");
}

}  // namespace

std::complex<double> ft_numeric(const PeakShape& shape, double q_x, double q_y,
                                const QuadratureSpec& quad) {
  check_start(quad);
  const auto estimate = [&](long intervals) {
    return quad.precision == Precision::extended
               ? ft_grid<quad_t>(shape, q_x, q_y, quad.radial_cutoff, intervals)
               : ft_grid<double>(shape, q_x, q_y, quad.radial_cutoff, intervals);
  };
  // Convergence is only accepted once the node spacing resolves the
  // oscillation plus the width of the form factor: 2 pi / h >= |q_i| + 20 / D.
  const double q_w = std::max(std::fabs(q_x), std::fabs(q_y)) * shape.width();
  const double min_intervals = (q_w + 20.0) * quad.radial_cutoff / std::numbers::pi;
  long intervals = quad.node_count;
  auto previous = estimate(intervals);
  const auto max_intervals = static_cast<long>(std::sqrt(static_cast<double>(quad.max_nodes)));
  while (2 * intervals <= max_intervals) {
    intervals *= 2;
    const auto current = estimate(intervals);
    if (intervals >= min_intervals && std::abs(current - previous) < quad.abs_tol) return current;
    previous = current;
  }
  throw OracleFailure("ft_numeric did not converge within " + std::to_string(quad.max_nodes) +
                      " grid points");
}

std::complex<double> ft_total_numeric(const PotentialSpec& spec, double q_x, double q_y,
                                      const QuadratureSpec& quad) {
  std::complex<double> total;
  for (const auto& peak : spec.peaks()) {
    const double phase = -q_x * peak.center_x;
    total += std::complex<double>(std::cos(phase), std::sin(phase)) *
             ft_numeric(peak.shape, q_x, q_y, quad);
  }
  return total;
}

std::complex<double> angular_integral(double k, double kappa, double theta, double alpha,
                                      int n, const QuadratureSpec& quad) {
  check_start(quad);
  const double a = kappa * alpha * std::sin(theta);
  const double b = (k - kappa * std::cos(theta)) * alpha;
  const auto estimate = [&](long nodes) {
    std::complex<double> sum;
    const double h = 2.0 * std::numbers::pi / static_cast<double>(nodes);
    for (long j = 0; j < nodes; ++j) {
      const double phi = h * static_cast<double>(j);
      const double c = std::cos(phi);
      const double s = std::sin(phi);
      // Atom at +alpha (cos phi, sin phi) and at -alpha.
      const double plus = n * phi - a * c + b * s;
      const double minus = n * phi + a * c - b * s;
      sum += std::complex<double>(std::cos(plus) + std::cos(minus),
                                  std::sin(plus) + std::sin(minus));
    }
    return sum * h;
  };
  // The integrand's Fourier content reaches |n| + sqrt(a^2 + b^2).
  const double min_nodes = std::abs(n) + std::hypot(a, b) + 32.0;
  long nodes = quad.node_count;
  auto previous = estimate(nodes);
  while (2 * nodes <= quad.max_nodes) {
    nodes *= 2;
    const auto current = estimate(nodes);
    if (nodes >= min_nodes && std::abs(current - previous) < quad.abs_tol) return current;
    previous = current;
  }
  throw OracleFailure("angular integral did not converge within " +
                      std::to_string(quad.max_nodes) + " nodes");
}

std::complex<double> matrix_element_quadrature(const PotentialSpec& spec,
                                               const Molecule& molecule, double k,
                                               double theta, int l_in, int l_out,
                                               double kappa, const QuadratureSpec& quad) {
  const double q_x = -kappa * std::sin(theta);
  const double q_y = k - kappa * std::cos(theta);
  const auto angular =
      angular_integral(k, kappa, theta, molecule.half_separation(), l_in - l_out, quad);
  const double inv = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi);
  return inv * angular * ft_total_numeric(spec, q_x, q_y, quad);
}

}  // namespace rotor::oracle
