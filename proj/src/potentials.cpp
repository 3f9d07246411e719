#include "rotor/potentials.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rotor::potentials {
namespace {

struct SinCos {
  double sin;
  double cos;
};

// sin and cos of a * b, with the rounding error of the product folded back in.
SinCos sincos_product(double a, double b) {
  const double p = a * b;
  const double e = std::fma(a, b, -p);
  const double s = std::sin(p);
  const double c = std::cos(p);
  return {s + c * e, c - s * e};
}

}  // namespace

double ft_peak(const PeakShape& shape, double q_mag) {
  const double w = shape.width();
  const double qw = q_mag * w;
  const double envelope = std::exp(-0.25 * qw * qw);
  switch (shape.variant()) {
    case PeakVariant::gaussian:
      return 0.5 * shape.strength() * w * w * envelope;
    case PeakVariant::polynomial_gaussian:
      return 0.125 * shape.strength() * qw * qw * w * w * envelope;
  }
  return 0.0;
}

std::complex<double> ft_total(const PotentialSpec& spec, double q_x, double q_y) {
  const double q_mag = std::hypot(q_x, q_y);
  // Neumaier accumulation of both components.
  double re = 0.0, re_c = 0.0, im = 0.0, im_c = 0.0;
  const auto add = [](double& s, double& c, double v) {
    const double t = s + v;
    c += std::fabs(s) >= std::fabs(v) ? (s - t) + v : (v - t) + s;
    s = t;
  };
  for (const auto& peak : spec.canonical_peaks()) {
    const double amplitude = ft_peak(peak.shape, q_mag);
    // exp(-i q_x c)
    const auto phase = sincos_product(q_x, peak.center_x);
    add(re, re_c, amplitude * phase.cos);
    add(im, im_c, -amplitude * phase.sin);
  }
  return {re + re_c, im + im_c};
}

double dirichlet_amplitude(double x, int n) {
  if (n < 0) throw std::invalid_argument("dirichlet_amplitude: N must be >= 0");
  const double m = 2.0 * n + 1.0;
  const double denom = std::sin(0.5 * x);
  if (std::fabs(denom) >= 1e-8) return std::sin(0.5 * m * x) / denom;
  const double eps = x - 2.0 * std::numbers::pi * std::nearbyint(x / (2.0 * std::numbers::pi));
  const double e2 = eps * eps;
  const double m2 = m * m;
  return m * (1.0 - (m2 - 1.0) * e2 / 24.0 + (m2 - 1.0) * (3.0 * m2 - 7.0) * e2 * e2 / 5760.0);
}

double dirichlet_amplitude(double s, double d, int n) {
  const double x = s * d;
  const double x_lo = std::fma(s, d, -x);
  if (n < 0) throw std::invalid_argument("dirichlet_amplitude: N must be >= 0");
  const double m = 2.0 * n + 1.0;
  const double half = 0.5 * x;
  const double denom = std::sin(half) + std::cos(half) * (0.5 * x_lo);
  if (std::fabs(denom) < 1e-8) return dirichlet_amplitude(x, n);
  const double a = m * x;
  const double a_lo = std::fma(m, x, -a) + m * x_lo;
  return (std::sin(0.5 * a) + std::cos(0.5 * a) * (0.5 * a_lo)) / denom;
}

PotentialSpec make_grating(int n, double d, const PeakShape& shape) {
  if (n < 0) throw std::invalid_argument("make_grating: N must be >= 0");
  if (!std::isfinite(d) || d <= 0.0) throw std::invalid_argument("make_grating: d must be > 0");
  std::vector<Peak> peaks;
  peaks.reserve(2 * static_cast<std::size_t>(n) + 1);
  for (int j = -n; j <= n; ++j) peaks.push_back({j * d, shape});
  return PotentialSpec(std::move(peaks));
}

}  // namespace rotor::potentials
