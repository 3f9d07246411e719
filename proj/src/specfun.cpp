#include "rotor/specfun.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace rotor::specfun {
namespace {

// exp(-800) is far below the smallest subnormal double.
constexpr double kNegligibleLog = -800.0;
constexpr double kRescaleAbove = 1e250;
constexpr double kRescaleFactor = 1e-250;

void check_argument(double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw std::domain_error("bessel_j: argument must be finite and >= 0, got " +
                            std::to_string(x));
  }
  if (x > kMaxBesselArgument) {
    throw std::domain_error("bessel_j: argument exceeds " +
                            std::to_string(kMaxBesselArgument));
  }
}

void check_order(long n) {
  if (std::labs(n) > kMaxBesselOrder) {
    throw std::out_of_range("bessel_j: |order| exceeds " +
                            std::to_string(kMaxBesselOrder));
  }
}

// Upper bound on log J_n(x) for n > x: J_n(n sech b) <= exp(n (tanh b - b)).
double log_bound(double n, double x) {
  const double ratio = n / x;
  double beta;
  double tanh_beta;
  if (ratio > 1e8) {
    beta = std::log(2.0 * n) - std::log(x);
    tanh_beta = 1.0;
  } else {
    beta = std::acosh(ratio);
    tanh_beta = std::tanh(beta);
  }
  return n * (tanh_beta - beta);
}

// First order above x whose bound is below kNegligibleLog.
long negligible_order(double x) {
  long lo = static_cast<long>(std::floor(x)) + 1;
  if (log_bound(static_cast<double>(lo), x) < kNegligibleLog) return lo;
  long step = 1;
  long hi = lo + step;
  while (log_bound(static_cast<double>(hi), x) >= kNegligibleLog) {
    lo = hi;
    step *= 2;
    hi = lo + step;
  }
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    if (log_bound(static_cast<double>(mid), x) < kNegligibleLog) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

std::vector<double> series_sequence(double x) {
  // Orders with (x/2)^n / n! underflowing are dropped.
  std::vector<double> out;
  const double half = 0.5 * x;
  const double quarter_sq = -half * half;
  double leading = 1.0;  // (x/2)^n / n!
  for (int n = 0;; ++n) {
    if (n > 0) leading *= half / n;
    if (leading == 0.0 || n > kMaxBesselOrder) break;
    CompensatedSum s;
    double term = 1.0;
    s.add(term);
    for (int k = 1; k < 200; ++k) {
      term *= quarter_sq / (static_cast<double>(k) * (n + k));
      s.add(term);
      if (std::fabs(term) < 1e-18 * std::fabs(s.value())) break;
    }
    out.push_back(leading * s.value());
  }
  return out;
}

std::vector<double> miller_sequence(double x) {
  const long start = negligible_order(x);
  std::vector<double> j(static_cast<std::size_t>(start) + 2, 0.0);
  j[static_cast<std::size_t>(start)] = 1.0;
  for (long n = start; n >= 1; --n) {
    const auto i = static_cast<std::size_t>(n);
    j[i - 1] = (2.0 * n / x) * j[i] - j[i + 1];
    if (std::fabs(j[i - 1]) > kRescaleAbove) {
      for (std::size_t m = i - 1; m <= static_cast<std::size_t>(start); ++m) {
        j[m] *= kRescaleFactor;
      }
    }
  }

  // J_0^2 + 2 sum J_n^2 = 1 fixes the magnitude; J_0 + 2 sum J_2k = 1 the sign.
  CompensatedSum squares;
  CompensatedSum evens;
  squares.add(j[0] * j[0]);
  evens.add(j[0]);
  for (std::size_t n = 1; n <= static_cast<std::size_t>(start); ++n) {
    squares.add(2.0 * j[n] * j[n]);
    if (n % 2 == 0) evens.add(2.0 * j[n]);
  }
  double scale = 1.0 / std::sqrt(squares.value());
  if (evens.value() < 0.0) scale = -scale;

  j.resize(static_cast<std::size_t>(start) + 1);
  for (double& v : j) v *= scale;
  while (j.size() > 1 && j.back() == 0.0) j.pop_back();
  return j;
}

// Canonical sequence J_0(x), J_1(x), ...; orders past the end are zero.
std::vector<double> sequence(double x) {
  if (x == 0.0) return {1.0};
  if (x <= 1.0) return series_sequence(x);
  return miller_sequence(x);
}

}  // namespace

double bessel_j(int n, double x) {
  check_argument(x);
  check_order(n);
  const auto seq = sequence(x);
  const auto order = static_cast<std::size_t>(std::abs(n));
  const double value = order < seq.size() ? seq[order] : 0.0;
  if (n < 0 && (order % 2 == 1)) return -value;
  return value;
}

std::vector<double> bessel_j_batch(BesselOrderRange range, double x) {
  check_argument(x);
  if (range.n_max < 0) {
    throw std::invalid_argument("bessel_j_batch: n_max must be >= 0");
  }
  check_order(range.n_max);
  auto seq = sequence(x);
  seq.resize(static_cast<std::size_t>(range.n_max) + 1, 0.0);
  return seq;
}

}  // namespace rotor::specfun
