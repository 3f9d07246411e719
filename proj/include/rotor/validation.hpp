#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rotor/model.hpp"

namespace rotor::validation {

struct CheckResult {
  std::string name;
  double worst_relative = 0.0;
  double worst_absolute = 0.0;
  double rel_tol = 0.0;
  double abs_tol = 0.0;
  std::size_t samples = 0;
  std::size_t failures = 0;
  bool passed = true;
  std::string detail;  // first failing sample, or an error message
};

/// Accumulates sample deviations. A sample passes when its relative
/// deviation is within rel_tol, or its absolute deviation within abs_tol.
class Tally {
 public:
  Tally(std::string name, double rel_tol, double abs_tol);

  void compare(double expected, double actual, const std::string& where);
  void compare(std::complex<double> expected, std::complex<double> actual,
               const std::string& where);
  /// Pass/fail sample with no numeric deviation.
  void require(bool ok, const std::string& where);
  void fail(const std::string& why);
  /// Records precomputed deviations; abs_allowed = false disables the
  /// absolute tolerance for this sample.
  void add(double abs_dev, double rel_dev, const std::string& where, bool abs_allowed = true);

  CheckResult result() const { return result_; }

 private:
  CheckResult result_;
};

using MatrixElementFn = std::function<std::complex<double>(
    const PotentialSpec&, const Molecule&, double k, double theta, int l_in, int l_out,
    double kappa)>;

struct MatrixElementDraw {
  double k;
  double theta;
  double alpha;
  double width;
  double separation;
  PeakVariant left;   // shape at -separation
  PeakVariant right;  // shape at +separation
  int l_in;
  int l_out;
  double kappa;
};

/// Deterministic draws (mt19937_64 seeded with `seed`) over k in [0.5, 5],
/// theta in [0.05, 3], alpha and width in [0.5, 3], |l_in - l_out| in {0, 2, 4},
/// both peak shapes; only open channels are kept.
std::vector<MatrixElementDraw> matrix_element_draws(std::size_t count, std::uint64_t seed = 20240611);

CheckResult check_bessel();
CheckResult check_ft(unsigned threads = 1);
CheckResult check_matrix_element(const MatrixElementFn& fn, std::size_t draws = 500,
                                 unsigned threads = 1);
CheckResult check_matrix_element(std::size_t draws = 500, unsigned threads = 1);
CheckResult check_specialization(unsigned threads = 1);
CheckResult check_structureless_limit(unsigned threads = 1);
CheckResult check_decoupling(unsigned threads = 1);
CheckResult check_parity_threshold();

/// Names accepted by run_checks: bessel, ft, matrix-element, specialization,
/// structureless-limit, decoupling, parity-threshold.
const std::vector<std::string>& check_names();

/// Runs the named checks in canonical order (all when `only` is empty).
/// Throws std::invalid_argument for an unknown name.
std::vector<CheckResult> run_checks(const std::vector<std::string>& only, unsigned threads = 1);

}  // namespace rotor::validation
