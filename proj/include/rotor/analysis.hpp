#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rotor/model.hpp"

namespace rotor::analysis {

struct Window {
  double lo;
  double hi;
};

class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Extremum {
  std::size_t index;
  double theta;
  double sigma;
};

struct Extrema {
  std::vector<Extremum> maxima;
  std::vector<Extremum> minima;
};

/// Strict local extrema of the sampled profile inside the window, by 3-point
/// comparison. A plateau of equal samples counts once, at its midpoint.
/// Samples on the window boundary never qualify.
Extrema local_extrema(const CrossSectionProfile& profile, Window window);

/// (sigma_max - sigma_min) / (sigma_max + sigma_min) from the largest
/// interior local maximum and the smallest interior local minimum; 0 when
/// the window holds no interior maximum or no interior minimum.
/// Needs at least 32 samples in the window.
double visibility(const CrossSectionProfile& profile, Window window);

/// Mean spacing of the count+1 local maxima closest to near_theta.
/// Throws AnalysisError when fewer maxima are resolved, quoting the sample
/// density needed.
double peak_spacing(const CrossSectionProfile& profile, double near_theta, int count);

/// visibility(with_internal) / visibility(without) on a shared theta grid.
double suppression_ratio(const CrossSectionProfile& with_internal,
                         const CrossSectionProfile& without, Window window);

struct FringeReport {
  double visibility = 0.0;
  std::vector<double> peak_thetas;
  double mean_spacing = 0.0;  // 0 when fewer than two maxima
  Window window{0.0, 0.0};
};

FringeReport fringe_report(const CrossSectionProfile& profile, Window window);

}  // namespace rotor::analysis
