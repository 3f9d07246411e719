#include "rotor/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rotor::analysis {
namespace {

constexpr std::size_t kMinSamples = 32;

struct Range {
  std::size_t begin;  // first sample in the window
  std::size_t end;    // one past the last
};

Range window_range(const CrossSectionProfile& profile, Window window) {
  if (!(window.hi > window.lo)) throw AnalysisError("empty window");
  const auto& t = profile.thetas;
  const auto begin = static_cast<std::size_t>(
      std::lower_bound(t.begin(), t.end(), window.lo) - t.begin());
  const auto end = static_cast<std::size_t>(
      std::upper_bound(t.begin(), t.end(), window.hi) - t.begin());
  if (end <= begin) throw AnalysisError("no samples in window");
  return {begin, end};
}

}  // namespace

Extrema local_extrema(const CrossSectionProfile& profile, Window window) {
  if (profile.thetas.size() != profile.sigma.size()) {
    throw AnalysisError("profile theta and sigma lengths differ");
  }
  const auto [begin, end] = window_range(profile, window);
  const auto& s = profile.sigma;
  Extrema out;
  std::size_t i = begin;
  while (i < end) {
    // [i, j) is a run of equal samples.
    std::size_t j = i + 1;
    while (j < end && s[j] == s[i]) ++j;
    if (i > begin && j < end) {
      const std::size_t mid = i + (j - 1 - i) / 2;
      const Extremum e{mid, profile.thetas[mid], s[mid]};
      if (s[i - 1] < s[i] && s[j] < s[i]) out.maxima.push_back(e);
      if (s[i - 1] > s[i] && s[j] > s[i]) out.minima.push_back(e);
    }
    i = j;
  }
  return out;
}

double visibility(const CrossSectionProfile& profile, Window window) {
  const auto [begin, end] = window_range(profile, window);
  if (end - begin < kMinSamples) {
    throw AnalysisError("visibility needs at least " + std::to_string(kMinSamples) +
                        " samples in the window, got " + std::to_string(end - begin));
  }
  const auto ex = local_extrema(profile, window);
  if (ex.maxima.empty() || ex.minima.empty()) return 0.0;
  const auto by_sigma = [](const Extremum& a, const Extremum& b) { return a.sigma < b.sigma; };
  const double top = std::max_element(ex.maxima.begin(), ex.maxima.end(), by_sigma)->sigma;
  const double bottom = std::min_element(ex.minima.begin(), ex.minima.end(), by_sigma)->sigma;
  if (!(top + bottom > 0.0)) return 0.0;
  return (top - bottom) / (top + bottom);
}

double peak_spacing(const CrossSectionProfile& profile, double near_theta, int count) {
  if (count < 1) throw AnalysisError("peak_spacing needs count >= 1");
  if (profile.thetas.size() < 3) throw AnalysisError("profile too short");
  const Window all{profile.thetas.front(), profile.thetas.back()};
  auto maxima = local_extrema(profile, all).maxima;
  const auto needed = static_cast<std::size_t>(count) + 1;
  if (maxima.size() < needed) {
    const double span = profile.thetas.back() - profile.thetas.front();
    const double density = static_cast<double>(profile.thetas.size() - 1) / span;
    std::string msg = "resolved " + std::to_string(maxima.size()) + " local maxima, need " +
                      std::to_string(needed) + "; sample density is " +
                      std::to_string(density) + " per radian";
    if (maxima.size() >= 2) {
      const double spacing =
          (maxima.back().theta - maxima.front().theta) / static_cast<double>(maxima.size() - 1);
      msg += "; at least " + std::to_string(8.0 / spacing) + " per radian is required";
    } else {
      msg += "; the profile may have no secondary maxima, or needs at least " +
             std::to_string(2.0 * density) + " per radian";
    }
    throw AnalysisError(msg);
  }
  std::stable_sort(maxima.begin(), maxima.end(), [&](const Extremum& a, const Extremum& b) {
    return std::fabs(a.theta - near_theta) < std::fabs(b.theta - near_theta);
  });
  maxima.resize(needed);
  std::sort(maxima.begin(), maxima.end(),
            [](const Extremum& a, const Extremum& b) { return a.theta < b.theta; });
  return (maxima.back().theta - maxima.front().theta) / static_cast<double>(count);
}

double suppression_ratio(const CrossSectionProfile& with_internal,
                         const CrossSectionProfile& without, Window window) {
  if (with_internal.thetas != without.thetas) {
    throw AnalysisError("profiles must share the same theta grid");
  }
  const double reference = visibility(without, window);
  if (reference == 0.0) {
    throw AnalysisError("reference profile has zero visibility; ratio undefined");
  }
  return visibility(with_internal, window) / reference;
}

FringeReport fringe_report(const CrossSectionProfile& profile, Window window) {
  FringeReport out;
  out.window = window;
  out.visibility = visibility(profile, window);
  for (const auto& e : local_extrema(profile, window).maxima) out.peak_thetas.push_back(e.theta);
  if (out.peak_thetas.size() >= 2) {
    out.mean_spacing = (out.peak_thetas.back() - out.peak_thetas.front()) /
                       static_cast<double>(out.peak_thetas.size() - 1);
  }
  return out;
}

}  // namespace rotor::analysis
