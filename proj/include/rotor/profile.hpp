#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "rotor/model.hpp"

namespace rotor {

/// Runs body(i) for i in [0, count) on up to `threads` workers. Each index is
/// visited exactly once; callers write results by index, so output does not
/// depend on the thread count.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

/// sigma(theta) for one engine variant. Closed-form variants read their
/// parameters from the potential (see born::closed_form_params); the
/// structureless variant uses the rotor's reference convention (mass 2m,
/// doubled potential). The general engine also fills per-channel columns.
CrossSectionProfile compute_profile(EngineVariant variant, std::span<const double> thetas,
                                    const Molecule& molecule, const IncidentBeam& beam,
                                    const PotentialSpec& spec, unsigned threads = 1);

/// sigma over a theta x k grid, row-major [theta][k].
struct SweepMatrix {
  EngineVariant variant;
  std::vector<double> thetas;
  std::vector<double> ks;
  std::vector<std::vector<double>> sigma;
};

SweepMatrix compute_sweep(EngineVariant variant, std::span<const double> thetas,
                          std::span<const double> ks, const Molecule& molecule,
                          const IncidentBeam& beam, const PotentialSpec& spec,
                          unsigned threads = 1);

}  // namespace rotor
