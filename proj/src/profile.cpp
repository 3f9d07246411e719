#include "rotor/profile.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "rotor/born.hpp"
#include "rotor/kinematics.hpp"

namespace rotor {

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(threads, 1u), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

namespace {

void require_ascending(std::span<const double> thetas) {
  if (thetas.empty()) throw std::invalid_argument("theta grid is empty");
  for (std::size_t i = 1; i < thetas.size(); ++i) {
    if (!(thetas[i] > thetas[i - 1])) {
      throw std::invalid_argument("theta grid must be strictly ascending");
    }
  }
}

}  // namespace

CrossSectionProfile compute_profile(EngineVariant variant, std::span<const double> thetas,
                                    const Molecule& molecule, const IncidentBeam& beam,
                                    const PotentialSpec& spec, unsigned threads) {
  require_ascending(thetas);
  CrossSectionProfile out{{thetas.begin(), thetas.end()},
                          std::vector<double>(thetas.size(), 0.0),
                          {},
                          {},
                          {molecule, beam, spec, variant}};
  const double k = beam.wavenumber();

  switch (variant) {
    case EngineVariant::general: {
      for (const auto& ch : kinematics::open_channels(beam, molecule, false)) {
        out.channels.push_back({ch.l_in, ch.l_out});
      }
      out.per_channel.assign(out.channels.size(), std::vector<double>(thetas.size(), 0.0));
      parallel_for(thetas.size(), threads, [&](std::size_t i) {
        const auto xs = born::cross_section_general(thetas[i], molecule, beam, spec);
        out.sigma[i] = xs.sigma;
        for (std::size_t c = 0; c < xs.channels.size(); ++c) {
          out.per_channel[c][i] = xs.channels[c].sigma;
        }
      });
      break;
    }
    case EngineVariant::structureless: {
      const auto doubled = spec.scaled(2.0);
      const double mass = 2.0 * molecule.atom_mass();
      parallel_for(thetas.size(), threads, [&](std::size_t i) {
        out.sigma[i] = born::cross_section_structureless(thetas[i], mass, k, doubled);
      });
      break;
    }
    default: {
      const auto params = born::closed_form_params(variant, molecule, beam, spec);
      parallel_for(thetas.size(), threads, [&](std::size_t i) {
        out.sigma[i] = born::cross_section_closed(variant, thetas[i], params);
      });
      break;
    }
  }
  return out;
}

SweepMatrix compute_sweep(EngineVariant variant, std::span<const double> thetas,
                          std::span<const double> ks, const Molecule& molecule,
                          const IncidentBeam& beam, const PotentialSpec& spec,
                          unsigned threads) {
  if (ks.empty()) throw std::invalid_argument("sweep needs at least one k");
  SweepMatrix out{variant,
                  {thetas.begin(), thetas.end()},
                  {ks.begin(), ks.end()},
                  std::vector<std::vector<double>>(thetas.size(), std::vector<double>(ks.size()))};
  for (std::size_t j = 0; j < ks.size(); ++j) {
    const auto column =
        compute_profile(variant, thetas, molecule, beam.with_wavenumber(ks[j]), spec, threads);
    for (std::size_t i = 0; i < thetas.size(); ++i) out.sigma[i][j] = column.sigma[i];
  }
  return out;
}

}  // namespace rotor
