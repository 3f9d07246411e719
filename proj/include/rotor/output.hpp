#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rotor/analysis.hpp"
#include "rotor/config.hpp"
#include "rotor/profile.hpp"
#include "rotor/validation.hpp"

namespace rotor::output {

/// 17 significant digits, "." decimal point; "nan", "inf", "-inf" otherwise.
std::string format_real(double v);

/// JSON text with every float written to 17 significant digits. Non-finite
/// floats become null. Object keys keep nlohmann's (sorted) order.
std::string dump_json(const nlohmann::json& doc, int indent = 2);

/// theta,sigma[,sigma_<l_in>_<l_out>...], LF line endings.
std::string profile_csv(const CrossSectionProfile& profile);

/// Header "theta" followed by one column per k; one row per theta.
std::string sweep_csv(const SweepMatrix& sweep);

nlohmann::json profile_json(const CrossSectionProfile& profile);
nlohmann::json sweep_json(const SweepMatrix& sweep);
nlohmann::json fringe_json(const analysis::FringeReport& report);
nlohmann::json check_json(const validation::CheckResult& result);

/// Line plot of one or more profiles sharing a theta axis.
std::string profiles_svg(const std::vector<const CrossSectionProfile*>& profiles,
                         const std::string& title);

/// Grey-scale map of log10(sigma) over (k, theta).
std::string sweep_svg(const SweepMatrix& sweep, const std::string& title);

}  // namespace rotor::output
