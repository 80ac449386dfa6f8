#pragma once

#include <string>

#include "ddest/sweep.hpp"
#include "ddest/types.hpp"

namespace ddest {

/// Parses the JSON configuration document (sections system, pilot, wmusic,
/// mp, sweep; every field optional with the documented defaults) and
/// validates all invariants.
SweepConfig parse_config(const std::string& json_text);

/// Loads and parses a configuration file. Throws std::runtime_error if the
/// file cannot be read.
SweepConfig load_config(const std::string& path);

std::string config_to_json(const SweepConfig& cfg);

/// Scenario round-trip document:
/// {M, N, Q, M_ZC, M_CP, zc_root, ell_max, kappa_max, users, seed}.
std::string scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const std::string& json_text);

/// Full single-trial dump: truth scenario, per-estimator estimates, matches
/// and flags.
std::string trial_report_to_json(const TrialReport& report);

}  // namespace ddest
