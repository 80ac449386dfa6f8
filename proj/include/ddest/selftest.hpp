#pragma once

#include <functional>
#include <string>

namespace ddest {

/// Runs the operator/unit invariant battery (operator unitarity and shift
/// reduction, ZC correlation, association round trip, subspace and LS
/// orthogonality, assignment optimality, sweep determinism). Reports one
/// line per check through `emit` and returns the number of failures.
int run_selftest(const std::function<void(const std::string&)>& emit);

}  // namespace ddest
