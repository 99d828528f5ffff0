#pragma once

#include "toric_plt/numeric.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace toric_plt {

enum class VerifyScope { Formulas, Charts, Duval, Terminality, All };

std::optional<VerifyScope> parse_scope(const std::string& s);
std::string to_string(VerifyScope s);

struct VerifyBounds {
  long r_max = 20;
  long param_max = 12;
  long alpha_max = 7;  // capped by param_max
  std::uint64_t seed = 0;
};

struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t instances = 0;
  std::string counterexample;  // first failure, empty on success
};

/// Runs the sweeps of the scope in a fixed order. Throws DomainError on
/// nonpositive bounds.
std::vector<CheckResult> run_checks(VerifyScope scope, const VerifyBounds& bounds);

}  // namespace toric_plt
