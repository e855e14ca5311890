#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace thomae {

enum class errc {
  duplicate_branch_point,
  bad_shape,
  shape_mismatch,
  same_point,
  branch_point_evaluation,
  unsupported_factor,
  clearance_violation,
  step_underflow,
  rank_deficiency,
  ill_conditioned,
  quadrature_failure,
  not_positive_definite,
  truncation_overflow,
  near_vanishing,
  coincident_points,
  path_clearance,
  fit_diverged,
  basis_jump,
  path_collision,
  invalid_input,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

/// Curve validation collects every violated invariant before throwing.
class ValidationError : public Error {
public:
  ValidationError(errc code, std::vector<std::string> violations)
      : Error(code, join(violations)), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) {
      if (!s.empty()) s += "; ";
      s += x;
    }
    return s;
  }
  std::vector<std::string> violations_;
};

}  // namespace thomae
