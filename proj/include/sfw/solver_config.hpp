#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "sfw/polytope.hpp"

namespace sfw {

enum class SolverKind { fw, afw, pfw, sfw, rsfw, sfw_p, rsfw_p };
/// constant is the fixed step of the SFW family: mu / (2 L n^2) for the
/// simplex solvers, mu / (2 L (n+1)^2 eta^2) for the polytope solvers.
enum class StepRule { simple, line_search, short_step, constant, backtracking };
enum class Accel { none, away, pairwise };
enum class WarmStart { off, halving, ratio };
enum class BoundPolicy { lmo, known_fstar, value };
enum class StopOn { bound_gap, fw_gap, either };

struct SolverConfig {
  std::string label;
  SolverKind solver = SolverKind::sfw;
  StepRule step_rule = StepRule::line_search;
  double rho = 2.0;
  double rho_prime = 2.0;
  BoundPolicy b0_policy = BoundPolicy::lmo;
  double b0_value = 0.0;
  double tol = 1e-6;
  std::size_t max_iter = 10000;
  /// Inner-iteration cap for the refined solvers; 0 means 10 * n.
  std::size_t inner_cap = 0;
  WarmStart warm_start = WarmStart::halving;
  Accel accel = Accel::none;
  std::uint64_t seed = 0;
  double tau1 = 2.0;
  double tau2 = 0.9;
  std::optional<double> L;
  std::optional<double> mu;
  std::optional<double> eta;
  bool inject_known_fstar = false;
  /// Defaults to fw_gap for FW/AFW/PFW and bound_gap otherwise.
  std::optional<StopOn> stop_on;
  /// Wall-clock budget in seconds; 0 disables it.
  double time_limit = 0.0;

  StopOn effective_stop() const;
  std::string display_name() const;
};

std::string to_string(SolverKind v);
std::string to_string(StepRule v);
std::string to_string(Accel v);
std::string to_string(WarmStart v);
std::string to_string(BoundPolicy v);
std::string to_string(StopOn v);

SolverKind parse_solver_kind(const std::string& s);
StepRule parse_step_rule(const std::string& s);
Accel parse_accel(const std::string& s);
WarmStart parse_warm_start(const std::string& s);
StopOn parse_stop_on(const std::string& s);

bool is_refined(SolverKind k);
bool is_simplex_only(SolverKind k);
bool is_sfw_family(SolverKind k);

/// Throws InvalidArgument for out-of-range parameters or a solver that does
/// not apply to the polytope family.
void validate(const SolverConfig& cfg, PolytopeKind polytope);

void to_json(nlohmann::json& j, const SolverConfig& cfg);
void from_json(const nlohmann::json& j, SolverConfig& cfg);

}  // namespace sfw
