#include "sfw/solver_config.hpp"

#include <cmath>

namespace sfw {

namespace {

template <typename E, std::size_t N>
E parse_enum(const std::string& s, const std::pair<const char*, E> (&table)[N], const char* what) {
  for (const auto& [name, value] : table) {
    if (s == name) return value;
  }
  throw InvalidArgument(std::string("unknown ") + what + ": " + s);
}

template <typename E, std::size_t N>
std::string enum_name(E v, const std::pair<const char*, E> (&table)[N]) {
  for (const auto& [name, value] : table) {
    if (v == value) return name;
  }
  return "unknown";
}

const std::pair<const char*, SolverKind> kSolvers[] = {
    {"fw", SolverKind::fw},     {"afw", SolverKind::afw},   {"pfw", SolverKind::pfw},
    {"sfw", SolverKind::sfw},   {"rsfw", SolverKind::rsfw}, {"sfw_p", SolverKind::sfw_p},
    {"rsfw_p", SolverKind::rsfw_p}};
const std::pair<const char*, StepRule> kRules[] = {{"simple", StepRule::simple},
                                                   {"line_search", StepRule::line_search},
                                                   {"short", StepRule::short_step},
                                                   {"constant", StepRule::constant},
                                                   {"backtracking", StepRule::backtracking}};
const std::pair<const char*, Accel> kAccel[] = {
    {"none", Accel::none}, {"away", Accel::away}, {"pairwise", Accel::pairwise}};
const std::pair<const char*, WarmStart> kWarm[] = {
    {"off", WarmStart::off}, {"halving", WarmStart::halving}, {"ratio", WarmStart::ratio}};
const std::pair<const char*, BoundPolicy> kBound[] = {
    {"lmo", BoundPolicy::lmo}, {"known_fstar", BoundPolicy::known_fstar}, {"value", BoundPolicy::value}};
const std::pair<const char*, StopOn> kStop[] = {
    {"bound_gap", StopOn::bound_gap}, {"fw_gap", StopOn::fw_gap}, {"either", StopOn::either}};

}  // namespace

std::string to_string(SolverKind v) { return enum_name(v, kSolvers); }
std::string to_string(StepRule v) { return enum_name(v, kRules); }
std::string to_string(Accel v) { return enum_name(v, kAccel); }
std::string to_string(WarmStart v) { return enum_name(v, kWarm); }
std::string to_string(BoundPolicy v) { return enum_name(v, kBound); }
std::string to_string(StopOn v) { return enum_name(v, kStop); }

SolverKind parse_solver_kind(const std::string& s) { return parse_enum(s, kSolvers, "solver"); }
StepRule parse_step_rule(const std::string& s) { return parse_enum(s, kRules, "step rule"); }
Accel parse_accel(const std::string& s) { return parse_enum(s, kAccel, "acceleration"); }
WarmStart parse_warm_start(const std::string& s) { return parse_enum(s, kWarm, "warm start"); }
StopOn parse_stop_on(const std::string& s) { return parse_enum(s, kStop, "stop criterion"); }

bool is_refined(SolverKind k) { return k == SolverKind::rsfw || k == SolverKind::rsfw_p; }
bool is_simplex_only(SolverKind k) { return k == SolverKind::sfw || k == SolverKind::rsfw; }
bool is_sfw_family(SolverKind k) {
  return k == SolverKind::sfw || k == SolverKind::rsfw || k == SolverKind::sfw_p ||
         k == SolverKind::rsfw_p;
}

StopOn SolverConfig::effective_stop() const {
  if (stop_on) return *stop_on;
  return is_sfw_family(solver) ? StopOn::bound_gap : StopOn::fw_gap;
}

std::string SolverConfig::display_name() const {
  if (!label.empty()) return label;
  std::string name = to_string(solver);
  if (accel != Accel::none) name += "-" + to_string(accel);
  return name + "-" + to_string(step_rule);
}

void validate(const SolverConfig& cfg, PolytopeKind polytope) {
  if (is_simplex_only(cfg.solver) && polytope != PolytopeKind::simplex) {
    throw InvalidArgument(to_string(cfg.solver) + " requires the unit simplex");
  }
  if (is_refined(cfg.solver) && !(cfg.rho > 1.0)) throw InvalidArgument("rho must exceed 1");
  if (!(cfg.rho_prime > 1.0)) throw InvalidArgument("rho_prime must exceed 1");
  if (!(cfg.tol >= 0.0)) throw InvalidArgument("tol must be nonnegative");
  if (!(cfg.tau1 > 1.0)) throw InvalidArgument("tau1 must exceed 1");
  if (!(cfg.tau2 > 0.0 && cfg.tau2 <= 1.0)) throw InvalidArgument("tau2 must lie in (0, 1]");
  if (cfg.accel != Accel::none && cfg.solver != SolverKind::rsfw) {
    throw InvalidArgument("away/pairwise corrections are only available for rsfw");
  }
  if (cfg.step_rule == StepRule::constant && !is_sfw_family(cfg.solver)) {
    throw InvalidArgument("the constant step rule belongs to the SFW family");
  }
  if (cfg.L && !(*cfg.L > 0.0)) throw InvalidArgument("L must be positive");
  if (cfg.mu && !(*cfg.mu > 0.0)) throw InvalidArgument("mu must be positive");
  if (cfg.L && cfg.mu && *cfg.mu > *cfg.L) throw InvalidArgument("mu must not exceed L");
  if (cfg.eta && !(*cfg.eta > 0.0)) throw InvalidArgument("eta must be positive");
  if (!(cfg.time_limit >= 0.0)) throw InvalidArgument("time_limit must be nonnegative");
}

void to_json(nlohmann::json& j, const SolverConfig& cfg) {
  j = nlohmann::json{{"label", cfg.label},
                     {"solver", to_string(cfg.solver)},
                     {"step_rule", to_string(cfg.step_rule)},
                     {"rho", cfg.rho},
                     {"rho_prime", cfg.rho_prime},
                     {"tol", cfg.tol},
                     {"max_iter", cfg.max_iter},
                     {"inner_cap", cfg.inner_cap},
                     {"warm_start", to_string(cfg.warm_start)},
                     {"accel", to_string(cfg.accel)},
                     {"seed", cfg.seed},
                     {"tau1", cfg.tau1},
                     {"tau2", cfg.tau2},
                     {"inject_known_fstar", cfg.inject_known_fstar},
                     {"time_limit", cfg.time_limit}};
  if (cfg.b0_policy == BoundPolicy::value) {
    j["B0"] = cfg.b0_value;
  } else {
    j["B0"] = to_string(cfg.b0_policy);
  }
  if (cfg.L) j["L"] = *cfg.L;
  if (cfg.mu) j["mu"] = *cfg.mu;
  if (cfg.eta) j["eta"] = *cfg.eta;
  if (cfg.stop_on) j["stop_on"] = to_string(*cfg.stop_on);
}

void from_json(const nlohmann::json& j, SolverConfig& cfg) {
  static const char* const known[] = {"label", "solver", "step_rule", "rho", "rho_prime", "B0",
                                      "tol", "max_iter", "inner_cap", "warm_start", "accel",
                                      "seed", "tau1", "tau2", "L", "mu", "eta",
                                      "inject_known_fstar", "stop_on", "time_limit"};
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || item.key() == k;
    if (!ok) throw InvalidArgument("unknown solver config key: " + item.key());
  }
  cfg = SolverConfig{};
  cfg.solver = parse_solver_kind(j.at("solver").get<std::string>());
  cfg.label = j.value("label", std::string());
  if (j.contains("step_rule")) cfg.step_rule = parse_step_rule(j.at("step_rule"));
  cfg.rho = j.value("rho", cfg.rho);
  cfg.rho_prime = j.value("rho_prime", cfg.rho_prime);
  if (j.contains("B0")) {
    const auto& b = j.at("B0");
    if (b.is_number()) {
      cfg.b0_policy = BoundPolicy::value;
      cfg.b0_value = b.get<double>();
    } else {
      cfg.b0_policy = parse_enum(b.get<std::string>(), kBound, "B0 policy");
    }
  }
  cfg.tol = j.value("tol", cfg.tol);
  cfg.max_iter = j.value("max_iter", cfg.max_iter);
  cfg.inner_cap = j.value("inner_cap", cfg.inner_cap);
  if (j.contains("warm_start")) {
    const auto& w = j.at("warm_start");
    cfg.warm_start = w.is_boolean() ? (w.get<bool>() ? WarmStart::halving : WarmStart::off)
                                    : parse_warm_start(w.get<std::string>());
  }
  if (j.contains("accel")) cfg.accel = parse_accel(j.at("accel"));
  cfg.seed = j.value("seed", cfg.seed);
  cfg.tau1 = j.value("tau1", cfg.tau1);
  cfg.tau2 = j.value("tau2", cfg.tau2);
  if (j.contains("L")) cfg.L = j.at("L").get<double>();
  if (j.contains("mu")) cfg.mu = j.at("mu").get<double>();
  if (j.contains("eta")) cfg.eta = j.at("eta").get<double>();
  cfg.inject_known_fstar = j.value("inject_known_fstar", false);
  if (j.contains("stop_on")) cfg.stop_on = parse_stop_on(j.at("stop_on"));
  cfg.time_limit = j.value("time_limit", 0.0);
}

}  // namespace sfw
