#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "nls/config.hpp"
#include "nls/initial.hpp"
#include "nls/integrator.hpp"
#include "nls/lens.hpp"

namespace nls {

enum class ExperimentKind {
  Momentum,
  PcBalance,
  E1Balance,
  LensEquivalence,
  Decay,
  Convergence,
  Exponents,
};

ExperimentKind experiment_from_name(const std::string& name);
const char* to_string(ExperimentKind kind);

/// Inputs of one run, assembled from a Config.
struct ExperimentSetup {
  ExperimentKind kind;
  NlsParams params;
  Grid grid;
  StepSchedule schedule;
  InitialCondition initial;
  EvolveOptions evolve_options;
  Config raw;
};

ExperimentSetup setup_from_config(const Config& config);

/// Momentum/mass/energy drift over one trajectory.
struct ConservationSummary {
  Trajectory traj;
  double momentum_drift = 0.0;  // max_a max_t |P_a(t)-P_a(0)| / (|P_a(0)|+1)
  double mass_drift = 0.0;      // max_t |m(t)-m(0)| / m(0)
  double energy_peak_drift = 0.0;
  double boundary_leak_max = 0.0;
};
ConservationSummary run_conservation(const ExperimentSetup& setup,
                                     const Observer& observer = {});

/// Pseudo-conformal balance on a beta = 0 trajectory from t = 0, plus the
/// drift of the conserved-at-criticality quantity
/// Q(t) = 1/2 ||(x+it grad)u||^2 + t^2 (2 lambda/(p+1)) ||u||_{p+1}^{p+1}.
struct PcBalanceSummary {
  Trajectory traj;
  BalanceReport balance;
  double relative_residual = 0.0;
  double q_drift = 0.0;
  double boundary_leak_max = 0.0;
};
PcBalanceSummary run_pc_balance(const ExperimentSetup& setup,
                                const Observer& observer = {});

struct E1BalanceSummary {
  Trajectory traj;
  BalanceReport balance;
  double relative_residual = 0.0;
  double boundary_leak_max = 0.0;
};
E1BalanceSummary run_e1_balance(const ExperimentSetup& setup,
                                const Observer& observer = {});

struct LensEquivalenceSummary {
  BalanceReport mismatch;
};
LensEquivalenceSummary run_lens_equivalence(const ExperimentSetup& setup);

/// Log-log decay fit of ||u(t)||_{L^r} against C t^{-n(1/2 - 1/r)}.
struct DecaySummary {
  Trajectory traj;
  std::vector<std::pair<double, double>> norm_series;  // (t, ||u||_r)
  double r = 6.0;
  double slope = 0.0;
  double target_slope = 0.0;
  double slope_rel_err = 0.0;
  double bound_constant = 0.0;   // C fitted at the first window sample
  double bound_max_ratio = 0.0;  // max_t ||u||_r / (C t^{-a}) over the window
  double boundary_leak_max = 0.0;
};
DecaySummary run_decay(const ExperimentSetup& setup, const Observer& observer = {});

struct ConvergencePoint {
  double dt;
  double residual;
};
struct ConvergenceSummary {
  std::string target;
  std::vector<ConvergencePoint> table;
  double order = 0.0;  // log-log slope of residual vs dt
  bool floored = false;
  std::vector<double> ratios;  // residual(dt_i) / residual(dt_{i+1})
};
/// Reruns the target experiment for each dt (parallel up to
/// NLS_CONSERVE_THREADS) and fits the observed order.
ConvergenceSummary convergence_study(const ExperimentSetup& setup,
                                     const std::vector<double>& dt_list);

struct CriterionResult {
  std::string name;
  double measured = 0.0;
  std::string comparator;  // "<", "<=", ">=", or "floor"
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

struct RunReport {
  std::string run_id;
  std::string experiment;
  std::string config_echo;
  std::vector<CriterionResult> criteria;
  std::map<std::string, double> measurements;
  std::vector<std::string> files;
  std::string error;  // nonempty when the run aborted

  bool all_pass() const;
};

std::string to_json(const RunReport& report);

/// Executes the configured experiment, writes series.csv / report.json (and
/// experiment-specific artifacts) under out_dir, and returns the report.
/// Partial CSV output survives mid-run failures such as blow-up.
RunReport run(const Config& config, const std::filesystem::path& out_dir);

}  // namespace nls
