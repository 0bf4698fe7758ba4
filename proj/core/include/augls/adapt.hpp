#ifndef AUGLS_ADAPT_HPP
#define AUGLS_ADAPT_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "augls/assembly.hpp"
#include "augls/estimate.hpp"
#include "augls/femspace.hpp"
#include "augls/mesh.hpp"
#include "augls/problems.hpp"

namespace augls {

/// Minimal-cardinality bulk marking: the smallest set M (by descending
/// indicator, ties broken by lower element index) with
///   sum_{K in M} eta_K^2 >= bulk * sum_K eta_K^2.
/// All-zero indicators yield an empty set (converged signal).
std::vector<int> dorfler_mark(const std::vector<double>& indicators, double bulk);

struct HistoryRow {
  int k = 0;
  int n_elements = 0;
  int dofs = 0;  // free dofs after essential elimination
  double eta = 0.0;
  double true_error = 0.0;
  double eff_index = 0.0;
  double rel_err = 0.0;
  // populated for HLS runs: the same error measured in ||| . |||_2
  std::optional<double> true_error_alt;
  std::optional<double> rel_err_alt;
  double residual_rel = 0.0;  // algebraic residual / load max-norm
};

struct ConvergenceHistory {
  std::string method;
  std::string space;
  std::string bc;
  std::vector<HistoryRow> rows;
  std::string stopping_reason;  // converged | budget | zero-indicators
};

struct AdaptConfig {
  Method method = Method::kAug1;
  Family family = Family::kRt0P1;
  BcLayout bc = BcLayout::kAllDirichlet;
  bool symmetric = false;
  double bulk = 0.3;
  double rel_tol = 0.010;
  int max_iterations = 400;
  int max_elements = 500000;  // memory guard; exceeding it stops with "budget"
  int initial_n = 4;
  int fixed_iterations = -1;  // >= 0: run exactly this many refinements
  SingularQuadPolicy quad_policy;
};

struct AdaptResult {
  ConvergenceHistory history;
  Mesh mesh;                 // final mesh
  SolutionPair solution;     // final discrete solution (coefficients)
  EstimateReport report;     // final indicators + error data
  double exact_norm = 0.0;   // rel-err denominator (method-matching norm)
  double exact_norm_alt = 0.0;
  double max_residual_rel = 0.0;
  std::vector<std::vector<double>> per_iteration_eta_K;   // recorded when requested
  std::vector<std::vector<double>> per_iteration_err_K;
  bool record_per_element = false;
};

/// SOLVE - ESTIMATE - MARK - REFINE driver. Stops when rel_err <= rel_tol
/// (or after fixed_iterations refinements when that is set), or on budget
/// exhaustion. When record_per_element is set, the per-iteration indicator
/// and true-error arrays are kept for auditing.
AdaptResult adapt_loop(const AdaptConfig& cfg, const ProblemSetup& setup,
                       bool record_per_element = false);

std::string method_name(Method m);
std::string family_name(Family f);
std::string bc_name(BcLayout bc);

/// Streams the history as RFC-4180-style CSV with a fixed header; numeric
/// formatting is locale-independent and reproducible.
void write_history_csv(std::ostream& os, const ConvergenceHistory& history);

/// Least-squares slope of log(eta) against log(dofs) over the last n rows.
double loglog_slope_tail(const ConvergenceHistory& history, int n);

}  // namespace augls

#endif
