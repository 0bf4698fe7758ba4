#include "augls/adapt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "augls/linalg.hpp"

namespace augls {

std::vector<int> dorfler_mark(const std::vector<double>& indicators, double bulk) {
  if (!(bulk > 0.0 && bulk <= 1.0)) {
    throw std::invalid_argument("dorfler_mark: bulk parameter must be in (0,1]");
  }
  double total_sq = 0.0;
  for (double v : indicators) total_sq += v * v;
  if (total_sq == 0.0) return {};

  std::vector<int> order(indicators.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (indicators[a] != indicators[b]) return indicators[a] > indicators[b];
    return a < b;
  });

  const double threshold = bulk * total_sq;
  std::vector<int> marked;
  double acc = 0.0;
  for (int t : order) {
    if (acc >= threshold) break;
    if (indicators[t] <= 0.0) break;  // only zeros remain
    marked.push_back(t);
    acc += indicators[t] * indicators[t];
  }
  return marked;
}

std::string method_name(Method m) {
  switch (m) {
    case Method::kAug1: return "aug1";
    case Method::kAug2: return "aug2";
    case Method::kLs: return "ls";
    default: return "hls";
  }
}

std::string family_name(Family f) { return f == Family::kRt0P1 ? "rt0-p1" : "bdm1-p2"; }

std::string bc_name(BcLayout bc) {
  return bc == BcLayout::kAllDirichlet ? "dirichlet" : "mixed";
}

AdaptResult adapt_loop(const AdaptConfig& cfg, const ProblemSetup& setup,
                       bool record_per_element) {
  AdaptResult result;
  result.record_per_element = record_per_element;
  result.history.method = method_name(cfg.method) + (cfg.symmetric ? "-sym" : "");
  result.history.space = family_name(cfg.family);
  result.history.bc = bc_name(cfg.bc);

  Mesh mesh = initial_square_mesh(cfg.initial_n, cfg.bc);
  const bool hls = cfg.method == Method::kHls;

  if (setup.has_exact) {
    result.exact_norm_alt = exact_theta_norm(Method::kAug2, mesh, *setup.coeff, setup.exact,
                                             cfg.quad_policy);
    result.exact_norm = hls ? exact_hls_norm(mesh, *setup.coeff, setup.exact, cfg.quad_policy)
                            : exact_theta_norm(cfg.method, mesh, *setup.coeff, setup.exact,
                                               cfg.quad_policy);
  }

  MethodConfig mcfg;
  mcfg.method = cfg.method;
  mcfg.symmetric = cfg.symmetric;

  for (int k = 0;; ++k) {
    const SpacePair space = build_space_pair(mesh, cfg.family);
    const LinearSystem full = assemble(mesh, space, setup.data, mcfg);
    const LinearSystem reduced = apply_essential_bc(full, space, setup.data);
    const std::vector<double> x = solve_system(reduced);
    SolutionPair sol = scatter_solution(reduced, space, x);
    const double residual = residual_check(reduced, sol);
    const double residual_rel =
        reduced.load_max_norm > 0.0 ? residual / reduced.load_max_norm : residual;

    EstimateReport report = indicators(cfg.method, mesh, space, setup.data, sol);

    HistoryRow row;
    row.k = k;
    row.n_elements = mesh.num_triangles();
    row.dofs = reduced.matrix.rows;
    row.eta = report.eta;
    row.residual_rel = residual_rel;
    result.max_residual_rel = std::max(result.max_residual_rel, residual_rel);

    if (setup.has_exact) {
      const TrueErrorResult te = true_error(cfg.method, mesh, space, *setup.coeff, sol,
                                            setup.exact, cfg.quad_policy);
      report.err_K = te.per_element;
      const double err = hls ? te.hls_norm : te.theta_norm;
      report.true_error = err;
      report.eff_index = err > 0.0 ? report.eta / err : 0.0;
      report.rel_err = result.exact_norm > 0.0 ? err / result.exact_norm : 0.0;
      row.true_error = err;
      row.eff_index = report.eff_index;
      row.rel_err = report.rel_err;
      if (hls) {
        report.true_error_alt = te.theta_norm;
        report.rel_err_alt = result.exact_norm_alt > 0.0 ? te.theta_norm / result.exact_norm_alt
                                                         : 0.0;
        row.true_error_alt = report.true_error_alt;
        row.rel_err_alt = report.rel_err_alt;
      }
      if (record_per_element) {
        result.per_iteration_eta_K.push_back(report.eta_K);
        result.per_iteration_err_K.push_back(te.per_element);
      }
    } else if (record_per_element) {
      result.per_iteration_eta_K.push_back(report.eta_K);
    }

    result.history.rows.push_back(row);

    const bool budget_hit = k >= cfg.max_iterations;
    bool stop = false;
    if (cfg.fixed_iterations >= 0) {
      stop = k >= cfg.fixed_iterations;
      if (stop) result.history.stopping_reason = "fixed-iterations";
    } else if (setup.has_exact && row.rel_err <= cfg.rel_tol) {
      stop = true;
      result.history.stopping_reason = "converged";
    }
    if (!stop && budget_hit) {
      stop = true;
      result.history.stopping_reason = "budget";
    }
    if (stop) {
      result.mesh = std::move(mesh);
      result.solution = std::move(sol);
      result.report = std::move(report);
      return result;
    }

    const std::vector<int> marked = dorfler_mark(report.eta_K, cfg.bulk);
    if (marked.empty()) {
      result.history.stopping_reason = "zero-indicators";
      result.mesh = std::move(mesh);
      result.solution = std::move(sol);
      result.report = std::move(report);
      return result;
    }
    Mesh refined = bisect(mesh, marked);
    if (refined.num_triangles() > cfg.max_elements) {
      result.history.stopping_reason = "budget";
      result.mesh = std::move(mesh);
      result.solution = std::move(sol);
      result.report = std::move(report);
      return result;
    }
    mesh = std::move(refined);
  }
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

void write_history_csv(std::ostream& os, const ConvergenceHistory& history) {
  os << "k,n,dofs,eta,true_error,eff_index,rel_err,true_error_2,rel_err_2,residual_rel\n";
  for (const HistoryRow& r : history.rows) {
    os << r.k << ',' << r.n_elements << ',' << r.dofs << ',' << fmt(r.eta) << ','
       << fmt(r.true_error) << ',' << fmt(r.eff_index) << ',' << fmt(r.rel_err) << ','
       << (r.true_error_alt ? fmt(*r.true_error_alt) : std::string()) << ','
       << (r.rel_err_alt ? fmt(*r.rel_err_alt) : std::string()) << ',' << fmt(r.residual_rel)
       << '\n';
  }
}

double loglog_slope_tail(const ConvergenceHistory& history, int n) {
  const int rows = static_cast<int>(history.rows.size());
  const int take = std::min(n, rows);
  if (take < 2) throw std::invalid_argument("loglog_slope_tail: need at least 2 rows");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = rows - take; i < rows; ++i) {
    const double x = std::log(static_cast<double>(history.rows[i].dofs));
    const double y = std::log(history.rows[i].eta);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (take * sxy - sx * sy) / (take * sxx - sx * sx);
}

}  // namespace augls
