#include "augls/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <amd.h>
#include <umfpack.h>

namespace augls {

SparseMatrix SparseMatrix::from_triplets(int rows, int cols,
                                         std::vector<std::tuple<int, int, double>> triplets) {
  std::sort(triplets.begin(), triplets.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
    return std::get<1>(a) < std::get<1>(b);
  });
  SparseMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.row_ptr.assign(rows + 1, 0);
  std::vector<int> count(rows, 0);
  int last_row = -1, last_col = -1;
  for (const auto& [r, c, v] : triplets) {
    if (r < 0 || r >= rows || c < 0 || c >= cols) {
      throw std::invalid_argument("SparseMatrix: triplet index out of range");
    }
    if (r == last_row && c == last_col) {
      m.values.back() += v;  // duplicates are adjacent after the sort
    } else {
      m.col_idx.push_back(c);
      m.values.push_back(v);
      ++count[r];
      last_row = r;
      last_col = c;
    }
  }
  for (int r = 0; r < rows; ++r) m.row_ptr[r + 1] = m.row_ptr[r] + count[r];
  return m;
}

std::vector<double> SparseMatrix::apply(const std::vector<double>& x) const {
  std::vector<double> y(rows, 0.0);
  for (int r = 0; r < rows; ++r) {
    double s = 0.0;
    for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) s += values[k] * x[col_idx[k]];
    y[r] = s;
  }
  return y;
}

double SparseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double SparseMatrix::asymmetry() const {
  double worst = 0.0;
  for (int r = 0; r < rows; ++r) {
    for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      const int c = col_idx[k];
      double vt = 0.0;
      for (int k2 = row_ptr[c]; k2 < row_ptr[c + 1]; ++k2) {
        if (col_idx[k2] == r) {
          vt = values[k2];
          break;
        }
      }
      worst = std::max(worst, std::abs(values[k] - vt));
    }
  }
  return worst;
}

std::vector<double> solve(const SparseMatrix& a, const std::vector<double>& b) {
  if (a.rows != a.cols) throw SolverError("solve: matrix must be square");
  if (static_cast<int>(b.size()) != a.rows) throw SolverError("solve: dimension mismatch");

  // reject structurally empty rows up front so the error names the row
  for (int r = 0; r < a.rows; ++r) {
    bool nonzero = false;
    for (int k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
      if (a.values[k] != 0.0) nonzero = true;
    }
    if (!nonzero) throw SolverError("solve: singular pivot (empty row " + std::to_string(r) + ")", r);
  }

  // Our CSR arrays are the CSC arrays of A^T, so ask UMFPACK for the
  // transposed solve. UMFPACK's scaling + threshold partial pivoting and its
  // built-in iterative refinement handle the wide dynamic range of the
  // div-div terms on graded meshes.
  const int n = a.rows;
  double control[UMFPACK_CONTROL];
  double info[UMFPACK_INFO];
  umfpack_di_defaults(control);
  control[UMFPACK_IRSTEP] = 4;

  void* symbolic = nullptr;
  void* numeric = nullptr;
  int status = umfpack_di_symbolic(n, n, a.row_ptr.data(), a.col_idx.data(), a.values.data(),
                                   &symbolic, control, info);
  if (status != UMFPACK_OK) {
    throw SolverError("solve: symbolic factorization failed (status " + std::to_string(status) +
                      ")");
  }
  status = umfpack_di_numeric(a.row_ptr.data(), a.col_idx.data(), a.values.data(), symbolic,
                              &numeric, control, info);
  umfpack_di_free_symbolic(&symbolic);
  if (status == UMFPACK_WARNING_singular_matrix) {
    umfpack_di_free_numeric(&numeric);
    throw SolverError("solve: singular pivot during factorization");
  }
  if (status != UMFPACK_OK) {
    umfpack_di_free_numeric(&numeric);
    throw SolverError("solve: numeric factorization failed (status " + std::to_string(status) +
                      ")");
  }
  std::vector<double> x(n, 0.0);
  status = umfpack_di_solve(UMFPACK_At, a.row_ptr.data(), a.col_idx.data(), a.values.data(),
                            x.data(), b.data(), numeric, control, info);
  umfpack_di_free_numeric(&numeric);
  if (status != UMFPACK_OK) {
    throw SolverError("solve: back substitution failed (status " + std::to_string(status) + ")");
  }
  return x;
}

namespace {

template <class Scalar>
std::vector<double> solve_nopivot(const SparseMatrix& pattern, const std::vector<Scalar>& values,
                                  const std::vector<double>& b) {
  const int n = pattern.rows;
  if (pattern.rows != pattern.cols) throw SolverError("solve_nopivot: matrix must be square");
  if (values.size() != pattern.values.size() || static_cast<int>(b.size()) != n) {
    throw SolverError("solve_nopivot: dimension mismatch");
  }

  // fill-reducing symmetric ordering on the pattern of A + A^T
  std::vector<int> perm(n);
  {
    std::vector<std::vector<int>> cols(n);
    for (int r = 0; r < n; ++r) {
      for (int k = pattern.row_ptr[r]; k < pattern.row_ptr[r + 1]; ++k) {
        const int c = pattern.col_idx[k];
        if (c != r) {
          cols[c].push_back(r);
          cols[r].push_back(c);
        }
      }
    }
    std::vector<int> ap(n + 1, 0), ai;
    for (int c = 0; c < n; ++c) {
      auto& v = cols[c];
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
      ap[c + 1] = ap[c] + static_cast<int>(v.size());
      ai.insert(ai.end(), v.begin(), v.end());
    }
    if (amd_order(n, ap.data(), ai.data(), perm.data(), nullptr, nullptr) < AMD_OK) {
      throw SolverError("solve_quad: AMD ordering failed");
    }
  }
  std::vector<int> inv_perm(n);
  for (int k = 0; k < n; ++k) inv_perm[perm[k]] = k;

  // permuted CSC of A (our CSR is CSC of A^T, so transpose while permuting)
  std::vector<int> Ap(n + 1, 0), Ai;
  std::vector<Scalar> Ax;
  {
    std::vector<std::vector<std::pair<int, Scalar>>> cols(n);
    for (int r = 0; r < n; ++r) {
      const int pr = inv_perm[r];
      for (int k = pattern.row_ptr[r]; k < pattern.row_ptr[r + 1]; ++k) {
        cols[inv_perm[pattern.col_idx[k]]].push_back({pr, values[k]});
      }
    }
    for (int c = 0; c < n; ++c) {
      std::sort(cols[c].begin(), cols[c].end(),
                [](const auto& x1, const auto& x2) { return x1.first < x2.first; });
      Ap[c + 1] = Ap[c] + static_cast<int>(cols[c].size());
      for (const auto& [i, v] : cols[c]) {
        Ai.push_back(i);
        Ax.push_back(v);
      }
    }
  }

  // Gilbert-Peierls left-looking LU without pivoting (the assembled forms are
  // positive definite, so the no-pivot factorization exists)
  std::vector<int> Lp(1, 0), Li, Up(1, 0), Ui;
  std::vector<Scalar> Lx, Ux;
  std::vector<Scalar> work(n, 0);
  std::vector<int> flag(n, -1), stack(n), position(n), found;
  found.reserve(64);

  for (int j = 0; j < n; ++j) {
    // reachability of the column pattern through the columns of L built so
    // far; nodes are emitted in DFS postorder
    found.clear();
    for (int k = Ap[j]; k < Ap[j + 1]; ++k) {
      if (flag[Ai[k]] == j) continue;
      int top = 0;
      stack[0] = Ai[k];
      flag[Ai[k]] = j;
      position[0] = Ai[k] < j ? Lp[Ai[k]] : -1;
      while (top >= 0) {
        const int node = stack[top];
        bool descended = false;
        if (node < j) {
          int& p = position[top];
          while (p < Lp[node + 1]) {
            const int child = Li[p];
            ++p;
            if (flag[child] != j) {
              flag[child] = j;
              ++top;
              stack[top] = child;
              position[top] = child < j ? Lp[child] : -1;
              descended = true;
              break;
            }
          }
        }
        if (!descended) {
          found.push_back(node);
          --top;
        }
      }
    }
    // numeric values, dependencies resolved in reverse postorder
    for (int k = Ap[j]; k < Ap[j + 1]; ++k) work[Ai[k]] = Ax[k];
    for (auto it = found.rbegin(); it != found.rend(); ++it) {
      const int i = *it;
      if (i >= j) continue;
      const Scalar xi = work[i];
      if (xi == 0) continue;
      for (int p = Lp[i]; p < Lp[i + 1]; ++p) work[Li[p]] -= Lx[p] * xi;
    }
    // split into U (i <= j) and L (i > j)
    Scalar pivot = 0;
    std::sort(found.begin(), found.end());
    for (int i : found) {
      if (i < j) {
        Ui.push_back(i);
        Ux.push_back(work[i]);
      } else if (i == j) {
        pivot = work[i];
      }
    }
    Ui.push_back(j);
    if (pivot == 0) pivot = work[j];
    Ux.push_back(pivot);
    Up.push_back(static_cast<int>(Ui.size()));
    if (pivot == 0) {
      throw SolverError("solve_nopivot: zero pivot at column " + std::to_string(j), j);
    }
    for (int i : found) {
      if (i > j) {
        Li.push_back(i);
        Lx.push_back(work[i] / pivot);
      }
    }
    Lp.push_back(static_cast<int>(Li.size()));
    for (int i : found) work[i] = 0;
  }

  // substitutions on the permuted system, then two refinement passes
  const auto substitute = [&](std::vector<Scalar>& y) {
    for (int j = 0; j < n; ++j) {
      const Scalar xj = y[j];
      if (xj == 0) continue;
      for (int p = Lp[j]; p < Lp[j + 1]; ++p) y[Li[p]] -= Lx[p] * xj;
    }
    for (int j = n - 1; j >= 0; --j) {
      const int pend = Up[j + 1] - 1;  // diagonal is the last entry of column j
      y[j] /= Ux[pend];
      const Scalar xj = y[j];
      for (int p = Up[j]; p < pend; ++p) y[Ui[p]] -= Ux[p] * xj;
    }
  };
  const auto apply_permuted = [&](const std::vector<Scalar>& y) {
    std::vector<Scalar> r(n, 0);
    for (int c = 0; c < n; ++c) {
      const Scalar yc = y[c];
      if (yc == 0) continue;
      for (int p = Ap[c]; p < Ap[c + 1]; ++p) r[Ai[p]] += Ax[p] * yc;
    }
    return r;
  };

  std::vector<Scalar> rhs(n, 0);
  for (int i = 0; i < n; ++i) rhs[inv_perm[i]] = b[i];
  std::vector<Scalar> y = rhs;
  substitute(y);
  // refine the double-rounded iterate (the returned vector is stored in
  // double) and keep the rounded configuration with the smallest residual;
  // the iteration can cycle between neighboring rounded states
  std::vector<Scalar> best_y;
  Scalar best_resid = -1;
  for (int pass = 0; pass < 5; ++pass) {
    for (int i = 0; i < n; ++i) y[i] = static_cast<Scalar>(static_cast<double>(y[i]));
    std::vector<Scalar> r = apply_permuted(y);
    Scalar worst = 0;
    for (int i = 0; i < n; ++i) {
      r[i] = rhs[i] - r[i];
      const Scalar a = r[i] < 0 ? -r[i] : r[i];
      if (a > worst) worst = a;
    }
    if (best_resid < 0 || worst < best_resid) {
      best_resid = worst;
      best_y = y;
    }
    if (pass + 1 == 5) break;  // the last rounded state was just measured
    substitute(r);
    for (int i = 0; i < n; ++i) y[i] += r[i];
  }

  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = static_cast<double>(best_y[inv_perm[i]]);
  return x;
}

}  // namespace

std::vector<double> solve_quad(const SparseMatrix& pattern, const std::vector<quad_float>& values,
                               const std::vector<double>& b) {
  return solve_nopivot<quad_float>(pattern, values, b);
}

std::vector<double> solve_longdouble(const SparseMatrix& pattern,
                                     const std::vector<long double>& values,
                                     const std::vector<double>& b) {
  return solve_nopivot<long double>(pattern, values, b);
}

}  // namespace augls
