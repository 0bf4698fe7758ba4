#ifndef AUGLS_LINALG_HPP
#define AUGLS_LINALG_HPP

#include <stdexcept>
#include <tuple>
#include <vector>

namespace augls {

/// Compressed-row sparse matrix with sorted, duplicate-free column indices
/// per row.
struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> row_ptr;  // size rows+1
  std::vector<int> col_idx;
  std::vector<double> values;

  static SparseMatrix from_triplets(int rows, int cols,
                                    std::vector<std::tuple<int, int, double>> triplets);

  std::vector<double> apply(const std::vector<double>& x) const;
  double max_abs() const;
  /// max |A - A^T| entrywise.
  double asymmetry() const;
};

struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& what, int pivot = -1)
      : std::runtime_error(what), pivot_index(pivot) {}
  int pivot_index;
};

/// Sparse direct solve (LU with column reordering and partial pivoting).
/// Deterministic: identical inputs produce bitwise-identical solutions.
/// Throws SolverError on a numerically singular pivot.
std::vector<double> solve(const SparseMatrix& a, const std::vector<double>& b);

/// Quadruple-precision value type for the extended-precision fallback path.
using quad_float = __float128;

/// Direct solve with quadruple-precision arithmetic: AMD ordering plus a
/// no-pivot left-looking LU (valid for the positive-definite assembled
/// forms). `values` supplies the matrix entries on the pattern of `pattern`.
/// Used when double-precision factorization degrades on deeply graded
/// meshes.
std::vector<double> solve_quad(const SparseMatrix& pattern, const std::vector<quad_float>& values,
                               const std::vector<double>& b);

/// Same factorization in 80-bit extended precision; the fast middle tier for
/// moderately graded meshes.
std::vector<double> solve_longdouble(const SparseMatrix& pattern,
                                     const std::vector<long double>& values,
                                     const std::vector<double>& b);

}  // namespace augls

#endif
