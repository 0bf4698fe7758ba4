#ifndef AUGLS_TOOLS_REFERENCE_DATA_HPP
#define AUGLS_TOOLS_REFERENCE_DATA_HPP

#include <array>

namespace augls::tools {

// Reference effectivity indices and acceptance bands for the benchmark
// tables, indexed by data set 1..4. reference_eff holds previously published
// values for side-by-side comparison; the verdict is taken against the band.
struct TableSpec {
  int which;
  const char* method;
  const char* space;
  const char* bc;
  std::array<double, 4> reference_eff;
  double band_low;
  double band_high;
  bool decreasing_check;           // table 8: strictly decreasing, last <= 0.65
  std::array<int, 4> max_iterations;  // 0: default (run to the stopping tolerance)
};

inline constexpr TableSpec kTables[] = {
    {2, "aug1", "rt0-p1", "dirichlet", {1.0006, 1.0075, 1.0179, 1.0605}, 0.95, 1.15, false,
     {0, 0, 0, 0}},
    {3, "aug2", "rt0-p1", "dirichlet", {0.9963, 0.9966, 0.9949, 0.9847}, 0.95, 1.05, false,
     {0, 0, 0, 0}},
    {4, "aug2", "bdm1-p2", "dirichlet", {1.0728, 1.0792, 1.1068, 1.1014}, 1.00, 1.20, false,
     {0, 0, 0, 0}},
    {5, "ls", "rt0-p1", "dirichlet", {1.0019, 1.0171, 1.0406, 1.1216}, 0.95, 1.20, false,
     {0, 0, 0, 0}},
    {6, "aug1", "rt0-p1", "mixed", {1.0006, 1.0058, 1.0138, 1.0497}, 0.95, 1.15, false,
     {0, 0, 0, 0}},
    {7, "aug2", "rt0-p1", "mixed", {0.9965, 0.9966, 0.9962, 0.9900}, 0.95, 1.15, false,
     {0, 0, 0, 0}},
    {7, "aug2", "bdm1-p2", "mixed", {1.0735, 1.0775, 1.0831, 1.0553}, 0.95, 1.15, false,
     {0, 0, 0, 0}},
    // the misled estimator makes the stopping tolerance unreachable on the
    // last row; the qualitative ratio is read at an iteration budget
    {8, "ls", "rt0-p1", "mixed", {0.9972, 0.8641, 0.7079, 0.4787}, 0.0, 0.65, true,
     {0, 0, 0, 42}},
};

}  // namespace augls::tools

#endif
