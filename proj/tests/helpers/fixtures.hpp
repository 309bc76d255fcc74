#pragma once

// Shared test fixtures: the four-bank deferral example and the five-node
// network (four banks plus external sector) used across the suites.

#include "finclear/types.hpp"

namespace finclear::testing {

inline LiabilityMatrix example1_liabilities() {
  Matrix p(4, 4);
  p << 0, 1, 1, 0,
       0, 0, 0, 1,
       0, 0, 0, 1,
       0, 0, 0, 0;
  return LiabilityMatrix(p);
}

inline DynamicInstance example1_instance() {
  Vector c0(4), c1(4);
  c0 << 1, 0, 0, 0;
  c1 << 0, 1, 0, 0;
  return DynamicInstance(example1_liabilities(), {c0, c1}, 2, 1.0, 0.0);
}

inline LiabilityMatrix en5_liabilities() {
  Matrix p(5, 5);
  p <<   0, 180,   0,   0, 180,
         0,   0, 100,   0, 100,
        90,   0,   0, 100,  50,
       150,   0,   0,   0, 150,
         0,   0,   0,   0,   0;
  return LiabilityMatrix(p, 4);
}

inline Vector en5_nominal_inflow() {
  Vector c(5);
  c << 120, 20, 150, 200, 0;
  return c;
}

inline Vector en5_shock_inflow() {
  Vector c(5);
  c << 120, 20, 120, 200, 0;
  return c;
}

inline DynamicInstance en5_dynamic_instance() {
  Vector c0(5), c1(5), c2(5);
  c0 << 60, 10, 120, 0, 0;
  c1 << 60, 8, 0, 200, 0;
  c2 << 1, 3, 10, 4, 0;
  return DynamicInstance(en5_liabilities(), {c0, c1, c2}, 3, 1.01, 0.0);
}

/// The reference single-period clearing matrix for the delayed-inflow
/// scenario (inflow c(0)), paying out 760 of the 1100 nominal total.
inline Matrix en5_static_t0_payments() {
  Matrix p(5, 5);
  p <<   0, 180,   0,   0,  70,
         0,   0, 100,   0,  90,
        90,   0,   0, 100,  30,
       100,   0,   0,   0,   0,
         0,   0,   0,   0,   0;
  return p;
}

/// The reference optimal multi-period matrices for the same scenario,
/// alpha = 1.01, T = 3 (entries rounded to two decimals).
inline std::vector<Matrix> en5_dynamic_payments() {
  Matrix p1(5, 5), p2(5, 5);
  p1 <<    0, 0, 0, 0, 110.5,
           0, 0, 0, 0,     8,
           0, 0, 0, 0,     0,
        50.5, 0, 0, 0, 149.5,
           0, 0, 0, 0,     0;
  p2 << 0, 0, 0, 0, 0.61,
        0, 0, 0, 0, 2.12,
        0, 0, 0, 0,   10,
        0, 0, 0, 0, 2.02,
        0, 0, 0, 0,    0;
  return {en5_static_t0_payments(), p1, p2};
}

}  // namespace finclear::testing
