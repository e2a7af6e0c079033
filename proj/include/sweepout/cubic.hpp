#pragma once

// Root structure of the height profile a3*z + a4 + a5*z^3. The multiplicity
// pattern decides where the family members are singular and what genus the
// smooth ones can have.

#include <vector>

#include "sweepout/types.hpp"

namespace sweepout {

enum class CubicKind { OneSimple, ThreeSimple, SimplePlusDouble, Triple, Degenerate };

struct CubicRoot {
  double z = 0.0;
  int multiplicity = 1;  // 1, 2 or 3
};

struct CubicProfile {
  std::vector<CubicRoot> roots;  // ascending in z
  CubicKind kind = CubicKind::Degenerate;
  double discriminant = 0.0;     // of the monic depressed cubic; 0 when a5 == 0
};

// Profile of a3*z + a4 + a5*z^3. Degenerate covers a3 == a5 == 0.
CubicProfile classify_cubic(double a3, double a4, double a5);

// Number of distinct real roots of a5*z^3 + a3*z + a4 in (lo, hi], via a
// Sturm chain. Independent of the closed-form path; used as cross-check.
int sturm_root_count(double a3, double a4, double a5, double lo, double hi);

const char* cubic_kind_name(CubicKind k);

}  // namespace sweepout
