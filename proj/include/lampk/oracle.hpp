#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lampk/caps.hpp"
#include "lampk/group.hpp"
#include "lampk/kformula.hpp"
#include "lampk/orbits.hpp"

namespace lampk {

// Basis element pi_F^{-1}(phi): a finite support with labels in {1,...,n}.
struct CylinderPair {
  FiniteSubset support;
  LabelFunction labels;
};

struct ComparisonVerdict {
  std::string name;
  long long lhs = 0;
  long long rhs = 0;
  bool equal = false;
  bool must_match = true;  // false: disagreement is flagged, not fatal
  std::string context;
};

// The brute-force oracles below are written against raw definitions
// (bitmask subset orbits, label codes, point codes) and never reuse the
// orbit-grouping code they adjudicate. Two standard facts are imported:
// K0 of a finite-dimensional group algebra is free of rank = conjugacy
// class count with K1 = 0, and a crossed product of a finite space by a
// finite group decomposes over orbits into matrix algebras over the
// stabilizer group algebras.

// Sum over Gamma-orbits of finite subsets F (including the empty set) of
// n^{|F|} copies of the stabilizer's K-theory.
FormalKGroup rhs_eq22_literal(int n, const GroupPtr& gamma, const Caps& caps = {});

// Sum over Gamma-orbits of cylinder pairs (F, phi) of the pair stabilizer's
// K-theory.
FormalKGroup rhs_eq22_pairs(int n, const GroupPtr& gamma, const Caps& caps = {});

// Sum over Gamma-orbits of points of {0,...,n}^Gamma of the point
// stabilizer's K-theory.
FormalKGroup point_orbit_k(int n, const GroupPtr& gamma, const Caps& caps = {});

// Conjugacy-class count of the wreath product (= K0 rank of its group
// algebra).
long long wreath_class_count(const GroupPtr& sigma, const GroupPtr& gamma,
                             const Caps& caps = {});

// Checks that [X] -> [C.X] is a well-defined bijection from the disjoint
// union of the N_C\F(C) onto Gamma\FIN*, and that Stab(C.X) = C throughout.
ComparisonVerdict verify_bijection(const GroupPtr& gamma, const Caps& caps = {});

// The five cross-checks tying the assembly variants to the oracles. The
// wreath verdict is emitted only when sigma is supplied; the literal-vs-
// point verdict is flag-only.
std::vector<ComparisonVerdict> cross_check(int n, const GroupPtr& gamma,
                                           const GroupPtr& sigma = nullptr,
                                           const Caps& caps = {});

}  // namespace lampk
