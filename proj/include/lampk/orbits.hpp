#pragma once

#include <map>
#include <optional>
#include <vector>

#include "lampk/caps.hpp"
#include "lampk/group.hpp"

namespace lampk {

// Sorted, duplicate-free finite subset of Gamma. May be empty.
struct FiniteSubset {
  GroupPtr parent;
  std::vector<Elem> elems;

  static FiniteSubset of(const GroupPtr& g, std::vector<Elem> elems);
  size_t size() const { return elems.size(); }
  bool operator==(const FiniteSubset& o) const { return elems == o.elems; }
};

// Non-empty finite subset of a coset space C\Gamma, stored by canonical
// coset representatives.
struct CosetSubset {
  CosetSpace space;
  std::vector<Elem> members;  // canonical representatives, sorted

  size_t size() const { return members.size(); }
};

// Total label function on a finite domain, values in {1,...,m}.
struct LabelFunction {
  FiniteSubset domain;
  int codomain_size = 1;
  std::vector<int> values;  // parallel to domain.elems
};

struct SubsetOrbit {
  FiniteSubset rep;  // canonical representative
  Subgroup stabilizer;
  long long orbit_size = 0;
};

struct CosetOrbit {
  CosetSubset rep;
  long long orbit_size = 0;  // 0 marks infinite-ambient orbits
};

struct LabelOrbit {
  LabelFunction rep;
  Subgroup stabilizer;  // Stab_C(phi), a subgroup of the acting C
  long long orbit_size = 0;
};

// {gamma : gamma F = F}; whole-group marker for the empty set.
Subgroup stabilizer(const FiniteSubset& f);

// The identity-containing translate with lexicographically minimal sorted
// element list; constant on Gamma-orbits.
FiniteSubset canonical_rep(const FiniteSubset& f);

// Gamma-orbits on FIN (or FIN* when include_empty is false), finite Gamma.
std::vector<SubsetOrbit> subset_orbits(const GroupPtr& gamma, bool include_empty,
                                       const Caps& caps = {});

// Truncation window for infinite models.
struct Window {
  int max_size = 4;
  int radius = 6;
};

// F(C): non-empty finite subsets of C\Gamma with Stab(C.X) = C. For finite
// Gamma a second, definition-based computation is run and compared. For
// infinite Gamma (trivial C only) returns canonical orbit representatives
// within the window.
std::vector<CosetSubset> admissible_sets(const Subgroup& c, const Window& window = {},
                                         const Caps& caps = {});

// N_C-orbits on a list of admissible sets.
std::vector<CosetOrbit> normalizer_orbits(const Subgroup& c,
                                          const std::vector<CosetSubset>& sets);

// C.X as a subset of Gamma.
FiniteSubset saturate(const Subgroup& c, const CosetSubset& x);

// C-orbits on {1..m}^domain, with Burnside cross-check. Requires
// C = Stab(domain).
std::vector<LabelOrbit> label_orbits(const Subgroup& c, const FiniteSubset& domain,
                                     int m, const Caps& caps = {});

// Orbit census for infinite torsion-free models: counts[k] = number of
// orbit classes of size-k subsets whose canonical representative lies in
// ball(radius). counts[0] is unused (0).
std::vector<long long> census(const GroupPtr& gamma, int max_size, int radius,
                              const Caps& caps = {});

}  // namespace lampk
