#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lampk/caps.hpp"

namespace lampk {

// Canonical element form. Payload layout depends on the owning model:
//   finite kinds:  a single entry, the element index
//   lattice(d):    d integer coordinates
//   free(k):       reduced word of signed generator indices (+g / -g, g >= 1)
struct Elem {
  std::vector<int32_t> v;
  bool operator==(const Elem& o) const = default;
};

class GroupModel;
using GroupPtr = std::shared_ptr<const GroupModel>;

class GroupModel : public std::enable_shared_from_this<GroupModel> {
 public:
  enum class Kind { FiniteTable, Wreath, Lattice, Free };

  // Parses descriptors: cyclic(n), symmetric(n), dihedral(n), lattice(d),
  // free(k), table([[...]]), and direct products joined with 'x'.
  static GroupPtr make(const std::string& descriptor, const Caps& caps = {});
  static GroupPtr from_table(std::vector<std::vector<int>> table,
                             std::vector<std::string> names = {},
                             const Caps& caps = {});
  static GroupPtr wreath_product(const GroupPtr& sigma, const GroupPtr& gamma,
                                 const Caps& caps = {});

  Kind kind() const { return kind_; }
  const std::string& descriptor() const { return descriptor_; }
  bool is_finite() const { return kind_ == Kind::FiniteTable || kind_ == Kind::Wreath; }
  long long order() const;  // finite kinds only
  int param() const { return param_; }  // d for lattice, k for free

  Elem identity() const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  bool less(const Elem& a, const Elem& b) const;  // the fixed element_order
  std::string name(const Elem& a) const;

  std::vector<Elem> elements() const;          // finite kinds
  std::vector<Elem> ball(int radius) const;    // infinite kinds

  // Small generating set (finite kinds), used for orbit computations.
  std::vector<Elem> generators() const;

  // Wreath structure access (Kind::Wreath only).
  const GroupPtr& wreath_sigma() const;
  const GroupPtr& wreath_gamma() const;

  ~GroupModel();

  struct Impl;  // defined in group.cpp

 private:
  GroupModel();
  Kind kind_;
  int param_ = 0;
  std::string descriptor_;
  std::unique_ptr<Impl> impl_;
};

// Comparator adapting a model's element_order for std::sort and friends.
struct ElemLess {
  const GroupModel* g;
  bool operator()(const Elem& a, const Elem& b) const { return g->less(a, b); }
};

struct Subgroup {
  GroupPtr parent;
  std::vector<Elem> elems;   // sorted by parent order; unused if whole_group of an infinite model
  bool whole_group = false;  // marker for "all of Gamma"

  bool is_trivial() const;
  long long order() const;  // requires finite element list or finite parent
  bool contains(const Elem& e) const;
  bool same_as(const Subgroup& o) const;

  static Subgroup trivial(const GroupPtr& g);
  static Subgroup whole(const GroupPtr& g);
  static Subgroup from_elements(const GroupPtr& g, std::vector<Elem> elems);
};

struct ConjClassSet {
  std::vector<std::vector<Elem>> classes;  // identity class first
  std::vector<std::vector<Elem>> nontrivial() const {
    return {classes.begin() + 1, classes.end()};
  }
  size_t count() const { return classes.size(); }
};

struct CosetSpace {
  Subgroup subgroup;  // C
  GroupPtr parent;    // Gamma
  bool lazy = false;  // infinite Gamma with trivial C: the space is Gamma itself
  std::vector<Elem> reps;  // canonical (minimal) representatives, sorted

  // Canonical representative of the coset C*g.
  Elem rep_of(const Elem& g) const;
  size_t size() const { return reps.size(); }
};

ConjClassSet conjugacy_classes(const GroupPtr& g);

// Conjugacy class count of a finite subgroup, conjugating inside the subgroup.
long long subgroup_class_count(const Subgroup& h);

std::vector<Subgroup> all_subgroups(const GroupPtr& g, const Caps& caps = {});

struct SubgroupClass {
  Subgroup rep;          // minimal under (order, element list)
  long long class_size;  // number of conjugate subgroups
};
std::vector<SubgroupClass> finite_subgroup_classes(const GroupPtr& g, const Caps& caps = {});

Subgroup normalizer(const Subgroup& c);

CosetSpace coset_space(const Subgroup& c);

// Projection C\Gamma -> D\Gamma for D containing C: representative map.
Elem coset_project(const CosetSpace& fine, const CosetSpace& coarse, const Elem& rep);

// |ball| closed forms, exposed for property tests.
long long lattice_ball_size(int d, int r);
long long free_ball_size(int k, int r);

}  // namespace lampk
