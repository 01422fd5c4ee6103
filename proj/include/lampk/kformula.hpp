#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lampk/caps.hpp"
#include "lampk/group.hpp"
#include "lampk/orbits.hpp"

namespace lampk {

// One degree of a formal K-group: finite free rank, a countably-infinite
// flag, and named symbolic summands with multiplicities.
struct KComponent {
  long long finite_rank = 0;
  bool countably_infinite = false;
  std::map<std::string, long long> symbolic;

  bool operator==(const KComponent&) const = default;
  KComponent plus(const KComponent& o) const;
  KComponent scaled(long long s) const;  // s >= 0 copies
  bool is_zero() const {
    return finite_rank == 0 && !countably_infinite && symbolic.empty();
  }
};

struct FormalKGroup {
  KComponent k0, k1;

  bool operator==(const FormalKGroup&) const = default;
  FormalKGroup plus(const FormalKGroup& o) const { return {k0.plus(o.k0), k1.plus(o.k1)}; }
  FormalKGroup scaled(long long s) const { return {k0.scaled(s), k1.scaled(s)}; }
  static FormalKGroup zero() { return {}; }
};

// Rank rules for K_*(C*_lambda(Gamma)). Finite groups are always computed
// from conjugacy classes; the lattice/free entries are standard results
// imported as documented, user-overridable data.
struct BaseKTable {
  std::string version = "builtin-1";
  std::map<std::string, std::pair<long long, long long>> overrides;  // descriptor -> (k0, k1) ranks
};

FormalKGroup base_k(const GroupPtr& g, const BaseKTable& table = {});
FormalKGroup base_k(const Subgroup& c, const BaseKTable& table = {});

// One ([C], [X], optional [phi]) contribution. For infinite Gamma the rows
// are aggregated per subset size and `count` carries the class count inside
// the window; for finite Gamma count is always 1.
struct KSummand {
  std::string c_label;
  std::string x_label;
  std::optional<std::string> phi_label;
  long long stab_order = 0;
  long long k0 = 0;
  long long k1 = 0;
  long long count = 1;

  bool operator==(const KSummand&) const = default;
};

struct KReport {
  std::string variant;  // literal | orbit | torsionfree
  FormalKGroup base;
  std::vector<KSummand> summands;
  FormalKGroup totals;
  Window window;
  bool truncated = false;  // window cut a countably infinite index set
  std::string table_version;
  std::string caveat;
};

// Theorem-as-printed: every ([C],[X]) block contributes m^{|C.X|} copies of
// base_k(C).
KReport assemble_literal(int m, const GroupPtr& gamma, const Window& window = {},
                         const BaseKTable& table = {}, const Caps& caps = {});

// Cylinder-orbit reading: each block contributes base_k(Stab_C(phi)) per
// C-orbit [phi] of label functions on C.X.
KReport assemble_orbit(int m, const GroupPtr& gamma, const Window& window = {},
                       const BaseKTable& table = {}, const Caps& caps = {});

// Torsion-free models only: one rank-m^{|X|} degree-0 summand per orbit of
// non-empty finite subsets inside the window.
KReport assemble_torsionfree(int m, const GroupPtr& gamma, const Window& window = {},
                             const BaseKTable& table = {}, const Caps& caps = {});

// Degree-1 total equals the base group's K1 (all inner summands sit in
// degree 0).
bool k1_corollary_check(const KReport& report);

// Report integrity: totals = base + sum over summands.
bool totals_recomputable(const KReport& report);

}  // namespace lampk
