#include "lampk/kformula.hpp"

#include <mutex>
#include <tuple>

#include "lampk/errors.hpp"

namespace lampk {

namespace {

const char* kCaveat =
    "assumes that the acting group satisfies the Baum-Connes conjecture "
    "with coefficients";

long long powm(long long m, long long e, const Caps& caps) {
  long long w = 1;
  for (long long i = 0; i < e; ++i) {
    w *= m;
    if (w > caps.label_enum)
      fail(ErrorKind::CapExceeded,
           "label weight " + std::to_string(m) + "^" + std::to_string(e) +
               " exceeds cap " + std::to_string(caps.label_enum));
    if (w == 0) return 0;
  }
  return w;
}

std::string subgroup_label(const Subgroup& c) {
  if (c.whole_group && !c.parent->is_finite()) return c.parent->descriptor();
  std::string out = "{";
  const std::vector<Elem>& es =
      c.whole_group ? c.parent->elements() : c.elems;
  for (size_t i = 0; i < es.size(); ++i) {
    if (i) out += ",";
    out += c.parent->name(es[i]);
  }
  return out + "}";
}

std::string coset_label(const CosetSubset& x) {
  std::string out = "{";
  for (size_t i = 0; i < x.members.size(); ++i) {
    if (i) out += ",";
    out += x.space.parent->name(x.members[i]);
  }
  return out + "}";
}

std::string phi_label(const LabelFunction& phi) {
  std::string out = "(";
  for (size_t i = 0; i < phi.values.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(phi.values[i]);
  }
  return out + ")";
}

// Census results are shared between the three assembly variants.
const std::vector<long long>& cached_census(const GroupPtr& gamma, int max_size,
                                            int radius, const Caps& caps) {
  static std::mutex mu;
  static std::map<std::tuple<std::string, int, int>, std::vector<long long>> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(gamma->descriptor(), max_size, radius);
  auto it = memo.find(key);
  if (it == memo.end())
    it = memo.emplace(key, census(gamma, max_size, radius, caps)).first;
  return it->second;
}

KReport make_report(const std::string& variant, const GroupPtr& gamma,
                    const Window& window, const BaseKTable& table) {
  KReport r;
  r.variant = variant;
  r.base = base_k(gamma, table);
  r.totals = r.base;
  r.window = window;
  r.table_version = table.version;
  r.caveat = kCaveat;
  return r;
}

// Infinite torsion-free models: the only finite subgroup class is trivial,
// every label orbit is a singleton, so all three variants produce the same
// per-size aggregated rows.
KReport assemble_infinite(const std::string& variant, int m, const GroupPtr& gamma,
                          const Window& window, const BaseKTable& table,
                          const Caps& caps) {
  if (gamma->kind() != GroupModel::Kind::Lattice &&
      gamma->kind() != GroupModel::Kind::Free)
    fail(ErrorKind::Unsupported,
         "infinite assembly needs a lattice or free model");
  KReport r = make_report(variant, gamma, window, table);
  const std::vector<long long>& counts =
      cached_census(gamma, window.max_size, window.radius, caps);
  for (int k = 1; k <= window.max_size; ++k) {
    long long w = powm(m, k, caps);
    KSummand s;
    s.c_label = "{" + gamma->name(gamma->identity()) + "}";
    s.x_label = "|X|=" + std::to_string(k);
    s.stab_order = 1;
    s.k0 = w;
    s.k1 = 0;
    s.count = counts[k];
    r.summands.push_back(std::move(s));
    r.totals.k0.finite_rank += counts[k] * w;
  }
  if (m >= 1) {
    // the full index set Gamma\FIN* is countably infinite; the window rows
    // above are its explicit finite part
    r.totals.k0.countably_infinite = true;
    r.truncated = true;
  }
  return r;
}

}  // namespace

KComponent KComponent::plus(const KComponent& o) const {
  KComponent out = *this;
  out.finite_rank += o.finite_rank;
  out.countably_infinite = countably_infinite || o.countably_infinite;
  for (const auto& [name, mult] : o.symbolic) out.symbolic[name] += mult;
  return out;
}

KComponent KComponent::scaled(long long s) const {
  if (s < 0) fail(ErrorKind::Internal, "negative K-group multiplicity");
  if (s == 0) return {};
  KComponent out = *this;
  out.finite_rank *= s;
  for (auto& [name, mult] : out.symbolic) mult *= s;
  return out;
}

FormalKGroup base_k(const GroupPtr& g, const BaseKTable& table) {
  FormalKGroup out;
  if (auto it = table.overrides.find(g->descriptor()); it != table.overrides.end()) {
    out.k0.finite_rank = it->second.first;
    out.k1.finite_rank = it->second.second;
    return out;
  }
  switch (g->kind()) {
    case GroupModel::Kind::FiniteTable:
    case GroupModel::Kind::Wreath:
      out.k0.finite_rank = static_cast<long long>(conjugacy_classes(g).count());
      break;
    case GroupModel::Kind::Lattice: {
      long long half = 1LL << (g->param() - 1);
      out.k0.finite_rank = half;
      out.k1.finite_rank = half;
      break;
    }
    case GroupModel::Kind::Free:
      out.k0.finite_rank = 1;
      out.k1.finite_rank = g->param();
      break;
    default:
      out.k0.symbolic["K0(C*λ(" + g->descriptor() + "))"] = 1;
      out.k1.symbolic["K1(C*λ(" + g->descriptor() + "))"] = 1;
  }
  return out;
}

FormalKGroup base_k(const Subgroup& c, const BaseKTable& table) {
  if (c.whole_group) return base_k(c.parent, table);
  FormalKGroup out;
  out.k0.finite_rank = subgroup_class_count(c);
  return out;
}

KReport assemble_literal(int m, const GroupPtr& gamma, const Window& window,
                         const BaseKTable& table, const Caps& caps) {
  if (m < 0) fail(ErrorKind::Parse, "negative label count");
  if (!gamma->is_finite())
    return assemble_infinite("literal", m, gamma, window, table, caps);
  KReport r = make_report("literal", gamma, window, table);
  for (const SubgroupClass& cls : finite_subgroup_classes(gamma, caps)) {
    const Subgroup& c = cls.rep;
    FormalKGroup bc = base_k(c, table);
    std::vector<CosetSubset> sets = admissible_sets(c, window, caps);
    for (const CosetOrbit& o : normalizer_orbits(c, sets)) {
      long long cx = c.order() * static_cast<long long>(o.rep.size());
      long long w = powm(m, cx, caps);
      FormalKGroup contrib = bc.scaled(w);
      KSummand s;
      s.c_label = subgroup_label(c);
      s.x_label = coset_label(o.rep);
      s.stab_order = c.order();
      s.k0 = contrib.k0.finite_rank;
      s.k1 = contrib.k1.finite_rank;
      r.summands.push_back(std::move(s));
      r.totals = r.totals.plus(contrib);
    }
  }
  return r;
}

KReport assemble_orbit(int m, const GroupPtr& gamma, const Window& window,
                       const BaseKTable& table, const Caps& caps) {
  if (m < 0) fail(ErrorKind::Parse, "negative label count");
  if (!gamma->is_finite())
    return assemble_infinite("orbit", m, gamma, window, table, caps);
  KReport r = make_report("orbit", gamma, window, table);
  for (const SubgroupClass& cls : finite_subgroup_classes(gamma, caps)) {
    const Subgroup& c = cls.rep;
    std::vector<CosetSubset> sets = admissible_sets(c, window, caps);
    for (const CosetOrbit& o : normalizer_orbits(c, sets)) {
      if (m == 0) continue;  // no label function has a non-empty domain
      FiniteSubset domain = saturate(c, o.rep);
      for (const LabelOrbit& lo : label_orbits(c, domain, m, caps)) {
        FormalKGroup contrib = base_k(lo.stabilizer, table);
        KSummand s;
        s.c_label = subgroup_label(c);
        s.x_label = coset_label(o.rep);
        s.phi_label = phi_label(lo.rep);
        s.stab_order = lo.stabilizer.order();
        s.k0 = contrib.k0.finite_rank;
        s.k1 = contrib.k1.finite_rank;
        r.summands.push_back(std::move(s));
        r.totals = r.totals.plus(contrib);
      }
    }
  }
  return r;
}

KReport assemble_torsionfree(int m, const GroupPtr& gamma, const Window& window,
                             const BaseKTable& table, const Caps& caps) {
  if (m < 0) fail(ErrorKind::Parse, "negative label count");
  if (gamma->kind() != GroupModel::Kind::Lattice &&
      gamma->kind() != GroupModel::Kind::Free)
    fail(ErrorKind::Unsupported,
         "torsion-free assembly needs a lattice or free model");
  return assemble_infinite("torsionfree", m, gamma, window, table, caps);
}

bool k1_corollary_check(const KReport& report) {
  return report.totals.k1 == report.base.k1;
}

bool totals_recomputable(const KReport& report) {
  FormalKGroup tot = report.base;
  for (const KSummand& s : report.summands) {
    tot.k0.finite_rank += s.count * s.k0;
    tot.k1.finite_rank += s.count * s.k1;
  }
  tot.k0.countably_infinite = report.totals.k0.countably_infinite;
  tot.k1.countably_infinite = report.totals.k1.countably_infinite;
  return tot == report.totals;
}

}  // namespace lampk
