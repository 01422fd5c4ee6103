#include "lampk/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "lampk/errors.hpp"

namespace lampk {

namespace {

// Index-level multiplication tables for a finite model, the raw material of
// every oracle enumeration.
struct FiniteView {
  GroupPtr g;
  std::vector<Elem> els;
  int n = 0;
  std::vector<std::vector<int>> mul;  // mul[a][b]
  std::vector<int> inv;

  explicit FiniteView(const GroupPtr& gamma) : g(gamma) {
    if (!g->is_finite()) fail(ErrorKind::Unsupported, "oracle needs a finite group");
    els = g->elements();
    n = static_cast<int>(els.size());
    std::map<std::vector<int32_t>, int> idx;
    for (int i = 0; i < n; ++i) idx[els[i].v] = i;
    mul.assign(n, std::vector<int>(n));
    inv.assign(n, 0);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) mul[a][b] = idx.at(g->mul(els[a], els[b]).v);
      inv[a] = idx.at(g->inv(els[a]).v);
    }
  }

  long long stab_class_count(const std::vector<int>& stab_indices) const {
    std::vector<Elem> se;
    for (int i : stab_indices) se.push_back(els[i]);
    return subgroup_class_count(Subgroup::from_elements(g, std::move(se)));
  }
};

long long powll(long long b, int e, const Caps& caps) {
  long long r = 1;
  while (e-- > 0) {
    r *= b;
    if (r > caps.subset_enum)
      fail(ErrorKind::CapExceeded, "oracle enumeration exceeds cap");
    if (r == 0) return 0;
  }
  return r;
}

uint64_t translate_mask(const FiniteView& v, int gi, uint64_t mask) {
  uint64_t out = 0;
  for (int x = 0; x < v.n; ++x)
    if (mask >> x & 1) out |= 1ULL << v.mul[gi][x];
  return out;
}

std::vector<int> mask_stabilizer(const FiniteView& v, uint64_t mask) {
  std::vector<int> out;
  for (int gi = 0; gi < v.n; ++gi)
    if (translate_mask(v, gi, mask) == mask) out.push_back(gi);
  return out;
}

}  // namespace

FormalKGroup rhs_eq22_literal(int n, const GroupPtr& gamma, const Caps& caps) {
  FiniteView v(gamma);
  if (v.n > 20 || (1LL << v.n) > caps.subset_enum)
    fail(ErrorKind::CapExceeded, "2^|Gamma| exceeds subset cap");
  uint64_t total = 1ULL << v.n;
  std::vector<char> seen(total, 0);
  FormalKGroup out;
  for (uint64_t mask = 0; mask < total; ++mask) {
    if (seen[mask]) continue;
    for (int gi = 0; gi < v.n; ++gi) seen[translate_mask(v, gi, mask)] = 1;
    long long weight = powll(n, __builtin_popcountll(mask), caps);
    out.k0.finite_rank += weight * v.stab_class_count(mask_stabilizer(v, mask));
  }
  return out;
}

FormalKGroup rhs_eq22_pairs(int n, const GroupPtr& gamma, const Caps& caps) {
  FiniteView v(gamma);
  if (v.n > 20 || (1LL << v.n) > caps.subset_enum)
    fail(ErrorKind::CapExceeded, "2^|Gamma| exceeds subset cap");
  // A pair is (mask, labels on the set positions, in ascending position
  // order). gamma.(F, phi) = (gamma.F, phi o gamma^{-1}).
  using Pair = std::pair<uint64_t, std::vector<int>>;
  std::set<Pair> seen;
  FormalKGroup out;
  for (uint64_t mask = 0; mask < (1ULL << v.n); ++mask) {
    int sz = __builtin_popcountll(mask);
    long long nlab = powll(n, sz, caps);
    std::vector<int> positions;
    for (int x = 0; x < v.n; ++x)
      if (mask >> x & 1) positions.push_back(x);
    for (long long code = 0; code < std::max(nlab, 1LL); ++code) {
      if (sz > 0 && nlab == 0) break;  // no labels on a non-empty support
      std::vector<int> labels(sz);
      long long rem = code;
      for (int i = 0; i < sz; ++i) { labels[i] = static_cast<int>(rem % n) + 1; rem /= n; }
      if (seen.count({mask, labels})) continue;
      std::vector<int> stab;
      for (int gi = 0; gi < v.n; ++gi) {
        uint64_t tm = translate_mask(v, gi, mask);
        // labels of the translated pair, read off in ascending position order
        std::vector<int> tpos;
        for (int x = 0; x < v.n; ++x)
          if (tm >> x & 1) tpos.push_back(x);
        std::vector<int> tlab(sz);
        for (int i = 0; i < sz; ++i) {
          // position tpos[i] = gi * f, so its label is phi(f), f = gi^{-1} * tpos[i]
          int f = v.mul[v.inv[gi]][tpos[i]];
          int j = static_cast<int>(std::lower_bound(positions.begin(), positions.end(), f) -
                                   positions.begin());
          tlab[i] = labels[j];
        }
        seen.insert({tm, tlab});
        if (tm == mask && tlab == labels) stab.push_back(gi);
      }
      out.k0.finite_rank += v.stab_class_count(stab);
    }
  }
  return out;
}

FormalKGroup point_orbit_k(int n, const GroupPtr& gamma, const Caps& caps) {
  FiniteView v(gamma);
  long long points = 1;
  for (int i = 0; i < v.n; ++i) {
    points *= n + 1;
    if (points > caps.subset_enum)
      fail(ErrorKind::CapExceeded, "(n+1)^|Gamma| exceeds cap");
  }
  // x encoded base (n+1), digit i = x(els[i]); (g.x)(h) = x(g^{-1} h)
  auto act = [&](int gi, long long x) {
    std::vector<int> dig(v.n);
    for (int i = 0; i < v.n; ++i) { dig[i] = static_cast<int>(x % (n + 1)); x /= n + 1; }
    long long out = 0;
    for (int i = v.n - 1; i >= 0; --i) out = out * (n + 1) + dig[v.mul[v.inv[gi]][i]];
    return out;
  };
  std::vector<char> seen(points, 0);
  FormalKGroup out;
  for (long long x = 0; x < points; ++x) {
    if (seen[x]) continue;
    std::vector<int> stab;
    for (int gi = 0; gi < v.n; ++gi) {
      long long y = act(gi, x);
      seen[y] = 1;
      if (y == x) stab.push_back(gi);
    }
    out.k0.finite_rank += v.stab_class_count(stab);
  }
  return out;
}

long long wreath_class_count(const GroupPtr& sigma, const GroupPtr& gamma,
                             const Caps& caps) {
  GroupPtr w = GroupModel::wreath_product(sigma, gamma, caps);
  return static_cast<long long>(conjugacy_classes(w).count());
}

ComparisonVerdict verify_bijection(const GroupPtr& gamma, const Caps& caps) {
  FiniteView v(gamma);
  if (v.n > 20 || (1LL << v.n) > caps.subset_enum)
    fail(ErrorKind::CapExceeded, "2^|Gamma| exceeds subset cap");
  // raw Gamma\FIN*: canonical representative = minimal translated mask
  auto canon = [&](uint64_t mask) {
    uint64_t best = mask;
    for (int gi = 0; gi < v.n; ++gi) best = std::min(best, translate_mask(v, gi, mask));
    return best;
  };
  std::set<uint64_t> fin_star;
  for (uint64_t mask = 1; mask < (1ULL << v.n); ++mask) fin_star.insert(canon(mask));

  std::map<std::vector<int32_t>, int> idx;
  for (int i = 0; i < v.n; ++i) idx[v.els[i].v] = i;

  ComparisonVerdict verdict;
  verdict.name = "verify_bijection";
  verdict.context = "gamma=" + gamma->descriptor();
  bool ok = true;
  long long lhs_count = 0;
  std::set<uint64_t> image;
  for (const SubgroupClass& cls : finite_subgroup_classes(gamma, caps)) {
    const Subgroup& c = cls.rep;
    std::vector<CosetSubset> sets = admissible_sets(c, Window{}, caps);
    for (const CosetOrbit& o : normalizer_orbits(c, sets)) {
      ++lhs_count;
      FiniteSubset cx = saturate(c, o.rep);
      uint64_t mask = 0;
      for (const Elem& e : cx.elems) mask |= 1ULL << idx.at(e.v);
      // Stab(C.X) = C
      std::vector<int> stab = mask_stabilizer(v, mask);
      std::vector<Elem> se;
      for (int i : stab) se.push_back(v.els[i]);
      if (!Subgroup::from_elements(gamma, std::move(se)).same_as(c)) ok = false;
      // injectivity: distinct classes land on distinct orbit classes
      if (!image.insert(canon(mask)).second) ok = false;
    }
  }
  verdict.lhs = lhs_count;
  verdict.rhs = static_cast<long long>(fin_star.size());
  // surjectivity: the image exhausts Gamma\FIN*
  if (image != fin_star) ok = false;
  verdict.equal = ok && verdict.lhs == verdict.rhs;
  return verdict;
}

std::vector<ComparisonVerdict> cross_check(int n, const GroupPtr& gamma,
                                           const GroupPtr& sigma, const Caps& caps) {
  std::string ctx = "n=" + std::to_string(n) + ",gamma=" + gamma->descriptor();
  if (sigma) ctx += ",sigma=" + sigma->descriptor();
  auto rank0 = [](const FormalKGroup& k) { return k.k0.finite_rank; };

  long long lit = rank0(assemble_literal(n, gamma, Window{}, BaseKTable{}, caps).totals);
  long long orb = rank0(assemble_orbit(n, gamma, Window{}, BaseKTable{}, caps).totals);
  long long o_lit = rank0(rhs_eq22_literal(n, gamma, caps));
  long long o_pair = rank0(rhs_eq22_pairs(n, gamma, caps));
  long long o_pt = rank0(point_orbit_k(n, gamma, caps));

  std::vector<ComparisonVerdict> out;
  auto add = [&](const std::string& name, long long lhs, long long rhs, bool must) {
    out.push_back({name, lhs, rhs, lhs == rhs, must, ctx});
  };
  add("assemble_literal vs rhs_eq22_literal", lit, o_lit, true);
  add("assemble_orbit vs rhs_eq22_pairs", orb, o_pair, true);
  add("rhs_eq22_pairs vs point_orbit_k", o_pair, o_pt, true);
  if (sigma)
    add("point_orbit_k vs wreath_class_count", o_pt,
        wreath_class_count(sigma, gamma, caps), true);
  add("assemble_literal vs point_orbit_k", lit, o_pt, false);
  return out;
}

}  // namespace lampk
