#include "lampk/orbits.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "lampk/errors.hpp"

namespace lampk {

namespace {

using bigint = boost::multiprecision::cpp_int;

bool elem_list_less(const GroupModel& g, const std::vector<Elem>& a,
                    const std::vector<Elem>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      ElemLess{&g});
}

}  // namespace

FiniteSubset FiniteSubset::of(const GroupPtr& g, std::vector<Elem> elems) {
  std::sort(elems.begin(), elems.end(), ElemLess{g.get()});
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return FiniteSubset{g, std::move(elems)};
}

Subgroup stabilizer(const FiniteSubset& f) {
  const GroupPtr& g = f.parent;
  if (f.elems.empty()) return Subgroup::whole(g);
  // Any gamma with gamma F = F maps f0 into F, so gamma = f * f0^-1 for
  // some f in F. Test each candidate with the full translation check.
  Elem f0_inv = g->inv(f.elems[0]);
  std::vector<Elem> members;
  for (const Elem& x : f.elems) {
    Elem cand = g->mul(x, f0_inv);
    std::vector<Elem> translated;
    translated.reserve(f.elems.size());
    for (const Elem& y : f.elems) translated.push_back(g->mul(cand, y));
    std::sort(translated.begin(), translated.end(), ElemLess{g.get()});
    if (translated == f.elems) members.push_back(cand);
  }
  return Subgroup::from_elements(g, std::move(members));
}

FiniteSubset canonical_rep(const FiniteSubset& f) {
  if (f.elems.empty()) fail(ErrorKind::Parse, "canonical_rep of the empty set");
  const GroupPtr& g = f.parent;
  std::vector<Elem> best;
  for (const Elem& x : f.elems) {
    Elem xi = g->inv(x);
    std::vector<Elem> t;
    t.reserve(f.elems.size());
    for (const Elem& y : f.elems) t.push_back(g->mul(xi, y));
    std::sort(t.begin(), t.end(), ElemLess{g.get()});
    if (best.empty() || elem_list_less(*g, t, best)) best = std::move(t);
  }
  return FiniteSubset{g, std::move(best)};
}

std::vector<SubsetOrbit> subset_orbits(const GroupPtr& gamma, bool include_empty,
                                       const Caps& caps) {
  if (!gamma->is_finite())
    fail(ErrorKind::Unsupported, "subset_orbits requires a finite model");
  long long n = gamma->order();
  if (n >= 62 || (1LL << n) > caps.subset_enum)
    fail(ErrorKind::CapExceeded, "2^|Gamma| exceeds subset enumeration cap");
  uint64_t total = 1ULL << n;

  // translation tables on element indices
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int32_t a = 0; a < n; ++a)
    for (int32_t b = 0; b < n; ++b)
      mul[a][b] = gamma->mul(Elem{{a}}, Elem{{b}}).v[0];

  std::vector<char> seen(total, 0);
  std::vector<SubsetOrbit> out;
  for (uint64_t mask = include_empty ? 0 : 1; mask < total; ++mask) {
    if (seen[mask]) continue;
    std::vector<uint64_t> orbit{mask};
    seen[mask] = 1;
    for (size_t head = 0; head < orbit.size(); ++head) {
      uint64_t cur = orbit[head];
      for (int32_t gdx = 0; gdx < n; ++gdx) {
        uint64_t img = 0;
        for (int i = 0; i < n; ++i)
          if (cur & (1ULL << i)) img |= 1ULL << mul[gdx][i];
        if (!seen[img]) { seen[img] = 1; orbit.push_back(img); }
      }
    }
    std::vector<Elem> elems;
    for (int i = 0; i < n; ++i)
      if (mask & (1ULL << i)) elems.push_back(Elem{{i}});
    FiniteSubset fs = FiniteSubset::of(gamma, std::move(elems));
    FiniteSubset rep = fs.elems.empty() ? fs : canonical_rep(fs);
    Subgroup stab = stabilizer(rep);
    SubsetOrbit o{std::move(rep), std::move(stab),
                  static_cast<long long>(orbit.size())};
    if (o.orbit_size * o.stabilizer.order() != n)
      fail(ErrorKind::Internal, "orbit-stabilizer mismatch in subset_orbits");
    out.push_back(std::move(o));
  }
  return out;
}

FiniteSubset saturate(const Subgroup& c, const CosetSubset& x) {
  const GroupPtr& g = c.parent;
  std::vector<Elem> elems;
  if (c.whole_group && !g->is_finite())
    fail(ErrorKind::Unsupported, "saturate by the whole infinite group");
  for (const Elem& rep : x.members)
    for (const Elem& ce : c.elems) elems.push_back(g->mul(ce, rep));
  FiniteSubset out = FiniteSubset::of(g, std::move(elems));
  if (out.elems.size() != c.elems.size() * x.members.size())
    fail(ErrorKind::Internal, "saturate: cosets are not disjoint");
  return out;
}

namespace {

// Canonical orbit representatives of size-k subsets of an infinite model
// within ball(radius), materialized. Used by admissible_sets; the census
// uses the counting-only scans below.
std::vector<std::vector<Elem>> canonical_window_reps(const GroupPtr& g,
                                                     const Window& w,
                                                     const Caps& caps) {
  std::vector<Elem> ball = g->ball(w.radius);
  Elem id = g->identity();
  // drop the identity; every canonical rep contains it
  std::vector<Elem> rest;
  for (const Elem& e : ball)
    if (!(e == id)) rest.push_back(e);

  std::vector<std::vector<Elem>> out;
  std::vector<Elem> cur{id};
  std::function<void(size_t)> rec = [&](size_t start) {
    if (cur.size() >= 2) {
      FiniteSubset fs = FiniteSubset::of(g, cur);
      if (canonical_rep(fs).elems == fs.elems) {
        out.push_back(fs.elems);
        if (static_cast<long long>(out.size()) > caps.class_list)
          fail(ErrorKind::CapExceeded, "orbit class list exceeds cap");
      }
    }
    if (cur.size() >= static_cast<size_t>(w.max_size)) return;
    for (size_t i = start; i < rest.size(); ++i) {
      cur.push_back(rest[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  out.push_back({id});  // the singleton class
  rec(0);
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return elem_list_less(*g, a, b);
  });
  return out;
}

}  // namespace

std::vector<CosetSubset> admissible_sets(const Subgroup& c, const Window& window,
                                         const Caps& caps) {
  const GroupPtr& g = c.parent;
  if (!g->is_finite()) {
    if (!c.is_trivial())
      fail(ErrorKind::Unsupported,
           "admissible sets for a nontrivial subgroup of an infinite model");
    CosetSpace sp = coset_space(c);
    std::vector<CosetSubset> out;
    for (auto& elems : canonical_window_reps(g, window, caps))
      out.push_back(CosetSubset{sp, std::move(elems)});
    return out;
  }

  CosetSpace sp = coset_space(c);
  int nc = static_cast<int>(sp.size());
  if (nc >= 62 || (1LL << nc) > caps.subset_enum)
    fail(ErrorKind::CapExceeded, "2^|C\\Gamma| exceeds subset enumeration cap");

  // stabilizer criterion
  std::vector<uint64_t> by_stab;
  for (uint64_t mask = 1; mask < (1ULL << nc); ++mask) {
    std::vector<Elem> members;
    for (int i = 0; i < nc; ++i)
      if (mask & (1ULL << i)) members.push_back(sp.reps[i]);
    CosetSubset x{sp, members};
    Subgroup stab = stabilizer(saturate(c, x));
    Subgroup cfull = c;  // compare as element sets
    if (stab.same_as(cfull)) by_stab.push_back(mask);
  }

  // definition criterion: exclude X = pi_D^-1(pi_D(X)) for finite D strictly
  // containing C
  std::vector<Subgroup> supers;
  for (const Subgroup& d : all_subgroups(g, caps)) {
    if (d.order() <= c.order()) continue;
    bool contains_c = std::all_of(c.elems.begin(), c.elems.end(),
                                  [&](const Elem& e) { return d.contains(e); });
    if (contains_c) supers.push_back(d);
  }
  // fibers of pi_D: C\Gamma partitioned by the coarse representative
  std::vector<std::vector<uint64_t>> fibers_per_super;
  for (const Subgroup& d : supers) {
    CosetSpace coarse = coset_space(d);
    std::map<std::vector<int32_t>, uint64_t> fibers;
    for (int i = 0; i < nc; ++i)
      fibers[coarse.rep_of(sp.reps[i]).v] |= 1ULL << i;
    std::vector<uint64_t> masks;
    for (const auto& [img, fm] : fibers) masks.push_back(fm);
    fibers_per_super.push_back(std::move(masks));
  }
  std::vector<uint64_t> by_def;
  for (uint64_t mask = 1; mask < (1ULL << nc); ++mask) {
    bool pulled_back = false;
    for (const auto& fibers : fibers_per_super) {
      uint64_t fiber_union = 0;
      for (uint64_t fm : fibers)
        if (mask & fm) fiber_union |= fm;
      if (fiber_union == mask) { pulled_back = true; break; }
    }
    if (!pulled_back) by_def.push_back(mask);
  }

  if (by_stab != by_def)
    fail(ErrorKind::Internal,
         "admissible-set criteria disagree (stabilizer vs definition)");

  std::vector<CosetSubset> out;
  for (uint64_t mask : by_stab) {
    std::vector<Elem> members;
    for (int i = 0; i < nc; ++i)
      if (mask & (1ULL << i)) members.push_back(sp.reps[i]);
    out.push_back(CosetSubset{sp, std::move(members)});
  }
  return out;
}

std::vector<CosetOrbit> normalizer_orbits(const Subgroup& c,
                                          const std::vector<CosetSubset>& sets) {
  const GroupPtr& g = c.parent;
  if (sets.empty()) return {};
  const CosetSpace& sp = sets[0].space;

  if (!g->is_finite()) {
    // N_C = Gamma and the sets are already canonical orbit representatives.
    std::vector<CosetOrbit> out;
    std::set<std::vector<std::vector<int32_t>>> dedupe;  // raw payload key
    for (const CosetSubset& x : sets) {
      FiniteSubset fs{g, x.members};
      FiniteSubset rep = canonical_rep(fs);
      std::vector<std::vector<int32_t>> k;
      for (const Elem& e : rep.elems) k.push_back(e.v);
      if (dedupe.insert(k).second)
        out.push_back(CosetOrbit{CosetSubset{sp, rep.elems}, 0});
    }
    return out;
  }

  Subgroup n = normalizer(c);
  auto key = [&](const std::vector<Elem>& v) {
    std::vector<int32_t> k;
    for (const Elem& e : v) k.push_back(e.v[0]);
    return k;
  };
  std::set<std::vector<int32_t>> seen;
  std::vector<CosetOrbit> out;
  for (const CosetSubset& x : sets) {
    if (seen.count(key(x.members))) continue;
    // orbit of X under left multiplication by N_C
    std::set<std::vector<int32_t>> orbit;
    std::vector<Elem> best = x.members;
    for (const Elem& nelem : n.elems) {
      std::vector<Elem> img;
      for (const Elem& m : x.members) img.push_back(sp.rep_of(g->mul(nelem, m)));
      std::sort(img.begin(), img.end(), ElemLess{g.get()});
      if (elem_list_less(*g, img, best)) best = img;
      orbit.insert(key(img));
    }
    for (const auto& k : orbit) seen.insert(k);
    out.push_back(CosetOrbit{CosetSubset{sp, std::move(best)},
                             static_cast<long long>(orbit.size())});
  }
  std::sort(out.begin(), out.end(), [&](const CosetOrbit& a, const CosetOrbit& b) {
    if (a.rep.members.size() != b.rep.members.size())
      return a.rep.members.size() < b.rep.members.size();
    return elem_list_less(*g, a.rep.members, b.rep.members);
  });
  return out;
}

std::vector<LabelOrbit> label_orbits(const Subgroup& c, const FiniteSubset& domain,
                                     int m, const Caps& caps) {
  if (m < 1) fail(ErrorKind::Parse, "label codomain must be non-empty");
  const GroupPtr& g = domain.parent;
  {
    Subgroup stab = stabilizer(domain);
    if (!stab.same_as(c))
      fail(ErrorKind::Parse, "label_orbits requires C = Stab(domain)");
  }
  size_t dsz = domain.size();
  long long total = 1;
  for (size_t i = 0; i < dsz; ++i) {
    total *= m;
    if (total > caps.label_enum)
      fail(ErrorKind::CapExceeded, "m^|domain| exceeds label enumeration cap");
  }

  // acting permutations of domain positions: perm[c][i] = pos(c^-1 * e_i)
  std::vector<std::vector<int>> perms;
  ElemLess lt{g.get()};
  auto pos_of = [&](const Elem& e) {
    auto it = std::lower_bound(domain.elems.begin(), domain.elems.end(), e, lt);
    if (it == domain.elems.end() || !(*it == e))
      fail(ErrorKind::Internal, "C does not permute the label domain");
    return static_cast<int>(it - domain.elems.begin());
  };
  std::vector<Elem> acting = c.elems;
  if (c.whole_group && !g->is_finite()) acting = {g->identity()};
  for (const Elem& ce : acting) {
    Elem ci = g->inv(ce);
    std::vector<int> p(dsz);
    for (size_t i = 0; i < dsz; ++i) p[i] = pos_of(g->mul(ci, domain.elems[i]));
    // left translation acts freely: only the identity fixes a point
    bool is_id = ce == g->identity();
    for (size_t i = 0; i < dsz && !is_id; ++i)
      if (p[i] == static_cast<int>(i))
        fail(ErrorKind::Internal, "C does not act freely on C.X");
    perms.push_back(std::move(p));
  }

  auto decode = [&](long long code) {
    std::vector<int> vals(dsz);
    for (size_t i = 0; i < dsz; ++i) { vals[i] = static_cast<int>(code % m) + 1; code /= m; }
    return vals;
  };
  auto encode = [&](const std::vector<int>& vals) {
    long long code = 0;
    for (size_t i = dsz; i-- > 0;) code = code * m + (vals[i] - 1);
    return code;
  };
  auto apply = [&](const std::vector<int>& p, const std::vector<int>& vals) {
    std::vector<int> out(dsz);
    for (size_t i = 0; i < dsz; ++i) out[i] = vals[p[i]];
    return out;
  };

  std::vector<char> seen(total, 0);
  std::vector<LabelOrbit> out;
  for (long long code = 0; code < total; ++code) {
    if (seen[code]) continue;
    std::vector<long long> orbit{code};
    seen[code] = 1;
    for (size_t head = 0; head < orbit.size(); ++head) {
      std::vector<int> vals = decode(orbit[head]);
      for (const auto& p : perms) {
        long long img = encode(apply(p, vals));
        if (!seen[img]) { seen[img] = 1; orbit.push_back(img); }
      }
    }
    long long rep_code = *std::min_element(orbit.begin(), orbit.end());
    std::vector<int> rep_vals = decode(rep_code);
    // Stab_C(phi)
    std::vector<Elem> stab_elems;
    for (size_t k = 0; k < acting.size(); ++k)
      if (apply(perms[k], rep_vals) == rep_vals) stab_elems.push_back(acting[k]);
    LabelOrbit lo;
    lo.rep = LabelFunction{domain, m, std::move(rep_vals)};
    lo.stabilizer = Subgroup::from_elements(g, std::move(stab_elems));
    lo.orbit_size = static_cast<long long>(orbit.size());
    if (lo.orbit_size * lo.stabilizer.order() !=
        static_cast<long long>(acting.size()))
      fail(ErrorKind::Internal, "orbit-stabilizer mismatch in label_orbits");
    out.push_back(std::move(lo));
  }

  // Burnside cross-check: |orbits| = (1/|C|) sum_c m^{cycles(c)}
  {
    bigint weighted = 0;
    for (const auto& p : perms) {
      int cycles = 0;
      std::vector<char> vis(dsz, 0);
      for (size_t i = 0; i < dsz; ++i) {
        if (vis[i]) continue;
        ++cycles;
        for (size_t j = i; !vis[j]; j = p[j]) vis[j] = 1;
      }
      bigint pw = 1;
      for (int i = 0; i < cycles; ++i) pw *= m;
      weighted += pw;
    }
    if (weighted != bigint(out.size()) * static_cast<long long>(acting.size()))
      fail(ErrorKind::Internal, "Burnside cross-check failed in label_orbits");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Census

namespace {

long long binom_capped(long long n, long long k, long long cap) {
  if (k < 0 || k > n) return 0;
  bigint r = 1;
  for (long long i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
    if (r > cap) return cap + 1;
  }
  return static_cast<long long>(r);
}

// Strict shortlex rank of a reduced word (identity has rank 0).
long long shortlex_rank(int k, const std::vector<int32_t>& w) {
  auto key = [](int32_t g) { return 2 * (std::abs(g) - 1) + (g < 0 ? 1 : 0); };
  int L = static_cast<int>(w.size());
  if (L == 0) return 0;
  long long offset = free_ball_size(k, L - 1);
  long long pos = 0;
  long long width = 1;  // (2k-1)^(remaining letters)
  for (int i = 1; i < L; ++i) width *= (2 * k - 1);
  for (int i = 0; i < L; ++i) {
    int kk = key(w[i]);
    if (i > 0) {
      int forb = key(-w[i - 1]);
      if (kk > forb) --kk;  // rank among the 2k-1 allowed letters
    }
    pos += kk * width;
    if (i + 1 < L) width /= (2 * k - 1);
  }
  return offset + pos;
}

// Counting-only canonical-class scan for free models, using a precomputed
// translate-rank table over the ball.
std::vector<long long> census_free(const GroupPtr& g, int max_size, int radius,
                                   const Caps& caps) {
  if (max_size > 8)
    fail(ErrorKind::CapExceeded, "free-group census supports sizes up to 8");
  int k = g->param();
  std::vector<Elem> ball = g->ball(radius);
  int B = static_cast<int>(ball.size());
  // P[f][x] = shortlex rank of ball[f]^-1 * ball[x]; ranks < B index the ball
  std::vector<int32_t> P(static_cast<size_t>(B) * B);
  for (int f = 0; f < B; ++f) {
    Elem fi = g->inv(ball[f]);
    for (int x = 0; x < B; ++x)
      P[static_cast<size_t>(f) * B + x] =
          static_cast<int32_t>(shortlex_rank(k, g->mul(fi, ball[x]).v));
  }
  auto rank_of = [&](int f, int x) { return P[static_cast<size_t>(f) * B + x]; };

  // subset = {0 = identity, s[0], ..., s[c-1]} as ball ranks, ascending.
  // canonical iff no translate is lexicographically smaller.
  auto is_canonical = [&](const int32_t* s, int c) {
    int32_t t[8];
    for (int j = 0; j < c; ++j) {
      int f = s[j];
      int tn = 0;
      // translated nonzero ranks: f^-1 * {0, s...} minus the zero at x=f
      int32_t r0 = rank_of(f, 0);
      t[tn++] = r0;
      for (int i = 0; i < c; ++i) {
        if (i == j) continue;
        t[tn++] = rank_of(f, s[i]);
      }
      std::sort(t, t + tn);
      // compare (0, t...) against (0, s...)
      bool smaller = false, larger = false;
      for (int i = 0; i < tn && !smaller && !larger; ++i) {
        if (t[i] < s[i]) smaller = true;
        else if (t[i] > s[i]) larger = true;
      }
      if (smaller) return false;
    }
    return true;
  };

  std::vector<long long> counts(static_cast<size_t>(max_size) + 1, 0);
  if (max_size >= 1) counts[1] = 1;
  long long total = 1;
  std::vector<int32_t> s(std::max(0, max_size - 1));
  // canonicality is not hereditary, so supersets of non-canonical prefixes
  // are still enumerated
  std::function<void(int, int)> rec = [&](int depth, int start) {
    if (depth > 0 && is_canonical(s.data(), depth)) {
      ++counts[depth + 1];
      if (++total > caps.census_classes)
        fail(ErrorKind::CapExceeded, "census class count exceeds cap");
    }
    if (depth == max_size - 1) return;
    for (int i = start; i < B; ++i) {
      s[depth] = static_cast<int32_t>(i);
      rec(depth + 1, i + 1);
    }
  };
  if (max_size >= 2) rec(0, 1);
  return counts;
}

}  // namespace

std::vector<long long> census(const GroupPtr& gamma, int max_size, int radius,
                              const Caps& caps) {
  if (gamma->is_finite())
    fail(ErrorKind::Unsupported, "census requires an infinite torsion-free model");
  if (max_size < 1) fail(ErrorKind::Parse, "census size bound must be >= 1");

  if (gamma->kind() == GroupModel::Kind::Lattice) {
    // Lexicographic order on Z^d is translation-invariant, so the canonical
    // representative of [F] is F - lexmax(F): exactly the subsets whose
    // lex-maximal element is 0. Count subsets of the lex-negative half-ball.
    long long neg = (lattice_ball_size(gamma->param(), radius) - 1) / 2;
    std::vector<long long> counts(static_cast<size_t>(max_size) + 1, 0);
    for (int k = 1; k <= max_size; ++k) {
      counts[k] = binom_capped(neg, k - 1, caps.census_classes);
      if (counts[k] > caps.census_classes)
        fail(ErrorKind::CapExceeded, "census class count exceeds cap");
    }
    return counts;
  }
  return census_free(gamma, max_size, radius, caps);
}

}  // namespace lampk
