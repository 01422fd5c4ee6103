#include "lampk/group.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>

#include "lampk/errors.hpp"

namespace lampk {

namespace {

long long checked_pow(long long base, long long exp, long long cap) {
  long long r = 1;
  for (long long i = 0; i < exp; ++i) {
    if (r > cap / base + 1) return cap + 1;
    r *= base;
    if (r > cap) return cap + 1;
  }
  return r;
}

// Shortlex key of a free-group letter: a1 < a1^-1 < a2 < a2^-1 < ...
int letter_key(int32_t g) { return 2 * (std::abs(g) - 1) + (g < 0 ? 1 : 0); }

}  // namespace

struct GroupModel::Impl {
  // FiniteTable
  std::vector<uint16_t> table;
  std::vector<uint16_t> inv_table;
  std::vector<std::string> names;
  long long order = 0;
  int identity_idx = 0;

  // Wreath
  GroupPtr sigma, gamma;
  int sig_n = 0, gam_n = 0;
  std::vector<std::vector<int>> sig_mul, gam_mul;
  std::vector<int> sig_inv, gam_inv;

  std::vector<Elem> generators;  // finite kinds, computed at construction
};

GroupModel::GroupModel() : kind_(Kind::FiniteTable), impl_(std::make_unique<Impl>()) {}
GroupModel::~GroupModel() = default;

long long GroupModel::order() const {
  if (!is_finite()) fail(ErrorKind::Unsupported, "order() of an infinite model");
  return impl_->order;
}

Elem GroupModel::identity() const {
  switch (kind_) {
    case Kind::FiniteTable:
      return Elem{{impl_->identity_idx}};
    case Kind::Wreath:
      return Elem{{0}};
    case Kind::Lattice:
      return Elem{std::vector<int32_t>(param_, 0)};
    case Kind::Free:
      return Elem{{}};
  }
  fail(ErrorKind::Internal, "bad kind");
}

Elem GroupModel::mul(const Elem& a, const Elem& b) const {
  switch (kind_) {
    case Kind::FiniteTable:
      return Elem{{static_cast<int32_t>(
          impl_->table[static_cast<size_t>(a.v[0]) * impl_->order + b.v[0]])}};
    case Kind::Wreath: {
      const Impl& im = *impl_;
      long long ca = a.v[0], cb = b.v[0];
      int ga = static_cast<int>(ca % im.gam_n), gb = static_cast<int>(cb % im.gam_n);
      long long fa = ca / im.gam_n, fb = cb / im.gam_n;
      // decode label functions (base sig_n digits over Gamma index order)
      std::vector<int> da(im.gam_n), db(im.gam_n);
      for (int i = 0; i < im.gam_n; ++i) { da[i] = static_cast<int>(fa % im.sig_n); fa /= im.sig_n; }
      for (int i = 0; i < im.gam_n; ++i) { db[i] = static_cast<int>(fb % im.sig_n); fb /= im.sig_n; }
      const std::vector<int>& shift = im.gam_mul[im.gam_inv[ga]];
      long long fc = 0, p = 1;
      for (int x = 0; x < im.gam_n; ++x) {
        int digit = im.sig_mul[da[x]][db[shift[x]]];  // (f . (a |> g))(x) = f(x) g(a^-1 x)
        fc += digit * p;
        p *= im.sig_n;
      }
      int gc = im.gam_mul[ga][gb];
      return Elem{{static_cast<int32_t>(fc * im.gam_n + gc)}};
    }
    case Kind::Lattice: {
      Elem c = a;
      for (int i = 0; i < param_; ++i) c.v[i] += b.v[i];
      return c;
    }
    case Kind::Free: {
      Elem c = a;
      for (int32_t x : b.v) {
        if (!c.v.empty() && c.v.back() == -x)
          c.v.pop_back();
        else
          c.v.push_back(x);
      }
      return c;
    }
  }
  fail(ErrorKind::Internal, "bad kind");
}

Elem GroupModel::inv(const Elem& a) const {
  switch (kind_) {
    case Kind::FiniteTable:
      return Elem{{static_cast<int32_t>(impl_->inv_table[a.v[0]])}};
    case Kind::Wreath: {
      const Impl& im = *impl_;
      long long ca = a.v[0];
      int ga = static_cast<int>(ca % im.gam_n);
      long long fa = ca / im.gam_n;
      std::vector<int> da(im.gam_n);
      for (int i = 0; i < im.gam_n; ++i) { da[i] = static_cast<int>(fa % im.sig_n); fa /= im.sig_n; }
      int gi = im.gam_inv[ga];
      const std::vector<int>& shift = im.gam_mul[ga];
      long long fc = 0, p = 1;
      for (int x = 0; x < im.gam_n; ++x) {
        int digit = im.sig_inv[da[shift[x]]];  // h(x) = f(a x)^-1
        fc += digit * p;
        p *= im.sig_n;
      }
      return Elem{{static_cast<int32_t>(fc * im.gam_n + gi)}};
    }
    case Kind::Lattice: {
      Elem c = a;
      for (auto& x : c.v) x = -x;
      return c;
    }
    case Kind::Free: {
      Elem c;
      c.v.reserve(a.v.size());
      for (auto it = a.v.rbegin(); it != a.v.rend(); ++it) c.v.push_back(-*it);
      return c;
    }
  }
  fail(ErrorKind::Internal, "bad kind");
}

bool GroupModel::less(const Elem& a, const Elem& b) const {
  switch (kind_) {
    case Kind::FiniteTable:
    case Kind::Wreath:
      return a.v[0] < b.v[0];
    case Kind::Lattice:
      return a.v < b.v;  // coordinatewise lexicographic
    case Kind::Free: {
      if (a.v.size() != b.v.size()) return a.v.size() < b.v.size();
      for (size_t i = 0; i < a.v.size(); ++i)
        if (a.v[i] != b.v[i]) return letter_key(a.v[i]) < letter_key(b.v[i]);
      return false;
    }
  }
  fail(ErrorKind::Internal, "bad kind");
}

std::string GroupModel::name(const Elem& a) const {
  switch (kind_) {
    case Kind::FiniteTable:
      return impl_->names[a.v[0]];
    case Kind::Wreath: {
      const Impl& im = *impl_;
      long long ca = a.v[0];
      int ga = static_cast<int>(ca % im.gam_n);
      long long fa = ca / im.gam_n;
      std::string s = "(";
      for (int i = 0; i < im.gam_n; ++i) {
        if (i) s += ",";
        s += std::to_string(fa % im.sig_n);
        fa /= im.sig_n;
      }
      s += ";" + std::to_string(ga) + ")";
      return s;
    }
    case Kind::Lattice: {
      std::string s = "(";
      for (int i = 0; i < param_; ++i) {
        if (i) s += ",";
        s += std::to_string(a.v[i]);
      }
      return s + ")";
    }
    case Kind::Free: {
      if (a.v.empty()) return "e";
      std::string s;
      for (int32_t g : a.v) {
        char c = static_cast<char>('a' + std::abs(g) - 1);
        s += (g > 0) ? c : static_cast<char>(std::toupper(c));
      }
      return s;
    }
  }
  fail(ErrorKind::Internal, "bad kind");
}

std::vector<Elem> GroupModel::elements() const {
  if (!is_finite()) fail(ErrorKind::Unsupported, "elements() of an infinite model");
  std::vector<Elem> out;
  out.reserve(impl_->order);
  for (long long i = 0; i < impl_->order; ++i) out.push_back(Elem{{static_cast<int32_t>(i)}});
  return out;
}

std::vector<Elem> GroupModel::ball(int radius) const {
  if (is_finite()) fail(ErrorKind::Unsupported, "ball() of a finite model");
  if (radius < 0) fail(ErrorKind::Parse, "negative ball radius");
  std::vector<Elem> out;
  if (kind_ == Kind::Lattice) {
    // iterate the grid in lexicographic order
    std::vector<int32_t> v(param_, -radius);
    while (true) {
      out.push_back(Elem{v});
      int i = param_ - 1;
      while (i >= 0 && v[i] == radius) v[i--] = -radius;
      if (i < 0) break;
      ++v[i];
    }
  } else {
    // reduced words by length, each level generated in shortlex order
    std::vector<Elem> level{identity()};
    out.push_back(identity());
    for (int len = 1; len <= radius; ++len) {
      std::vector<Elem> next;
      for (const Elem& w : level)
        for (int key = 0; key < 2 * param_; ++key) {
          int g = key / 2 + 1;
          int32_t letter = (key % 2) ? -g : g;
          if (!w.v.empty() && w.v.back() == -letter) continue;
          Elem e = w;
          e.v.push_back(letter);
          next.push_back(std::move(e));
        }
      out.insert(out.end(), next.begin(), next.end());
      level = std::move(next);
    }
  }
  return out;
}

std::vector<Elem> GroupModel::generators() const {
  if (!is_finite()) fail(ErrorKind::Unsupported, "generators() of an infinite model");
  return impl_->generators;
}

const GroupPtr& GroupModel::wreath_sigma() const {
  if (kind_ != Kind::Wreath) fail(ErrorKind::Internal, "not a wreath model");
  return impl_->sigma;
}
const GroupPtr& GroupModel::wreath_gamma() const {
  if (kind_ != Kind::Wreath) fail(ErrorKind::Internal, "not a wreath model");
  return impl_->gamma;
}

namespace {

// Greedy generating set + closure, on element index codes.
std::vector<int32_t> closure_codes(const GroupModel& g, std::vector<int32_t> seed) {
  long long n = g.order();
  std::vector<char> in(n, 0);
  std::vector<int32_t> out;
  auto add = [&](int32_t x) {
    if (!in[x]) { in[x] = 1; out.push_back(x); }
  };
  add(g.identity().v[0]);
  for (int32_t s : seed) add(s);
  for (size_t head = 0; head < out.size(); ++head) {
    int32_t a = out[head];
    for (size_t j = 0; j < out.size(); ++j) {
      add(g.mul(Elem{{a}}, Elem{{out[j]}}).v[0]);
      add(g.mul(Elem{{out[j]}}, Elem{{a}}).v[0]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void compute_generators(GroupModel::Impl& im, const GroupModel& g) {
  long long n = im.order;
  std::vector<int32_t> gens;
  std::vector<int32_t> cl = closure_codes(g, {});
  while (static_cast<long long>(cl.size()) < n) {
    // smallest element outside the closure
    int32_t pick = -1;
    size_t ci = 0;
    for (int32_t x = 0; x < n; ++x) {
      while (ci < cl.size() && cl[ci] < x) ++ci;
      if (ci >= cl.size() || cl[ci] != x) { pick = x; break; }
    }
    gens.push_back(pick);
    cl = closure_codes(g, gens);
  }
  im.generators.clear();
  for (int32_t x : gens) im.generators.push_back(Elem{{x}});
  if (im.generators.empty()) im.generators.push_back(g.identity());
}

void validate_table_group(const GroupModel& g) {
  long long n = g.order();
  // sampled associativity (full check for small orders)
  auto check = [&](int32_t a, int32_t b, int32_t c) {
    Elem ea{{a}}, eb{{b}}, ec{{c}};
    if (!(g.mul(g.mul(ea, eb), ec) == g.mul(ea, g.mul(eb, ec))))
      fail(ErrorKind::Parse, "multiplication table is not associative");
  };
  if (n <= 16) {
    for (int32_t a = 0; a < n; ++a)
      for (int32_t b = 0; b < n; ++b)
        for (int32_t c = 0; c < n; ++c) check(a, b, c);
  } else {
    uint64_t state = 0x9e3779b97f4a7c15ull;
    for (int i = 0; i < 2000; ++i) {
      auto next = [&]() {
        state ^= state << 13; state ^= state >> 7; state ^= state << 17;
        return static_cast<int32_t>(state % n);
      };
      check(next(), next(), next());
    }
  }
}

}  // namespace

GroupPtr GroupModel::from_table(std::vector<std::vector<int>> table,
                                std::vector<std::string> names, const Caps& caps) {
  long long n = static_cast<long long>(table.size());
  if (n == 0) fail(ErrorKind::Parse, "empty multiplication table");
  if (n > caps.group_order)
    fail(ErrorKind::CapExceeded,
         "group order " + std::to_string(n) + " exceeds cap " + std::to_string(caps.group_order));
  // Latin square check
  for (const auto& row : table)
    if (static_cast<long long>(row.size()) != n)
      fail(ErrorKind::Parse, "multiplication table is not square");
  for (long long i = 0; i < n; ++i) {
    std::vector<char> seen_row(n, 0), seen_col(n, 0);
    for (long long j = 0; j < n; ++j) {
      int r = table[i][j], c = table[j][i];
      if (r < 0 || r >= n || c < 0 || c >= n)
        fail(ErrorKind::Parse, "table entry out of range");
      if (seen_row[r]++ || seen_col[c]++)
        fail(ErrorKind::Parse, "multiplication table is not a Latin square");
    }
  }
  // identity
  int e = -1;
  for (long long i = 0; i < n && e < 0; ++i) {
    bool ok = true;
    for (long long j = 0; j < n; ++j)
      if (table[i][j] != j || table[j][i] != j) { ok = false; break; }
    if (ok) e = static_cast<int>(i);
  }
  if (e < 0) fail(ErrorKind::Parse, "multiplication table has no identity");

  auto g = std::shared_ptr<GroupModel>(new GroupModel());
  g->kind_ = Kind::FiniteTable;
  g->descriptor_ = "table(" + std::to_string(n) + ")";
  Impl& im = *g->impl_;
  im.order = n;
  im.identity_idx = e;
  im.table.resize(n * n);
  for (long long i = 0; i < n; ++i)
    for (long long j = 0; j < n; ++j) im.table[i * n + j] = static_cast<uint16_t>(table[i][j]);
  im.inv_table.resize(n);
  for (long long i = 0; i < n; ++i) {
    int found = -1;
    for (long long j = 0; j < n; ++j)
      if (table[i][j] == e) { found = static_cast<int>(j); break; }
    if (found < 0) fail(ErrorKind::Parse, "table element without inverse");
    im.inv_table[i] = static_cast<uint16_t>(found);
  }
  if (names.empty()) {
    for (long long i = 0; i < n; ++i)
      names.push_back(i == e ? "e" : "g" + std::to_string(i));
  }
  if (static_cast<long long>(names.size()) != n)
    fail(ErrorKind::Parse, "name list length mismatch");
  im.names = std::move(names);
  validate_table_group(*g);
  compute_generators(im, *g);
  return g;
}

GroupPtr GroupModel::wreath_product(const GroupPtr& sigma, const GroupPtr& gamma,
                                    const Caps& caps) {
  if (!sigma->is_finite() || !gamma->is_finite())
    fail(ErrorKind::Unsupported, "wreath product requires finite factors");
  long long sn = sigma->order(), gn = gamma->order();
  long long pw = checked_pow(sn, gn, caps.group_order);
  if (pw > caps.group_order || pw * gn > caps.group_order)
    fail(ErrorKind::CapExceeded, "wreath product order exceeds cap " +
                                     std::to_string(caps.group_order));
  auto g = std::shared_ptr<GroupModel>(new GroupModel());
  g->kind_ = Kind::Wreath;
  g->descriptor_ = "wreath(" + sigma->descriptor() + "," + gamma->descriptor() + ")";
  Impl& im = *g->impl_;
  im.sigma = sigma;
  im.gamma = gamma;
  im.sig_n = static_cast<int>(sn);
  im.gam_n = static_cast<int>(gn);
  im.order = pw * gn;
  im.sig_mul.assign(sn, std::vector<int>(sn));
  im.gam_mul.assign(gn, std::vector<int>(gn));
  im.sig_inv.resize(sn);
  im.gam_inv.resize(gn);
  for (int i = 0; i < sn; ++i) {
    for (int j = 0; j < sn; ++j)
      im.sig_mul[i][j] = sigma->mul(Elem{{i}}, Elem{{j}}).v[0];
    im.sig_inv[i] = sigma->inv(Elem{{i}}).v[0];
  }
  for (int i = 0; i < gn; ++i) {
    for (int j = 0; j < gn; ++j)
      im.gam_mul[i][j] = gamma->mul(Elem{{i}}, Elem{{j}}).v[0];
    im.gam_inv[i] = gamma->inv(Elem{{i}}).v[0];
  }
  // identity sanity: sigma identity digit must be index of sigma's identity.
  // Element codes assume digit value = sigma element index, so the identity
  // code is built from sigma->identity().
  if (sigma->identity().v[0] != 0 || gamma->identity().v[0] != 0) {
    // re-normalize is not worth it: constructed models always put e at 0;
    // user tables with e elsewhere are rejected here.
    fail(ErrorKind::Unsupported, "wreath factors must have identity at index 0");
  }
  compute_generators(im, *g);
  return g;
}

namespace {

std::vector<std::string> split_product(const std::string& s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == 'x' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  size_t b = s.find_last_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

GroupPtr make_cyclic(int n, const Caps& caps) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    names.push_back(i == 0 ? "e" : "g" + std::to_string(i));
  }
  return GroupModel::from_table(std::move(t), std::move(names), caps);
}

GroupPtr make_symmetric(int n, const Caps& caps) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  long long ord = static_cast<long long>(perms.size());
  if (ord > caps.group_order)
    fail(ErrorKind::CapExceeded, "symmetric group order exceeds cap");
  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> t(ord, std::vector<int>(ord));
  std::vector<std::string> names;
  for (long long i = 0; i < ord; ++i) {
    for (long long j = 0; j < ord; ++j) {
      std::vector<int> comp(n);
      for (int x = 0; x < n; ++x) comp[x] = perms[i][perms[j][x]];  // (p*q)(x) = p(q(x))
      t[i][j] = index[comp];
    }
    std::string s = "[";
    for (int x = 0; x < n; ++x) s += std::to_string(perms[i][x]);
    names.push_back(s + "]");
  }
  return GroupModel::from_table(std::move(t), std::move(names), caps);
}

GroupPtr make_dihedral(int n, const Caps& caps) {
  // (i, s): x -> i + (-1)^s x mod n; index = i + n*s
  int ord = 2 * n;
  auto idx = [&](int i, int s) { return ((i % n) + n) % n + n * s; };
  std::vector<std::vector<int>> t(ord, std::vector<int>(ord));
  std::vector<std::string> names;
  for (int s = 0; s < 2; ++s)
    for (int i = 0; i < n; ++i)
      for (int s2 = 0; s2 < 2; ++s2)
        for (int i2 = 0; i2 < n; ++i2)
          t[idx(i, s)][idx(i2, s2)] = idx(i + (s ? -i2 : i2), (s + s2) % 2);
  for (int k = 0; k < ord; ++k) {
    int i = k % n, s = k / n;
    names.push_back(s ? "r" + std::to_string(i) + "s"
                      : (i == 0 ? "e" : "r" + std::to_string(i)));
  }
  return GroupModel::from_table(std::move(t), std::move(names), caps);
}

GroupPtr make_product(const GroupPtr& a, const GroupPtr& b, const Caps& caps) {
  if (!a->is_finite() || !b->is_finite())
    fail(ErrorKind::Unsupported, "direct products are supported for finite factors only");
  long long na = a->order(), nb = b->order();
  if (na * nb > caps.group_order)
    fail(ErrorKind::CapExceeded, "direct product order exceeds cap");
  long long ord = na * nb;
  std::vector<std::vector<int>> t(ord, std::vector<int>(ord));
  std::vector<std::string> names;
  auto idx = [&](long long i, long long j) { return static_cast<int>(i * nb + j); };
  for (long long i = 0; i < na; ++i)
    for (long long j = 0; j < nb; ++j)
      for (long long i2 = 0; i2 < na; ++i2)
        for (long long j2 = 0; j2 < nb; ++j2)
          t[idx(i, j)][idx(i2, j2)] =
              idx(a->mul(Elem{{static_cast<int32_t>(i)}}, Elem{{static_cast<int32_t>(i2)}}).v[0],
                  b->mul(Elem{{static_cast<int32_t>(j)}}, Elem{{static_cast<int32_t>(j2)}}).v[0]);
  for (long long i = 0; i < na; ++i)
    for (long long j = 0; j < nb; ++j)
      names.push_back("(" + a->name(Elem{{static_cast<int32_t>(i)}}) + "," +
                      b->name(Elem{{static_cast<int32_t>(j)}}) + ")");
  return GroupModel::from_table(std::move(t), std::move(names), caps);
}

GroupPtr make_atom(const std::string& atom, const Caps& caps) {
  size_t lp = atom.find('(');
  if (lp == std::string::npos || atom.back() != ')')
    fail(ErrorKind::Parse, "malformed group descriptor: " + atom);
  std::string head = atom.substr(0, lp);
  std::string arg = atom.substr(lp + 1, atom.size() - lp - 2);
  if (head == "table") {
    nlohmann::json j = nlohmann::json::parse(arg, nullptr, false);
    if (j.is_discarded() || !j.is_array())
      fail(ErrorKind::Parse, "malformed table descriptor");
    std::vector<std::vector<int>> t;
    for (const auto& row : j) {
      if (!row.is_array()) fail(ErrorKind::Parse, "malformed table descriptor");
      t.push_back(row.get<std::vector<int>>());
    }
    return GroupModel::from_table(std::move(t), {}, caps);
  }
  int n;
  try {
    size_t pos = 0;
    n = std::stoi(arg, &pos);
    if (pos != arg.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    fail(ErrorKind::Parse, "malformed group descriptor argument: " + atom);
  }
  if (n < 1) fail(ErrorKind::Parse, "group descriptor parameter must be >= 1");
  GroupPtr g;
  if (head == "cyclic") {
    g = make_cyclic(n, caps);
  } else if (head == "symmetric") {
    g = make_symmetric(n, caps);
  } else if (head == "dihedral") {
    g = make_dihedral(n, caps);
  } else {
    fail(ErrorKind::Parse, "unknown group descriptor: " + head);
  }
  return g;
}

}  // namespace

GroupPtr GroupModel::make(const std::string& descriptor, const Caps& caps) {
  std::string d = strip(descriptor);
  auto parts = split_product(d);
  std::vector<GroupPtr> factors;
  for (auto& p : parts) {
    std::string atom = strip(p);
    // infinite atoms are handled here (they need the private constructor)
    size_t lp = atom.find('(');
    if (lp != std::string::npos && atom.back() == ')') {
      std::string head = atom.substr(0, lp);
      if (head == "lattice" || head == "free") {
        std::string arg = atom.substr(lp + 1, atom.size() - lp - 2);
        int n = 0;
        try {
          size_t pos = 0;
          n = std::stoi(arg, &pos);
          if (pos != arg.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
          fail(ErrorKind::Parse, "malformed group descriptor argument: " + atom);
        }
        if (n < 1) fail(ErrorKind::Parse, "group descriptor parameter must be >= 1");
        auto g = std::shared_ptr<GroupModel>(new GroupModel());
        g->kind_ = (head == "lattice") ? Kind::Lattice : Kind::Free;
        g->param_ = n;
        g->descriptor_ = head + "(" + std::to_string(n) + ")";
        factors.push_back(g);
        continue;
      }
    }
    GroupPtr g = make_atom(atom, caps);
    // keep descriptors faithful to the input atom
    const_cast<GroupModel&>(*g).descriptor_ = atom;
    factors.push_back(g);
  }
  if (factors.empty()) fail(ErrorKind::Parse, "empty group descriptor");
  if (factors.size() == 1) return factors[0];
  GroupPtr acc = factors[0];
  for (size_t i = 1; i < factors.size(); ++i) acc = make_product(acc, factors[i], caps);
  const_cast<GroupModel&>(*acc).descriptor_ = d;
  return acc;
}

// ---------------------------------------------------------------------------
// Subgroup

bool Subgroup::is_trivial() const {
  if (whole_group) return parent->is_finite() && parent->order() == 1;
  return elems.size() == 1;
}

long long Subgroup::order() const {
  if (whole_group) return parent->order();  // errors for infinite parents
  return static_cast<long long>(elems.size());
}

bool Subgroup::contains(const Elem& e) const {
  if (whole_group) return true;
  return std::binary_search(elems.begin(), elems.end(), e, ElemLess{parent.get()});
}

bool Subgroup::same_as(const Subgroup& o) const {
  if (parent->is_finite()) return elems == o.elems;  // whole groups carry full lists
  if (whole_group || o.whole_group) return whole_group == o.whole_group;
  return elems == o.elems;
}

Subgroup Subgroup::trivial(const GroupPtr& g) {
  return Subgroup{g, {g->identity()}, false};
}

Subgroup Subgroup::whole(const GroupPtr& g) {
  Subgroup s{g, {}, true};
  if (g->is_finite()) s.elems = g->elements();
  return s;
}

Subgroup Subgroup::from_elements(const GroupPtr& g, std::vector<Elem> elems) {
  std::sort(elems.begin(), elems.end(), ElemLess{g.get()});
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  Subgroup s{g, std::move(elems), false};
  if (g->is_finite() && static_cast<long long>(s.elems.size()) == g->order())
    s.whole_group = true;
  return s;
}

// ---------------------------------------------------------------------------
// Conjugacy classes

ConjClassSet conjugacy_classes(const GroupPtr& g) {
  if (!g->is_finite())
    fail(ErrorKind::Unsupported, "conjugacy classes of an infinite model");
  long long n = g->order();
  std::vector<Elem> gens = g->generators();
  std::vector<Elem> gen_inv;
  for (const Elem& x : gens) gen_inv.push_back(g->inv(x));
  std::vector<char> seen(n, 0);
  std::vector<std::vector<Elem>> classes;
  for (int32_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<int32_t> orbit{start};
    seen[start] = 1;
    for (size_t head = 0; head < orbit.size(); ++head) {
      Elem x{{orbit[head]}};
      for (size_t k = 0; k < gens.size(); ++k) {
        int32_t y = g->mul(g->mul(gens[k], x), gen_inv[k]).v[0];
        if (!seen[y]) { seen[y] = 1; orbit.push_back(y); }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    std::vector<Elem> cls;
    for (int32_t x : orbit) cls.push_back(Elem{{x}});
    classes.push_back(std::move(cls));
  }
  // identity class first, remaining classes stay sorted by minimal element
  int32_t e = g->identity().v[0];
  for (size_t i = 0; i < classes.size(); ++i) {
    if (std::any_of(classes[i].begin(), classes[i].end(),
                    [&](const Elem& x) { return x.v[0] == e; })) {
      std::rotate(classes.begin(), classes.begin() + i, classes.begin() + i + 1);
      break;
    }
  }
  return ConjClassSet{std::move(classes)};
}

long long subgroup_class_count(const Subgroup& h) {
  if (h.whole_group && h.parent->is_finite() && h.elems.empty())
    return static_cast<long long>(conjugacy_classes(h.parent).count());
  if (h.whole_group && !h.parent->is_finite())
    fail(ErrorKind::Unsupported, "class count of a whole infinite group");
  const GroupModel& g = *h.parent;
  ElemLess lt{&g};
  std::set<Elem, ElemLess> done(lt);
  long long count = 0;
  for (const Elem& x : h.elems) {
    if (done.count(x)) continue;
    std::vector<Elem> cls;
    for (const Elem& c : h.elems) cls.push_back(g.mul(g.mul(c, x), g.inv(c)));
    std::sort(cls.begin(), cls.end(), lt);
    cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
    for (const Elem& y : cls) done.insert(y);
    ++count;
  }
  return count;
}

// ---------------------------------------------------------------------------
// Subgroup enumeration

namespace {

std::vector<Elem> subgroup_closure(const GroupModel& g, std::vector<Elem> seed) {
  ElemLess lt{&g};
  std::set<Elem, ElemLess> in(lt);
  std::vector<Elem> out;
  auto add = [&](const Elem& x) {
    if (in.insert(x).second) out.push_back(x);
  };
  add(g.identity());
  for (const Elem& s : seed) add(s);
  for (size_t head = 0; head < out.size(); ++head) {
    Elem a = out[head];
    add(g.inv(a));
    for (size_t j = 0; j <= head; ++j) {
      add(g.mul(a, out[j]));
      add(g.mul(out[j], a));
    }
  }
  std::sort(out.begin(), out.end(), lt);
  return out;
}

}  // namespace

std::vector<Subgroup> all_subgroups(const GroupPtr& g, const Caps& caps) {
  if (!g->is_finite()) fail(ErrorKind::Unsupported, "subgroup enumeration of an infinite model");
  if (g->order() > caps.group_order)
    fail(ErrorKind::CapExceeded, "group order exceeds cap for subgroup enumeration");
  auto key = [](const std::vector<Elem>& v) {
    std::vector<int32_t> k;
    for (const Elem& e : v) k.push_back(e.v[0]);
    return k;
  };
  std::set<std::vector<int32_t>> seen;
  std::vector<std::vector<Elem>> work;
  std::vector<Elem> triv = subgroup_closure(*g, {});
  seen.insert(key(triv));
  work.push_back(triv);
  std::vector<Elem> universe = g->elements();
  for (size_t head = 0; head < work.size(); ++head) {
    std::vector<Elem> h = work[head];
    for (const Elem& x : universe) {
      if (std::binary_search(h.begin(), h.end(), x, ElemLess{g.get()})) continue;
      std::vector<Elem> seed = h;
      seed.push_back(x);
      std::vector<Elem> k = subgroup_closure(*g, seed);
      if (g->order() % static_cast<long long>(k.size()) != 0)
        fail(ErrorKind::Internal, "Lagrange violation in closure");
      if (seen.insert(key(k)).second) work.push_back(k);
    }
  }
  std::vector<Subgroup> out;
  for (const auto& k : seen) {
    std::vector<Elem> elems;
    for (int32_t x : k) elems.push_back(Elem{{x}});
    out.push_back(Subgroup::from_elements(g, std::move(elems)));
  }
  std::sort(out.begin(), out.end(), [&](const Subgroup& a, const Subgroup& b) {
    if (a.elems.size() != b.elems.size()) return a.elems.size() < b.elems.size();
    return key(a.elems) < key(b.elems);
  });
  return out;
}

std::vector<SubgroupClass> finite_subgroup_classes(const GroupPtr& g, const Caps& caps) {
  if (!g->is_finite()) {
    // lattice and free models are torsion-free: only the trivial finite subgroup
    return {SubgroupClass{Subgroup::trivial(g), 1}};
  }
  std::vector<Subgroup> subs = all_subgroups(g, caps);
  auto key = [](const Subgroup& s) {
    std::vector<int32_t> k;
    for (const Elem& e : s.elems) k.push_back(e.v[0]);
    return k;
  };
  std::set<std::vector<int32_t>> used;
  std::vector<SubgroupClass> out;
  std::vector<Elem> universe = g->elements();
  for (const Subgroup& s : subs) {
    if (used.count(key(s))) continue;
    // conjugate s by every group element
    std::set<std::vector<int32_t>> orbit;
    for (const Elem& c : universe) {
      std::vector<Elem> conj;
      Elem ci = g->inv(c);
      for (const Elem& x : s.elems) conj.push_back(g->mul(g->mul(c, x), ci));
      Subgroup t = Subgroup::from_elements(g, std::move(conj));
      orbit.insert(key(t));
    }
    for (const auto& k : orbit) used.insert(k);
    out.push_back(SubgroupClass{s, static_cast<long long>(orbit.size())});
  }
  return out;
}

Subgroup normalizer(const Subgroup& c) {
  const GroupPtr& g = c.parent;
  if (c.is_trivial()) return Subgroup::whole(g);
  if (c.whole_group && g->is_finite()) return Subgroup::whole(g);
  if (!g->is_finite())
    fail(ErrorKind::Unsupported,
         "normalizer of a nontrivial subgroup of an infinite model");
  auto key = [&](const std::vector<Elem>& v) {
    std::vector<int32_t> k;
    for (const Elem& e : v) k.push_back(e.v[0]);
    std::sort(k.begin(), k.end());
    return k;
  };
  std::vector<int32_t> ck = key(c.elems);
  std::vector<Elem> members;
  for (const Elem& x : g->elements()) {
    std::vector<Elem> conj;
    Elem xi = g->inv(x);
    for (const Elem& h : c.elems) conj.push_back(g->mul(g->mul(x, h), xi));
    if (key(conj) == ck) members.push_back(x);
  }
  return Subgroup::from_elements(g, std::move(members));
}

// ---------------------------------------------------------------------------
// Coset spaces

Elem CosetSpace::rep_of(const Elem& g) const {
  if (lazy) return g;
  const GroupModel& G = *parent;
  Elem best = g;
  bool first = true;
  for (const Elem& c : subgroup.elems) {
    Elem cand = G.mul(c, g);
    if (first || G.less(cand, best)) { best = cand; first = false; }
  }
  return best;
}

CosetSpace coset_space(const Subgroup& c) {
  const GroupPtr& g = c.parent;
  CosetSpace sp;
  sp.subgroup = c;
  sp.parent = g;
  if (!g->is_finite()) {
    if (!c.is_trivial())
      fail(ErrorKind::Unsupported, "coset space for nontrivial subgroup of infinite model");
    sp.lazy = true;
    return sp;
  }
  // sanity: C is actually a subgroup of Gamma
  for (const Elem& x : c.elems)
    for (const Elem& y : c.elems)
      if (!c.contains(g->mul(x, y)))
        fail(ErrorKind::Parse, "coset_space: C is not closed under multiplication");
  ElemLess lt{g.get()};
  std::set<Elem, ElemLess> reps(lt);
  for (const Elem& x : g->elements()) reps.insert(sp.rep_of(x));
  sp.reps.assign(reps.begin(), reps.end());
  return sp;
}

Elem coset_project(const CosetSpace& fine, const CosetSpace& coarse, const Elem& rep) {
  (void)fine;
  return coarse.rep_of(rep);
}

long long lattice_ball_size(int d, int r) {
  long long s = 1;
  for (int i = 0; i < d; ++i) s *= (2LL * r + 1);
  return s;
}

long long free_ball_size(int k, int r) {
  if (k == 1) return 2LL * r + 1;
  // 1 + 2k((2k-1)^r - 1)/(2k-2)
  long long p = 1;
  for (int i = 0; i < r; ++i) p *= (2LL * k - 1);
  return 1 + 2LL * k * (p - 1) / (2LL * k - 2);
}

}  // namespace lampk
