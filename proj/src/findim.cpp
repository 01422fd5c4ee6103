#include "lampk/findim.hpp"

#include <algorithm>
#include <numeric>

#include "lampk/errors.hpp"

namespace lampk {

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

void require_concrete(const FinDimAlgebra& a, const char* what) {
  if (a.symbolic())
    fail(ErrorKind::Unsupported,
         std::string(what) + " requires concrete block sizes");
}

// The cap bounds the diagonal-lattice representation (diag_dim^t positions);
// dense (sum k_i^2)^t matrices are never materialized.
void check_tensor_cap(const FinDimAlgebra& a, int t, const Caps& caps) {
  long long dim = 1;
  for (int i = 0; i < t; ++i) {
    dim *= a.diag_dim();
    if (dim > caps.tensor_dim)
      fail(ErrorKind::CapExceeded,
           "tensor power needs " + std::to_string(dim) +
               " diagonal positions, cap is " + std::to_string(caps.tensor_dim));
  }
}

// Offsets of the per-factor diagonal positions: block i occupies
// [off[i], off[i] + k_i).
std::vector<int> diag_offsets(const FinDimAlgebra& a) {
  std::vector<int> off;
  int acc = 0;
  for (int k : a.block_sizes) {
    off.push_back(acc);
    acc += k;
  }
  return off;
}

// block index of a per-factor diagonal position
std::vector<int> diag_blocks(const FinDimAlgebra& a) {
  std::vector<int> b;
  for (int i = 0; i < a.blocks(); ++i)
    for (int j = 0; j < a.block_sizes[i]; ++j) b.push_back(i);
  return b;
}

}  // namespace

long long FinDimAlgebra::dimension() const {
  long long d = 0;
  for (int k : block_sizes) d += static_cast<long long>(k) * k;
  return d;
}

int FinDimAlgebra::diag_dim() const {
  return std::accumulate(block_sizes.begin(), block_sizes.end(), 0);
}

bool BlockElement::is_projection() const {
  return std::all_of(diag.begin(), diag.end(),
                     [](int x) { return x == 0 || x == 1; });
}

BlockElement BlockElement::product(const BlockElement& o) const {
  if (tensor_factors != o.tensor_factors || diag.size() != o.diag.size())
    fail(ErrorKind::Internal, "block element shape mismatch");
  BlockElement out = *this;
  for (size_t i = 0; i < diag.size(); ++i) out.diag[i] = diag[i] * o.diag[i];
  return out;
}

bool BlockElement::is_zero() const {
  return std::all_of(diag.begin(), diag.end(), [](int x) { return x == 0; });
}

FinDimAlgebra validate_algebra(std::vector<int> block_sizes) {
  if (block_sizes.empty()) fail(ErrorKind::Parse, "empty block size list");
  for (int k : block_sizes)
    if (k < 1) fail(ErrorKind::Parse, "block sizes must be positive");
  if (std::find(block_sizes.begin(), block_sizes.end(), 1) == block_sizes.end())
    fail(ErrorKind::Unsupported,
         "no size-1 block: the method requires a C direct summand "
         "(for A = M_2 the tensor power is a UHF algebra and K0 is not free)");
  std::sort(block_sizes.begin(), block_sizes.end());
  return FinDimAlgebra{std::move(block_sizes), 0};
}

FinDimAlgebra algebra_from_group(const GroupPtr& sigma) {
  if (!sigma->is_finite())
    fail(ErrorKind::Unsupported, "algebra_from_group requires a finite group");
  int blocks = static_cast<int>(conjugacy_classes(sigma).count());
  return FinDimAlgebra{{}, blocks};
}

std::vector<BlockElement> minimal_projections(const FinDimAlgebra& a) {
  require_concrete(a, "minimal_projections");
  std::vector<int> off = diag_offsets(a);
  std::vector<BlockElement> out;
  for (int i = 0; i < a.blocks(); ++i) {
    BlockElement e{a, 1, std::vector<int>(a.diag_dim(), 0)};
    e.diag[off[i]] = 1;  // the (1,1) matrix unit of block i
    out.push_back(std::move(e));
  }
  return out;
}

BlockElement tensor_unit(const FinDimAlgebra& a, int t, const Caps& caps) {
  require_concrete(a, "tensor_unit");
  check_tensor_cap(a, t, caps);
  return BlockElement{a, t, std::vector<int>(ipow(a.diag_dim(), t), 1)};
}

BlockElement e_phi(const FinDimAlgebra& a, const std::vector<int>& labels,
                   const Caps& caps) {
  require_concrete(a, "e_phi");
  int t = static_cast<int>(labels.size());
  check_tensor_cap(a, t, caps);
  for (int l : labels)
    if (l < 0 || l > a.n()) fail(ErrorKind::Parse, "label out of range");
  std::vector<int> off = diag_offsets(a);
  int d = a.diag_dim();
  long long total = ipow(d, t);
  BlockElement out{a, t, std::vector<int>(total, 0)};
  // factor value at diagonal position p: unit factor -> 1 everywhere;
  // labelled factor -> 1 only at the (1,1) unit of its block
  for (long long pos = 0; pos < total; ++pos) {
    long long rem = pos;
    int val = 1;
    for (int f = t - 1; f >= 0; --f) {
      int p = static_cast<int>(rem % d);
      rem /= d;
      if (labels[f] != 0 && p != off[labels[f]]) { val = 0; break; }
    }
    out.diag[pos] = val;
  }
  if (out.is_zero())
    fail(ErrorKind::Internal, "e_phi produced the zero projection");
  return out;
}

std::vector<long long> rank_vector(const BlockElement& p) {
  if (!p.is_projection())
    fail(ErrorKind::Parse, "rank_vector input is not an exact projection");
  const FinDimAlgebra& a = p.algebra;
  std::vector<int> blk = diag_blocks(a);
  int d = a.diag_dim();
  int t = p.tensor_factors;
  long long nblocks = ipow(a.blocks(), t);
  std::vector<long long> rank(nblocks, 0);
  for (size_t pos = 0; pos < p.diag.size(); ++pos) {
    if (!p.diag[pos]) continue;
    long long rem = static_cast<long long>(pos);
    long long mu = 0;
    // multi-index digits from most significant factor first
    std::vector<int> digits(t);
    for (int f = t - 1; f >= 0; --f) {
      digits[f] = static_cast<int>(rem % d);
      rem /= d;
    }
    for (int f = 0; f < t; ++f) mu = mu * a.blocks() + blk[digits[f]];
    ++rank[mu];
  }
  return rank;
}

IntMatrix m_matrix(const FinDimAlgebra& a) {
  require_concrete(a, "m_matrix");
  int n1 = a.blocks();
  IntMatrix m = IntMatrix::identity(n1);
  for (int i = 0; i < n1; ++i) m.at(i, 0) = a.block_sizes[i];
  return m;
}

IntMatrix m_tensor(const FinDimAlgebra& a, int t, const Caps& caps) {
  IntMatrix mf = m_matrix(a);
  long long side = 1;
  IntMatrix acc = IntMatrix::identity(1);
  for (int i = 0; i < t; ++i) {
    side *= mf.rows();
    if (side > caps.matrix_dim)
      fail(ErrorKind::CapExceeded, "Kronecker power side exceeds matrix cap");
    acc = acc.kronecker(mf);
  }
  return acc;
}

namespace {

// All label vectors in {0..n}^t, lexicographic.
std::vector<std::vector<int>> all_labels(int n, int t) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(t, 0);
  while (true) {
    out.push_back(cur);
    int i = t - 1;
    while (i >= 0 && cur[i] == n) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

}  // namespace

CheckReport verify_family(const FinDimAlgebra& a, int f_max, const Caps& caps) {
  require_concrete(a, "verify_family");
  CheckReport rep;
  for (int t = 0; t <= f_max; ++t) {
    check_tensor_cap(a, t, caps);
    auto labels = all_labels(a.n(), t);
    std::vector<BlockElement> fam;
    for (const auto& l : labels) fam.push_back(e_phi(a, l, caps));
    for (size_t i = 0; i < fam.size(); ++i) {
      if (fam[i].is_zero()) {
        rep.ok = false;
        rep.detail = "family member vanishes at t=" + std::to_string(t);
        return rep;
      }
      if (!fam[i].is_projection()) {
        rep.ok = false;
        rep.detail = "family member is not a projection";
        return rep;
      }
      for (size_t j = 0; j < fam.size(); ++j) {
        BlockElement pij = fam[i].product(fam[j]);
        if (!(pij == fam[j].product(fam[i]))) {
          rep.ok = false;
          rep.detail = "family members do not commute";
          return rep;
        }
        // closed under multiplication up to zero
        bool found = pij.is_zero();
        for (size_t k = 0; k < fam.size() && !found; ++k) found = pij == fam[k];
        if (!found) {
          rep.ok = false;
          rep.detail = "product left the family at t=" + std::to_string(t);
          return rep;
        }
      }
    }
    // exact linear independence over the diagonal coordinates
    IntMatrix coeff(static_cast<int>(fam.size()),
                    static_cast<int>(fam[0].diag.size()));
    for (size_t i = 0; i < fam.size(); ++i)
      for (size_t j = 0; j < fam[i].diag.size(); ++j)
        coeff.at(static_cast<int>(i), static_cast<int>(j)) = fam[i].diag[j];
    int rank = rational_rank(coeff);
    rep.family_size = static_cast<long long>(fam.size());
    rep.rank = rank;
    if (rank != static_cast<int>(fam.size())) {
      rep.ok = false;
      rep.detail = "family not linearly independent at t=" + std::to_string(t);
      return rep;
    }
  }
  return rep;
}

CheckReport verify_k0_diagram(const FinDimAlgebra& a, int t, const Caps& caps) {
  require_concrete(a, "verify_k0_diagram");
  check_tensor_cap(a, t, caps);
  CheckReport rep;
  int n1 = a.blocks();

  // minimal projections of D_f per factor: q_0 = 1 - sum e_i, q_i = e_i
  std::vector<BlockElement> mins = minimal_projections(a);
  BlockElement unit = tensor_unit(a, 1, caps);
  BlockElement q0 = unit;
  for (int i = 1; i < n1; ++i)
    for (size_t p = 0; p < q0.diag.size(); ++p) q0.diag[p] -= mins[i].diag[p];
  std::vector<BlockElement> q{q0};
  for (int i = 1; i < n1; ++i) q.push_back(mins[i]);

  // columns: rank vectors of tensor products q_psi over psi in {0..n}^t
  long long side = ipow(n1, t);
  if (side > caps.matrix_dim)
    fail(ErrorKind::CapExceeded, "K0 diagram side exceeds matrix cap");
  IntMatrix r(static_cast<int>(side), static_cast<int>(side));
  auto psis = all_labels(a.n(), t);
  for (size_t col = 0; col < psis.size(); ++col) {
    // tensor product of the chosen q's, built on the diagonal lattice
    int d = a.diag_dim();
    long long total = ipow(d, t);
    BlockElement prod{a, t, std::vector<int>(total, 1)};
    for (long long pos = 0; pos < total; ++pos) {
      long long rem = pos;
      int val = 1;
      for (int f = t - 1; f >= 0; --f) {
        int p = static_cast<int>(rem % d);
        rem /= d;
        val *= q[psis[col][f]].diag[p];
      }
      prod.diag[pos] = val;
    }
    std::vector<long long> rv = rank_vector(prod);
    for (size_t row = 0; row < rv.size(); ++row)
      r.at(static_cast<int>(row), static_cast<int>(col)) = rv[row];
  }

  // basis change per factor: [1] = sum_psi [q_psi], [e_i] = [q_i]
  IntMatrix c1 = IntMatrix::identity(n1);
  for (int i = 0; i < n1; ++i) c1.at(i, 0) = 1;
  IntMatrix ct = IntMatrix::identity(1);
  for (int i = 0; i < t; ++i) ct = ct.kronecker(c1);

  IntMatrix lhs = r.mul(ct);
  IntMatrix rhs = m_tensor(a, t, caps);
  rep.ok = lhs == rhs;
  if (!rep.ok) rep.detail = "K0 map differs from the Kronecker matrix";
  rep.rank = rhs.rows();
  return rep;
}

CheckReport verify_function_algebra_iso(const FinDimAlgebra& a, int t,
                                        const Caps& caps) {
  require_concrete(a, "verify_function_algebra_iso");
  check_tensor_cap(a, t, caps);
  CheckReport rep;
  int n = a.n();
  long long points = ipow(n + 1, t);
  if (points > caps.matrix_dim)
    fail(ErrorKind::CapExceeded, "shift-space size exceeds matrix cap");
  auto labels = all_labels(n, t);
  std::vector<BlockElement> fam;
  for (const auto& l : labels) fam.push_back(e_phi(a, l, caps));

  // span dimension of the family itself
  IntMatrix coeff(static_cast<int>(fam.size()),
                  static_cast<int>(fam[0].diag.size()));
  for (size_t i = 0; i < fam.size(); ++i)
    for (size_t j = 0; j < fam[i].diag.size(); ++j)
      coeff.at(static_cast<int>(i), static_cast<int>(j)) = fam[i].diag[j];
  rep.span_dimension = rational_rank(coeff);
  rep.family_size = static_cast<long long>(fam.size());
  if (rep.span_dimension != points) {
    rep.ok = false;
    rep.detail = "span dimension != (n+1)^|F|";
    return rep;
  }

  // image of e_phi: indicator of the cylinder {x : x|supp = phi}
  auto image = [&](const std::vector<int>& l) {
    std::vector<int> ind(points, 1);
    for (long long x = 0; x < points; ++x) {
      long long rem = x;
      for (int f = t - 1; f >= 0; --f) {
        int xv = static_cast<int>(rem % (n + 1));
        rem /= (n + 1);
        if (l[f] != 0 && xv != l[f]) { ind[x] = 0; break; }
      }
    }
    return ind;
  };

  // images are linearly independent, hence a bijection onto C({0..n}^F)
  IntMatrix img(static_cast<int>(fam.size()), static_cast<int>(points));
  std::vector<std::vector<int>> images;
  for (size_t i = 0; i < labels.size(); ++i) {
    images.push_back(image(labels[i]));
    for (long long x = 0; x < points; ++x)
      img.at(static_cast<int>(i), static_cast<int>(x)) = images[i][x];
  }
  if (rational_rank(img) != static_cast<int>(points)) {
    rep.ok = false;
    rep.detail = "cylinder indicators not independent";
    return rep;
  }

  // multiplicativity on all pairs
  for (size_t i = 0; i < fam.size(); ++i)
    for (size_t j = 0; j < fam.size(); ++j) {
      BlockElement pij = fam[i].product(fam[j]);
      // image of the product: zero, or the image of the matching member
      std::vector<int> lhs(points, 0);
      if (!pij.is_zero()) {
        bool matched = false;
        for (size_t k = 0; k < fam.size(); ++k)
          if (pij == fam[k]) { lhs = images[k]; matched = true; break; }
        if (!matched) {
          rep.ok = false;
          rep.detail = "product not in family";
          return rep;
        }
      }
      for (long long x = 0; x < points; ++x)
        if (lhs[x] != images[i][x] * images[j][x]) {
          rep.ok = false;
          rep.detail = "image map is not multiplicative";
          return rep;
        }
    }
  return rep;
}

}  // namespace lampk
