#pragma once

#include <string>
#include <vector>

#include "lampk/caps.hpp"
#include "lampk/group.hpp"
#include "lampk/intmatrix.hpp"

namespace lampk {

// A = M_{k_0} + ... + M_{k_n} with k_0 = 1. Sizes may be symbolic (only the
// block count known), which suffices for every K-rank computation.
struct FinDimAlgebra {
  std::vector<int> block_sizes;  // concrete sizes, k_0 = 1 first; empty if symbolic
  int symbolic_blocks = 0;       // block count when sizes are symbolic

  bool symbolic() const { return block_sizes.empty(); }
  int blocks() const {
    return symbolic() ? symbolic_blocks : static_cast<int>(block_sizes.size());
  }
  int n() const { return blocks() - 1; }  // nontrivial block count
  long long dimension() const;            // sum k_i^2
  int diag_dim() const;                   // sum k_i
};

// Diagonal element of the t-fold tensor power of A, stored on the diagonal
// lattice (diag_dim^t positions). The projections of interest are all
// diagonal in the matrix-unit basis, and products, ranks and independence
// are computed exactly on this representation.
struct BlockElement {
  FinDimAlgebra algebra;
  int tensor_factors = 0;
  std::vector<int> diag;

  bool is_projection() const;  // entrywise p^2 = p (0/1 diagonal)
  BlockElement product(const BlockElement& o) const;
  bool is_zero() const;
  bool operator==(const BlockElement& o) const {
    return tensor_factors == o.tensor_factors && diag == o.diag;
  }
};

// Accepts iff some block has size 1; normalizes so that k_0 = 1.
FinDimAlgebra validate_algebra(std::vector<int> block_sizes);

// A = C*(Sigma): block count = |con Sigma|, one size-1 block guaranteed,
// remaining sizes symbolic.
FinDimAlgebra algebra_from_group(const GroupPtr& sigma);

// e_i = the (1,1) matrix unit of block i (t = 1); index 0 is the unit of
// the C block.
std::vector<BlockElement> minimal_projections(const FinDimAlgebra& a);

// Unit of the t-fold tensor power.
BlockElement tensor_unit(const FinDimAlgebra& a, int t, const Caps& caps = {});

// Elementary tensor projection for labels in {0,...,n}^t; label 0 marks a
// factor outside the support of phi (tensored with the unit).
BlockElement e_phi(const FinDimAlgebra& a, const std::vector<int>& labels,
                   const Caps& caps = {});

// Per-block-multi-index matrix ranks of a diagonal projection, multi-indices
// in lexicographic order; length (n+1)^t.
std::vector<long long> rank_vector(const BlockElement& p);

// (n+1)x(n+1) matrix with first column (1, k_1, ..., k_n)^T and identity
// elsewhere.
IntMatrix m_matrix(const FinDimAlgebra& a);

// t-fold Kronecker power of m_matrix.
IntMatrix m_tensor(const FinDimAlgebra& a, int t, const Caps& caps = {});

struct CheckReport {
  bool ok = true;
  std::string detail;
  long long family_size = 0;
  long long rank = 0;
  long long span_dimension = 0;
};

// Projection family over a fixed |F| <= f_max: commutation, non-vanishing,
// closure under multiplication up to zero, exact linear independence.
CheckReport verify_family(const FinDimAlgebra& a, int f_max, const Caps& caps = {});

// The K0 map of D_F -> tensor power -> corner, computed from rank vectors
// and compared with m_tensor after the basis change to {[1],[e_i]}.
CheckReport verify_k0_diagram(const FinDimAlgebra& a, int t, const Caps& caps = {});

// e_phi |-> cylinder indicator is an algebra isomorphism onto the functions
// on {0,...,n}^F.
CheckReport verify_function_algebra_iso(const FinDimAlgebra& a, int t,
                                        const Caps& caps = {});

}  // namespace lampk
