#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace lampk {

// Dense exact integer matrix. All arithmetic is over the integers; there is
// no floating point anywhere in this module.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  long long& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  long long at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

  bool operator==(const IntMatrix& o) const = default;

  IntMatrix mul(const IntMatrix& o) const;
  IntMatrix kronecker(const IntMatrix& o) const;
  IntMatrix transpose() const;
  bool is_identity() const;

  // Determinant by fraction-free (Bareiss) elimination; square matrices only.
  long long det() const;

  std::vector<long long> row_major() const { return a_; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<long long> a_;
};

// Smith normal form: U * M * V = S with U, V unimodular, S diagonal with
// nonnegative entries dividing successively. Verified by exact
// multiplication before returning.
struct SmithForm {
  IntMatrix s, u, v;
  std::vector<long long> diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

// Exact inverse of a unimodular matrix (det = +-1); errors otherwise.
IntMatrix unimodular_inverse(const IntMatrix& m);

// Rank of an integer matrix over the rationals (fraction-free elimination).
int rational_rank(const IntMatrix& m);

}  // namespace lampk
