#include "lampk/intmatrix.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "lampk/errors.hpp"

namespace lampk {

using bigint = boost::multiprecision::cpp_int;

namespace {

long long to_ll(const bigint& x, const char* what) {
  if (x > std::numeric_limits<long long>::max() || x < std::numeric_limits<long long>::min())
    fail(ErrorKind::Internal, std::string("integer overflow in ") + what);
  return static_cast<long long>(x);
}

using BigMat = std::vector<std::vector<bigint>>;

BigMat to_big(const IntMatrix& m) {
  BigMat b(m.rows(), std::vector<bigint>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) b[i][j] = m.at(i, j);
  return b;
}

IntMatrix from_big(const BigMat& b) {
  int r = static_cast<int>(b.size());
  int c = r ? static_cast<int>(b[0].size()) : 0;
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = to_ll(b[i][j], "matrix entry");
  return m;
}

}  // namespace

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
  a_.reserve(static_cast<size_t>(rows_) * cols_);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_)
      fail(ErrorKind::Parse, "ragged matrix literal");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::mul(const IntMatrix& o) const {
  if (cols_ != o.rows_) fail(ErrorKind::Internal, "matrix dim mismatch in mul");
  IntMatrix out(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      bigint aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < o.cols_; ++j) {
        bigint v = bigint(out.at(i, j)) + aik * o.at(k, j);
        out.at(i, j) = to_ll(v, "mul");
      }
    }
  return out;
}

IntMatrix IntMatrix::kronecker(const IntMatrix& o) const {
  IntMatrix out(rows_ * o.rows_, cols_ * o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      long long v = at(i, j);
      if (v == 0) continue;
      for (int p = 0; p < o.rows_; ++p)
        for (int q = 0; q < o.cols_; ++q)
          out.at(i * o.rows_ + p, j * o.cols_ + q) =
              to_ll(bigint(v) * o.at(p, q), "kronecker");
    }
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

long long IntMatrix::det() const {
  if (rows_ != cols_) fail(ErrorKind::Internal, "det of non-square matrix");
  int n = rows_;
  if (n == 0) return 1;
  BigMat a = to_big(*this);
  bigint sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (a[i][k] != 0) { piv = i; break; }
      if (piv < 0) return 0;
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return to_ll(sign * a[n - 1][n - 1], "det");
}

int rational_rank(const IntMatrix& m) {
  BigMat a = to_big(m);
  int rows = m.rows(), cols = m.cols();
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    for (int i = rank; i < rows; ++i)
      if (a[i][col] != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(a[rank], a[piv]);
    for (int i = rank + 1; i < rows; ++i) {
      if (a[i][col] == 0) continue;
      bigint f1 = a[rank][col], f2 = a[i][col];
      for (int j = col; j < cols; ++j) a[i][j] = a[i][j] * f1 - a[rank][j] * f2;
    }
    ++rank;
  }
  return rank;
}

std::vector<long long> SmithForm::diagonal() const {
  std::vector<long long> d;
  int n = std::min(s.rows(), s.cols());
  for (int i = 0; i < n; ++i) d.push_back(s.at(i, i));
  return d;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  int rows = m.rows(), cols = m.cols();
  BigMat s = to_big(m);
  BigMat u = to_big(IntMatrix::identity(rows));
  BigMat v = to_big(IntMatrix::identity(cols));

  auto row_op = [&](BigMat& a, int i, int k, const bigint& f) {
    // row i -= f * row k
    for (size_t j = 0; j < a[i].size(); ++j) a[i][j] -= f * a[k][j];
  };
  auto col_op = [&](int j, int k, const bigint& f) {
    // col j -= f * col k, applied to s and v
    for (int i = 0; i < rows; ++i) s[i][j] -= f * s[i][k];
    for (int i = 0; i < cols; ++i) v[i][j] -= f * v[i][k];
  };
  auto swap_rows = [&](int i, int k) { std::swap(s[i], s[k]); std::swap(u[i], u[k]); };
  auto swap_cols = [&](int j, int k) {
    for (int i = 0; i < rows; ++i) std::swap(s[i][j], s[i][k]);
    for (int i = 0; i < cols; ++i) std::swap(v[i][j], v[i][k]);
  };
  auto negate_row = [&](int i) {
    for (auto& x : s[i]) x = -x;
    for (auto& x : u[i]) x = -x;
  };

  int nmin = std::min(rows, cols);

  auto diagonalize = [&]() {
    int t = 0;
    while (t < nmin) {
      // find a nonzero pivot in the remaining block
      int pi = -1, pj = -1;
      for (int i = t; i < rows && pi < 0; ++i)
        for (int j = t; j < cols; ++j)
          if (s[i][j] != 0) { pi = i; pj = j; break; }
      if (pi < 0) break;
      swap_rows(t, pi);
      swap_cols(t, pj);

      // clear row and column t; repeat until both are clean
      bool dirty = true;
      while (dirty) {
        dirty = false;
        for (int i = t + 1; i < rows; ++i) {
          if (s[i][t] == 0) continue;
          bigint q = s[i][t] / s[t][t];
          row_op(s, i, t, q);
          row_op(u, i, t, q);
          if (s[i][t] != 0) {  // remainder smaller than pivot: swap up
            swap_rows(t, i);
            dirty = true;
          }
        }
        for (int j = t + 1; j < cols; ++j) {
          if (s[t][j] == 0) continue;
          bigint q = s[t][j] / s[t][t];
          col_op(j, t, q);
          if (s[t][j] != 0) {
            swap_cols(t, j);
            dirty = true;
          }
        }
      }
      if (s[t][t] < 0) negate_row(t);
      ++t;
    }
  };

  // Diagonalize, then repair divisibility violations by folding the
  // offending column in and rediagonalizing. Each fold strictly refines
  // the divisor chain, so this terminates.
  diagonalize();
  while (true) {
    int vi = -1, vj = -1;
    for (int i = 0; i + 1 < nmin && vi < 0; ++i)
      for (int j = i + 1; j < nmin; ++j) {
        if (s[i][i] != 0 && s[j][j] % s[i][i] == 0) continue;
        if (s[i][i] == 0 && s[j][j] == 0) continue;
        vi = i;
        vj = j;
        break;
      }
    if (vi < 0) break;
    for (int r = 0; r < rows; ++r) s[r][vi] += s[r][vj];
    for (int r = 0; r < cols; ++r) v[r][vi] += v[r][vj];
    diagonalize();
  }

  SmithForm out{from_big(s), from_big(u), from_big(v)};
  // verification: U M V = S exactly, U and V unimodular
  if (out.u.mul(m).mul(out.v) != out.s)
    fail(ErrorKind::Internal, "SNF verification failed: U*M*V != S");
  long long du = out.u.det(), dv = out.v.det();
  if (std::abs(du) != 1 || std::abs(dv) != 1)
    fail(ErrorKind::Internal, "SNF verification failed: transforms not unimodular");
  for (int i = 0; i + 1 < std::min(out.s.rows(), out.s.cols()); ++i) {
    long long a = out.s.at(i, i), b = out.s.at(i + 1, i + 1);
    if (a < 0 || (a == 0 && b != 0) || (a != 0 && b % a != 0))
      fail(ErrorKind::Internal, "SNF verification failed: divisibility");
  }
  return out;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorKind::Internal, "inverse of non-square matrix");
  long long d = m.det();
  if (d != 1 && d != -1)
    fail(ErrorKind::Internal, "matrix is not unimodular, no integer inverse");
  SmithForm f = smith_normal_form(m);
  if (!f.s.is_identity())
    fail(ErrorKind::Internal, "unimodular matrix with non-identity SNF");
  // U M V = I  =>  M^-1 = V U
  IntMatrix inv = f.v.mul(f.u);
  if (!inv.mul(m).is_identity() || !m.mul(inv).is_identity())
    fail(ErrorKind::Internal, "inverse verification failed");
  return inv;
}

}  // namespace lampk
