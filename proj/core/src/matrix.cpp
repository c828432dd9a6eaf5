#include "kmw/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

#include "kmw/error.hpp"

namespace kmw {

int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticFailure("integer overflow in multiplication");
  return r;
}

int64_t checked_add(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticFailure("integer overflow in addition");
  return r;
}

int64_t floor_div(int64_t a, int64_t b) {
  if (b == 0) throw ArithmeticFailure("division by zero");
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int64_t mod_floor(int64_t a, int64_t b) { return a - floor_div(a, b) * b; }

int64_t gcd64(int64_t a, int64_t b) { return std::gcd(a, b); }

int64_t lcm64(int64_t a, int64_t b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(std::abs(a) / gcd64(a, b), std::abs(b));
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<int64_t>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw InvalidInput("ragged matrix rows");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::submatrix(const std::vector<int>& rs, const std::vector<int>& cs) const {
  IntMatrix s(static_cast<int>(rs.size()), static_cast<int>(cs.size()));
  for (size_t i = 0; i < rs.size(); ++i)
    for (size_t j = 0; j < cs.size(); ++j) s(static_cast<int>(i), static_cast<int>(j)) = (*this)(rs[i], cs[j]);
  return s;
}

std::vector<std::vector<int64_t>> IntMatrix::to_rows() const {
  std::vector<std::vector<int64_t>> out(rows_, std::vector<int64_t>(cols_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

std::vector<int64_t> IntMatrix::apply(const std::vector<int64_t>& v) const {
  if (static_cast<int>(v.size()) != cols_) throw InvalidInput("dimension mismatch in matrix apply");
  std::vector<int64_t> out(rows_, 0);
  for (int i = 0; i < rows_; ++i) {
    int64_t s = 0;
    for (int j = 0; j < cols_; ++j) s = checked_add(s, checked_mul((*this)(i, j), v[j]));
    out[i] = s;
  }
  return out;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < rows_; ++i) {
    if (i) os << ',';
    os << '[';
    for (int j = 0; j < cols_; ++j) {
      if (j) os << ',';
      os << (*this)(i, j);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidInput("dimension mismatch in matrix product");
  IntMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      int64_t x = a(i, k);
      if (x == 0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) = checked_add(c(i, j), checked_mul(x, b(k, j)));
    }
  return c;
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), RatVector(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r[i][j] = Rational(m(i, j));
  return r;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(RatMatrix& a) {
  std::vector<int> pivots;
  int rows = static_cast<int>(a.size());
  int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (!a[i][c].is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(a[r], a[p]);
    Rational inv = a[r][c].inverse();
    for (int j = c; j < cols; ++j) a[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      Rational f = a[i][c];
      for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Rational determinant(const RatMatrix& m) {
  int n = static_cast<int>(m.size());
  RatMatrix a = m;
  Rational det(1);
  for (int c = 0; c < n; ++c) {
    if (static_cast<int>(a[c].size()) != n) throw InvalidInput("determinant of non-square matrix");
    int p = -1;
    for (int i = c; i < n; ++i)
      if (!a[i][c].is_zero()) {
        p = i;
        break;
      }
    if (p < 0) return Rational(0);
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    Rational inv = a[c][c].inverse();
    for (int i = c + 1; i < n; ++i) {
      if (a[i][c].is_zero()) continue;
      Rational f = a[i][c] * inv;
      for (int j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

Rational determinant(const IntMatrix& m) { return determinant(to_rational(m)); }

int rank(const RatMatrix& m) {
  RatMatrix a = m;
  return static_cast<int>(rref(a).size());
}

std::vector<RatVector> kernel(const RatMatrix& m) {
  RatMatrix a = m;
  int cols = a.empty() ? 0 : static_cast<int>(a[0].size());
  std::vector<int> piv = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (int c : piv) is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVector x(cols, Rational(0));
    x[f] = Rational(1);
    for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = -a[r][f];
    basis.push_back(std::move(x));
  }
  return basis;
}

RatVector solve(const RatMatrix& m, const RatVector& b) {
  int n = static_cast<int>(m.size());
  RatMatrix a(n, RatVector(n + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = m[i][j];
    a[i][n] = b[i];
  }
  std::vector<int> piv = rref(a);
  if (static_cast<int>(piv.size()) != n || piv.back() != n - 1) throw InvalidInput("singular linear system");
  RatVector x(n);
  for (int i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

std::vector<int64_t> primitive_integer(const RatVector& v) {
  mpz_class l = 1;
  for (const auto& x : v) {
    mpq_class q = x.to_mpq();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
  }
  std::vector<mpz_class> ints;
  mpz_class g = 0;
  for (const auto& x : v) {
    mpq_class q = x.to_mpq() * l;
    mpz_class z = q.get_num();
    ints.push_back(z);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
  }
  if (g == 0) throw InvalidInput("primitive vector of zero vector");
  int s = 0;
  for (auto& z : ints)
    if (z != 0) {
      s = sgn(z);
      break;
    }
  std::vector<int64_t> out;
  for (auto& z : ints) {
    mpz_class q = z / g * s;
    if (!q.fits_slong_p()) throw ArithmeticFailure("primitive vector entry too large");
    out.push_back(q.get_si());
  }
  return out;
}

SmithForm smith_normal_form(const IntMatrix& m0) {
  IntMatrix a = m0;
  int rows = a.rows();
  int cols = a.cols();
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);

  auto row_op = [&](int dst, int src, int64_t f) {  // row dst -= f * row src
    for (int j = 0; j < cols; ++j) a(dst, j) = checked_add(a(dst, j), -checked_mul(f, a(src, j)));
    for (int j = 0; j < rows; ++j) u(dst, j) = checked_add(u(dst, j), -checked_mul(f, u(src, j)));
  };
  auto col_op = [&](int dst, int src, int64_t f) {  // col dst -= f * col src
    for (int i = 0; i < rows; ++i) a(i, dst) = checked_add(a(i, dst), -checked_mul(f, a(i, src)));
    for (int i = 0; i < cols; ++i) v(i, dst) = checked_add(v(i, dst), -checked_mul(f, v(i, src)));
  };
  auto swap_rows = [&](int i, int k) {
    for (int j = 0; j < cols; ++j) std::swap(a(i, j), a(k, j));
    for (int j = 0; j < rows; ++j) std::swap(u(i, j), u(k, j));
  };
  auto swap_cols = [&](int j, int k) {
    for (int i = 0; i < rows; ++i) std::swap(a(i, j), a(i, k));
    for (int i = 0; i < cols; ++i) std::swap(v(i, j), v(i, k));
  };
  auto negate_row = [&](int i) {
    for (int j = 0; j < cols; ++j) a(i, j) = -a(i, j);
    for (int j = 0; j < rows; ++j) u(i, j) = -u(i, j);
  };

  int t = 0;
  while (t < std::min(rows, cols)) {
    // Pick the smallest nonzero entry in the remaining block as pivot.
    int pi = -1, pj = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (a(i, j) != 0 && (pi < 0 || std::abs(a(i, j)) < std::abs(a(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    swap_rows(t, pi);
    swap_cols(t, pj);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        row_op(i, t, floor_div(a(i, t), a(t, t)));
        if (a(i, t) != 0) {
          swap_rows(t, i);
          clean = false;
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        col_op(j, t, floor_div(a(t, j), a(t, t)));
        if (a(t, j) != 0) {
          swap_cols(t, j);
          clean = false;
        }
      }
      if (clean) {
        // Enforce divisibility of the rest of the block by the pivot.
        for (int i = t + 1; i < rows && clean; ++i)
          for (int j = t + 1; j < cols; ++j)
            if (a(i, j) % a(t, t) != 0) {
              for (int k = 0; k < cols; ++k) a(t, k) = checked_add(a(t, k), a(i, k));
              for (int k = 0; k < rows; ++k) u(t, k) = checked_add(u(t, k), u(i, k));
              clean = false;
              break;
            }
      }
    }
    if (a(t, t) < 0) negate_row(t);
    ++t;
  }
  SmithForm out{u, v, {}};
  for (int i = 0; i < std::min(rows, cols); ++i)
    if (a(i, i) != 0) out.diagonal.push_back(a(i, i));
  return out;
}

}  // namespace kmw
