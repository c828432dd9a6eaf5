#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kmw/rational.hpp"

namespace kmw {

// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0) {}
  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<std::vector<int64_t>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int64_t& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  int64_t operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  IntMatrix transpose() const;
  IntMatrix submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const;
  std::vector<std::vector<int64_t>> to_rows() const;
  std::vector<int64_t> apply(const std::vector<int64_t>& v) const;
  std::string str() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int64_t> a_;
};

using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;

RatMatrix to_rational(const IntMatrix& m);
Rational determinant(const RatMatrix& m);
Rational determinant(const IntMatrix& m);
int rank(const RatMatrix& m);
// Basis of the right kernel {x : m x = 0}.
std::vector<RatVector> kernel(const RatMatrix& m);
// Solves m x = b for square invertible m.
RatVector solve(const RatMatrix& m, const RatVector& b);

// Scales a nonzero rational vector to a primitive integer vector whose first
// nonzero entry is positive.
std::vector<int64_t> primitive_integer(const RatVector& v);

// Smith normal form: u * m * v = diag(d_1, ..., d_k, 0, ...) with u, v unimodular
// and d_1 | d_2 | ... all positive.
struct SmithForm {
  IntMatrix u;
  IntMatrix v;
  std::vector<int64_t> diagonal;
};
SmithForm smith_normal_form(const IntMatrix& m);

int64_t checked_mul(int64_t a, int64_t b);
int64_t checked_add(int64_t a, int64_t b);
int64_t floor_div(int64_t a, int64_t b);
int64_t mod_floor(int64_t a, int64_t b);
int64_t gcd64(int64_t a, int64_t b);
int64_t lcm64(int64_t a, int64_t b);

}  // namespace kmw
