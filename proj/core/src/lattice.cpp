#include "kmw/lattice.hpp"

#include <limits>

namespace kmw {
namespace {

int32_t narrow(int64_t x) {
  if (x < std::numeric_limits<int32_t>::min() || x > std::numeric_limits<int32_t>::max())
    throw ArithmeticFailure("lattice coordinate overflow");
  return static_cast<int32_t>(x);
}

}  // namespace

Coweight Coweight::of(std::initializer_list<int64_t> xs) {
  Coweight c(static_cast<int>(xs.size()));
  int i = 0;
  for (auto x : xs) c.c_[i++] = narrow(x);
  return c;
}

Coweight Coweight::from_vector(const std::vector<int64_t>& xs) {
  Coweight c(static_cast<int>(xs.size()));
  for (size_t i = 0; i < xs.size(); ++i) c.c_[i] = narrow(xs[i]);
  return c;
}

Coweight Coweight::unit(int dim, int i) {
  Coweight c(dim);
  c.c_[i] = 1;
  return c;
}

std::vector<int64_t> Coweight::to_vector() const {
  return std::vector<int64_t>(c_.begin(), c_.begin() + dim_);
}

bool Coweight::is_zero() const {
  for (int i = 0; i < dim_; ++i)
    if (c_[i] != 0) return false;
  return true;
}

int64_t Coweight::prefix_sum(int k) const {
  int64_t s = 0;
  for (int i = 0; i < k; ++i) s += c_[i];
  return s;
}

std::string Coweight::str() const {
  std::string s = "[";
  for (int i = 0; i < dim_; ++i) {
    if (i) s += ',';
    s += std::to_string(c_[i]);
  }
  return s + "]";
}

size_t Coweight::hash() const {
  uint64_t h = 1469598103934665603ull ^ dim_;
  for (int i = 0; i < dim_; ++i) {
    h ^= static_cast<uint32_t>(c_[i]);
    h *= 1099511628211ull;
  }
  return static_cast<size_t>(h);
}

Coweight& Coweight::operator+=(const Coweight& o) {
  if (dim_ != o.dim_) throw InvalidInput("lattice dimension mismatch");
  for (int i = 0; i < dim_; ++i)
    if (__builtin_add_overflow(c_[i], o.c_[i], &c_[i])) throw ArithmeticFailure("lattice coordinate overflow");
  return *this;
}

Coweight& Coweight::operator-=(const Coweight& o) {
  if (dim_ != o.dim_) throw InvalidInput("lattice dimension mismatch");
  for (int i = 0; i < dim_; ++i)
    if (__builtin_sub_overflow(c_[i], o.c_[i], &c_[i])) throw ArithmeticFailure("lattice coordinate overflow");
  return *this;
}

Coweight Coweight::operator-() const {
  Coweight r(dim_);
  for (int i = 0; i < dim_; ++i) r.c_[i] = narrow(-static_cast<int64_t>(c_[i]));
  return r;
}

Coweight operator*(int64_t k, const Coweight& a) {
  Coweight r(a.dim());
  for (int i = 0; i < a.dim(); ++i) r[i] = narrow(k * a[i]);
  return r;
}

}  // namespace kmw
