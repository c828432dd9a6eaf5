#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "kmw/error.hpp"

namespace kmw {

constexpr int kMaxDim = 12;

// Integer vector of fixed small capacity, used for coweights (coordinates in
// the Y basis) and for roots written in a simple-root basis.
class Coweight {
 public:
  Coweight() = default;
  explicit Coweight(int dim) : dim_(static_cast<uint8_t>(dim)) {
    if (dim < 0 || dim > kMaxDim) throw InvalidInput("lattice dimension exceeds supported maximum");
  }
  static Coweight of(std::initializer_list<int64_t> xs);
  static Coweight from_vector(const std::vector<int64_t>& xs);
  static Coweight unit(int dim, int i);

  int dim() const { return dim_; }
  int32_t operator[](int i) const { return c_[i]; }
  int32_t& operator[](int i) { return c_[i]; }
  std::vector<int64_t> to_vector() const;
  bool is_zero() const;
  // Sum of the first k coordinates.
  int64_t prefix_sum(int k) const;
  std::string str() const;
  size_t hash() const;

  Coweight& operator+=(const Coweight& o);
  Coweight& operator-=(const Coweight& o);
  friend Coweight operator+(Coweight a, const Coweight& b) { return a += b; }
  friend Coweight operator-(Coweight a, const Coweight& b) { return a -= b; }
  Coweight operator-() const;
  friend Coweight operator*(int64_t k, const Coweight& a);

  friend bool operator==(const Coweight& a, const Coweight& b) {
    return a.dim_ == b.dim_ && a.c_ == b.c_;
  }
  friend std::strong_ordering operator<=>(const Coweight& a, const Coweight& b) {
    if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
    return a.c_ <=> b.c_;
  }

 private:
  std::array<int32_t, kMaxDim> c_{};
  uint8_t dim_ = 0;
};

struct CoweightHash {
  size_t operator()(const Coweight& c) const { return c.hash(); }
};

}  // namespace kmw
