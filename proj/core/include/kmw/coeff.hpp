#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kmw/rational.hpp"

namespace kmw {

constexpr int kMaxGaussDegree = 16;

// Monomial v^vexp * prod_k g_k^{count[k]} in normal form: indices in [1, n),
// never both g_k and g_{n-k} present, and g_{n/2} to the power at most 1.
struct CoeffKey {
  int32_t vexp = 0;
  std::array<uint8_t, kMaxGaussDegree> count{};

  int gauss_degree() const;
  // 2 * vexp - (number of g factors); the v-weight of the monomial doubled.
  int64_t weight2() const { return 2 * static_cast<int64_t>(vexp) - gauss_degree(); }
  // The multiset of g indices in ascending order.
  std::vector<int> gauss_indices() const;

  friend bool operator==(const CoeffKey&, const CoeffKey&) = default;
  friend auto operator<=>(const CoeffKey&, const CoeffKey&) = default;
};

// Element of the ring Q[v, v^{-1}, g_1, ..., g_{n-1}] modulo g_0 = -1,
// g_k = g_l for k = l mod n and g_k g_{n-k} = v^{-1}.
class Coeff {
 public:
  Coeff() = default;
  explicit Coeff(int n) : n_(check_n(n)) {}
  static Coeff scalar(const Rational& c, int n = 1);
  static Coeff v_power(int e, int n = 1);
  static Coeff gauss(int64_t k, int n);
  static Coeff monomial(const Rational& c, const CoeffKey& key, int n);
  // Parses expressions such as "3*v^2*g1*g2 - v^-1".
  static Coeff parse(const std::string& text, int n);

  int n() const { return n_; }
  const std::vector<std::pair<CoeffKey, Rational>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool has_gauss() const;
  // Scalar value if the element is a constant, otherwise throws.
  Rational constant() const;
  // Coefficient of v^0 with no g factors.
  Rational constant_term() const;

  int64_t min_weight2() const;
  int64_t max_weight2() const;
  // Drops monomials with weight2() > max_weight2.
  Coeff truncated(int64_t max_weight2) const;
  Coeff shift_v(int e) const;

  std::string str() const;
  size_t hash() const;

  Coeff operator-() const;
  Coeff& operator+=(const Coeff& o);
  Coeff& operator-=(const Coeff& o);
  Coeff& operator*=(const Coeff& o);
  Coeff& operator*=(const Rational& c);
  friend Coeff operator+(Coeff a, const Coeff& b) { return a += b; }
  friend Coeff operator-(Coeff a, const Coeff& b) { return a -= b; }
  friend Coeff operator*(const Coeff& a, const Coeff& b);
  friend Coeff operator*(Coeff a, const Rational& c) { return a *= c; }
  // *this += a * b and *this += c * a.
  void add_product(const Coeff& a, const Coeff& b);
  void add_scaled(const Coeff& a, const Rational& c);

  friend bool operator==(const Coeff& a, const Coeff& b) { return a.terms_ == b.terms_; }

  // Normal form of the product of two normalized monomials.
  static CoeffKey multiply_keys(const CoeffKey& a, const CoeffKey& b, int n);

 private:
  static int check_n(int n);
  void merge_n(const Coeff& o);
  void combine(std::vector<std::pair<CoeffKey, Rational>>& raw);

  int n_ = 1;
  std::vector<std::pair<CoeffKey, Rational>> terms_;
};

}  // namespace kmw
