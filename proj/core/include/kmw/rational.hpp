#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace kmw {

// Exact rational number. Values that fit in 64-bit numerator and denominator
// are stored inline; larger values fall back to a GMP rational.
class Rational {
 public:
  Rational() = default;
  Rational(int64_t v) : num_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : num_(v) {}      // NOLINT(google-explicit-constructor)
  Rational(int64_t n, int64_t d);
  explicit Rational(const mpq_class& q);

  Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const;
  bool is_small() const { return !big_; }
  int sign() const;

  // Valid only when is_small().
  int64_t small_num() const { return num_; }
  int64_t small_den() const { return den_; }

  mpq_class to_mpq() const;
  double to_double() const;
  std::string str() const;
  std::string num_str() const;
  std::string den_str() const;
  size_t hash() const;

  // Floor of an integral value as int64; throws if not integral or too large.
  int64_t to_int64() const;

  static Rational parse(std::string_view text);

  Rational operator-() const;
  Rational inverse() const;
  Rational pow(int64_t e) const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  void set_big(mpq_class q);
  void set_from_i128(__int128 n, __int128 d);

  int64_t num_ = 0;
  int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

}  // namespace kmw
