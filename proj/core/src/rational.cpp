#include "kmw/rational.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <limits>

#include "kmw/error.hpp"

namespace kmw {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 uabs(i128 x) { return x < 0 ? static_cast<u128>(-(x + 1)) + 1 : static_cast<u128>(x); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(i128 x) {
  return x >= std::numeric_limits<int64_t>::min() && x <= std::numeric_limits<int64_t>::max();
}

mpz_class mpz_from_i128(i128 x) {
  bool neg = x < 0;
  u128 u = uabs(x);
  mpz_class hi(static_cast<unsigned long>(static_cast<uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

mpz_class mpz_from_i64(int64_t x) { return mpz_class(static_cast<long>(x)); }

}  // namespace

Rational::Rational(int64_t n, int64_t d) {
  if (d == 0) throw InvalidInput("rational with zero denominator");
  set_from_i128(n, d);
}

Rational::Rational(const mpq_class& q) { set_big(q); }

void Rational::set_from_i128(i128 n, i128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  if (n == 0) {
    num_ = 0;
    den_ = 1;
    big_.reset();
    return;
  }
  u128 g = gcd128(uabs(n), static_cast<u128>(d));
  if (g > 1) {
    n /= static_cast<i128>(g);
    d /= static_cast<i128>(g);
  }
  if (fits64(n) && fits64(d)) {
    num_ = static_cast<int64_t>(n);
    den_ = static_cast<int64_t>(d);
    big_.reset();
  } else {
    mpq_class q(mpz_from_i128(n), mpz_from_i128(d));
    q.canonicalize();
    set_big(std::move(q));
  }
}

void Rational::set_big(mpq_class q) {
  q.canonicalize();
  if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
    num_ = q.get_num().get_si();
    den_ = q.get_den().get_si();
    big_.reset();
  } else {
    big_ = std::make_unique<mpq_class>(std::move(q));
    num_ = 0;
    den_ = 1;
  }
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_from_i64(num_), mpz_from_i64(den_));
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::num_str() const {
  return big_ ? big_->get_num().get_str() : std::to_string(num_);
}

std::string Rational::den_str() const {
  return big_ ? big_->get_den().get_str() : std::to_string(den_);
}

size_t Rational::hash() const {
  if (big_) return std::hash<std::string>{}(big_->get_str());
  return std::hash<int64_t>{}(num_) * 31u + std::hash<int64_t>{}(den_);
}

int64_t Rational::to_int64() const {
  if (!is_integer()) throw InvalidInput("rational is not an integer: " + str());
  if (big_) throw InvalidInput("integer does not fit in 64 bits: " + str());
  return num_;
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) throw InvalidInput("cannot parse rational '" + s + "'");
  if (q.get_den() == 0) throw InvalidInput("rational with zero denominator");
  Rational r;
  r.set_big(q);
  return r;
}

Rational Rational::operator-() const {
  Rational r;
  if (big_ || num_ == std::numeric_limits<int64_t>::min()) {
    r.set_big(-to_mpq());
  } else {
    r.num_ = -num_;
    r.den_ = den_;
  }
  return r;
}

Rational Rational::inverse() const {
  if (is_zero()) throw ArithmeticFailure("division by zero");
  Rational r;
  if (big_) {
    r.set_big(1 / *big_);
  } else {
    r.set_from_i128(den_, num_);
  }
  return r;
}

Rational Rational::pow(int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  Rational result(1);
  Rational base(*this);
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

Rational& Rational::operator+=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      int64_t s;
      if (!__builtin_add_overflow(num_, o.num_, &s)) {
        num_ = s;
        return *this;
      }
    }
    set_from_i128(static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_,
                  static_cast<i128>(den_) * o.den_);
    return *this;
  }
  set_big(to_mpq() + o.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      int64_t s;
      if (!__builtin_sub_overflow(num_, o.num_, &s)) {
        num_ = s;
        return *this;
      }
    }
    set_from_i128(static_cast<i128>(num_) * o.den_ - static_cast<i128>(o.num_) * den_,
                  static_cast<i128>(den_) * o.den_);
    return *this;
  }
  set_big(to_mpq() - o.to_mpq());
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      int64_t s;
      if (!__builtin_mul_overflow(num_, o.num_, &s)) {
        num_ = s;
        return *this;
      }
    }
    set_from_i128(static_cast<i128>(num_) * o.num_, static_cast<i128>(den_) * o.den_);
    return *this;
  }
  set_big(to_mpq() * o.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw ArithmeticFailure("division by zero");
  if (!big_ && !o.big_) {
    set_from_i128(static_cast<i128>(num_) * o.den_, static_cast<i128>(den_) * o.num_);
    return *this;
  }
  set_big(to_mpq() / o.to_mpq());
  return *this;
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // normalized: a big value never equals a small one
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    i128 l = static_cast<i128>(a.num_) * b.den_;
    i128 r = static_cast<i128>(b.num_) * a.den_;
    return l <=> r;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

}  // namespace kmw
