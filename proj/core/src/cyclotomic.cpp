#include "kmw/cyclotomic.hpp"

#include <cmath>
#include <numbers>

#include "kmw/error.hpp"
#include "kmw/matrix.hpp"

namespace kmw {

struct CycloData {
  int N = 1;
  int phi = 1;
  std::vector<int64_t> modulus;
  // powers[j] = zeta^j reduced, for 0 <= j < N.
  std::vector<std::vector<Rational>> powers;
};

namespace {

std::vector<int64_t> poly_div_exact(std::vector<int64_t> num, const std::vector<int64_t>& den) {
  // den is monic.
  int dn = static_cast<int>(den.size()) - 1;
  int nn = static_cast<int>(num.size()) - 1;
  std::vector<int64_t> q(nn - dn + 1, 0);
  for (int i = nn; i >= dn; --i) {
    int64_t c = num[i];
    q[i - dn] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (int i = 0; i < dn; ++i)
    if (num[i] != 0) throw ArithmeticFailure("cyclotomic division left a remainder");
  return q;
}

void reduce(std::vector<Rational>& p, const CycloData& d) {
  int phi = d.phi;
  for (int i = static_cast<int>(p.size()) - 1; i >= phi; --i) {
    if (p[i].is_zero()) continue;
    Rational c = p[i];
    for (int j = 0; j <= phi; ++j)
      if (d.modulus[j] != 0) p[i - phi + j] -= c * Rational(d.modulus[j]);
  }
  p.resize(phi, Rational(0));
}

}  // namespace

std::vector<int64_t> cyclotomic_polynomial(int N) {
  if (N < 1) throw InvalidInput("cyclotomic order must be positive");
  std::vector<int64_t> p(N + 1, 0);
  p[0] = -1;
  p[N] = 1;
  for (int d = 1; d < N; ++d)
    if (N % d == 0) p = poly_div_exact(p, cyclotomic_polynomial(d));
  return p;
}

CycloField::CycloField(int N) {
  auto d = std::make_shared<CycloData>();
  d->N = N;
  d->modulus = cyclotomic_polynomial(N);
  d->phi = static_cast<int>(d->modulus.size()) - 1;
  std::vector<Rational> cur(d->phi, Rational(0));
  cur[0] = Rational(1);
  for (int j = 0; j < N; ++j) {
    d->powers.push_back(cur);
    std::vector<Rational> next(d->phi + 1, Rational(0));
    for (int i = 0; i < d->phi; ++i) next[i + 1] = cur[i];
    reduce(next, *d);
    cur = next;
  }
  d_ = d;
}

int CycloField::order() const { return d_->N; }
int CycloField::degree() const { return d_->phi; }
const std::vector<int64_t>& CycloField::modulus() const { return d_->modulus; }

CycloElement CycloField::zero() const {
  CycloElement e;
  e.f_ = d_;
  e.c_.assign(d_->phi, Rational(0));
  return e;
}

CycloElement CycloField::from_rational(const Rational& r) const {
  CycloElement e = zero();
  e.c_[0] = r;
  return e;
}

CycloElement CycloField::zeta_power(int64_t j) const {
  CycloElement e;
  e.f_ = d_;
  e.c_ = d_->powers[mod_floor(j, d_->N)];
  return e;
}

int CycloElement::order() const { return f_ ? f_->N : 0; }

bool CycloElement::is_zero() const {
  for (const auto& x : c_)
    if (!x.is_zero()) return false;
  return true;
}

bool CycloElement::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return false;
  return true;
}

Rational CycloElement::rational_value() const {
  if (!is_rational()) throw InvalidInput("cyclotomic element is not rational");
  return c_.empty() ? Rational(0) : c_[0];
}

std::complex<double> CycloElement::to_complex() const {
  std::complex<double> s = 0;
  int N = order();
  for (size_t j = 0; j < c_.size(); ++j) {
    if (c_[j].is_zero()) continue;
    double ang = 2 * std::numbers::pi * static_cast<double>(j) / N;
    s += c_[j].to_double() * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return s;
}

std::string CycloElement::str() const {
  std::string out;
  for (size_t j = 0; j < c_.size(); ++j) {
    const Rational& c = c_[j];
    if (c.is_zero()) continue;
    bool neg = c.sign() < 0;
    Rational a = neg ? -c : c;
    std::string mono = j == 0 ? "" : (j == 1 ? "z" : "z^" + std::to_string(j));
    std::string body = mono.empty() ? a.str() : (a.is_one() ? mono : a.str() + "*" + mono);
    if (out.empty()) out = (neg ? "-" : "") + body;
    else out += (neg ? " - " : " + ") + body;
  }
  return out.empty() ? "0" : out;
}

CycloElement CycloElement::operator-() const {
  CycloElement r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

CycloElement& CycloElement::operator+=(const CycloElement& o) {
  if (f_ != o.f_ && (!f_ || !o.f_ || f_->N != o.f_->N)) throw InvalidInput("cyclotomic field mismatch");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CycloElement& CycloElement::operator-=(const CycloElement& o) { return *this += -o; }

CycloElement& CycloElement::operator*=(const CycloElement& o) {
  if (f_ != o.f_ && (!f_ || !o.f_ || f_->N != o.f_->N)) throw InvalidInput("cyclotomic field mismatch");
  std::vector<Rational> p(2 * c_.size(), Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j)
      if (!o.c_[j].is_zero()) p[i + j] += c_[i] * o.c_[j];
  }
  reduce(p, *f_);
  c_ = std::move(p);
  return *this;
}

CycloElement& CycloElement::operator*=(const Rational& c) {
  for (auto& x : c_) x *= c;
  return *this;
}

CycloElement CycloElement::pow(int64_t e) const {
  if (e < 0) throw InvalidInput("negative power of a cyclotomic element");
  CycloElement r = *this;
  for (auto& x : r.c_) x = Rational(0);
  r.c_[0] = Rational(1);
  CycloElement b = *this;
  while (e > 0) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

bool operator==(const CycloElement& a, const CycloElement& b) { return a.order() == b.order() && a.c_ == b.c_; }

}  // namespace kmw
