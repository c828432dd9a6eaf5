#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "kmw/rational.hpp"

namespace kmw {

struct CycloData;

// Element of the cyclotomic field Q(zeta_N), stored as a rational polynomial
// in zeta_N of degree below phi(N).
class CycloElement {
 public:
  CycloElement() = default;

  int order() const;
  const std::vector<Rational>& coefficients() const { return c_; }
  bool is_zero() const;
  std::complex<double> to_complex() const;
  // Rational value if the element lies in Q, otherwise throws.
  Rational rational_value() const;
  bool is_rational() const;
  std::string str() const;

  CycloElement operator-() const;
  CycloElement& operator+=(const CycloElement& o);
  CycloElement& operator-=(const CycloElement& o);
  CycloElement& operator*=(const CycloElement& o);
  CycloElement& operator*=(const Rational& c);
  friend CycloElement operator+(CycloElement a, const CycloElement& b) { return a += b; }
  friend CycloElement operator-(CycloElement a, const CycloElement& b) { return a -= b; }
  friend CycloElement operator*(CycloElement a, const CycloElement& b) { return a *= b; }
  friend CycloElement operator*(CycloElement a, const Rational& c) { return a *= c; }
  CycloElement pow(int64_t e) const;
  friend bool operator==(const CycloElement& a, const CycloElement& b);

 private:
  friend class CycloField;
  std::shared_ptr<const CycloData> f_;
  std::vector<Rational> c_;
};

class CycloField {
 public:
  explicit CycloField(int N);
  int order() const;
  int degree() const;
  // Coefficients of the cyclotomic polynomial Phi_N, lowest degree first.
  const std::vector<int64_t>& modulus() const;

  CycloElement zero() const;
  CycloElement from_rational(const Rational& r) const;
  CycloElement zeta_power(int64_t j) const;

 private:
  std::shared_ptr<const CycloData> d_;
};

std::vector<int64_t> cyclotomic_polynomial(int N);

}  // namespace kmw
