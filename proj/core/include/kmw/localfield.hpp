#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kmw/coeff.hpp"
#include "kmw/cyclotomic.hpp"

namespace kmw {

// The finite field F_q, q = p^k. Elements are indices in [0, q) encoding the
// coefficients of a polynomial in the base-p digits; 0 and 1 are the field
// zero and one.
class FiniteField {
 public:
  explicit FiniteField(int64_t q);

  int64_t q() const { return q_; }
  int64_t p() const { return p_; }
  int degree() const { return k_; }
  int64_t primitive() const { return exp_[1]; }

  int64_t add(int64_t a, int64_t b) const;
  int64_t neg(int64_t a) const;
  int64_t sub(int64_t a, int64_t b) const { return add(a, neg(b)); }
  int64_t mul(int64_t a, int64_t b) const;
  int64_t inv(int64_t a) const;
  int64_t pow(int64_t a, int64_t e) const;
  // Discrete logarithm to the base primitive(), in [0, q - 1).
  int64_t dlog(int64_t a) const;
  int64_t exp(int64_t e) const { return exp_[static_cast<size_t>(((e % (q_ - 1)) + (q_ - 1)) % (q_ - 1))]; }
  // Absolute trace to F_p, as an integer in [0, p).
  int64_t trace(int64_t a) const;
  int64_t minus_one() const { return neg(1); }

 private:
  int64_t q_, p_;
  int k_;
  std::vector<int64_t> modulus_;  // monic irreducible of degree k, low first
  std::vector<int64_t> exp_, log_;
  int64_t mul_slow(int64_t a, int64_t b) const;
};

// Element of F_q((pi)): pi^val * (c_0 + c_1 pi + ... + c_{P-1} pi^{P-1}), c_0 != 0.
struct LocalElement {
  int64_t val = 0;
  std::vector<int64_t> coeffs;
  int64_t unit() const { return coeffs.at(0); }
  friend bool operator==(const LocalElement&, const LocalElement&) = default;
};

// Local field model with the tame n-th order Hilbert symbol.
class LocalField {
 public:
  LocalField(int64_t q, int n, int precision = 4);

  const FiniteField& residue_field() const { return k_; }
  int64_t q() const { return k_.q(); }
  int n() const { return n_; }
  int precision() const { return prec_; }

  LocalElement one() const { return make(0, 1); }
  LocalElement uniformizer() const { return make(1, 1); }
  LocalElement make(int64_t val, int64_t unit, const std::vector<int64_t>& tail = {}) const;
  LocalElement mul(const LocalElement& a, const LocalElement& b) const;
  LocalElement inv(const LocalElement& a) const;
  LocalElement neg(const LocalElement& a) const;
  LocalElement pow(const LocalElement& a, int64_t e) const;
  // 1 - x, or nothing when x = 1 to the working precision.
  std::optional<LocalElement> one_minus(const LocalElement& x) const;
  bool is_one(const LocalElement& x) const;

  // Exponent e in Z/n with (x, y)_n = zeta^e, zeta = primitive^{(q-1)/n}.
  int hilbert(const LocalElement& x, const LocalElement& y) const;

 private:
  FiniteField k_;
  int n_;
  int prec_;
};

struct SteinbergReport {
  int64_t checked = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Bimultiplicativity, (x, 1 - x) = 1 and the derived identities (i)-(vi) of
// a Steinberg symbol over valuations in [-range, range] and all unit residues.
SteinbergReport steinberg_check(const LocalField& f, int valuation_range = 3);

// Exact Gauss sums g_0, ..., g_{n-1} in Q(zeta_N), N = lcm(n, p).
class GaussTable {
 public:
  GaussTable(int64_t q, int n);
  int64_t q() const { return q_; }
  int n() const { return n_; }
  const CycloField& field() const { return field_; }
  const CycloElement& g(int64_t k) const;
  std::complex<double> g_complex(int64_t k) const { return g(k).to_complex(); }
  // Checks g_0 = -1 and g_k g_{-k} = q; returns a description of each failure.
  std::vector<std::string> check_relations() const;

 private:
  int64_t q_;
  int n_;
  CycloField field_;
  std::vector<CycloElement> g_;
};

// Specialization v -> 1/q, g_k -> Gauss sum, a ring homomorphism.
CycloElement specialize(const Coeff& c, const GaussTable& t);

// Throws unless q is a prime power with q = 1 mod 2n.
void check_field_assumption(int64_t q, int n);

}  // namespace kmw
