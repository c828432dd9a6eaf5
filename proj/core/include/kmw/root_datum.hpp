#pragma once

#include <cstdint>
#include <vector>

#include "kmw/cartan.hpp"
#include "kmw/lattice.hpp"
#include "kmw/matrix.hpp"

namespace kmw {

// Simply connected root datum. The cocharacter lattice Y has basis
// a_1^vee, ..., a_r^vee followed by derivation directions d_j (one per node of
// `derivation_nodes`). X carries the dual basis. Roots x_i are stored in X
// coordinates: <a_k^vee, x_i> = a_ki and <d_j, x_i> = [i == derivation_nodes[j]].
class RootDatum {
 public:
  RootDatum() = default;
  static RootDatum simply_connected(const CartanMatrix& a);

  const CartanMatrix& cartan() const { return cartan_; }
  int rank() const { return cartan_.size(); }
  int dim() const { return dim_; }
  const std::vector<int>& derivation_nodes() const { return derivation_nodes_; }

  // X coordinates of the root x_i.
  const std::vector<int64_t>& root(int i) const { return roots_[i]; }
  Coweight coroot(int i) const { return Coweight::unit(dim_, i); }
  Coweight zero() const { return Coweight(dim_); }

  // <y, x_i>.
  int64_t pairing(const Coweight& y, int i) const;
  // <y, x> for x in X coordinates.
  static int64_t pair(const Coweight& y, const std::vector<int64_t>& x);
  // rho-height <y, rho>, where <a_i^vee, rho> = 1 and <d_j, rho> = 0.
  int64_t height(const Coweight& y) const { return y.prefix_sum(rank()); }

  // s_i(y) = y - <y, x_i> a_i^vee.
  Coweight reflect(int i, const Coweight& y) const;
  // s_i(x) = x - <a_i^vee, x> x_i.
  std::vector<int64_t> reflect_weight(int i, const std::vector<int64_t>& x) const;

  // True if y is a nonzero element of the positive coroot cone.
  bool is_positive(const Coweight& y) const;
  bool is_negative(const Coweight& y) const { return is_positive(-y); }
  // Coroot-cone order: y <= z iff z - y is a nonnegative combination of simple coroots.
  bool leq(const Coweight& y, const Coweight& z) const;
  bool is_dominant(const Coweight& y) const;

 private:
  CartanMatrix cartan_;
  int dim_ = 0;
  std::vector<int> derivation_nodes_;
  std::vector<std::vector<int64_t>> roots_;
};

// W-invariant integral quadratic form on Y, stored through Q(a_i^vee) and the
// Gram matrix of the associated bilinear form B(y, z) = Q(y + z) - Q(y) - Q(z).
class QuadraticForm {
 public:
  QuadraticForm() = default;
  // Validates positivity and a_ij Q_j = a_ji Q_i.
  static QuadraticForm from_values(const RootDatum& d, std::vector<int64_t> q);
  // Q proportional to the symmetrizing vector, scaled to a primitive integer vector.
  static QuadraticForm standard(const RootDatum& d);

  const std::vector<int64_t>& values() const { return q_; }
  int64_t q(int i) const { return q_[i]; }
  const IntMatrix& gram() const { return gram_; }
  int64_t bilinear(const Coweight& y, const Coweight& z) const;
  int64_t value(const Coweight& y) const;

 private:
  std::vector<int64_t> q_;
  IntMatrix gram_;
};

// Metaplectic structure attached to (datum, Q, n).
class MetaplecticDatum {
 public:
  MetaplecticDatum() = default;
  MetaplecticDatum(RootDatum d, QuadraticForm q, int n);
  static MetaplecticDatum plain(const CartanMatrix& a, int n = 1);

  const RootDatum& datum() const { return datum_; }
  const QuadraticForm& form() const { return form_; }
  int n() const { return n_; }
  int rank() const { return datum_.rank(); }
  int dim() const { return datum_.dim(); }

  // n_i = n / gcd(n, Q(a_i^vee)).
  int64_t n_i(int i) const { return ni_[i]; }
  const std::vector<int64_t>& n_values() const { return ni_; }
  // n_i a_i^vee.
  Coweight tilde_coroot(int i) const { return ni_[i] * datum_.coroot(i); }
  const CartanMatrix& tilde_cartan() const { return tilde_cartan_; }
  // Columns form a basis of Y~ = {y : B(y, Y) in nZ}.
  const IntMatrix& ytilde_basis() const { return ytilde_; }
  bool in_ytilde(const Coweight& y) const;
  // <y, x_i> reduced into [0, n_i).
  int64_t residue(const Coweight& y, int i) const;
  // rho~ in X coordinates: <a_i^vee, rho~> = 1 / n_i, zero on derivations.
  const std::vector<Rational>& rho_tilde() const { return rho_tilde_; }
  Rational tilde_height(const Coweight& y) const;

 private:
  RootDatum datum_;
  QuadraticForm form_;
  int n_ = 1;
  std::vector<int64_t> ni_;
  CartanMatrix tilde_cartan_;
  IntMatrix ytilde_;
  std::vector<Rational> rho_tilde_;
};

}  // namespace kmw
