#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kmw/cartan.hpp"
#include "kmw/rational.hpp"
#include "kmw/root_datum.hpp"

namespace kmw {

// An element of W stored by its action on Y (and the inverse action), plus
// its lexicographically least reduced word.
class WeylElement {
 public:
  WeylElement() = default;

  const std::vector<int>& word() const { return word_; }
  int length() const { return static_cast<int>(word_.size()); }
  int dim() const { return dim_; }
  bool is_identity() const { return word_.empty(); }

  // Matrix entry (k, l) of the action on the Y basis.
  int64_t entry(int k, int l) const { return m_[static_cast<size_t>(k) * dim_ + l]; }
  Coweight act(const Coweight& y) const;
  Coweight act_inverse(const Coweight& y) const;
  // Action on X (dual coordinates), the inverse transpose of the Y action.
  std::vector<int64_t> act_weight(const std::vector<int64_t>& x) const;

  size_t hash() const;
  friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.m_ == b.m_; }

 private:
  friend class WeylGroup;
  int dim_ = 0;
  std::vector<int64_t> m_;
  std::vector<int64_t> inv_;
  std::vector<int> word_;
};

struct WeylElementHash {
  size_t operator()(const WeylElement& w) const { return w.hash(); }
};

class WeylGroup {
 public:
  WeylGroup() = default;
  explicit WeylGroup(RootDatum d);
  explicit WeylGroup(const CartanMatrix& a) : WeylGroup(RootDatum::simply_connected(a)) {}

  const RootDatum& datum() const { return d_; }
  int rank() const { return d_.rank(); }

  WeylElement identity() const;
  // Element of an arbitrary word; the stored word is the canonical reduced word.
  WeylElement from_word(const std::vector<int>& word) const;
  WeylElement multiply(const WeylElement& a, const WeylElement& b) const;
  WeylElement inverse(const WeylElement& w) const;

  // w s_i has length l(w) - 1 iff w(a_i^vee) < 0.
  bool is_right_descent(const WeylElement& w, int i) const;
  // s_i w has length l(w) - 1 iff w^{-1}(a_i^vee) < 0.
  bool is_left_descent(const WeylElement& w, int i) const;

  // All elements of length <= max_length ordered by (length, canonical word).
  // Throws ResourceLimit when more than `cap` elements would be produced.
  std::vector<WeylElement> enumerate(int max_length, size_t cap = 5'000'000) const;

  // beta_j = s_{k_1} ... s_{k_{j-1}} (a_{k_j}^vee) for the given word.
  std::vector<Coweight> inversion_coroots(const std::vector<int>& word) const;
  // Same sequence for roots, in X coordinates.
  std::vector<std::vector<int64_t>> inversion_roots(const std::vector<int>& word) const;

 private:
  void canonicalize(WeylElement& w) const;
  void left_mul(WeylElement& w, int i) const;
  void right_mul(WeylElement& w, int i) const;

  RootDatum d_;
};

// Canonical reduced word computed purely by rewriting: deletions of s s and
// braid moves, exploring all words reachable by braid moves.
std::vector<int> normalize_word(const CartanMatrix& a, const std::vector<int>& word);

// Sum of t^{l(w)} over W truncated at max_degree (coefficient list).
std::vector<int64_t> poincare_series(const CartanMatrix& a, int max_degree);
// Full Poincare polynomial of a finite Weyl group.
std::vector<int64_t> finite_poincare(const CartanMatrix& a);
// Exponents m_j with W(t) = prod (1 - t^{m_j + 1}) / (1 - t).
std::vector<int> finite_exponents(const CartanMatrix& a);

// Integer polynomial as a coefficient list, lowest degree first.
using IntPoly = std::vector<Rational>;

struct Rank2Polys {
  IntPoly f_rec, g_rec;        // from the recursion
  IntPoly f_closed, g_closed;  // binomial closed forms
};
Rank2Polys rank2_fg(int k);
Rational eval_poly(const IntPoly& p, const Rational& x);

}  // namespace kmw
