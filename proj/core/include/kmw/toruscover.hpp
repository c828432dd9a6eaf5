#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "kmw/localfield.hpp"
#include "kmw/root_datum.hpp"
#include "kmw/weyl.hpp"

namespace kmw {

// zeta^e * h_0(s_0) h_1(s_1) ... h_{d-1}(s_{d-1}) over the basis of Y in index order.
struct CoverElement {
  int zeta = 0;
  std::vector<LocalElement> coords;
  friend bool operator==(const CoverElement&, const CoverElement&) = default;
};

// The central extension of the torus by mu_n with generators h_b(s), b a
// basis vector of Y, and relations
//   h_b(s) h_b(t) = (s, t)^{Q(b)} h_b(st),   [h_a(s), h_b(t)] = (s, t)^{B(a, b)}.
class TorusCover {
 public:
  TorusCover(RootDatum datum, QuadraticForm form, LocalField field, int64_t valuation_window = 64);

  const RootDatum& datum() const { return datum_; }
  const QuadraticForm& form() const { return form_; }
  const LocalField& field() const { return field_; }
  int n() const { return field_.n(); }
  int dim() const { return datum_.dim(); }
  int rank() const { return datum_.rank(); }

  CoverElement identity() const;
  CoverElement central(int zeta) const;
  // h_b(s) for the basis vector b of Y.
  CoverElement generator(int b, const LocalElement& s) const;
  CoverElement mul(const CoverElement& x, const CoverElement& y) const;
  CoverElement inv(const CoverElement& x) const;
  CoverElement commutator(const CoverElement& x, const CoverElement& y) const;
  // g x g^{-1}.
  CoverElement conjugate(const CoverElement& g, const CoverElement& x) const;

  // s_a^{-1} (inverse = true) or s_a, for the simple root a = a_i.
  CoverElement s_auto(int i, const CoverElement& x, bool inverse) const;
  // s_w = s_{b_1} ... s_{b_d} along the canonical word of w.
  CoverElement s_word(const WeylElement& w, const CoverElement& x) const;

  CoverElement random_element(std::mt19937_64& rng, int64_t valuation_range) const;
  std::string str(const CoverElement& x) const;

 private:
  LocalElement checked(LocalElement s) const;
  // Pairing <a_i, e_b> of the root a_i with the basis vector e_b of Y.
  int64_t root_pairing(int i, int b) const;

  RootDatum datum_;
  QuadraticForm form_;
  LocalField field_;
  int64_t window_;
  std::vector<std::vector<int64_t>> gram_;  // B(e_a, e_b)
};

struct CoverCheck {
  std::string name;
  int64_t checked = 0;
  std::vector<std::string> counterexamples;
  bool ok() const { return counterexamples.empty(); }
};

struct CoverReport {
  std::string type;
  int64_t q = 0;
  int n = 0;
  std::vector<CoverCheck> checks;
  bool ok() const;
};

// Group axioms, the automorphism identities, braid relations and the rank-two
// action identity for the torus cover of a finite Cartan matrix over F_q((pi)).
CoverReport verify_torus_cover(const CartanMatrix& cartan, int64_t q, int n, uint64_t seed = 20240611,
                               int samples = 40);

}  // namespace kmw
