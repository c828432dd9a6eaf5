#pragma once

#include <vector>

#include "kmw/localized.hpp"
#include "kmw/root_datum.hpp"
#include "kmw/series.hpp"
#include "kmw/weyl.hpp"

namespace kmw {

// The twisted action s_i * f of W on the coweight algebra attached to a
// metaplectic datum, extended to fractions whose denominators are built from
// exponents in Y~.
class StarContext {
 public:
  explicit StarContext(MetaplecticDatum met);

  const MetaplecticDatum& met() const { return met_; }
  const RootDatum& datum() const { return met_.datum(); }
  const WeylGroup& weyl() const { return weyl_; }
  int n() const { return met_.n(); }
  int dim() const { return met_.dim(); }
  int rank() const { return met_.rank(); }
  const WeylElement& reflection(int i) const { return reflections_.at(static_cast<size_t>(i)); }

  LatticeSeries zero() const { return LatticeSeries(dim(), rank(), n()); }
  LatticeSeries monomial(const Coweight& mu, const Coeff& c) const;
  LatticeSeries monomial(const Coweight& mu) const;
  Coeff one() const { return Coeff::scalar(Rational(1), n()); }

  // N_i(p), with s_i * p = N_i(p) / (1 - v e^{-a~_i}).
  LatticeSeries star_numerator(int i, const LatticeSeries& p) const;
  // The atom 1 - v e^{-a~_i}.
  DenomAtom star_atom(int i) const;

  Localized star_simple(int i, const Localized& f) const;
  // s_{k_1} * (s_{k_2} * ( ... s_{k_r} * f)).
  Localized star_word(const std::vector<int>& word, const Localized& f) const;
  Localized star(const WeylElement& w, const Localized& f) const { return star_word(w.word(), f); }
  Localized star(const WeylElement& w, const Coweight& lambda) const;

  // The plain reflection e^mu -> e^{s_i mu}.
  Localized reflect(int i, const Localized& f) const { return f.relabel(reflection(i)); }

 private:
  MetaplecticDatum met_;
  WeylGroup weyl_;
  std::vector<WeylElement> reflections_;
};

// Sum of the metaplectic coroots n_k b over the inversion coroots b of w^{-1}
// taken along the canonical word of w, i.e. the exponent of prod e^{-b~}.
Coweight tilde_inversion_sum(const StarContext& ctx, const WeylElement& w);

// Checks that every exponent of p lies in the cone below lambda.
bool support_below(const LatticeSeries& p, const Coweight& lambda);

// No coefficient of p has a negative power of v.
bool v_polynomial(const LatticeSeries& p);

}  // namespace kmw
