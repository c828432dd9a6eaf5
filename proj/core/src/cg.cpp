#include "kmw/cg.hpp"

#include "kmw/error.hpp"

namespace kmw {

StarContext::StarContext(MetaplecticDatum met) : met_(std::move(met)), weyl_(met_.datum()) {
  for (int i = 0; i < rank(); ++i) reflections_.push_back(weyl_.from_word({i}));
}

LatticeSeries StarContext::monomial(const Coweight& mu, const Coeff& c) const {
  LatticeSeries s = LatticeSeries::monomial(dim(), rank(), mu, c);
  return s.is_zero() ? zero() : s;
}

LatticeSeries StarContext::monomial(const Coweight& mu) const { return monomial(mu, one()); }

DenomAtom StarContext::star_atom(int i) const { return DenomAtom{-met_.tilde_coroot(i), 1}; }

LatticeSeries StarContext::star_numerator(int i, const LatticeSeries& p) const {
  if (!p.is_exact()) throw InvalidInput("the star action is applied to exact numerators");
  const RootDatum& d = datum();
  const QuadraticForm& form = met_.form();
  int64_t qi = form.q(i);
  Coweight ai = d.coroot(i);
  Coweight at = met_.tilde_coroot(i);
  Coeff one_minus_v = one() - Coeff::v_power(1, n());
  Coeff minus_v = -Coeff::v_power(1, n());
  std::vector<LatticeSeries::Term> out;
  out.reserve(p.size() * 3);
  for (const auto& [lam, c] : p.terms()) {
    int64_t pairing = d.pairing(lam, i);
    int64_t b = form.bilinear(lam, ai);
    if (b != qi * pairing)
      throw ArithmeticFailure("B(y, a_i) differs from Q(a_i) <y, x_i> at " + lam.str());
    Coweight s = d.reflect(i, lam);
    int64_t r = met_.residue(lam, i);
    out.emplace_back(s + r * ai, c * one_minus_v);
    Coeff gk = minus_v * Coeff::gauss(qi + b, n()) * c;
    out.emplace_back(s + at - ai, gk);
    out.emplace_back(s - ai, -gk);
  }
  return LatticeSeries::from_terms(dim(), rank(), n(), std::move(out));
}

Localized StarContext::star_simple(int i, const Localized& f) const {
  for (const auto& [atom, m] : f.denominator())
    if (!met_.in_ytilde(atom.beta))
      throw InvalidInput("star action on a denominator outside Y~: " + atom.beta.str());
  Localized r(star_numerator(i, f.numerator()));
  const WeylElement& s = reflection(i);
  for (const auto& [atom, m] : f.denominator()) r = r.divided_by(DenomAtom{s.act(atom.beta), atom.vexp}, m);
  r = r.divided_by(star_atom(i));
  r.cancel();
  return r;
}

Localized StarContext::star_word(const std::vector<int>& word, const Localized& f) const {
  Localized r = f;
  for (auto it = word.rbegin(); it != word.rend(); ++it) r = star_simple(*it, r);
  return r;
}

Localized StarContext::star(const WeylElement& w, const Coweight& lambda) const {
  return star(w, Localized(monomial(lambda)));
}

Coweight tilde_inversion_sum(const StarContext& ctx, const WeylElement& w) {
  Coweight sum(ctx.dim());
  const auto& word = w.word();
  auto betas = ctx.weyl().inversion_coroots(word);
  for (size_t j = 0; j < word.size(); ++j) sum += ctx.met().n_i(word[j]) * betas[j];
  return sum;
}

bool support_below(const LatticeSeries& p, const Coweight& lambda) {
  for (const auto& [mu, c] : p.terms())
    if (!p.leq(mu, lambda)) return false;
  return true;
}

bool v_polynomial(const LatticeSeries& p) {
  for (const auto& [mu, c] : p.terms())
    for (const auto& [key, r] : c.terms())
      if (key.vexp < 0) return false;
  return true;
}

}  // namespace kmw
