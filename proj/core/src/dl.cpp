#include "kmw/dl.hpp"

#include "kmw/error.hpp"

namespace kmw {

std::string to_string(Flavor f) { return f == Flavor::Spherical ? "spherical" : "whittaker"; }

Flavor parse_flavor(const std::string& s) {
  if (s == "spherical" || s == "P" || s == "I") return Flavor::Spherical;
  if (s == "whittaker" || s == "Pflat" || s == "Iflat" || s == "flat") return Flavor::Whittaker;
  throw InvalidInput("unknown flavor '" + s + "' (expected spherical or whittaker)");
}

DLOperator::DLOperator(const StarContext& ctx, Flavor flavor, bool metaplectic)
    : ctx_(&ctx), flavor_(flavor), metaplectic_(metaplectic) {}

Coweight DLOperator::exponent(int i) const {
  return metaplectic_ ? ctx_->met().tilde_coroot(i) : ctx_->datum().coroot(i);
}

Localized DLOperator::apply(int i, const Localized& f) const {
  if (i < 0 || i >= ctx_->rank()) throw InvalidInput("simple index out of range");
  if (f.is_polynomial()) return apply_polynomial(i, f.numerator());
  return apply_fraction(i, f);
}

Localized DLOperator::apply_polynomial(int i, const LatticeSeries& p) const {
  const StarContext& c = *ctx_;
  Coweight a = exponent(i);
  Coeff one = c.one(), v = Coeff::v_power(1, c.n());
  DenomAtom line{-a, 0};
  if (metaplectic_ && flavor_ == Flavor::Whittaker) {
    // X^{-1} ((1 - v) p - N(p)) / (1 - X^{-1}), an exact quotient.
    LatticeSeries num = (p.scaled(one - v) - c.star_numerator(i, p)).shifted(-a);
    auto q = divide_by_atom(num, line);
    if (!q) throw ArithmeticFailure("Whittaker operator left a remainder on " + p.str());
    return Localized(std::move(*q));
  }
  return apply_fraction(i, Localized(p));
}

Localized DLOperator::apply_fraction(int i, const Localized& f) const {
  const StarContext& c = *ctx_;
  Coweight a = exponent(i);
  Coeff one = c.one(), v = Coeff::v_power(1, c.n());
  LatticeSeries xinv = c.monomial(-a);
  LatticeSeries coeff_s;
  if (flavor_ == Flavor::Spherical) {
    coeff_s = c.monomial(Coweight(c.dim()), v) - xinv;
  } else {
    coeff_s = -(xinv - c.monomial(-2 * a, v));
  }
  LatticeSeries coeff_1 = xinv.scaled(one - v);
  Localized s = metaplectic_ ? c.star_simple(i, f) : c.reflect(i, f);
  Localized r = s.times(coeff_s) + f.times(coeff_1);
  r = r.divided_by(DenomAtom{-a, 0});
  r.cancel();
  return r;
}

Localized DLOperator::apply_word(const std::vector<int>& word, const Localized& f) const {
  Localized r = f;
  for (auto it = word.rbegin(); it != word.rend(); ++it) r = apply(*it, r);
  return r;
}

HeckeOrbit::HeckeOrbit(const DLOperator& op, const Coweight& lambda) : op_(&op) {
  memo_.emplace(std::vector<int>{}, Localized(op.context().monomial(lambda)));
}

const Localized& HeckeOrbit::value(const WeylElement& w) {
  const auto& word = w.word();
  auto it = memo_.find(word);
  if (it != memo_.end()) return it->second;
  std::vector<int> tail(word.begin() + 1, word.end());
  auto prev = memo_.find(tail);
  Localized base = prev != memo_.end() ? op_->apply(word.front(), prev->second)
                                       : op_->apply_word(word, memo_.at({}));
  return memo_.emplace(word, std::move(base)).first->second;
}

std::map<Coweight, Coeff> upsilon(const DLOperator& op, const WeylElement& w, const Coweight& lambda) {
  if (!op.context().datum().is_dominant(lambda)) throw InvalidInput("upsilon needs a dominant coweight, got " + lambda.str());
  Localized r = op.apply(w, Localized(op.context().monomial(lambda)));
  const LatticeSeries& p = r.polynomial();
  std::map<Coweight, Coeff> out;
  for (const auto& [mu, c] : p.terms()) out.emplace(mu, c);
  return out;
}

}  // namespace kmw
