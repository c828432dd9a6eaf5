#include "kmw/whittaker.hpp"

#include <limits>
#include <set>

#include "kmw/error.hpp"

namespace kmw {

WhittakerEvaluator::WhittakerEvaluator(MetaplecticDatum met)
    : ctx_(std::make_unique<StarContext>(std::move(met))), sym_(std::make_unique<Symmetrizer>(*ctx_, true)) {
  if (!sym_->finite() && !sym_->affine())
    throw InvalidInput("Whittaker values are computed for finite and affine data");
}

void WhittakerEvaluator::check_lambda(const Coweight& lambda) const {
  if (lambda.dim() != ctx_->dim())
    throw InvalidInput("coweight has " + std::to_string(lambda.dim()) + " coordinates, expected " +
                       std::to_string(ctx_->dim()));
  if (!ctx_->datum().is_dominant(lambda)) throw InvalidInput("Whittaker values need a dominant coweight, got " + lambda.str());
}

Coeff WhittakerEvaluator::prefactor(const Coweight& lambda) const {
  int64_t h = ctx_->datum().height(lambda);
  return Coeff::v_power(static_cast<int>(h), ctx_->n());
}

int64_t WhittakerEvaluator::floor_for(const Coweight& lambda, const WhittakerOptions& opt) const {
  if (opt.depth < 0) throw InvalidInput("depth must be nonnegative");
  return ctx_->datum().height(lambda) - opt.depth * sym_->depth_unit();
}

const GaussTable& WhittakerEvaluator::gauss_table(int64_t q) const {
  auto it = tables_.find(q);
  if (it != tables_.end()) return *it->second;
  check_field_assumption(q, ctx_->n());
  return *tables_.emplace(q, std::make_unique<GaussTable>(q, ctx_->n())).first->second;
}

SpecializedTable WhittakerEvaluator::specialize_series(const LatticeSeries& s, int64_t q) const {
  const GaussTable& t = gauss_table(q);
  SpecializedTable out;
  for (const auto& [mu, c] : s.terms()) {
    CycloElement x = specialize(c, t);
    if (!x.is_zero()) out.emplace(mu, std::move(x));
  }
  return out;
}

WhittakerValue WhittakerEvaluator::simple_route(const Coweight& lambda, const WhittakerOptions& opt) const {
  check_lambda(lambda);
  WhittakerValue r;
  r.lambda = lambda;
  r.route = "simple";
  if (sym_->finite()) {
    r.exact = true;
    r.formal = sym_->simple_exact(Flavor::Whittaker, lambda).polynomial().scaled(prefactor(lambda));
  } else {
    r.floor = floor_for(lambda, opt);
    StabilizedSeries i = sym_->simple_truncated(Flavor::Whittaker, lambda, r.floor, opt.cap, opt.weight_cap);
    int64_t top = i.value.is_zero() ? 0 : std::max<int64_t>(i.value.top_height(), 0);
    LatticeSeries m = sym_->correction_factor(CorrectionMethod::MacdonaldCt, r.floor - top, opt.weight_cap);
    r.formal = (m * i.value).with_floor(r.floor).scaled(prefactor(lambda));
    r.stabilized = i.stabilized;
  }
  if (opt.q) r.specialized = specialize_series(r.formal, *opt.q);
  return r;
}

WhittakerValue WhittakerEvaluator::hecke_route(const Coweight& lambda, const WhittakerOptions& opt) const {
  check_lambda(lambda);
  WhittakerValue r;
  r.lambda = lambda;
  r.route = "hecke";
  if (sym_->finite()) {
    r.exact = true;
    r.formal = sym_->hecke_exact(Flavor::Whittaker, lambda).polynomial().scaled(prefactor(lambda));
  } else {
    r.floor = floor_for(lambda, opt);
    StabilizedSeries p = sym_->hecke_truncated(Flavor::Whittaker, lambda, r.floor, opt.cap, opt.weight_cap);
    r.formal = p.value.scaled(prefactor(lambda));
    r.stabilized = p.stabilized;
  }
  if (opt.q) r.specialized = specialize_series(r.formal, *opt.q);
  return r;
}

std::vector<IwahoriPiece> WhittakerEvaluator::iwahori_pieces(const Coweight& lambda, Flavor flavor,
                                                             const WhittakerOptions& opt) const {
  check_lambda(lambda);
  DLOperator op(*ctx_, flavor, true);
  HeckeOrbit orbit(op, lambda);
  int cap = sym_->finite() ? std::numeric_limits<int>::max() : opt.cap;
  std::vector<IwahoriPiece> out;
  Coeff pre = prefactor(lambda);
  for (const auto& w : ctx_->weyl().enumerate(cap)) {
    Localized x = orbit.value(w).scaled(pre);
    std::optional<SpecializedTable> sp;
    if (opt.q && x.is_polynomial()) sp = specialize_series(x.numerator(), *opt.q);
    out.push_back({w, std::move(x), std::move(sp)});
  }
  return out;
}

WhittakerCrosscheck WhittakerEvaluator::crosscheck(const Coweight& lambda, const WhittakerOptions& opt) const {
  WhittakerCrosscheck r;
  r.simple = simple_route(lambda, opt);
  r.hecke = hecke_route(lambda, opt);
  std::optional<int64_t> floor;
  if (!sym_->finite()) floor = r.simple.floor;
  r.formal_mismatches = compare_series(r.hecke.formal, r.simple.formal, floor);
  if (r.simple.specialized && r.hecke.specialized)
    r.specialized_mismatches = compare_specialized(*r.hecke.specialized, *r.simple.specialized);
  for (const auto* v : {&r.simple, &r.hecke}) {
    if (!polynomial_in_v_and_gauss(v->formal))
      r.invariant_failures.push_back(v->route + " route: a coefficient is not a polynomial in v and g_i");
    for (const auto& [mu, c] : v->formal.terms())
      if (!v->formal.leq(mu, lambda)) {
        r.invariant_failures.push_back(v->route + " route: support at " + mu.str() + " is not below lambda");
        break;
      }
  }
  if (sym_->finite()) {
    // The Iwahori pieces sum to the Hecke route, before and after specialization.
    auto pieces = iwahori_pieces(lambda, Flavor::Whittaker, opt);
    Localized sum(ctx_->zero());
    for (const auto& p : pieces) sum += p.value;
    sum.cancel();
    if (!sum.is_polynomial() || !compare_series(sum.polynomial(), r.hecke.formal).empty())
      r.invariant_failures.push_back("Iwahori pieces do not sum to the Hecke route");
    if (opt.q) {
      const CycloField& field = gauss_table(*opt.q).field();
      SpecializedTable acc;
      for (const auto& p : pieces) {
        if (!p.specialized) {
          std::string word;
          for (int i : p.w.word()) word += std::to_string(i);
          r.invariant_failures.push_back("Iwahori piece at word [" + word + "] is not a polynomial");
          continue;
        }
        for (const auto& [mu, x] : *p.specialized) {
          auto it = acc.find(mu);
          if (it == acc.end()) it = acc.emplace(mu, field.zero()).first;
          it->second += x;
        }
      }
      if (r.hecke.specialized && !compare_specialized(acc, *r.hecke.specialized).empty())
        r.invariant_failures.push_back("specialization does not commute with the sum over W");
    }
  }
  return r;
}

std::vector<Mismatch> compare_specialized(const SpecializedTable& a, const SpecializedTable& b) {
  std::vector<Mismatch> out;
  std::set<Coweight> keys;
  for (const auto& [mu, x] : a) keys.insert(mu);
  for (const auto& [mu, x] : b) keys.insert(mu);
  for (const auto& mu : keys) {
    auto ia = a.find(mu);
    auto ib = b.find(mu);
    bool za = ia == a.end() || ia->second.is_zero();
    bool zb = ib == b.end() || ib->second.is_zero();
    if (za && zb) continue;
    if (!za && !zb && ia->second == ib->second) continue;
    out.push_back({"e" + mu.str(), za ? "0" : ia->second.str(), zb ? "0" : ib->second.str()});
  }
  return out;
}

bool polynomial_in_v_and_gauss(const LatticeSeries& s) {
  for (const auto& [mu, c] : s.terms())
    for (const auto& [key, r] : c.terms()) {
      if (key.vexp < 0) return false;
      for (int k : key.gauss_indices())
        if (k < 0 || k >= c.n()) return false;
    }
  return true;
}

}  // namespace kmw
