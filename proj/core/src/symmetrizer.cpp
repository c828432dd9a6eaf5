#include "kmw/symmetrizer.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "kmw/cartan.hpp"
#include "kmw/error.hpp"
#include "kmw/parallel.hpp"

namespace kmw {
namespace {

Coeff v_pow(int e, int n) { return Coeff::v_power(e, n); }

// Inverse of a v power series with constant term 1, to the weight cap.
Coeff inverse_series(const Coeff& c, int64_t weight_cap) {
  int n = c.n();
  Coeff one = Coeff::scalar(Rational(1), n);
  if (c.constant_term() != Rational(1)) throw ArithmeticFailure("series inverse needs constant term 1");
  Coeff r = (c - one).truncated(weight_cap);
  Coeff inv = one, pw = one;
  for (int64_t k = 1; k <= weight_cap + 1; ++k) {
    pw = (pw * -r).truncated(weight_cap);
    if (pw.is_zero()) break;
    inv += pw;
  }
  return inv.truncated(weight_cap);
}

LatticeSeries capped(LatticeSeries s, std::optional<int64_t> cap) {
  return cap ? s.with_weight_cap(*cap) : s;
}

int64_t height_of(const Coweight& c, int rank) { return c.prefix_sum(rank); }

}  // namespace

int64_t MultiplicityTable::multiplicity(const Coweight& beta) const {
  for (const auto& [b, m] : entries)
    if (b == beta) return m;
  return 0;
}

std::vector<Coweight> MultiplicityTable::real() const {
  std::vector<Coweight> out;
  for (const auto& [b, m] : entries)
    if (!imaginary_set.count(b)) out.push_back(b);
  return out;
}

std::vector<std::pair<Coweight, int64_t>> MultiplicityTable::imaginary() const {
  std::vector<std::pair<Coweight, int64_t>> out;
  for (const auto& [b, m] : entries)
    if (imaginary_set.count(b)) out.emplace_back(b, m);
  return out;
}

MultiplicityTable root_multiplicities(const WeylGroup& w, int64_t max_height, const std::vector<int64_t>& scale_in) {
  const RootDatum& d = w.datum();
  int rank = d.rank(), dim = d.dim();
  std::vector<int64_t> scale = scale_in.empty() ? std::vector<int64_t>(static_cast<size_t>(rank), 1) : scale_in;
  int64_t min_scale = *std::min_element(scale.begin(), scale.end());
  int max_len = static_cast<int>(max_height / std::max<int64_t>(min_scale, 1));
  auto els = w.enumerate(max_len);
  std::vector<LatticeSeries::Term> terms;
  for (const auto& e : els) {
    auto betas = w.inversion_coroots(e.word());
    Coweight s(dim);
    for (size_t j = 0; j < betas.size(); ++j) s += scale[static_cast<size_t>(e.word()[j])] * betas[j];
    if (height_of(s, rank) > max_height) continue;
    terms.emplace_back(-s, Coeff::scalar(Rational(e.length() % 2 == 0 ? 1 : -1)));
  }
  int64_t floor = -max_height;
  LatticeSeries lhs = LatticeSeries::from_terms(dim, rank, 1, std::move(terms)).truncated(floor);
  LatticeSeries one = LatticeSeries::monomial(dim, rank, Coweight(dim), Coeff::scalar(Rational(1))).truncated(floor);
  LatticeSeries u = lhs - one;
  // -log(1 + u) = sum_j (-1)^j u^j / j.
  LatticeSeries acc = LatticeSeries(dim, rank, 1).truncated(floor);
  LatticeSeries pw = u;
  for (int64_t j = 1; j <= max_height && !pw.is_zero(); ++j) {
    acc += pw.scaled(Rational(j % 2 == 0 ? 1 : -1, j));
    pw = pw * u;
  }
  std::vector<std::pair<Coweight, Rational>> coeffs;
  for (const auto& [mu, c] : acc.terms()) {
    if (mu.is_zero()) continue;
    coeffs.emplace_back(-mu, c.constant());
  }
  std::sort(coeffs.begin(), coeffs.end(), [&](const auto& a, const auto& b) {
    int64_t ha = height_of(a.first, rank), hb = height_of(b.first, rank);
    return ha != hb ? ha < hb : a.first < b.first;
  });
  MultiplicityTable t;
  t.max_height = max_height;
  std::map<Coweight, int64_t> found;
  for (const auto& [gamma, c] : coeffs) {
    Rational m = c;
    for (int k = 2; k <= max_height; ++k) {
      bool divisible = true;
      Coweight q(dim);
      for (int i = 0; i < dim; ++i) {
        if (gamma[i] % k != 0) {
          divisible = false;
          break;
        }
        q[i] = gamma[i] / k;
      }
      if (!divisible) continue;
      auto it = found.find(q);
      if (it != found.end()) m = m - Rational(it->second, k);
    }
    if (m.is_zero()) continue;
    if (!m.is_integer() || m < Rational(0))
      throw ArithmeticFailure("denominator identity gave a non-integral multiplicity at " + gamma.str());
    int64_t mi = m.to_int64();
    found.emplace(gamma, mi);
    t.entries.emplace_back(gamma, mi);
    bool null = true;
    for (int i = 0; i < rank && null; ++i) null = d.pairing(gamma, i) == 0;
    if (null) t.imaginary_set.insert(gamma);
  }
  return t;
}

std::string to_string(CorrectionMethod m) {
  switch (m) {
    case CorrectionMethod::FiniteOne: return "finite_one";
    case CorrectionMethod::MacdonaldCt: return "macdonald_ct";
    case CorrectionMethod::ExponentProduct: return "exponent_product";
    case CorrectionMethod::ViswanathDivision: return "viswanath";
  }
  return "?";
}

CorrectionMethod parse_correction_method(const std::string& s) {
  if (s == "finite_one") return CorrectionMethod::FiniteOne;
  if (s == "macdonald_ct" || s == "ct") return CorrectionMethod::MacdonaldCt;
  if (s == "exponent_product" || s == "product") return CorrectionMethod::ExponentProduct;
  if (s == "viswanath" || s == "viswanath_division") return CorrectionMethod::ViswanathDivision;
  throw InvalidInput("unknown correction method '" + s + "'");
}

Symmetrizer::Symmetrizer(const StarContext& ctx, bool metaplectic) : ctx_(&ctx), metaplectic_(metaplectic) {
  const MetaplecticDatum& met = ctx.met();
  int rank = ctx.rank(), dim = ctx.dim();
  scale_.assign(static_cast<size_t>(rank), 1);
  if (metaplectic_)
    for (int i = 0; i < rank; ++i) scale_[static_cast<size_t>(i)] = met.n_i(i);
  Classification base = classify(met.datum().cartan());
  finite_ = base.overall() == CartanKind::Finite;
  affine_ = base.components.size() == 1 && base.overall() == CartanKind::Affine;
  imaginary_ = Coweight(dim);
  base_imaginary_ = Coweight(dim);
  if (affine_) {
    const auto& dd = base.components[0].delta_dual;
    for (int i = 0; i < rank; ++i) base_imaginary_[i] = static_cast<int32_t>(dd[static_cast<size_t>(i)]);
    if (metaplectic_) {
      Classification tilde = classify(met.tilde_cartan());
      const auto& td = tilde.components.at(0).delta_dual;
      for (int i = 0; i < rank; ++i) imaginary_[i] = static_cast<int32_t>(td[static_cast<size_t>(i)] * scale_[static_cast<size_t>(i)]);
    } else {
      imaginary_ = base_imaginary_;
    }
  }
}

int64_t Symmetrizer::depth_unit() const { return affine_ ? height_of(base_imaginary_, ctx_->rank()) : 1; }

Coweight Symmetrizer::simple(int i) const { return scale_[static_cast<size_t>(i)] * ctx_->datum().coroot(i); }

std::vector<WeylElement> Symmetrizer::elements(int max_length) const { return ctx_->weyl().enumerate(max_length); }

const MultiplicityTable& Symmetrizer::multiplicities(int64_t max_height) const {
  if (finite_) {
    std::lock_guard<std::mutex> lock(mult_mutex_);
    auto it = mult_cache_.find(-1);
    if (it != mult_cache_.end()) return it->second;
    auto els = elements(1 << 20);
    const WeylElement& w0 = els.back();
    MultiplicityTable t;
    for (const auto& b : inversions(w0)) {
      t.entries.emplace_back(b, 1);
      t.max_height = std::max(t.max_height, height_of(b, ctx_->rank()));
    }
    std::sort(t.entries.begin(), t.entries.end(), [&](const auto& a, const auto& b) {
      int64_t ha = height_of(a.first, ctx_->rank()), hb = height_of(b.first, ctx_->rank());
      return ha != hb ? ha < hb : a.first < b.first;
    });
    return mult_cache_.emplace(-1, std::move(t)).first->second;
  }
  std::lock_guard<std::mutex> lock(mult_mutex_);
  auto it = mult_cache_.lower_bound(max_height);
  if (it != mult_cache_.end()) return it->second;
  return mult_cache_.emplace(max_height, root_multiplicities(ctx_->weyl(), max_height, scale_)).first->second;
}

std::vector<Coweight> Symmetrizer::inversions(const WeylElement& w) const {
  auto betas = ctx_->weyl().inversion_coroots(w.word());
  for (size_t j = 0; j < betas.size(); ++j) betas[j] = scale_[static_cast<size_t>(w.word()[j])] * betas[j];
  return betas;
}

Coweight Symmetrizer::inversion_sum(const WeylElement& w) const {
  Coweight s(ctx_->dim());
  for (const auto& b : inversions(w)) s += b;
  return s;
}

Localized Symmetrizer::act(const WeylElement& w, const Localized& f) const {
  return metaplectic_ ? ctx_->star(w, f) : f.relabel(w);
}

LatticeSeries Symmetrizer::one_series() const { return ctx_->monomial(Coweight(ctx_->dim())); }

Localized Symmetrizer::delta_exact() const {
  if (!finite_) throw InvalidInput("exact Delta needs a finite datum");
  const StarContext& c = *ctx_;
  LatticeSeries num = one_series();
  Localized::Denominator den;
  for (const auto& [b, m] : multiplicities(0).entries) {
    for (int64_t k = 0; k < m; ++k) {
      num = num * atom_polynomial(DenomAtom{-b, 1}, c.rank(), c.n());
      den.emplace_back(DenomAtom{-b, 0}, 1);
    }
  }
  return Localized::fraction(num, den);
}

Localized Symmetrizer::delta_w_exact(const WeylElement& w) const {
  const StarContext& c = *ctx_;
  Localized r = delta_exact();
  for (const auto& g : inversions(w)) {
    LatticeSeries num = c.monomial(Coweight(c.dim()), v_pow(1, c.n())) - c.monomial(-g);
    r = r.times(num).divided_by(DenomAtom{-g, 1});
  }
  return r;
}

Localized Symmetrizer::simple_exact(Flavor flavor, const Coweight& lambda) const {
  if (!finite_) throw InvalidInput("exact symmetrizers need a finite datum");
  const StarContext& c = *ctx_;
  auto els = elements(1 << 20);
  std::vector<Localized> parts(els.size());
  Localized e(c.monomial(lambda));
  parallel_for(els.size(), [&](size_t k) {
    const WeylElement& w = els[k];
    Localized a = act(w, e);
    if (flavor == Flavor::Spherical) {
      parts[k] = (delta_w_exact(w) * a).cancel();
    } else {
      Localized t = a.shifted(-inversion_sum(w));
      parts[k] = w.length() % 2 == 0 ? t : -t;
    }
  });
  Localized sum(c.zero());
  for (const auto& p : parts) sum += p;
  if (flavor == Flavor::Whittaker) sum = delta_exact() * sum;
  return sum.cancel();
}

Localized Symmetrizer::hecke_exact(Flavor flavor, const Coweight& lambda) const {
  if (!finite_) throw InvalidInput("exact symmetrizers need a finite datum");
  DLOperator op(*ctx_, flavor, metaplectic_);
  HeckeOrbit orbit(op, lambda);
  Localized sum(ctx_->zero());
  for (const auto& w : elements(1 << 20)) sum += orbit.value(w);
  return sum.cancel();
}

namespace {

// A coefficient function c(b), cflat(b) or b(b) with X = e^b.
Localized atom_fraction(const StarContext& c, Atom kind, const Coweight& b) {
  Coeff one = c.one(), v = v_pow(1, c.n());
  Coweight zero(c.dim());
  LatticeSeries num;
  switch (kind) {
    case Atom::B: num = c.monomial(zero, v - one); break;
    case Atom::C: num = c.monomial(zero) - c.monomial(b, v); break;
    case Atom::CFlat: num = c.monomial(zero) - c.monomial(-b, v); break;
  }
  return Localized(num).divided_by(DenomAtom{b, 0});
}

}  // namespace

std::map<std::vector<int>, Localized> Symmetrizer::hecke_components_exact(Flavor flavor) const {
  if (!finite_) throw InvalidInput("exact components need a finite datum");
  if (metaplectic_ && ctx_->n() != 1) throw InvalidInput("components are defined for the plain operators");
  const StarContext& c = *ctx_;
  const WeylGroup& W = c.weyl();
  Atom ck = flavor == Flavor::Spherical ? Atom::C : Atom::CFlat;
  using Components = std::map<std::vector<int>, std::pair<WeylElement, Localized>>;
  std::map<std::vector<int>, Components> memo;
  Components id;
  id.emplace(std::vector<int>{}, std::make_pair(W.identity(), Localized(one_series())));
  memo.emplace(std::vector<int>{}, id);
  std::map<std::vector<int>, Localized> total;
  total.emplace(std::vector<int>{}, Localized(one_series()));
  for (const auto& w : elements(1 << 20)) {
    if (w.is_identity()) continue;
    std::vector<int> prefix(w.word().begin(), w.word().end() - 1);
    int i = w.word().back();
    const Components& prev = memo.at(prefix);
    Components next;
    for (const auto& [key, entry] : prev) {
      const auto& [sigma, a] = entry;
      Coweight b = sigma.act(c.datum().coroot(i));
      WeylElement ss = W.multiply(sigma, c.reflection(i));
      Localized cs = a * atom_fraction(c, ck, b);
      Localized bs = a * atom_fraction(c, Atom::B, b);
      auto put = [&](const WeylElement& s, const Localized& x) {
        auto it = next.find(s.word());
        if (it == next.end()) next.emplace(s.word(), std::make_pair(s, x));
        else it->second.second += x;
      };
      put(ss, cs);
      put(sigma, bs);
    }
    for (auto& [key, entry] : next) {
      entry.second.cancel();
      auto it = total.find(key);
      if (it == total.end()) total.emplace(key, entry.second);
      else it->second += entry.second;
    }
    memo.emplace(w.word(), std::move(next));
  }
  for (auto& [k, v] : total) v.cancel();
  return total;
}

LatticeSeries Symmetrizer::delta(int64_t floor, std::optional<int64_t> weight_cap) const {
  const StarContext& c = *ctx_;
  LatticeSeries r = one_series().truncated(floor);
  if (weight_cap) r = r.with_weight_cap(*weight_cap);
  if (floor > 0) return r;
  for (const auto& [b, m] : multiplicities(-floor).entries) {
    if (height_of(b, c.rank()) > -floor) continue;
    LatticeSeries f = capped(expand_atom(Atom::C, -b, c.rank(), floor, c.n()), weight_cap);
    for (int64_t k = 0; k < m; ++k) r = r * f;
  }
  return r;
}

LatticeSeries Symmetrizer::delta_inverse(int64_t floor, std::optional<int64_t> weight_cap) const {
  const StarContext& c = *ctx_;
  LatticeSeries r = one_series().truncated(floor);
  if (weight_cap) r = r.with_weight_cap(*weight_cap);
  if (floor > 0) return r;
  for (const auto& [b, m] : multiplicities(-floor).entries) {
    if (height_of(b, c.rank()) > -floor) continue;
    LatticeSeries f = (one_series() - c.monomial(-b)).truncated(floor) *
                      geometric(v_pow(1, c.n()), -b, c.rank(), floor, c.n());
    f = capped(f, weight_cap);
    for (int64_t k = 0; k < m; ++k) r = r * f;
  }
  return r;
}

namespace {

// (v - e^{-g}) / (1 - v e^{-g}) expanded to the floor.
LatticeSeries inversion_ratio(const StarContext& c, const Coweight& g, int64_t floor) {
  LatticeSeries num = c.monomial(Coweight(c.dim()), v_pow(1, c.n())) - c.monomial(-g);
  return num.truncated(floor) * geometric(v_pow(1, c.n()), -g, c.rank(), floor, c.n());
}

}  // namespace

LatticeSeries Symmetrizer::delta_w(const WeylElement& w, int64_t floor, std::optional<int64_t> weight_cap) const {
  return twist_delta(delta(floor, weight_cap), w, floor, weight_cap);
}

LatticeSeries Symmetrizer::twist_delta(LatticeSeries r, const WeylElement& w, int64_t floor,
                                       std::optional<int64_t> weight_cap) const {
  for (const auto& g : inversions(w)) r = r * capped(inversion_ratio(*ctx_, g, floor), weight_cap);
  return r;
}

LatticeSeries Symmetrizer::correction_factor(CorrectionMethod method, int64_t floor,
                                             std::optional<int64_t> weight_cap) const {
  switch (method) {
    case CorrectionMethod::FiniteOne:
      if (!finite_) throw InvalidInput("finite_one applies to finite data only");
      return capped(one_series().truncated(floor), weight_cap);
    case CorrectionMethod::MacdonaldCt: {
      if (finite_) return capped(one_series().truncated(floor), weight_cap);
      if (!affine_) throw InvalidInput("macdonald_ct needs an affine datum");
      return delta_inverse(floor, weight_cap).constant_term(imaginary_);
    }
    case CorrectionMethod::ExponentProduct:
      return exponent_product(floor, weight_cap);
    case CorrectionMethod::ViswanathDivision:
      if (!weight_cap) throw InvalidInput("viswanath division needs a v-weight cap");
      return viswanath(floor, *weight_cap);
  }
  throw InvalidInput("unknown correction method");
}

LatticeSeries Symmetrizer::exponent_product(int64_t floor, std::optional<int64_t> weight_cap) const {
  if (!affine_) throw InvalidInput("exponent_product needs an affine datum");
  const StarContext& c = *ctx_;
  CartanMatrix a = metaplectic_ ? c.met().tilde_cartan() : c.datum().cartan();
  Classification cl = classify(a);
  std::string label = cl.components.at(0).label;
  bool ok = label.size() > 3 && label.substr(label.size() - 3) == "(1)" &&
            (label[0] == 'A' || label[0] == 'D' || label[0] == 'E');
  if (!ok)
    throw InvalidInput("exponent_product covers untwisted simply laced affine types only; " + label +
                       " needs the general twisted product formula, which is out of scope");
  std::vector<int> nodes;
  for (int i = 0; i + 1 < a.size(); ++i) nodes.push_back(i);
  std::vector<int> exps = finite_exponents(a.principal(nodes));
  int64_t h = height_of(imaginary_, c.rank());
  LatticeSeries r = capped(one_series().truncated(floor), weight_cap);
  for (int64_t i = 1; i * h <= -floor; ++i) {
    Coweight ic = i * imaginary_;
    for (int m : exps) {
      LatticeSeries num = one_series() - c.monomial(-ic, v_pow(m, c.n()));
      LatticeSeries f = num.truncated(floor) * geometric(v_pow(m + 1, c.n()), -ic, c.rank(), floor, c.n());
      r = r * capped(f, weight_cap);
    }
  }
  return r;
}

LatticeSeries Symmetrizer::viswanath(int64_t floor, int64_t weight_cap) const {
  const StarContext& c = *ctx_;
  int n = c.n();
  int64_t vcap = weight_cap / 2;
  int64_t small_limit = -floor;
  size_t small_count = 0;
  if (finite_) {
    small_count = multiplicities(0).entries.size();
  } else {
    for (const auto& b : multiplicities(std::max<int64_t>(small_limit, 1)).real())
      if (height_of(b, c.rank()) <= small_limit) ++small_count;
  }
  int max_len = static_cast<int>(vcap + static_cast<int64_t>(small_count));
  auto els = elements(max_len);
  LatticeSeries base = delta(floor, weight_cap);
  // Group elements by their set of small inversions; every other inversion
  // contributes exactly a factor v above the floor.
  std::map<std::vector<int>, std::vector<Coweight>> small_of;
  std::map<std::vector<Coweight>, Coeff> weights;
  Coeff poincare(n);
  for (const auto& w : els) {
    std::vector<Coweight> s;
    if (!w.is_identity()) {
      std::vector<int> prefix(w.word().begin(), w.word().end() - 1);
      auto it = small_of.find(prefix);
      if (it == small_of.end()) continue;
      s = it->second;
      Coweight g = inversions(w).back();
      if (height_of(g, c.rank()) <= small_limit) {
        s.push_back(g);
        std::sort(s.begin(), s.end());
      }
    }
    int64_t big = w.length() - static_cast<int64_t>(s.size());
    if (big > vcap) continue;
    poincare += v_pow(w.length(), n);
    auto [pos, inserted] = weights.try_emplace(s, Coeff(n));
    pos->second += v_pow(static_cast<int>(big), n);
    small_of.emplace(w.word(), std::move(s));
  }
  poincare = poincare.truncated(weight_cap);
  std::vector<std::pair<std::vector<Coweight>, Coeff>> groups(weights.begin(), weights.end());
  std::vector<LatticeSeries> parts(groups.size());
  parallel_for(groups.size(), [&](size_t k) {
    LatticeSeries f = base;
    for (const auto& g : groups[k].first) f = f * capped(inversion_ratio(c, g, floor), weight_cap);
    parts[k] = f.scaled(groups[k].second.truncated(weight_cap)).with_weight_cap(weight_cap);
  });
  LatticeSeries d = capped(LatticeSeries(c.dim(), c.rank(), n).truncated(floor), weight_cap);
  for (const auto& p : parts) d += p;
  Coeff d0 = d.coefficient(Coweight(c.dim()));
  Coeff inv0 = inverse_series(d0, weight_cap);
  LatticeSeries e = d.scaled(inv0).with_weight_cap(weight_cap) - capped(one_series().truncated(floor), weight_cap);
  LatticeSeries inv = capped(one_series().truncated(floor), weight_cap);
  LatticeSeries pw = inv;
  for (int64_t k = 1; k <= -floor + 1; ++k) {
    pw = -(pw * e);
    if (pw.is_zero()) break;
    inv += pw;
  }
  return inv.scaled((poincare * inv0).truncated(weight_cap)).with_weight_cap(weight_cap);
}

StabilizedSeries Symmetrizer::simple_truncated(Flavor flavor, const Coweight& lambda, int64_t floor, int cap,
                                               std::optional<int64_t> weight_cap) const {
  const StarContext& c = *ctx_;
  if (!c.datum().is_dominant(lambda)) throw InvalidInput("symmetrizers are evaluated on dominant coweights");
  if (cap < 1) throw InvalidInput("length cap must be positive");
  auto els = elements(cap);
  std::vector<LatticeSeries> parts(els.size());
  Localized e(c.monomial(lambda));
  int64_t lam_top = std::max<int64_t>(c.datum().height(lambda), 0);
  LatticeSeries base;
  if (flavor == Flavor::Spherical) base = delta(floor - lam_top, weight_cap);
  parallel_for(els.size(), [&](size_t k) {
    const WeylElement& w = els[k];
    Localized a = act(w, e);
    if (flavor == Flavor::Whittaker) {
      Localized t = a.shifted(-inversion_sum(w));
      LatticeSeries x = t.expand(floor, weight_cap);
      parts[k] = w.length() % 2 == 0 ? x : -x;
    } else {
      LatticeSeries x = a.expand(floor, weight_cap);
      if (!x.is_zero() && x.top_height() > lam_top)
        throw ArithmeticFailure("w * e^lambda has support above lambda at length " + std::to_string(w.length()));
      parts[k] = x * twist_delta(base, w, floor - lam_top, weight_cap);
    }
  });
  auto total = [&](int len) {
    LatticeSeries s = capped(c.zero().truncated(floor), weight_cap);
    for (size_t k = 0; k < els.size(); ++k)
      if (els[k].length() <= len) s += parts[k];
    if (flavor == Flavor::Whittaker) {
      int64_t top = s.is_zero() ? 0 : std::max<int64_t>(s.top_height(), 0);
      s = s * delta(floor - top, weight_cap);
    }
    return s.with_floor(floor);
  };
  StabilizedSeries r;
  r.cap = cap;
  r.elements = els.size();
  LatticeSeries prev = total(cap - 1);
  r.value = total(cap);
  r.witnesses = LatticeSeries::differences(prev, r.value);
  r.stabilized = r.witnesses.empty();
  return r;
}

StabilizedSeries Symmetrizer::hecke_truncated(Flavor flavor, const Coweight& lambda, int64_t floor, int cap,
                                              std::optional<int64_t> weight_cap) const {
  const StarContext& c = *ctx_;
  if (!c.datum().is_dominant(lambda)) throw InvalidInput("symmetrizers are evaluated on dominant coweights");
  if (cap < 1) throw InvalidInput("length cap must be positive");
  DLOperator op(c, flavor, metaplectic_);
  HeckeOrbit orbit(op, lambda);
  auto els = elements(cap);
  LatticeSeries prev = capped(c.zero().truncated(floor), weight_cap);
  LatticeSeries cur = prev;
  for (const auto& w : els) {
    LatticeSeries x = orbit.value(w).expand(floor, weight_cap);
    cur += x;
    if (w.length() < cap) prev += x;
  }
  StabilizedSeries r;
  r.cap = cap;
  r.elements = els.size();
  r.value = cur.with_floor(floor);
  r.witnesses = LatticeSeries::differences(prev.with_floor(floor), r.value);
  r.stabilized = r.witnesses.empty();
  return r;
}

StabilizedSeries Symmetrizer::identity_component(Flavor flavor, int64_t floor, int cap,
                                                 std::optional<int64_t> weight_cap) const {
  const StarContext& c = *ctx_;
  if (metaplectic_ && c.n() != 1) throw InvalidInput("components are defined for the plain operators");
  if (cap < 1) throw InvalidInput("length cap must be positive");
  const WeylGroup& W = c.weyl();
  // Components are kept as exact fractions and expanded once they land on the identity.
  Atom ck = flavor == Flavor::Spherical ? Atom::C : Atom::CFlat;
  using Components = std::map<std::vector<int>, std::pair<WeylElement, Localized>>;
  std::map<std::vector<int>, Components> level;
  Components id;
  id.emplace(std::vector<int>{}, std::make_pair(W.identity(), Localized(one_series())));
  level.emplace(std::vector<int>{}, std::move(id));
  LatticeSeries unit = capped(one_series().truncated(floor), weight_cap);
  LatticeSeries prev = unit, cur = unit;
  auto els = elements(cap);
  int current_len = 0;
  std::map<std::vector<int>, Components> next_level;
  for (const auto& w : els) {
    if (w.is_identity()) continue;
    if (w.length() != current_len) {
      if (current_len > 0) level = std::move(next_level);
      next_level.clear();
      current_len = w.length();
    }
    std::vector<int> prefix(w.word().begin(), w.word().end() - 1);
    int i = w.word().back();
    const Components& prev_c = level.at(prefix);
    Components next;
    for (const auto& [key, entry] : prev_c) {
      const auto& [sigma, a] = entry;
      Coweight b = sigma.act(c.datum().coroot(i));
      WeylElement ss = W.multiply(sigma, c.reflection(i));
      auto put = [&](const WeylElement& s, Localized x) {
        x.cancel();
        auto it = next.find(s.word());
        if (it == next.end()) {
          next.emplace(s.word(), std::make_pair(s, std::move(x)));
        } else {
          it->second.second += x;
          it->second.second.cancel();
        }
      };
      put(ss, a * atom_fraction(c, ck, b));
      put(sigma, a * atom_fraction(c, Atom::B, b));
    }
    auto it = next.find(std::vector<int>{});
    if (it != next.end()) {
      LatticeSeries x = it->second.second.expand(floor, weight_cap);
      cur += x;
      if (w.length() < cap) prev += x;
    }
    next_level.emplace(w.word(), std::move(next));
  }
  StabilizedSeries r;
  r.cap = cap;
  r.elements = els.size();
  r.value = cur.with_floor(floor);
  r.witnesses = LatticeSeries::differences(prev.with_floor(floor), r.value);
  r.stabilized = r.witnesses.empty();
  return r;
}

std::vector<Mismatch> compare_series(const LatticeSeries& lhs, const LatticeSeries& rhs,
                                     std::optional<int64_t> floor) {
  std::vector<Mismatch> out;
  if (floor) {
    for (const LatticeSeries* s : {&lhs, &rhs})
      if (!s->is_exact() && s->floor() > *floor)
        out.push_back({"floor", std::to_string(s->floor()), std::to_string(*floor)});
  }
  for (const auto& mu : LatticeSeries::differences(lhs, rhs)) {
    Coeff a = lhs.coefficient(mu), b = rhs.coefficient(mu);
    out.push_back({"e" + mu.str(), a.str(), b.str()});
  }
  return out;
}

std::string describe(const std::vector<Mismatch>& m, size_t limit) {
  std::string out;
  for (size_t k = 0; k < m.size() && k < limit; ++k) {
    if (k) out += "; ";
    out += m[k].component + ": " + m[k].lhs + " vs " + m[k].rhs;
  }
  if (m.size() > limit) out += "; ... (" + std::to_string(m.size()) + " total)";
  return out;
}

SymmetrizerReport Symmetrizer::check_proportionality(Flavor flavor, const Coweight& lambda, int64_t depth, int cap,
                                                     std::optional<int64_t> weight_cap) const {
  const StarContext& c = *ctx_;
  SymmetrizerReport r;
  r.datum = c.datum().cartan().str();
  r.flavor = to_string(flavor);
  r.lambda = lambda.str();
  r.depth = depth;
  r.cap = cap;
  if (finite_) {
    r.exact = true;
    Localized p = hecke_exact(flavor, lambda);
    Localized i = simple_exact(flavor, lambda);
    if (!Localized::equal(p, i)) r.mismatches.push_back({"fraction", p.str(), i.str()});
    return r;
  }
  int64_t floor = c.datum().height(lambda) - depth * depth_unit();
  StabilizedSeries p = hecke_truncated(flavor, lambda, floor, cap, weight_cap);
  StabilizedSeries i = simple_truncated(flavor, lambda, floor, cap, weight_cap);
  int64_t top = i.value.is_zero() ? 0 : std::max<int64_t>(i.value.top_height(), 0);
  LatticeSeries m = correction_factor(CorrectionMethod::MacdonaldCt, floor - top, weight_cap);
  LatticeSeries rhs = (m * i.value).with_floor(floor);
  r.stabilized = p.stabilized && i.stabilized;
  r.mismatches = compare_series(p.value, rhs, floor);
  return r;
}

SymmetrizerReport Symmetrizer::check_identity_components(int64_t depth, int cap,
                                                         std::optional<int64_t> weight_cap) const {
  SymmetrizerReport r;
  r.datum = ctx_->datum().cartan().str();
  r.flavor = "identity component";
  r.depth = depth;
  r.cap = cap;
  if (finite_) {
    r.exact = true;
    auto a = hecke_components_exact(Flavor::Spherical);
    auto b = hecke_components_exact(Flavor::Whittaker);
    const Localized& ca = a.at({});
    const Localized& cb = b.at({});
    if (!Localized::equal(ca, cb)) r.mismatches.push_back({"C_1", ca.str(), cb.str()});
    return r;
  }
  int64_t floor = -depth * depth_unit();
  StabilizedSeries a = identity_component(Flavor::Spherical, floor, cap, weight_cap);
  StabilizedSeries b = identity_component(Flavor::Whittaker, floor, cap, weight_cap);
  r.stabilized = a.stabilized && b.stabilized;
  r.mismatches = compare_series(a.value, b.value, floor);
  return r;
}

}  // namespace kmw
