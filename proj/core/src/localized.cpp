#include "kmw/localized.hpp"

#include <algorithm>
#include <map>

#include "kmw/error.hpp"
#include "kmw/matrix.hpp"
#include "kmw/weyl.hpp"

namespace kmw {
namespace {

int first_nonzero(const Coweight& b) {
  for (int i = 0; i < b.dim(); ++i)
    if (b[i] != 0) return i;
  throw InvalidInput("denominator atom with zero exponent");
}

bool is_negative_cone(const Coweight& b, int rank) {
  if (b.is_zero()) return false;
  for (int i = 0; i < b.dim(); ++i) {
    if (i < rank && b[i] > 0) return false;
    if (i >= rank && b[i] != 0) return false;
  }
  return true;
}

bool is_positive_cone(const Coweight& b, int rank) { return is_negative_cone(-b, rank); }

}  // namespace

LatticeSeries atom_polynomial(const DenomAtom& a, int rank, int n) {
  int dim = a.beta.dim();
  std::vector<LatticeSeries::Term> t;
  t.emplace_back(Coweight(dim), Coeff::scalar(Rational(1), n));
  t.emplace_back(a.beta, -Coeff::v_power(a.vexp, n));
  return LatticeSeries::from_terms(dim, rank, n, std::move(t));
}

std::optional<LatticeSeries> divide_by_atom(const LatticeSeries& p, const DenomAtom& a) {
  if (!p.is_exact()) throw InvalidInput("exact division needs an exact numerator");
  const Coweight& beta = a.beta;
  int pc = first_nonzero(beta);
  // Cosets of Z beta, each a Laurent polynomial in X = e^beta.
  std::map<Coweight, std::map<int64_t, Coeff>> lines;
  for (const auto& [mu, c] : p.terms()) {
    int64_t t = floor_div(mu[pc], beta[pc]);
    Coweight rep = mu - t * beta;
    lines[rep].emplace(t, c);
  }
  std::vector<LatticeSeries::Term> out;
  for (auto& [rep, f] : lines) {
    int64_t tmin = f.begin()->first, tmax = f.rbegin()->first;
    Coeff q(p.n());
    for (int64_t t = tmin; t <= tmax; ++t) {
      Coeff next = q.shift_v(a.vexp);
      auto it = f.find(t);
      if (it != f.end()) next += it->second;
      q = std::move(next);
      if (t == tmax) {
        if (!q.is_zero()) return std::nullopt;
      } else if (!q.is_zero()) {
        out.emplace_back(rep + t * beta, q);
      }
    }
  }
  return LatticeSeries::from_terms(p.dim(), p.rank(), p.n(), std::move(out));
}

Localized::Localized(LatticeSeries numerator) : num_(std::move(numerator)) {
  if (!num_.is_exact()) throw InvalidInput("localized numerator must be exact");
}

Localized Localized::fraction(LatticeSeries numerator, const Denominator& den) {
  Localized r(std::move(numerator));
  for (const auto& [a, m] : den) r.add_atom(a, m);
  return r;
}

void Localized::add_atom(DenomAtom a, int multiplicity) {
  if (multiplicity <= 0) return;
  if (a.beta.dim() != num_.dim()) throw InvalidInput("denominator atom dimension mismatch");
  if (a.vexp < 0) throw InvalidInput("denominator atoms carry nonnegative v powers");
  if (a.vexp == 0 && a.beta[first_nonzero(a.beta)] > 0) {
    // 1/(1 - e^b) = -e^{-b}/(1 - e^{-b}).
    for (int k = 0; k < multiplicity; ++k)
      num_ = num_.shifted(-a.beta).scaled(Rational(-1));
    a.beta = -a.beta;
  }
  auto it = std::lower_bound(den_.begin(), den_.end(), a, [](const auto& x, const DenomAtom& y) { return x.first < y; });
  if (it != den_.end() && it->first == a) it->second += multiplicity;
  else den_.insert(it, {a, multiplicity});
}

const LatticeSeries& Localized::polynomial() const {
  if (!den_.empty()) throw ArithmeticFailure("expected a polynomial, found denominator " + str());
  return num_;
}

Localized Localized::divided_by(const DenomAtom& a, int multiplicity) const {
  Localized r = *this;
  r.add_atom(a, multiplicity);
  return r;
}

Localized Localized::operator-() const {
  Localized r = *this;
  r.num_ = -r.num_;
  return r;
}

Localized operator*(const Localized& a, const Localized& b) {
  Localized r(a.num_ * b.num_);
  r.den_ = a.den_;
  for (const auto& [atom, m] : b.den_) {
    auto it = std::lower_bound(r.den_.begin(), r.den_.end(), atom,
                               [](const auto& x, const DenomAtom& y) { return x.first < y; });
    if (it != r.den_.end() && it->first == atom) it->second += m;
    else r.den_.insert(it, {atom, m});
  }
  return r;
}

Localized operator+(const Localized& a, const Localized& b) {
  if (a.den_ == b.den_) {
    Localized r = a;
    r.num_ += b.num_;
    return r;
  }
  std::map<DenomAtom, std::pair<int, int>> mult;
  for (const auto& [atom, m] : a.den_) mult[atom].first = m;
  for (const auto& [atom, m] : b.den_) mult[atom].second = m;
  LatticeSeries na = a.num_, nb = b.num_;
  Localized::Denominator den;
  for (const auto& [atom, ms] : mult) {
    int top = std::max(ms.first, ms.second);
    LatticeSeries f = atom_polynomial(atom, a.rank(), a.num_.n());
    for (int k = ms.first; k < top; ++k) na *= f;
    for (int k = ms.second; k < top; ++k) nb *= f;
    den.emplace_back(atom, top);
  }
  Localized r(na + nb);
  r.den_ = std::move(den);
  return r;
}

Localized operator-(const Localized& a, const Localized& b) { return a + (-b); }

Localized& Localized::operator+=(const Localized& o) {
  *this = *this + o;
  return *this;
}

Localized Localized::scaled(const Coeff& c) const {
  Localized r = *this;
  r.num_ = r.num_.scaled(c);
  return r;
}

Localized Localized::shifted(const Coweight& mu) const {
  Localized r = *this;
  r.num_ = r.num_.shifted(mu);
  return r;
}

Localized Localized::times(const LatticeSeries& p) const {
  Localized r = *this;
  r.num_ = r.num_ * p;
  return r;
}

Localized Localized::relabel(const WeylElement& w) const {
  Localized r(num_.relabel(w));
  for (const auto& [atom, m] : den_) r.add_atom(DenomAtom{w.act(atom.beta), atom.vexp}, m);
  return r;
}

Localized& Localized::cancel() {
  if (num_.is_zero()) {
    den_.clear();
    return *this;
  }
  for (auto& [atom, m] : den_) {
    while (m > 0) {
      auto q = divide_by_atom(num_, atom);
      if (!q) break;
      num_ = std::move(*q);
      --m;
    }
  }
  std::erase_if(den_, [](const auto& x) { return x.second == 0; });
  return *this;
}

LatticeSeries Localized::expand(int64_t floor, std::optional<int64_t> weight_cap) const {
  int rk = rank(), n = num_.n();
  struct Factor {
    DenomAtom atom;
    bool flipped;
    int64_t top;
  };
  std::vector<Factor> factors;
  int64_t total_top = num_.is_zero() ? 0 : num_.top_height();
  for (const auto& [atom, m] : den_) {
    bool neg = is_negative_cone(atom.beta, rk);
    bool pos = is_positive_cone(atom.beta, rk);
    if (!neg && !pos) throw InvalidInput("denominator atom is not a coroot cone element: " + atom.beta.str());
    int64_t top = neg ? 0 : -atom.beta.prefix_sum(rk);
    for (int k = 0; k < m; ++k) {
      factors.push_back({atom, pos, top});
      total_top += top;
    }
  }
  if (num_.is_zero()) return num_.truncated(floor);
  int64_t num_top = num_.top_height();
  LatticeSeries acc = num_.truncated(floor - (total_top - num_top));
  for (const auto& f : factors) {
    int64_t fl = floor - (total_top - f.top);
    LatticeSeries g;
    if (!f.flipped) {
      g = geometric(Coeff::v_power(f.atom.vexp, n), f.atom.beta, rk, fl, n);
    } else {
      // 1/(1 - v^k e^b) = -v^{-k} e^{-b} / (1 - v^{-k} e^{-b}).
      Coweight nb = -f.atom.beta;
      g = geometric(Coeff::v_power(-f.atom.vexp, n), nb, rk, fl - nb.prefix_sum(rk), n)
              .shifted(nb)
              .scaled(-Coeff::v_power(-f.atom.vexp, n));
    }
    acc = acc * g;
  }
  acc = acc.with_floor(floor);
  if (acc.floor() != floor)
    throw ArithmeticFailure("expansion reached height " + std::to_string(acc.floor()) + " instead of " + std::to_string(floor));
  if (weight_cap) acc = acc.with_weight_cap(*weight_cap);
  return acc;
}

bool Localized::equal(const Localized& a, const Localized& b) {
  if (a.dim() != b.dim()) return false;
  std::map<DenomAtom, std::pair<int, int>> mult;
  for (const auto& [atom, m] : a.den_) mult[atom].first = m;
  for (const auto& [atom, m] : b.den_) mult[atom].second = m;
  LatticeSeries lhs = a.num_, rhs = b.num_;
  for (const auto& [atom, ms] : mult) {
    int common = std::min(ms.first, ms.second);
    LatticeSeries f = atom_polynomial(atom, a.rank(), a.num_.n());
    for (int k = common; k < ms.second; ++k) lhs *= f;
    for (int k = common; k < ms.first; ++k) rhs *= f;
  }
  return LatticeSeries::differences(lhs, rhs).empty();
}

std::string Localized::str() const {
  std::string out = "(" + num_.str() + ")";
  if (den_.empty()) return out;
  out += " / (";
  bool first = true;
  for (const auto& [atom, m] : den_) {
    if (!first) out += " ";
    first = false;
    std::string c = atom.vexp == 0 ? "" : (atom.vexp == 1 ? "v*" : "v^" + std::to_string(atom.vexp) + "*");
    out += "(1 - " + c + "e" + atom.beta.str() + ")";
    if (m > 1) out += "^" + std::to_string(m);
  }
  return out + ")";
}

}  // namespace kmw
