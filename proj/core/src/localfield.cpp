#include "kmw/localfield.hpp"

#include <numeric>

#include "kmw/error.hpp"
#include "kmw/matrix.hpp"

namespace kmw {
namespace {

bool is_prime(int64_t p) {
  if (p < 2) return false;
  for (int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<int64_t> prime_factors(int64_t m) {
  std::vector<int64_t> out;
  for (int64_t d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      out.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) out.push_back(m);
  return out;
}

// Polynomials over F_p as coefficient vectors, lowest first.
using Poly = std::vector<int64_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, int64_t p) {
  trim(a);
  int dm = static_cast<int>(m.size()) - 1;
  int64_t lead_inv = 1;
  for (int64_t e = 0, b = m.back(); e < p - 2; ++e) lead_inv = lead_inv * b % p;  // b^{p-2}
  while (static_cast<int>(a.size()) - 1 >= dm) {
    int shift = static_cast<int>(a.size()) - 1 - dm;
    int64_t c = a.back() * lead_inv % p;
    for (int j = 0; j <= dm; ++j) a[shift + j] = ((a[shift + j] - c * m[j]) % p + p) % p;
    trim(a);
  }
  return a;
}

bool irreducible(const Poly& f, int64_t p) {
  int k = static_cast<int>(f.size()) - 1;
  for (int d = 1; 2 * d <= k; ++d) {
    int64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int64_t idx = 0; idx < count; ++idx) {
      Poly g(d + 1, 0);
      int64_t t = idx;
      for (int i = 0; i < d; ++i) {
        g[i] = t % p;
        t /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

FiniteField::FiniteField(int64_t q) : q_(q) {
  if (q < 2) throw InvalidInput("field size must be at least 2");
  p_ = 0;
  for (int64_t d = 2; d <= q; ++d)
    if (q % d == 0) {
      p_ = d;
      break;
    }
  k_ = 0;
  for (int64_t t = q; t > 1; t /= p_) {
    if (t % p_ != 0) throw InvalidInput("field size must be a prime power: " + std::to_string(q));
    ++k_;
  }
  if (!is_prime(p_)) throw InvalidInput("field size must be a prime power");
  if (q > (1 << 20)) throw InvalidInput("field size too large for table arithmetic");
  if (k_ > 1) {
    int64_t count = q_;
    for (int64_t idx = 0; idx < count; ++idx) {
      Poly f(k_ + 1, 0);
      int64_t t = idx;
      for (int i = 0; i < k_; ++i) {
        f[i] = t % p_;
        t /= p_;
      }
      f[k_] = 1;
      if (f[0] != 0 && irreducible(f, p_)) {
        modulus_ = f;
        break;
      }
    }
  }
  // Primitive element by order test.
  auto slow_pow = [&](int64_t a, int64_t e) {
    int64_t r = 1;
    while (e > 0) {
      if (e & 1) r = mul_slow(r, a);
      a = mul_slow(a, a);
      e >>= 1;
    }
    return r;
  };
  auto factors = prime_factors(q_ - 1);
  int64_t g = -1;
  for (int64_t a = 1; a < q_ && g < 0; ++a) {
    bool ok = true;
    for (int64_t l : factors)
      if (slow_pow(a, (q_ - 1) / l) == 1) {
        ok = false;
        break;
      }
    if (ok) g = a;
  }
  if (g < 0) throw ArithmeticFailure("no primitive element found");
  exp_.assign(q_ - 1, 0);
  log_.assign(q_, -1);
  int64_t x = 1;
  for (int64_t e = 0; e < q_ - 1; ++e) {
    exp_[e] = x;
    log_[x] = e;
    x = mul_slow(x, g);
  }
}

int64_t FiniteField::mul_slow(int64_t a, int64_t b) const {
  if (k_ == 1) return a * b % p_;
  Poly pa(k_, 0), pb(k_, 0);
  for (int i = 0; i < k_; ++i) {
    pa[i] = a % p_;
    a /= p_;
    pb[i] = b % p_;
    b /= p_;
  }
  Poly prod(2 * k_, 0);
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p_;
  Poly r = poly_mod(prod, modulus_, p_);
  int64_t out = 0;
  for (int i = static_cast<int>(r.size()) - 1; i >= 0; --i) out = out * p_ + r[i];
  return out;
}

int64_t FiniteField::add(int64_t a, int64_t b) const {
  if (k_ == 1) return (a + b) % p_;
  int64_t out = 0, scale = 1;
  for (int i = 0; i < k_; ++i) {
    out += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

int64_t FiniteField::neg(int64_t a) const {
  if (k_ == 1) return (p_ - a) % p_;
  int64_t out = 0, scale = 1;
  for (int i = 0; i < k_; ++i) {
    out += ((p_ - a % p_) % p_) * scale;
    a /= p_;
    scale *= p_;
  }
  return out;
}

int64_t FiniteField::mul(int64_t a, int64_t b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[(log_[a] + log_[b]) % (q_ - 1)];
}

int64_t FiniteField::inv(int64_t a) const {
  if (a == 0) throw ArithmeticFailure("inverse of zero in finite field");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

int64_t FiniteField::pow(int64_t a, int64_t e) const {
  if (a == 0) {
    if (e <= 0) throw ArithmeticFailure("nonpositive power of zero");
    return 0;
  }
  int64_t l = mod_floor(log_[a] * (e % (q_ - 1)), q_ - 1);
  return exp_[l];
}

int64_t FiniteField::dlog(int64_t a) const {
  if (a <= 0 || a >= q_) throw InvalidInput("discrete log of zero or invalid element");
  return log_[a];
}

int64_t FiniteField::trace(int64_t a) const {
  int64_t s = 0, x = a;
  for (int i = 0; i < k_; ++i) {
    s = add(s, x);
    x = pow(x, p_);
  }
  if (s >= p_) throw ArithmeticFailure("trace outside the prime field");
  return s;
}

void check_field_assumption(int64_t q, int n) {
  FiniteField f(q);
  if (n < 1) throw InvalidInput("n must be positive");
  if ((q - 1) % (2 * n) != 0)
    throw InvalidInput("field assumption q = 1 mod 2n fails for q=" + std::to_string(q) + ", n=" + std::to_string(n));
}

LocalField::LocalField(int64_t q, int n, int precision) : k_(q), n_(n), prec_(precision) {
  check_field_assumption(q, n);
  if (precision < 1) throw InvalidInput("precision must be positive");
}

LocalElement LocalField::make(int64_t val, int64_t unit, const std::vector<int64_t>& tail) const {
  if (unit <= 0 || unit >= k_.q()) throw InvalidInput("unit residue must be a nonzero field element");
  LocalElement x;
  x.val = val;
  x.coeffs.assign(prec_, 0);
  x.coeffs[0] = unit;
  for (size_t i = 0; i < tail.size() && static_cast<int>(i) + 1 < prec_; ++i) x.coeffs[i + 1] = tail[i];
  return x;
}

LocalElement LocalField::mul(const LocalElement& a, const LocalElement& b) const {
  LocalElement r;
  r.val = a.val + b.val;
  r.coeffs.assign(prec_, 0);
  for (int i = 0; i < prec_; ++i)
    for (int j = 0; i + j < prec_; ++j) r.coeffs[i + j] = k_.add(r.coeffs[i + j], k_.mul(a.coeffs[i], b.coeffs[j]));
  return r;
}

LocalElement LocalField::inv(const LocalElement& a) const {
  LocalElement r;
  r.val = -a.val;
  r.coeffs.assign(prec_, 0);
  int64_t b0 = k_.inv(a.coeffs[0]);
  r.coeffs[0] = b0;
  for (int j = 1; j < prec_; ++j) {
    int64_t s = 0;
    for (int i = 1; i <= j; ++i) s = k_.add(s, k_.mul(a.coeffs[i], r.coeffs[j - i]));
    r.coeffs[j] = k_.neg(k_.mul(b0, s));
  }
  return r;
}

LocalElement LocalField::neg(const LocalElement& a) const {
  LocalElement r = a;
  for (auto& c : r.coeffs) c = k_.neg(c);
  return r;
}

LocalElement LocalField::pow(const LocalElement& a, int64_t e) const {
  if (e < 0) return pow(inv(a), -e);
  LocalElement r = one(), b = a;
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    e >>= 1;
    if (e) b = mul(b, b);
  }
  return r;
}

bool LocalField::is_one(const LocalElement& x) const {
  if (x.val != 0 || x.coeffs[0] != 1) return false;
  for (int i = 1; i < prec_; ++i)
    if (x.coeffs[i] != 0) return false;
  return true;
}

std::optional<LocalElement> LocalField::one_minus(const LocalElement& x) const {
  // Absolute expansion of 1 - x over exponents [lo, lo + span).
  int64_t lo = std::min<int64_t>(0, x.val);
  int64_t span = std::max<int64_t>(x.val - lo + prec_, 1 - lo);
  std::vector<int64_t> s(static_cast<size_t>(span), 0);
  s[static_cast<size_t>(-lo)] = 1;
  for (int i = 0; i < prec_; ++i) {
    size_t idx = static_cast<size_t>(x.val - lo + i);
    s[idx] = k_.sub(s[idx], x.coeffs[i]);
  }
  // Coefficients are reliable below min(x.val + prec, large) in absolute order.
  int64_t reliable = x.val + prec_;
  for (size_t i = 0; i < s.size(); ++i) {
    int64_t absexp = lo + static_cast<int64_t>(i);
    if (absexp >= reliable) break;
    if (s[i] == 0) continue;
    LocalElement r;
    r.val = absexp;
    r.coeffs.assign(prec_, 0);
    for (int j = 0; j < prec_ && i + j < s.size(); ++j)
      if (lo + static_cast<int64_t>(i + j) < reliable) r.coeffs[j] = s[i + j];
    return r;
  }
  return std::nullopt;
}

int LocalField::hilbert(const LocalElement& x, const LocalElement& y) const {
  int64_t a = x.val, b = y.val;
  int64_t m = k_.q() - 1;
  int64_t l = 0;
  if ((a * b) % 2 != 0) l += k_.dlog(k_.minus_one());
  l += mod_floor(a, m) * k_.dlog(y.unit()) % m;
  l -= mod_floor(b, m) * k_.dlog(x.unit()) % m;
  return static_cast<int>(mod_floor(l, n_));
}

SteinbergReport steinberg_check(const LocalField& f, int range) {
  SteinbergReport rep;
  const FiniteField& k = f.residue_field();
  int n = f.n();
  std::vector<LocalElement> els;
  for (int64_t v = -range; v <= range; ++v)
    for (int64_t u = 1; u < k.q(); ++u) {
      els.push_back(f.make(v, u));
      std::vector<int64_t> tail(static_cast<size_t>(std::max(0, f.precision() - 1)), 0);
      for (size_t t = 0; t < tail.size(); ++t) tail[t] = (u + static_cast<int64_t>(t)) % k.q();
      els.push_back(f.make(v, u, tail));
    }
  auto sym = [&](const LocalElement& x, const LocalElement& y) { return f.hilbert(x, y); };
  auto fail = [&](const std::string& what, const LocalElement& x, const LocalElement& y) {
    if (rep.violations.size() < 50)
      rep.violations.push_back(what + " at x=(" + std::to_string(x.val) + "," + std::to_string(x.unit()) + "), y=(" +
                               std::to_string(y.val) + "," + std::to_string(y.unit()) + ")");
  };
  LocalElement one = f.one();
  LocalElement m1 = f.make(0, k.minus_one());
  LocalElement pi = f.uniformizer();
  if (sym(m1, m1) != 0) fail("(-1,-1) != 1", m1, m1);
  if (sym(pi, pi) != 0) fail("(pi,pi) != 1", pi, pi);
  for (const auto& x : els) {
    ++rep.checked;
    if (sym(one, x) != 0 || sym(x, one) != 0) fail("(i) (1,x) != 1", one, x);
    if (sym(x, f.neg(x)) != 0) fail("(iii) (x,-x) != 1", x, x);
    if ((2 * sym(x, x)) % n != 0) fail("(v) (x,x)^2 != 1", x, x);
    LocalElement xi = f.inv(x);
    if (sym(xi, x) != sym(xi, m1)) fail("(vi) (x^-1,x) != (x^-1,-1)", xi, x);
    if ((2 * sym(xi, m1)) % n != 0) fail("(vi) (x^-1,-1)^2 != 1", xi, m1);
    if (sym(m1, x) != 0) fail("(-1,x) != 1", m1, x);
    if (x.val == 0 && sym(pi, x) != static_cast<int>(mod_floor(k.dlog(x.unit()), n)))
      fail("(pi,u) != varpi(u)^((q-1)/n)", pi, x);
    if (auto omx = f.one_minus(x); omx && !f.is_one(x)) {
      if (sym(x, *omx) != 0) fail("(x,1-x) != 1", x, *omx);
    }
    for (const auto& y : els) {
      ++rep.checked;
      int s = sym(x, y);
      if (mod_floor(s + sym(y, x), n) != 0) fail("(iv) skew-symmetry", x, y);
      for (int e = -3; e <= 3; ++e) {
        int p = static_cast<int>(mod_floor(static_cast<int64_t>(e) * s, n));
        if (sym(x, f.pow(y, e)) != p || sym(f.pow(x, e), y) != p) fail("(ii) power rule", x, y);
      }
    }
  }
  // Bimultiplicativity over unit residues and valuations in [-2, 2].
  std::vector<LocalElement> small;
  for (const auto& x : els)
    if (x.val >= -2 && x.val <= 2 && x.coeffs.size() > 0) small.push_back(x);
  for (const auto& x : small)
    for (const auto& y : small) {
      int sxy = sym(x, y);
      for (const auto& z : small) {
        ++rep.checked;
        if (sym(x, f.mul(y, z)) != mod_floor(sxy + sym(x, z), n)) fail("bimultiplicativity (x,yz)", x, y);
        if (sym(f.mul(x, y), z) != mod_floor(sym(x, z) + sym(y, z), n)) fail("bimultiplicativity (xy,z)", x, y);
      }
    }
  return rep;
}

GaussTable::GaussTable(int64_t q, int n) : q_(q), n_(n), field_(1) {
  check_field_assumption(q, n);
  FiniteField k(q);
  int64_t p = k.p();
  int N = static_cast<int>(lcm64(n, p));
  field_ = CycloField(N);
  for (int kk = 0; kk < n; ++kk) {
    std::vector<int64_t> counts(N, 0);
    for (int64_t e = 0; e < q - 1; ++e) {
      int64_t tr = k.trace(k.exp(e));
      int64_t j = (N / n) * kk * e - (N / p) * tr;
      counts[mod_floor(j, N)]++;
    }
    CycloElement s = field_.zero();
    for (int j = 0; j < N; ++j)
      if (counts[j] != 0) s += field_.zeta_power(j) * Rational(counts[j]);
    g_.push_back(s);
  }
}

const CycloElement& GaussTable::g(int64_t k) const { return g_[mod_floor(k, n_)]; }

std::vector<std::string> GaussTable::check_relations() const {
  std::vector<std::string> bad;
  if (!(g(0) == field_.from_rational(Rational(-1)))) bad.push_back("g_0 != -1");
  for (int k = 1; k < n_; ++k)
    if (!(g(k) * g(-k) == field_.from_rational(Rational(q_))))
      bad.push_back("g_" + std::to_string(k) + " g_" + std::to_string(-k) + " != q");
  return bad;
}

CycloElement specialize(const Coeff& c, const GaussTable& t) {
  if (c.has_gauss() && c.n() != t.n()) throw InvalidInput("specialization degree mismatch");
  CycloElement out = t.field().zero();
  Rational qinv = Rational(1) / Rational(t.q());
  for (const auto& [key, coef] : c.terms()) {
    CycloElement term = t.field().from_rational(coef * qinv.pow(key.vexp));
    for (int k = 1; k < kMaxGaussDegree; ++k)
      for (int e = 0; e < key.count[k]; ++e) term *= t.g(k);
    out += term;
  }
  return out;
}

}  // namespace kmw
