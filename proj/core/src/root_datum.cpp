#include "kmw/root_datum.hpp"

#include <algorithm>
#include <numeric>

namespace kmw {

RootDatum RootDatum::simply_connected(const CartanMatrix& a) {
  RootDatum d;
  d.cartan_ = a;
  int r = a.size();
  RatMatrix m = to_rational(a.matrix().transpose());
  int rk = kmw::rank(m);
  std::vector<int> chosen;
  for (int j = r - 1; j >= 0 && rk < r; --j) {
    RatMatrix trial = m;
    for (int i = 0; i < r; ++i) trial[i].push_back(Rational(i == j ? 1 : 0));
    int t = kmw::rank(trial);
    if (t > rk) {
      m = std::move(trial);
      rk = t;
      chosen.push_back(j);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  d.derivation_nodes_ = chosen;
  d.dim_ = r + static_cast<int>(chosen.size());
  if (d.dim_ > kMaxDim) throw InvalidInput("root datum dimension exceeds supported maximum");
  d.roots_.assign(r, std::vector<int64_t>(d.dim_, 0));
  for (int i = 0; i < r; ++i) {
    for (int k = 0; k < r; ++k) d.roots_[i][k] = a(k, i);
    for (size_t j = 0; j < chosen.size(); ++j) d.roots_[i][r + j] = chosen[j] == i ? 1 : 0;
  }
  return d;
}

int64_t RootDatum::pair(const Coweight& y, const std::vector<int64_t>& x) {
  int64_t s = 0;
  for (int k = 0; k < y.dim(); ++k) s += static_cast<int64_t>(y[k]) * x[k];
  return s;
}

int64_t RootDatum::pairing(const Coweight& y, int i) const { return pair(y, roots_[i]); }

Coweight RootDatum::reflect(int i, const Coweight& y) const {
  if (i < 0 || i >= rank()) throw InvalidInput("reflection index out of range");
  if (y.dim() != dim_) throw InvalidInput("coweight dimension mismatch");
  Coweight out = y;
  int64_t p = pairing(y, i);
  int64_t v = out[i] - p;
  if (v > INT32_MAX || v < INT32_MIN) throw ArithmeticFailure("lattice coordinate overflow");
  out[i] = static_cast<int32_t>(v);
  return out;
}

std::vector<int64_t> RootDatum::reflect_weight(int i, const std::vector<int64_t>& x) const {
  if (i < 0 || i >= rank()) throw InvalidInput("reflection index out of range");
  if (static_cast<int>(x.size()) != dim_) throw InvalidInput("weight dimension mismatch");
  std::vector<int64_t> out = x;
  int64_t p = x[i];
  for (int k = 0; k < dim_; ++k) out[k] -= p * roots_[i][k];
  return out;
}

bool RootDatum::is_positive(const Coweight& y) const {
  bool nonzero = false;
  for (int k = 0; k < dim_; ++k) {
    if (k >= rank()) {
      if (y[k] != 0) return false;
    } else {
      if (y[k] < 0) return false;
      if (y[k] > 0) nonzero = true;
    }
  }
  return nonzero;
}

bool RootDatum::leq(const Coweight& y, const Coweight& z) const {
  for (int k = 0; k < dim_; ++k) {
    if (k >= rank()) {
      if (y[k] != z[k]) return false;
    } else if (z[k] < y[k]) {
      return false;
    }
  }
  return true;
}

bool RootDatum::is_dominant(const Coweight& y) const {
  for (int i = 0; i < rank(); ++i)
    if (pairing(y, i) < 0) return false;
  return true;
}

QuadraticForm QuadraticForm::from_values(const RootDatum& d, std::vector<int64_t> q) {
  int r = d.rank();
  if (static_cast<int>(q.size()) != r) throw InvalidInput("quadratic form needs one value per simple coroot");
  for (auto x : q)
    if (x <= 0) throw InvalidInput("quadratic form values must be positive");
  const auto& a = d.cartan();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (a(i, j) * q[j] != a(j, i) * q[i])
        throw InvalidInput("quadratic form values are not W-invariant (a_ij Q_j != a_ji Q_i)");
  QuadraticForm f;
  f.q_ = std::move(q);
  int e = d.dim();
  f.gram_ = IntMatrix(e, e);
  for (int k = 0; k < e; ++k)
    for (int l = 0; l < r; ++l) {
      int64_t v = checked_mul(d.root(l)[k], f.q_[l]);
      f.gram_(k, l) = v;
      f.gram_(l, k) = v;
    }
  return f;
}

QuadraticForm QuadraticForm::standard(const RootDatum& d) {
  Symmetrization s = symmetrize(d.cartan());
  std::vector<int64_t> q(d.rank(), 0);
  for (const auto& nodes : d.cartan().components()) {
    RatVector part;
    for (int i : nodes) part.push_back(s.eps[i]);
    auto prim = primitive_integer(part);
    for (size_t k = 0; k < nodes.size(); ++k) q[nodes[k]] = prim[k];
  }
  return from_values(d, q);
}

int64_t QuadraticForm::bilinear(const Coweight& y, const Coweight& z) const {
  int e = gram_.rows();
  int64_t s = 0;
  for (int k = 0; k < e; ++k) {
    if (y[k] == 0) continue;
    int64_t row = 0;
    for (int l = 0; l < e; ++l) row += gram_(k, l) * z[l];
    s = checked_add(s, checked_mul(y[k], row));
  }
  return s;
}

int64_t QuadraticForm::value(const Coweight& y) const { return bilinear(y, y) / 2; }

MetaplecticDatum::MetaplecticDatum(RootDatum d, QuadraticForm q, int n)
    : datum_(std::move(d)), form_(std::move(q)), n_(n) {
  if (n < 1) throw InvalidInput("metaplectic degree n must be positive");
  int r = datum_.rank();
  std::vector<int64_t> g(r);
  for (int i = 0; i < r; ++i) {
    g[i] = std::gcd<int64_t>(n, form_.q(i));
    ni_.push_back(n / g[i]);
  }
  IntMatrix t(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      int64_t num = datum_.cartan()(i, j) * g[j];
      if (num % g[i] != 0) throw ArithmeticFailure("metaplectic Cartan entry is not integral");
      t(i, j) = num / g[i];
    }
  tilde_cartan_ = CartanMatrix(t);

  int e = datum_.dim();
  SmithForm snf = smith_normal_form(form_.gram());
  IntMatrix scale(e, e);
  for (int k = 0; k < e; ++k) {
    int64_t dk = k < static_cast<int>(snf.diagonal.size()) ? snf.diagonal[k] : 0;
    scale(k, k) = dk == 0 ? 1 : n / std::gcd<int64_t>(n, dk);
  }
  ytilde_ = snf.v * scale;

  rho_tilde_.assign(e, Rational(0));
  for (int i = 0; i < r; ++i) rho_tilde_[i] = Rational(1, ni_[i]);
}

MetaplecticDatum MetaplecticDatum::plain(const CartanMatrix& a, int n) {
  RootDatum d = RootDatum::simply_connected(a);
  QuadraticForm q = QuadraticForm::standard(d);
  return MetaplecticDatum(std::move(d), std::move(q), n);
}

bool MetaplecticDatum::in_ytilde(const Coweight& y) const {
  for (int k = 0; k < dim(); ++k)
    if (mod_floor(form_.bilinear(y, Coweight::unit(dim(), k)), n_) != 0) return false;
  return true;
}

int64_t MetaplecticDatum::residue(const Coweight& y, int i) const {
  return mod_floor(datum_.pairing(y, i), ni_[i]);
}

Rational MetaplecticDatum::tilde_height(const Coweight& y) const {
  Rational s(0);
  for (int i = 0; i < rank(); ++i) s += Rational(y[i], ni_[i]);
  return s;
}

}  // namespace kmw
