#include "kmw/coeff.hpp"

#include <algorithm>
#include <cctype>

#include "kmw/error.hpp"
#include "kmw/matrix.hpp"

namespace kmw {

int CoeffKey::gauss_degree() const {
  int d = 0;
  for (auto c : count) d += c;
  return d;
}

std::vector<int> CoeffKey::gauss_indices() const {
  std::vector<int> out;
  for (int k = 0; k < kMaxGaussDegree; ++k)
    for (int t = 0; t < count[k]; ++t) out.push_back(k);
  return out;
}

int Coeff::check_n(int n) {
  if (n < 1 || n > kMaxGaussDegree) throw InvalidInput("metaplectic degree n must lie in [1, 16]");
  return n;
}

Coeff Coeff::scalar(const Rational& c, int n) {
  Coeff r(n);
  if (!c.is_zero()) r.terms_.emplace_back(CoeffKey{}, c);
  return r;
}

Coeff Coeff::v_power(int e, int n) {
  Coeff r(n);
  CoeffKey k;
  k.vexp = e;
  r.terms_.emplace_back(k, Rational(1));
  return r;
}

Coeff Coeff::gauss(int64_t k, int n) {
  check_n(n);
  int64_t m = mod_floor(k, n);
  if (m == 0) return scalar(Rational(-1), n);
  CoeffKey key;
  key.count[m] = 1;
  return monomial(Rational(1), key, n);
}

Coeff Coeff::monomial(const Rational& c, const CoeffKey& key, int n) {
  Coeff r(n);
  if (!c.is_zero()) r.terms_.emplace_back(multiply_keys(key, CoeffKey{}, n), c);
  return r;
}

CoeffKey Coeff::multiply_keys(const CoeffKey& a, const CoeffKey& b, int n) {
  CoeffKey r;
  int64_t ve = static_cast<int64_t>(a.vexp) + b.vexp;
  for (int k = 0; k < kMaxGaussDegree; ++k) {
    int c = a.count[k] + b.count[k];
    if (c > 255) throw ArithmeticFailure("Gauss monomial exponent overflow");
    r.count[k] = static_cast<uint8_t>(c);
  }
  if (r.count[0] != 0) throw InvalidInput("g_0 may not appear in a normalized monomial");
  for (int k = n; k < kMaxGaussDegree; ++k)
    if (r.count[k] != 0) throw InvalidInput("Gauss index out of range for n");
  for (int k = 1; 2 * k < n; ++k) {
    int p = std::min(r.count[k], r.count[n - k]);
    r.count[k] = static_cast<uint8_t>(r.count[k] - p);
    r.count[n - k] = static_cast<uint8_t>(r.count[n - k] - p);
    ve -= p;
  }
  if (n % 2 == 0) {
    int h = n / 2;
    int p = r.count[h] / 2;
    r.count[h] = static_cast<uint8_t>(r.count[h] - 2 * p);
    ve -= p;
  }
  if (ve > INT32_MAX || ve < INT32_MIN) throw ArithmeticFailure("v exponent overflow");
  r.vexp = static_cast<int32_t>(ve);
  return r;
}

bool Coeff::has_gauss() const {
  for (const auto& [k, c] : terms_)
    if (k.gauss_degree() > 0) return true;
  return false;
}

Rational Coeff::constant() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_[0].first == CoeffKey{}) return terms_[0].second;
  throw InvalidInput("coefficient is not a constant: " + str());
}

Rational Coeff::constant_term() const {
  for (const auto& [k, c] : terms_)
    if (k == CoeffKey{}) return c;
  return Rational(0);
}

int64_t Coeff::min_weight2() const {
  if (terms_.empty()) throw InvalidInput("weight of zero coefficient");
  int64_t m = terms_[0].first.weight2();
  for (const auto& t : terms_) m = std::min(m, t.first.weight2());
  return m;
}

int64_t Coeff::max_weight2() const {
  if (terms_.empty()) throw InvalidInput("weight of zero coefficient");
  int64_t m = terms_[0].first.weight2();
  for (const auto& t : terms_) m = std::max(m, t.first.weight2());
  return m;
}

Coeff Coeff::truncated(int64_t max_w) const {
  Coeff r(n_);
  for (const auto& t : terms_)
    if (t.first.weight2() <= max_w) r.terms_.push_back(t);
  return r;
}

Coeff Coeff::shift_v(int e) const {
  Coeff r = *this;
  for (auto& t : r.terms_) t.first.vexp += e;
  return r;
}

void Coeff::merge_n(const Coeff& o) {
  if (n_ == o.n_) return;
  if (!o.has_gauss()) return;
  if (!has_gauss()) {
    n_ = o.n_;
    return;
  }
  throw InvalidInput("coefficients with different metaplectic degrees");
}

void Coeff::combine(std::vector<std::pair<CoeffKey, Rational>>& raw) {
  std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  terms_.clear();
  for (auto& t : raw) {
    if (!terms_.empty() && terms_.back().first == t.first) {
      terms_.back().second += t.second;
    } else {
      if (!terms_.empty() && terms_.back().second.is_zero()) terms_.pop_back();
      terms_.push_back(std::move(t));
    }
  }
  if (!terms_.empty() && terms_.back().second.is_zero()) terms_.pop_back();
}

Coeff Coeff::operator-() const {
  Coeff r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Coeff& Coeff::operator+=(const Coeff& o) {
  merge_n(o);
  if (o.terms_.empty()) return *this;
  std::vector<std::pair<CoeffKey, Rational>> out;
  out.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
      out.push_back(o.terms_[j++]);
    } else {
      Rational s = terms_[i].second + o.terms_[j].second;
      if (!s.is_zero()) out.emplace_back(terms_[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Coeff& Coeff::operator-=(const Coeff& o) { return *this += -o; }

Coeff operator*(const Coeff& a, const Coeff& b) {
  Coeff r(a.n_);
  r.merge_n(b);
  if (a.terms_.empty() || b.terms_.empty()) return r;
  std::vector<std::pair<CoeffKey, Rational>> raw;
  raw.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) raw.emplace_back(Coeff::multiply_keys(ka, kb, r.n_), ca * cb);
  r.combine(raw);
  return r;
}

Coeff& Coeff::operator*=(const Coeff& o) {
  *this = *this * o;
  return *this;
}

Coeff& Coeff::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

void Coeff::add_product(const Coeff& a, const Coeff& b) { *this += a * b; }

void Coeff::add_scaled(const Coeff& a, const Rational& c) {
  if (c.is_zero()) return;
  *this += a * c;
}

std::string Coeff::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    std::string mono;
    auto append = [&](const std::string& f) {
      if (!mono.empty()) mono += "*";
      mono += f;
    };
    if (k.vexp == 1) append("v");
    else if (k.vexp != 0) append("v^" + std::to_string(k.vexp));
    for (int i = 1; i < kMaxGaussDegree; ++i) {
      if (k.count[i] == 0) continue;
      std::string f = "g" + std::to_string(i);
      if (k.count[i] > 1) f += "^" + std::to_string(k.count[i]);
      append(f);
    }
    bool neg = c.sign() < 0;
    Rational a = neg ? -c : c;
    std::string body;
    if (mono.empty()) body = a.str();
    else if (a.is_one()) body = mono;
    else body = a.str() + "*" + mono;
    if (first) out = (neg ? "-" : "") + body;
    else out += (neg ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

size_t Coeff::hash() const {
  size_t h = 0;
  for (const auto& [k, c] : terms_) {
    h = h * 1000003u + static_cast<size_t>(k.vexp);
    for (auto x : k.count) h = h * 31u + x;
    h ^= c.hash();
  }
  return h;
}

namespace {

class CoeffParser {
 public:
  CoeffParser(const std::string& s, int n) : s_(s), n_(n) {}

  Coeff parse() {
    Coeff total(n_);
    skip();
    bool neg = false;
    if (peek() == '-' || peek() == '+') {
      neg = s_[pos_] == '-';
      ++pos_;
    }
    for (;;) {
      Coeff t = term();
      total += neg ? -t : t;
      skip();
      if (pos_ >= s_.size()) break;
      char c = s_[pos_];
      if (c != '+' && c != '-') fail("expected '+' or '-'");
      neg = c == '-';
      ++pos_;
    }
    return total;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw InvalidInput("cannot parse coefficient '" + s_ + "': " + msg + " at position " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  int64_t integer(bool allow_sign) {
    skip();
    size_t start = pos_;
    if (allow_sign && pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == digits) fail("expected an integer");
    return std::stoll(s_.substr(start, pos_ - start));
  }
  Coeff factor() {
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      int64_t num = integer(false);
      int64_t den = 1;
      if (peek() == '/') {
        ++pos_;
        den = integer(false);
        if (den == 0) fail("zero denominator");
      }
      return Coeff::scalar(Rational(num, den), n_);
    }
    if (c == 'v') {
      ++pos_;
      int64_t e = 1;
      if (peek() == '^') {
        ++pos_;
        e = integer(true);
      }
      return Coeff::v_power(static_cast<int>(e), n_);
    }
    if (c == 'g') {
      ++pos_;
      int64_t k = integer(true);
      int64_t e = 1;
      if (peek() == '^') {
        ++pos_;
        e = integer(false);
      }
      Coeff g = Coeff::gauss(k, n_);
      Coeff r = Coeff::scalar(Rational(1), n_);
      for (int64_t t = 0; t < e; ++t) r *= g;
      return r;
    }
    if (c == '(') {
      ++pos_;
      size_t depth = 1, start = pos_;
      while (pos_ < s_.size() && depth > 0) {
        if (s_[pos_] == '(') ++depth;
        if (s_[pos_] == ')') --depth;
        ++pos_;
      }
      if (depth != 0) fail("unbalanced parentheses");
      return CoeffParser(s_.substr(start, pos_ - start - 1), n_).parse();
    }
    fail("unexpected character");
  }
  Coeff term() {
    Coeff t = factor();
    while (peek() == '*') {
      ++pos_;
      t *= factor();
    }
    return t;
  }

  std::string s_;
  int n_;
  size_t pos_ = 0;
};

}  // namespace

Coeff Coeff::parse(const std::string& text, int n) { return CoeffParser(text, check_n(n)).parse(); }

}  // namespace kmw
