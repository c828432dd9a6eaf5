#include "kmw/cartan.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <queue>
#include <sstream>

#include "kmw/weyl.hpp"

namespace kmw {

CartanMatrix::CartanMatrix(IntMatrix a) : a_(std::move(a)) {
  if (a_.rows() != a_.cols()) throw InvalidInput("Cartan matrix must be square");
  if (a_.rows() == 0) throw InvalidInput("Cartan matrix must be nonempty");
  for (int i = 0; i < a_.rows(); ++i)
    for (int j = 0; j < a_.cols(); ++j) {
      if (i == j) {
        if (a_(i, j) != 2) throw InvalidInput("Cartan matrix diagonal entries must be 2");
      } else {
        if (a_(i, j) > 0) throw InvalidInput("Cartan matrix off-diagonal entries must be <= 0");
        if ((a_(i, j) == 0) != (a_(j, i) == 0))
          throw InvalidInput("Cartan matrix must satisfy a_ij = 0 iff a_ji = 0");
      }
    }
}

CartanMatrix CartanMatrix::from_rows(const std::vector<std::vector<int64_t>>& rows) {
  return CartanMatrix(IntMatrix::from_rows(rows));
}

CartanMatrix CartanMatrix::parse(const std::string& text) {
  std::vector<std::vector<int64_t>> rows;
  std::vector<int64_t> cur;
  int depth = 0;
  std::string num;
  auto flush = [&] {
    if (!num.empty()) {
      try {
        cur.push_back(std::stoll(num));
      } catch (const std::exception&) {
        throw InvalidInput("bad matrix entry '" + num + "'");
      }
      num.clear();
    }
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '[') {
      ++depth;
      if (depth > 2) throw InvalidInput("matrix nesting too deep");
      if (depth == 2) cur.clear();
    } else if (c == ']') {
      flush();
      if (depth == 2) rows.push_back(cur);
      --depth;
      if (depth < 0) throw InvalidInput("unbalanced brackets in matrix");
    } else if (c == ',') {
      flush();
    } else if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      if (depth != 2) throw InvalidInput("matrix entry outside a row");
      num.push_back(c);
    } else {
      throw InvalidInput(std::string("unexpected character '") + c + "' in matrix");
    }
  }
  if (depth != 0) throw InvalidInput("unbalanced brackets in matrix");
  return from_rows(rows);
}

CartanMatrix CartanMatrix::principal(const std::vector<int>& nodes) const {
  return CartanMatrix(a_.submatrix(nodes, nodes));
}

std::vector<std::vector<int>> CartanMatrix::components() const {
  int n = size();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> nodes;
    std::queue<int> q;
    q.push(s);
    comp[s] = static_cast<int>(out.size());
    while (!q.empty()) {
      int i = q.front();
      q.pop();
      nodes.push_back(i);
      for (int j = 0; j < n; ++j)
        if (j != i && a_(i, j) != 0 && comp[j] < 0) {
          comp[j] = comp[s];
          q.push(j);
        }
    }
    std::sort(nodes.begin(), nodes.end());
    out.push_back(nodes);
  }
  return out;
}

int CartanMatrix::braid_order(int i, int j) const {
  if (i == j) return 1;
  int64_t p = a_(i, j) * a_(j, i);
  switch (p) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: return 0;
  }
}

std::string to_string(CartanKind k) {
  switch (k) {
    case CartanKind::Finite: return "finite";
    case CartanKind::Affine: return "affine";
    case CartanKind::Indefinite: return "indefinite";
  }
  return "unknown";
}

CartanKind Classification::overall() const {
  bool any_affine = false;
  for (const auto& c : components) {
    if (c.kind == CartanKind::Indefinite) return CartanKind::Indefinite;
    if (c.kind == CartanKind::Affine) any_affine = true;
  }
  return any_affine ? CartanKind::Affine : CartanKind::Finite;
}

std::string Classification::label() const {
  std::string out;
  for (const auto& c : components) {
    if (!out.empty()) out += "x";
    out += c.label.empty() ? "?" : c.label;
  }
  return out;
}

namespace {

bool all_principal_minors_positive(const CartanMatrix& a) {
  int n = a.size();
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    if (determinant(a.matrix().submatrix(idx, idx)).sign() <= 0) return false;
  }
  return true;
}

std::optional<std::vector<int64_t>> positive_null_vector(const IntMatrix& m) {
  auto ker = kernel(to_rational(m));
  if (ker.size() != 1) return std::nullopt;
  auto v = primitive_integer(ker[0]);
  for (auto x : v)
    if (x <= 0) return std::nullopt;
  return v;
}

void chain(IntMatrix& m, const std::vector<int>& nodes) {
  for (size_t k = 0; k + 1 < nodes.size(); ++k) {
    m(nodes[k], nodes[k + 1]) = -1;
    m(nodes[k + 1], nodes[k]) = -1;
  }
}

void link(IntMatrix& m, int i, int j, int64_t aij = -1, int64_t aji = -1) {
  m(i, j) = aij;
  m(j, i) = aji;
}

std::vector<int> range(int a, int b) {
  std::vector<int> r;
  for (int i = a; i < b; ++i) r.push_back(i);
  return r;
}

IntMatrix base(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 2;
  return m;
}

CartanMatrix untwisted(char x, int l) {
  IntMatrix m = base(l + 1);
  switch (x) {
    case 'A':
      if (l == 1) return CartanMatrix::from_rows({{2, -2}, {-2, 2}});
      chain(m, range(0, l + 1));
      link(m, l, 0);
      break;
    case 'B':
      chain(m, range(0, l));
      m(l - 1, l - 2) = -2;
      link(m, l, 1);
      break;
    case 'C':
      chain(m, range(0, l));
      m(l - 2, l - 1) = -2;
      link(m, 0, l, -2, -1);
      break;
    case 'D':
      chain(m, range(0, l - 1));
      link(m, l - 1, l - 3);
      link(m, l, 1);
      break;
    case 'E':
      if (l == 6) {
        chain(m, {0, 1, 2, 3, 4});
        link(m, 5, 2);
        link(m, 6, 5);
      } else if (l == 7) {
        chain(m, {7, 0, 1, 2, 3, 4, 5});
        link(m, 6, 2);
      } else {
        chain(m, {8, 0, 1, 2, 3, 4, 5, 6});
        link(m, 7, 4);
      }
      break;
    case 'F':
      chain(m, {4, 0, 1, 2, 3});
      m(2, 1) = -2;
      break;
    case 'G':
      link(m, 2, 0);
      link(m, 0, 1, -1, -3);
      break;
    default: throw InvalidInput(std::string("unknown affine letter ") + x);
  }
  return CartanMatrix(m);
}

}  // namespace

Classification classify(const CartanMatrix& a) {
  Classification out;
  for (const auto& nodes : a.components()) {
    ComponentInfo info;
    info.nodes = nodes;
    CartanMatrix sub = a.principal(nodes);
    if (all_principal_minors_positive(sub)) {
      info.kind = CartanKind::Finite;
    } else if (auto d = positive_null_vector(sub.matrix())) {
      auto dd = positive_null_vector(sub.matrix().transpose());
      if (!dd) throw ArithmeticFailure("affine component without dual null vector");
      info.kind = CartanKind::Affine;
      info.delta = *d;
      info.delta_dual = *dd;
    } else {
      info.kind = CartanKind::Indefinite;
    }
    // Recognition against the catalogue of finite and affine types.
    int n = sub.size();
    if (info.kind == CartanKind::Finite) {
      std::vector<std::string> cands;
      cands.push_back("A" + std::to_string(n));
      if (n >= 2) cands.push_back("B" + std::to_string(n));
      if (n >= 3) cands.push_back("C" + std::to_string(n));
      if (n >= 4) cands.push_back("D" + std::to_string(n));
      if (n >= 6 && n <= 8) cands.push_back("E" + std::to_string(n));
      if (n == 4) cands.push_back("F4");
      if (n == 2) cands.push_back("G2");
      for (const auto& c : cands)
        if (find_isomorphism(sub, finite_cartan(c))) {
          info.label = c;
          break;
        }
    } else if (info.kind == CartanKind::Affine) {
      for (const auto& fam : affine_families()) {
        int l = n - 1;
        if (l < fam.min_ell || (fam.max_ell > 0 && l > fam.max_ell)) continue;
        AffineType t = fam.member(l);
        if (find_isomorphism(sub, t.cartan())) {
          info.label = t.label();
          break;
        }
      }
    }
    out.components.push_back(std::move(info));
  }
  return out;
}

Symmetrization symmetrize(const CartanMatrix& a) {
  int n = a.size();
  Symmetrization s;
  s.eps.assign(n, Rational(0));
  Classification cls = classify(a);
  for (const auto& comp : cls.components) {
    if (comp.kind == CartanKind::Affine) {
      for (size_t k = 0; k < comp.nodes.size(); ++k)
        s.eps[comp.nodes[k]] = Rational(comp.delta[k], comp.delta_dual[k]);
    }
    // Propagate ratios eps_i / eps_j = a_ij / a_ji along a spanning tree.
    std::vector<int> parent(n, -2);
    std::vector<Rational> ratio(n, Rational(0));
    int root = comp.nodes[0];
    parent[root] = -1;
    ratio[root] = Rational(1);
    std::queue<int> q;
    q.push(root);
    std::vector<int> order;
    while (!q.empty()) {
      int i = q.front();
      q.pop();
      order.push_back(i);
      for (int j : comp.nodes) {
        if (j == i || a(i, j) == 0) continue;
        Rational expected = ratio[i] * Rational(a(j, i), a(i, j));
        if (parent[j] == -2) {
          parent[j] = i;
          ratio[j] = expected;
          q.push(j);
        } else if (ratio[j] != expected) {
          auto path = [&](int x) {
            std::vector<int> p;
            for (; x >= 0; x = parent[x]) p.push_back(x);
            std::reverse(p.begin(), p.end());
            return p;
          };
          auto pi = path(i), pj = path(j);
          size_t c = 0;
          while (c + 1 < pi.size() && c + 1 < pj.size() && pi[c + 1] == pj[c + 1]) ++c;
          std::vector<int> cycle(pi.begin() + static_cast<long>(c), pi.end());
          for (size_t k = pj.size(); k-- > c + 1;) cycle.push_back(pj[k]);
          std::ostringstream os;
          os << "Cartan matrix is not symmetrizable; inconsistent cycle through nodes";
          for (int v : cycle) os << ' ' << v;
          throw NotSymmetrizable(os.str(), cycle);
        }
      }
    }
    if (comp.kind == CartanKind::Affine) {
      for (int i : comp.nodes)
        if (s.eps[i] / s.eps[root] != ratio[i]) throw ArithmeticFailure("affine symmetrization mismatch");
    } else {
      Rational mn = ratio[root];
      for (int i : comp.nodes) mn = std::min(mn, ratio[i]);
      for (int i : comp.nodes) s.eps[i] = ratio[i] / mn;
    }
  }
  s.b.assign(n, RatVector(n, Rational(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s.b[i][j] = Rational(a(i, j)) / s.eps[i];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (s.b[i][j] != s.b[j][i]) throw ArithmeticFailure("symmetrization produced a non-symmetric matrix");
  return s;
}

std::string AffineType::label() const {
  return std::string(1, letter) + std::to_string(N) + "(" + std::to_string(twist) + ")";
}

int AffineType::ell() const {
  if (twist == 1) return N;
  if (twist == 2) {
    if (letter == 'A') return N % 2 == 0 ? N / 2 : (N + 1) / 2;
    if (letter == 'D') return N - 1;
    if (letter == 'E') return 4;
  }
  if (twist == 3) return 2;
  throw InvalidInput("unsupported affine type " + label());
}

AffineType AffineType::parse(const std::string& letter, int N, int twist) {
  if (letter.size() != 1) throw InvalidInput("affine family letter must be a single character");
  char x = static_cast<char>(std::toupper(static_cast<unsigned char>(letter[0])));
  AffineType t{x, N, twist};
  bool ok = false;
  if (twist == 1) {
    ok = (x == 'A' && N >= 1) || (x == 'B' && N >= 3) || (x == 'C' && N >= 2) || (x == 'D' && N >= 4) ||
         (x == 'E' && N >= 6 && N <= 8) || (x == 'F' && N == 4) || (x == 'G' && N == 2);
  } else if (twist == 2) {
    ok = (x == 'A' && (N == 2 || N == 4 || N >= 5)) || (x == 'D' && N >= 3) || (x == 'E' && N == 6);
  } else if (twist == 3) {
    ok = x == 'D' && N == 4;
  }
  if (!ok) throw InvalidInput("unsupported affine type " + t.label());
  return t;
}

CartanMatrix AffineType::cartan() const {
  int l = ell();
  if (twist == 1) return untwisted(letter, l);
  if (twist == 3) return untwisted('G', 2).transpose();
  if (letter == 'E') return untwisted('F', 4).transpose();
  if (letter == 'D') return untwisted('C', l).transpose();
  if (N % 2 == 1) return untwisted('B', l).transpose();
  if (l == 1) return CartanMatrix::from_rows({{2, -1}, {-4, 2}});
  IntMatrix m = base(l + 1);
  chain(m, range(0, l));
  m(l - 2, l - 1) = -2;
  link(m, 0, l, -1, -2);
  return CartanMatrix(m);
}

AffineType AffineFamily::member(int l) const {
  if (l < min_ell || (max_ell > 0 && l > max_ell)) throw InvalidInput("rank out of range for family " + id);
  if (id == "A1(1)") return {'A', 1, 1};
  if (id == "Al(1)") return {'A', l, 1};
  if (id == "Bl(1)") return {'B', l, 1};
  if (id == "Cl(1)") return {'C', l, 1};
  if (id == "Dl(1)") return {'D', l, 1};
  if (id == "E6(1)") return {'E', 6, 1};
  if (id == "E7(1)") return {'E', 7, 1};
  if (id == "E8(1)") return {'E', 8, 1};
  if (id == "F4(1)") return {'F', 4, 1};
  if (id == "G2(1)") return {'G', 2, 1};
  if (id == "A2(2)") return {'A', 2, 2};
  if (id == "A2l(2)") return {'A', 2 * l, 2};
  if (id == "A2l-1(2)") return {'A', 2 * l - 1, 2};
  if (id == "Dl+1(2)") return {'D', l + 1, 2};
  if (id == "E6(2)") return {'E', 6, 2};
  if (id == "D4(3)") return {'D', 4, 3};
  throw InvalidInput("unknown affine family " + id);
}

std::vector<AffineType> AffineFamily::smallest(int count) const {
  std::vector<AffineType> out;
  for (int l = min_ell; static_cast<int>(out.size()) < count && (max_ell == 0 || l <= max_ell); ++l)
    out.push_back(member(l));
  return out;
}

const std::vector<AffineFamily>& affine_families() {
  static const std::vector<AffineFamily> fams = {
      {"A1(1)", 1, 1},  {"Al(1)", 2, 0},  {"Bl(1)", 3, 0},    {"Cl(1)", 2, 0},
      {"Dl(1)", 4, 0},  {"E6(1)", 6, 6},  {"E7(1)", 7, 7},    {"E8(1)", 8, 8},
      {"F4(1)", 4, 4},  {"G2(1)", 2, 2},  {"A2(2)", 1, 1},    {"A2l(2)", 2, 0},
      {"A2l-1(2)", 3, 0}, {"Dl+1(2)", 2, 0}, {"E6(2)", 4, 4}, {"D4(3)", 2, 2},
  };
  return fams;
}

AffineData affine_table(const AffineType& t) {
  AffineData d;
  d.type = t;
  d.cartan = t.cartan();
  Classification c = classify(d.cartan);
  if (c.components.size() != 1 || c.components[0].kind != CartanKind::Affine)
    throw ArithmeticFailure("affine family produced a non-affine matrix");
  d.delta = c.components[0].delta;
  d.delta_dual = c.components[0].delta_dual;
  int l = d.cartan.size() - 1;
  d.exponents = finite_exponents(d.cartan.principal(range(0, l)));
  return d;
}

CartanMatrix finite_cartan(const std::string& label) {
  auto xpos = label.find('x');
  if (xpos != std::string::npos) {
    CartanMatrix l = finite_cartan(label.substr(0, xpos));
    CartanMatrix r = finite_cartan(label.substr(xpos + 1));
    int n = l.size() + r.size();
    IntMatrix m(n, n);
    for (int i = 0; i < l.size(); ++i)
      for (int j = 0; j < l.size(); ++j) m(i, j) = l(i, j);
    for (int i = 0; i < r.size(); ++i)
      for (int j = 0; j < r.size(); ++j) m(l.size() + i, l.size() + j) = r(i, j);
    return CartanMatrix(m);
  }
  if (label.size() < 2) throw InvalidInput("bad finite type label '" + label + "'");
  char x = static_cast<char>(std::toupper(static_cast<unsigned char>(label[0])));
  int n = 0;
  try {
    n = std::stoi(label.substr(1));
  } catch (const std::exception&) {
    throw InvalidInput("bad finite type label '" + label + "'");
  }
  if (n < 1) throw InvalidInput("bad finite type label '" + label + "'");
  IntMatrix m = base(n);
  switch (x) {
    case 'A': chain(m, range(0, n)); break;
    case 'B':
      if (n < 2) throw InvalidInput("B_n needs n >= 2");
      chain(m, range(0, n));
      m(n - 1, n - 2) = -2;
      break;
    case 'C':
      if (n < 2) throw InvalidInput("C_n needs n >= 2");
      chain(m, range(0, n));
      m(n - 2, n - 1) = -2;
      break;
    case 'D':
      if (n < 4) throw InvalidInput("D_n needs n >= 4");
      chain(m, range(0, n - 1));
      link(m, n - 1, n - 3);
      break;
    case 'E':
      if (n < 6 || n > 8) throw InvalidInput("E_n needs 6 <= n <= 8");
      {
        std::vector<int> c = {0};
        for (int i = 2; i < n; ++i) c.push_back(i);
        chain(m, c);
        link(m, 1, 3);
      }
      break;
    case 'F':
      if (n != 4) throw InvalidInput("F_n needs n = 4");
      chain(m, range(0, 4));
      m(2, 1) = -2;
      break;
    case 'G':
      if (n != 2) throw InvalidInput("G_n needs n = 2");
      link(m, 0, 1, -3, -1);
      break;
    default: throw InvalidInput("bad finite type label '" + label + "'");
  }
  return CartanMatrix(m);
}

CartanMatrix cartan_from_label(const std::string& label) {
  auto p = label.find('(');
  if (p == std::string::npos) return finite_cartan(label);
  auto q = label.find(')', p);
  if (q == std::string::npos || p < 2) throw InvalidInput("bad affine label '" + label + "'");
  int N = std::stoi(label.substr(1, p - 1));
  int k = std::stoi(label.substr(p + 1, q - p - 1));
  return AffineType::parse(label.substr(0, 1), N, k).cartan();
}

std::optional<std::vector<int>> find_isomorphism(const CartanMatrix& a, const CartanMatrix& b) {
  int n = a.size();
  if (b.size() != n) return std::nullopt;
  auto signature = [](const CartanMatrix& m, int i) {
    std::vector<int64_t> row, col;
    for (int j = 0; j < m.size(); ++j) {
      row.push_back(m(i, j));
      col.push_back(m(j, i));
    }
    std::sort(row.begin(), row.end());
    std::sort(col.begin(), col.end());
    row.insert(row.end(), col.begin(), col.end());
    return row;
  };
  std::vector<std::vector<int64_t>> sa(n), sb(n);
  for (int i = 0; i < n; ++i) {
    sa[i] = signature(a, i);
    sb[i] = signature(b, i);
  }
  std::vector<int> p(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(int)> go = [&](int i) -> bool {
    if (i == n) return true;
    for (int c = 0; c < n; ++c) {
      if (used[c] || sa[c] != sb[i]) continue;
      bool ok = true;
      for (int k = 0; k < i && ok; ++k)
        ok = a(c, p[k]) == b(i, k) && a(p[k], c) == b(k, i);
      if (!ok) continue;
      used[c] = true;
      p[i] = c;
      if (go(i + 1)) return true;
      used[c] = false;
    }
    return false;
  };
  if (go(0)) return p;
  return std::nullopt;
}

}  // namespace kmw
