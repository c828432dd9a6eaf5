#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kmw/error.hpp"
#include "kmw/matrix.hpp"

namespace kmw {

// A generalized Cartan matrix: a_ii = 2, a_ij <= 0 off the diagonal and
// a_ij = 0 exactly when a_ji = 0. Entry (i, j) is <a_i^vee, a_j>.
class CartanMatrix {
 public:
  CartanMatrix() = default;
  explicit CartanMatrix(IntMatrix a);
  static CartanMatrix from_rows(const std::vector<std::vector<int64_t>>& rows);
  // Parses "[[2,-1],[-1,2]]".
  static CartanMatrix parse(const std::string& text);

  int size() const { return a_.rows(); }
  int64_t operator()(int i, int j) const { return a_(i, j); }
  const IntMatrix& matrix() const { return a_; }
  CartanMatrix transpose() const { return CartanMatrix(a_.transpose()); }
  CartanMatrix principal(const std::vector<int>& nodes) const;
  std::string str() const { return a_.str(); }

  // Connected components of the Dynkin diagram, each sorted ascending.
  std::vector<std::vector<int>> components() const;
  // Order of s_i s_j, or 0 for infinite order.
  int braid_order(int i, int j) const;

  friend bool operator==(const CartanMatrix&, const CartanMatrix&) = default;

 private:
  IntMatrix a_;
};

enum class CartanKind { Finite, Affine, Indefinite };
std::string to_string(CartanKind k);

struct ComponentInfo {
  std::vector<int> nodes;
  CartanKind kind = CartanKind::Indefinite;
  // Positive primitive null vectors of A and of its transpose (affine only).
  std::vector<int64_t> delta;
  std::vector<int64_t> delta_dual;
  // Recognized type label such as "B2" or "A5(2)"; empty if not recognized.
  std::string label;
};

struct Classification {
  std::vector<ComponentInfo> components;
  CartanKind overall() const;
  std::string label() const;
};

Classification classify(const CartanMatrix& a);

// a_ij = eps_i b_ij with b symmetric.
struct Symmetrization {
  std::vector<Rational> eps;
  RatMatrix b;
};

class NotSymmetrizable : public InvalidInput {
 public:
  NotSymmetrizable(const std::string& what, std::vector<int> cycle)
      : InvalidInput(what), cycle_(std::move(cycle)) {}
  const std::vector<int>& cycle() const { return cycle_; }

 private:
  std::vector<int> cycle_;
};

// Affine components use eps_i = d_i / d_i^vee; other components are scaled so
// that their smallest eps_i equals 1.
Symmetrization symmetrize(const CartanMatrix& a);

// Affine type X_N^(k) in Kac notation. The affine node is the last node.
struct AffineType {
  char letter = 'A';
  int N = 1;
  int twist = 1;

  std::string label() const;  // e.g. "A5(2)"
  int ell() const;            // rank of the finite part
  CartanMatrix cartan() const;
  static AffineType parse(const std::string& letter, int N, int twist);
  friend bool operator==(const AffineType&, const AffineType&) = default;
};

// The sixteen affine families, with the smallest admissible ranks.
struct AffineFamily {
  std::string id;  // e.g. "Bl(1)"
  std::vector<AffineType> smallest(int count) const;
  AffineType member(int ell) const;
  int min_ell = 1;
  int max_ell = 0;  // 0 means unbounded
};
const std::vector<AffineFamily>& affine_families();

struct AffineData {
  AffineType type;
  CartanMatrix cartan;
  std::vector<int64_t> delta;
  std::vector<int64_t> delta_dual;
  std::vector<int> exponents;  // of the finite part obtained by deleting the last node
};
AffineData affine_table(const AffineType& t);

// Finite Cartan matrices from labels "A3", "B2", "G2", "A1xA1", ...
CartanMatrix finite_cartan(const std::string& label);
// Accepts finite labels and affine labels of the form "A1(1)".
CartanMatrix cartan_from_label(const std::string& label);

// Returns a permutation p with a(p[i], p[j]) == b(i, j) if one exists.
std::optional<std::vector<int>> find_isomorphism(const CartanMatrix& a, const CartanMatrix& b);

}  // namespace kmw
