#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kmw/coeff.hpp"
#include "kmw/lattice.hpp"

namespace kmw {

class WeylElement;

// A sum of c_mu e^mu over the coweight lattice Y. The first `rank` coordinates
// of Y are simple coroot coordinates; the height of mu is their sum.
//
// Exact mode holds a finite element. Truncated mode represents an element of
// the completion in the negative coroot direction: its support lies below the
// apex set, every term of height >= floor() is present exactly and terms
// below the floor are absent. An optional weight cap additionally drops all
// coefficient monomials of weight2() above the cap; it is only admissible for
// series whose coefficient monomials all have nonnegative weight.
class LatticeSeries {
 public:
  enum class Mode { Exact, Truncated };
  using Term = std::pair<Coweight, Coeff>;
  static constexpr int64_t kNoFloor = std::numeric_limits<int64_t>::min() / 4;

  LatticeSeries() = default;
  LatticeSeries(int dim, int rank, int n = 1);
  static LatticeSeries monomial(int dim, int rank, const Coweight& mu, const Coeff& c);
  static LatticeSeries constant(int dim, int rank, const Coeff& c);
  static LatticeSeries from_terms(int dim, int rank, int n, std::vector<Term> terms);

  // The same element viewed in truncated mode with the given floor.
  LatticeSeries truncated(int64_t floor) const;
  // Lowers precision: raises the floor and drops terms below it.
  LatticeSeries with_floor(int64_t floor) const;
  LatticeSeries with_weight_cap(int64_t cap) const;

  Mode mode() const { return mode_; }
  bool is_exact() const { return mode_ == Mode::Exact; }
  int dim() const { return dim_; }
  int rank() const { return rank_; }
  int n() const { return n_; }
  int64_t floor() const { return floor_; }
  const std::vector<Coweight>& apexes() const { return apexes_; }
  std::optional<int64_t> weight_cap() const { return weight_cap_; }
  // Upper bound for the height of any term, or kNoFloor for the zero element.
  int64_t top_height() const;
  int64_t depth() const { return top_height() - floor_; }

  const std::vector<Term>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Coeff coefficient(const Coweight& mu) const;
  int64_t height(const Coweight& mu) const { return mu.prefix_sum(rank_); }
  // y <= z in the coroot cone order.
  bool leq(const Coweight& y, const Coweight& z) const;
  // Every term lies below at least one apex.
  bool support_in_cones() const;

  LatticeSeries operator-() const;
  LatticeSeries& operator+=(const LatticeSeries& o);
  LatticeSeries& operator-=(const LatticeSeries& o);
  friend LatticeSeries operator+(LatticeSeries a, const LatticeSeries& b) { return a += b; }
  friend LatticeSeries operator-(LatticeSeries a, const LatticeSeries& b) { return a -= b; }
  friend LatticeSeries operator*(const LatticeSeries& a, const LatticeSeries& b);
  LatticeSeries& operator*=(const LatticeSeries& o);
  LatticeSeries scaled(const Coeff& c) const;
  LatticeSeries scaled(const Rational& c) const;
  // Multiplication by e^mu.
  LatticeSeries shifted(const Coweight& mu) const;
  // e^mu -> e^{w mu}. Only defined in exact mode.
  LatticeSeries relabel(const WeylElement& w) const;
  // Keeps terms whose exponent is an integer multiple of c.
  LatticeSeries constant_term(const Coweight& c) const;
  // Terms with height >= floor only, keeping the mode.
  LatticeSeries restricted(int64_t floor) const;

  // Equality of the retained data: both exact and equal, or compared above
  // the larger floor when either side is truncated.
  static bool agree(const LatticeSeries& a, const LatticeSeries& b);
  // Terms on which a and b differ above the common floor.
  static std::vector<Coweight> differences(const LatticeSeries& a, const LatticeSeries& b);

  // Rendering "c1*e[..] + c2*e[..]" in coweight order, highest first.
  std::string str() const;

 private:
  void normalize_apexes();
  void join_apexes(std::vector<Coweight>& apexes) const;
  void drop_below_floor();
  void apply_weight_cap();
  void check_compatible(const LatticeSeries& o) const;

  Mode mode_ = Mode::Exact;
  int dim_ = 0;
  int rank_ = 0;
  int n_ = 1;
  int64_t floor_ = kNoFloor;
  int64_t top_ = kNoFloor;
  std::vector<Coweight> apexes_;
  std::optional<int64_t> weight_cap_;
  std::vector<Term> terms_;
};

enum class Atom { B, C, CFlat };
std::string to_string(Atom a);

// Expansion of b(X), c(X) or cflat(X) at X = e^beta, where
// b = (v - 1)/(1 - X), c = (1 - vX)/(1 - X), cflat = (1 - vX^{-1})/(1 - X),
// into the negative direction: in powers of X^{-1} if beta is a positive
// coroot combination and in powers of X if beta is negative. Terms of height
// below `floor` are omitted.
LatticeSeries expand_atom(Atom kind, const Coweight& beta, int rank, int64_t floor, int n = 1);

// sum_{k >= 0} c^k e^{k beta} for beta in the negative cone, to the floor.
LatticeSeries geometric(const Coeff& c, const Coweight& beta, int rank, int64_t floor, int n = 1);

}  // namespace kmw
