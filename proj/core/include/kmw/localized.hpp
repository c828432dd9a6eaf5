#pragma once

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kmw/series.hpp"

namespace kmw {

// The factor 1 - v^vexp e^beta. Atoms with vexp = 0 are kept with beta
// oriented so that its first nonzero coordinate is negative.
struct DenomAtom {
  Coweight beta;
  int vexp = 0;
  friend bool operator==(const DenomAtom&, const DenomAtom&) = default;
  friend auto operator<=>(const DenomAtom&, const DenomAtom&) = default;
};

// p / prod_k (1 - v^{e_k} e^{beta_k})^{m_k} with p a finite exact series.
class Localized {
 public:
  using Denominator = std::vector<std::pair<DenomAtom, int>>;

  Localized() = default;
  explicit Localized(LatticeSeries numerator);
  static Localized fraction(LatticeSeries numerator, const Denominator& den);

  const LatticeSeries& numerator() const { return num_; }
  const Denominator& denominator() const { return den_; }
  int dim() const { return num_.dim(); }
  int rank() const { return num_.rank(); }
  bool is_polynomial() const { return den_.empty(); }
  bool is_zero() const { return num_.is_zero(); }
  // The numerator, after checking that no denominator is left.
  const LatticeSeries& polynomial() const;

  Localized divided_by(const DenomAtom& a, int multiplicity = 1) const;
  Localized operator-() const;
  friend Localized operator+(const Localized& a, const Localized& b);
  friend Localized operator-(const Localized& a, const Localized& b);
  friend Localized operator*(const Localized& a, const Localized& b);
  Localized& operator+=(const Localized& o);
  Localized scaled(const Coeff& c) const;
  Localized shifted(const Coweight& mu) const;
  Localized times(const LatticeSeries& p) const;
  Localized relabel(const WeylElement& w) const;

  // Removes every denominator factor that divides the numerator exactly.
  Localized& cancel();

  // Expansion of each atom in the negative direction, to the given floor.
  LatticeSeries expand(int64_t floor, std::optional<int64_t> weight_cap = std::nullopt) const;

  static bool equal(const Localized& a, const Localized& b);
  std::string str() const;

 private:
  void add_atom(DenomAtom a, int multiplicity);

  LatticeSeries num_;
  Denominator den_;
};

// The polynomial 1 - v^vexp e^beta.
LatticeSeries atom_polynomial(const DenomAtom& a, int rank, int n = 1);

// Exact quotient p / (1 - v^vexp e^beta) computed coset by coset along the
// beta line, or nothing if the division leaves a remainder.
std::optional<LatticeSeries> divide_by_atom(const LatticeSeries& p, const DenomAtom& a);

}  // namespace kmw
