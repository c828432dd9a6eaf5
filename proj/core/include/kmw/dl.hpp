#pragma once

#include <map>
#include <string>
#include <vector>

#include "kmw/cg.hpp"
#include "kmw/localized.hpp"

namespace kmw {

enum class Flavor { Spherical, Whittaker };
std::string to_string(Flavor f);
Flavor parse_flavor(const std::string& s);

// T_i = c(a_i)[s_i] + b(a_i)[1] (Spherical) or cflat(a_i)[s_i] + b(a_i)[1]
// (Whittaker). The metaplectic operators use the star action and the
// coroots a~_i; the plain operators use the reflection action and a_i.
class DLOperator {
 public:
  DLOperator(const StarContext& ctx, Flavor flavor, bool metaplectic);

  const StarContext& context() const { return *ctx_; }
  Flavor flavor() const { return flavor_; }
  bool metaplectic() const { return metaplectic_; }

  Localized apply(int i, const Localized& f) const;
  // T_{k_1} T_{k_2} ... T_{k_r} f.
  Localized apply_word(const std::vector<int>& word, const Localized& f) const;
  Localized apply(const WeylElement& w, const Localized& f) const { return apply_word(w.word(), f); }

 private:
  Localized apply_polynomial(int i, const LatticeSeries& p) const;
  Localized apply_fraction(int i, const Localized& f) const;
  Coweight exponent(int i) const;

  const StarContext* ctx_;
  Flavor flavor_;
  bool metaplectic_;
};

// T_w(e^lambda) for a family of elements, reusing T_u(e^lambda) where u is
// w with the first letter of its canonical word removed.
class HeckeOrbit {
 public:
  HeckeOrbit(const DLOperator& op, const Coweight& lambda);
  // Elements must be supplied in order of nondecreasing length with every
  // suffix already present, as produced by WeylGroup::enumerate.
  const Localized& value(const WeylElement& w);
  size_t size() const { return memo_.size(); }

 private:
  const DLOperator* op_;
  std::map<std::vector<int>, Localized> memo_;
};

// The coefficient table of T_w(e^lambda) for lambda dominant.
std::map<Coweight, Coeff> upsilon(const DLOperator& op, const WeylElement& w, const Coweight& lambda);

}  // namespace kmw
