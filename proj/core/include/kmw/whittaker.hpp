#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kmw/cg.hpp"
#include "kmw/cyclotomic.hpp"
#include "kmw/dl.hpp"
#include "kmw/localfield.hpp"
#include "kmw/symmetrizer.hpp"

namespace kmw {

struct WhittakerOptions {
  int64_t depth = 4;  // in units of the height of the minimal imaginary coroot (affine data)
  int cap = 12;       // length cap on the Weyl group sums (affine data)
  std::optional<int64_t> weight_cap;
  std::optional<int64_t> q;  // specialize v -> 1/q and g_k -> Gauss sums when set
};

using SpecializedTable = std::map<Coweight, CycloElement>;

struct WhittakerValue {
  Coweight lambda;
  std::string route;  // "simple" or "hecke"
  bool exact = false;
  bool stabilized = true;
  int64_t floor = 0;  // absolute height floor of the retained terms (truncated values)
  LatticeSeries formal;
  std::optional<SpecializedTable> specialized;
};

struct IwahoriPiece {
  WeylElement w;
  Localized value;  // v^{<lambda, rho>} T_w(e^lambda)
  std::optional<SpecializedTable> specialized;
};

struct WhittakerCrosscheck {
  WhittakerValue simple;
  WhittakerValue hecke;
  std::vector<Mismatch> formal_mismatches;
  std::vector<Mismatch> specialized_mismatches;
  std::vector<std::string> invariant_failures;
  bool ok() const {
    return simple.stabilized && hecke.stabilized && formal_mismatches.empty() && specialized_mismatches.empty() &&
           invariant_failures.empty();
  }
};

// The metaplectic Whittaker function v^{<lambda, rho>} m~ Delta~ sum_w (-1)^{l(w)}
// e^{-sum of inversions} w * e^lambda and its Iwahori decomposition through
// the metaplectic Whittaker operators.
class WhittakerEvaluator {
 public:
  explicit WhittakerEvaluator(MetaplecticDatum met);

  const StarContext& context() const { return *ctx_; }
  const Symmetrizer& symmetrizer() const { return *sym_; }

  WhittakerValue simple_route(const Coweight& lambda, const WhittakerOptions& opt) const;
  WhittakerValue hecke_route(const Coweight& lambda, const WhittakerOptions& opt) const;
  std::vector<IwahoriPiece> iwahori_pieces(const Coweight& lambda, Flavor flavor, const WhittakerOptions& opt) const;
  WhittakerCrosscheck crosscheck(const Coweight& lambda, const WhittakerOptions& opt) const;

 private:
  Coeff prefactor(const Coweight& lambda) const;
  void check_lambda(const Coweight& lambda) const;
  int64_t floor_for(const Coweight& lambda, const WhittakerOptions& opt) const;
  SpecializedTable specialize_series(const LatticeSeries& s, int64_t q) const;
  const GaussTable& gauss_table(int64_t q) const;

  std::unique_ptr<StarContext> ctx_;
  std::unique_ptr<Symmetrizer> sym_;
  mutable std::map<int64_t, std::unique_ptr<GaussTable>> tables_;
};

// Exact comparison of two specialized tables; absent keys count as zero.
std::vector<Mismatch> compare_specialized(const SpecializedTable& a, const SpecializedTable& b);

// True if every coefficient is a polynomial in v and g_0, ..., g_{n-1}.
bool polynomial_in_v_and_gauss(const LatticeSeries& s);

}  // namespace kmw
