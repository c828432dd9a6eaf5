#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kmw/cg.hpp"
#include "kmw/dl.hpp"
#include "kmw/localized.hpp"
#include "kmw/series.hpp"

namespace kmw {

// Positive coroots with their multiplicities, as exponents in Y.
struct MultiplicityTable {
  int64_t max_height = 0;
  std::vector<std::pair<Coweight, int64_t>> entries;  // sorted by height, then coordinates
  std::set<Coweight> imaginary_set;                     // coroots pairing to zero with every root
  int64_t multiplicity(const Coweight& beta) const;
  std::vector<Coweight> real() const;
  std::vector<std::pair<Coweight, int64_t>> imaginary() const;
};

// Solves the denominator identity
//   sum_w (-1)^{l(w)} e^{-sum_j scale_{k_j} beta_j(w)} = prod_b (1 - e^{-b})^{m(b)}
// through height max_height, where beta_j(w) are the inversion coroots of w
// along its canonical word. With scale = 1 this gives the coroot
// multiplicities of the Cartan matrix; with scale = (n_i) those of the
// metaplectic coroot system written in Y.
MultiplicityTable root_multiplicities(const WeylGroup& w, int64_t max_height,
                                      const std::vector<int64_t>& scale = {});

enum class CorrectionMethod { FiniteOne, MacdonaldCt, ExponentProduct, ViswanathDivision };
std::string to_string(CorrectionMethod m);
CorrectionMethod parse_correction_method(const std::string& s);

struct StabilizedSeries {
  LatticeSeries value;
  int cap = 0;
  bool stabilized = false;
  size_t elements = 0;
  std::vector<Coweight> witnesses;  // coefficients that moved between the last two caps
};

struct Mismatch {
  std::string component;
  std::string lhs;
  std::string rhs;
};

struct SymmetrizerReport {
  std::string datum;
  std::string flavor;
  std::string lambda;
  int64_t depth = 0;
  int cap = 0;
  bool exact = false;
  bool stabilized = true;
  std::vector<Mismatch> mismatches;
  bool ok() const { return stabilized && mismatches.empty(); }
};

// Simple and Hecke symmetrizers for one datum, either with the metaplectic
// operators (star action, coroots a~_i, Delta~) or with the plain ones.
class Symmetrizer {
 public:
  Symmetrizer(const StarContext& ctx, bool metaplectic);

  const StarContext& context() const { return *ctx_; }
  bool metaplectic() const { return metaplectic_; }
  bool finite() const { return finite_; }
  bool affine() const { return affine_; }
  // Minimal imaginary coroot of the coroots in use (c~ when metaplectic).
  const Coweight& imaginary() const { return imaginary_; }
  // Minimal imaginary coroot of the underlying datum, the unit of depth.
  const Coweight& base_imaginary() const { return base_imaginary_; }
  int64_t depth_unit() const;

  // Coroot a_i or a~_i.
  Coweight simple(int i) const;
  // Positive coroots of the system in use, through the given height.
  const MultiplicityTable& multiplicities(int64_t max_height) const;
  // Inversion coroots of w along its canonical word, scaled when metaplectic.
  std::vector<Coweight> inversions(const WeylElement& w) const;
  Coweight inversion_sum(const WeylElement& w) const;

  // The action used by the simple symmetrizers on e^lambda.
  Localized act(const WeylElement& w, const Localized& f) const;

  // Finite type, exact.
  Localized delta_exact() const;
  Localized delta_w_exact(const WeylElement& w) const;
  Localized simple_exact(Flavor flavor, const Coweight& lambda) const;
  Localized hecke_exact(Flavor flavor, const Coweight& lambda) const;
  // sum_w C_w [w] with P = sum_w T_w, for the plain operators of a finite datum.
  std::map<std::vector<int>, Localized> hecke_components_exact(Flavor flavor) const;

  // Truncated expansions to the absolute height floor.
  LatticeSeries delta(int64_t floor, std::optional<int64_t> weight_cap = std::nullopt) const;
  LatticeSeries delta_inverse(int64_t floor, std::optional<int64_t> weight_cap = std::nullopt) const;
  LatticeSeries delta_w(const WeylElement& w, int64_t floor, std::optional<int64_t> weight_cap = std::nullopt) const;
  LatticeSeries correction_factor(CorrectionMethod method, int64_t floor,
                                  std::optional<int64_t> weight_cap = std::nullopt) const;
  // Sums over elements of length <= cap, compared with the sum to cap - 1.
  StabilizedSeries simple_truncated(Flavor flavor, const Coweight& lambda, int64_t floor, int cap,
                                    std::optional<int64_t> weight_cap = std::nullopt) const;
  StabilizedSeries hecke_truncated(Flavor flavor, const Coweight& lambda, int64_t floor, int cap,
                                   std::optional<int64_t> weight_cap = std::nullopt) const;
  // The identity component C_1 of P or Pflat, truncated (plain operators, n = 1).
  StabilizedSeries identity_component(Flavor flavor, int64_t floor, int cap,
                                      std::optional<int64_t> weight_cap = std::nullopt) const;

  // P(e^lambda) against m I(e^lambda), exactly in finite type, truncated otherwise.
  SymmetrizerReport check_proportionality(Flavor flavor, const Coweight& lambda, int64_t depth, int cap,
                                          std::optional<int64_t> weight_cap = std::nullopt) const;
  // C_1 = C_1flat.
  SymmetrizerReport check_identity_components(int64_t depth, int cap,
                                              std::optional<int64_t> weight_cap = std::nullopt) const;

 private:
  LatticeSeries one_series() const;
  LatticeSeries viswanath(int64_t floor, int64_t weight_cap) const;
  LatticeSeries exponent_product(int64_t floor, std::optional<int64_t> weight_cap) const;
  std::vector<WeylElement> elements(int max_length) const;
  LatticeSeries twist_delta(LatticeSeries base, const WeylElement& w, int64_t floor,
                            std::optional<int64_t> weight_cap) const;

  const StarContext* ctx_;
  bool metaplectic_;
  bool finite_ = false;
  bool affine_ = false;
  Coweight imaginary_;
  Coweight base_imaginary_;
  std::vector<int64_t> scale_;
  mutable std::map<int64_t, MultiplicityTable> mult_cache_;
  mutable std::mutex mult_mutex_;
};

std::string describe(const std::vector<Mismatch>& m, size_t limit = 5);

// Mismatches between two series above the common floor. A series truncated
// above the expected floor is reported as a mismatch.
std::vector<Mismatch> compare_series(const LatticeSeries& lhs, const LatticeSeries& rhs,
                                     std::optional<int64_t> floor = std::nullopt);

}  // namespace kmw
