#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kmw/cartan.hpp"
#include "kmw/lattice.hpp"
#include "kmw/series.hpp"

namespace kmw {

// One row of the golden metaplectic type table: an affine family member with
// its standard form values and the type of the metaplectic Cartan matrix per n.
struct TypeTableRow {
  std::string family;
  int ell = 0;
  std::vector<int64_t> form;
  std::map<int, std::string> types;
};

// The computed counterpart of the golden table for every family at its
// smallest two ranks and n = 1..max_n.
std::vector<TypeTableRow> compute_type_table(int max_n = 12);

// Support and polynomiality assertions collected over many values.
class InvariantLog {
 public:
  // Every coefficient has no negative power of v in normal form and, when
  // `bound` is set, every exponent lies below it in the coroot cone order.
  void series(const std::string& where, const LatticeSeries& s, const std::optional<Coweight>& bound);
  void fail(const std::string& what);
  void merge(const InvariantLog& o);

  int64_t values() const { return values_; }
  const std::vector<std::string>& violations() const { return violations_; }
  bool ok() const { return violations_.empty(); }

 private:
  int64_t values_ = 0;
  std::vector<std::string> violations_;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0;
  double limit = 0;  // seconds
  std::string detail;
};

struct AcceptanceOptions {
  bool quick = false;
  uint64_t seed = 20240611;
  // Golden table; criterion 1 fails when it is empty.
  std::vector<TypeTableRow> type_table;
  // Restricts the run to these criterion ids when nonempty.
  std::vector<int> only;
  std::function<void(const CriterionResult&)> on_result;
};

// Time limit in seconds for each criterion id 1..14.
double criterion_limit(int id);
std::string criterion_name(int id);

// Runs the acceptance criteria in order. Criterion 14 asserts the invariants
// logged while running criteria 4 to 13 and therefore runs them if needed.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);

// Individual checks, each returning a pass flag and a short detail line.
struct CheckOutcome {
  bool pass = true;
  std::string detail;
};

CheckOutcome check_type_table(const std::vector<TypeTableRow>& golden);
CheckOutcome check_rank2_apparatus(int max_k = 30, int max_len_infinite = 12);
CheckOutcome check_inversion_sets(int max_len = 8);
CheckOutcome check_cg_action(InvariantLog& log, bool quick);
CheckOutcome check_dl_braid(InvariantLog& log, bool quick);
CheckOutcome check_degeneration(InvariantLog& log, bool quick);
CheckOutcome check_finite_cherednik(InvariantLog& log, bool quick);
CheckOutcome check_correction_routes(InvariantLog& log, bool quick);
CheckOutcome check_metaplectic_affine(InvariantLog& log, bool quick);
CheckOutcome check_identity_components(InvariantLog& log, bool quick);
CheckOutcome check_local_field(bool quick);
CheckOutcome check_torus_cover(uint64_t seed, bool quick);
CheckOutcome check_whittaker(InvariantLog& log, bool quick);

}  // namespace kmw
