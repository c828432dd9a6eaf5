#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kmw/cartan.hpp"
#include "kmw/root_datum.hpp"
#include "kmw/series.hpp"
#include "kmw/symmetrizer.hpp"
#include "kmw/verify.hpp"
#include "kmw/whittaker.hpp"

namespace kmw::io {

using nlohmann::json;

// Path of the golden metaplectic type table shipped in data/.
std::string default_golden_path();

std::vector<TypeTableRow> type_table_from_json(const json& j);
json type_table_to_json(const std::vector<TypeTableRow>& rows);
std::vector<TypeTableRow> load_type_table(const std::string& path);

// Datum document {"cartan": [[...]], "form": [Q(a_i^vee)...], "n": k}. The
// form is optional and defaults to the standard form.
MetaplecticDatum datum_from_json(const json& j);
MetaplecticDatum load_datum(const std::string& path);
json datum_to_json(const MetaplecticDatum& m);

// Parses "2,0" or "[2,0]" into a coweight of the given dimension.
Coweight parse_coweight(const std::string& text, int dim);

json series_to_json(const LatticeSeries& s);
json specialized_to_json(const SpecializedTable& t);
json mismatches_to_json(const std::vector<Mismatch>& m);
json report_to_json(const SymmetrizerReport& r);

}  // namespace kmw::io
