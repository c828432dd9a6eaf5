#include "io.hpp"

#include <fstream>
#include <sstream>

#include "kmw/error.hpp"

#ifndef KMW_DATA_DIR
#define KMW_DATA_DIR "data"
#endif

namespace kmw::io {

std::string default_golden_path() { return std::string(KMW_DATA_DIR) + "/metaplectic_types.json"; }

namespace {

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

}  // namespace

std::vector<TypeTableRow> type_table_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array())
    throw InvalidInput("golden table needs an object with a \"rows\" array");
  std::vector<TypeTableRow> out;
  try {
    for (const auto& r : j["rows"]) {
      TypeTableRow row;
      row.family = r.at("family").get<std::string>();
      row.ell = r.at("ell").get<int>();
      row.form = r.at("form").get<std::vector<int64_t>>();
      for (const auto& [n, label] : r.at("types").items()) row.types[std::stoi(n)] = label.get<std::string>();
      out.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed golden table: ") + e.what());
  }
  return out;
}

json type_table_to_json(const std::vector<TypeTableRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json types = json::object();
    for (const auto& [n, label] : r.types) types[std::to_string(n)] = label;
    arr.push_back({{"family", r.family}, {"ell", r.ell}, {"form", r.form}, {"types", types}});
  }
  return {{"rows", arr}};
}

std::vector<TypeTableRow> load_type_table(const std::string& path) { return type_table_from_json(read_file(path)); }

MetaplecticDatum datum_from_json(const json& j) {
  const char* schema = "datum schema: {\"cartan\": [[2,-1],[-1,2]], \"form\": [1,1], \"n\": 2}";
  if (!j.is_object() || !j.contains("cartan")) throw InvalidInput(std::string("missing \"cartan\"; ") + schema);
  std::vector<std::vector<int64_t>> rows;
  int n = 1;
  std::optional<std::vector<int64_t>> form;
  try {
    rows = j.at("cartan").get<std::vector<std::vector<int64_t>>>();
    if (j.contains("n")) n = j.at("n").get<int>();
    if (j.contains("form") && !j.at("form").is_null()) form = j.at("form").get<std::vector<int64_t>>();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string(e.what()) + "; " + schema);
  }
  for (const auto& [key, value] : j.items())
    if (key != "cartan" && key != "form" && key != "n") throw InvalidInput("unknown key \"" + key + "\"; " + schema);
  RootDatum d = RootDatum::simply_connected(CartanMatrix::from_rows(rows));
  QuadraticForm q = form ? QuadraticForm::from_values(d, *form) : QuadraticForm::standard(d);
  return MetaplecticDatum(d, q, n);
}

MetaplecticDatum load_datum(const std::string& path) { return datum_from_json(read_file(path)); }

json datum_to_json(const MetaplecticDatum& m) {
  const CartanMatrix& a = m.datum().cartan();
  std::vector<std::vector<int64_t>> rows(a.size(), std::vector<int64_t>(a.size()));
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) rows[i][j] = a(i, j);
  return {{"cartan", rows}, {"form", m.form().values()}, {"n", m.n()}};
}

Coweight parse_coweight(const std::string& text, int dim) {
  std::string s;
  for (char c : text)
    if (c != '[' && c != ']' && c != ' ') s += c;
  std::vector<int64_t> xs;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &pos);
    } catch (const std::exception&) {
      throw InvalidInput("coweight \"" + text + "\" has a non-integer entry");
    }
    if (pos != item.size()) throw InvalidInput("coweight \"" + text + "\" has a non-integer entry");
    xs.push_back(v);
  }
  if (s.empty()) xs.clear();
  if (static_cast<int>(xs.size()) != dim)
    throw InvalidInput("coweight \"" + text + "\" has " + std::to_string(xs.size()) + " coordinates, expected " +
                       std::to_string(dim));
  return Coweight::from_vector(xs);
}

json series_to_json(const LatticeSeries& s) {
  json out = json::object();
  for (const auto& [mu, c] : s.terms()) out["e" + mu.str()] = c.str();
  return out;
}

json specialized_to_json(const SpecializedTable& t) {
  json out = json::object();
  for (const auto& [mu, x] : t) {
    auto z = x.to_complex();
    out["e" + mu.str()] = {{"exact", x.str()}, {"re", z.real()}, {"im", z.imag()}};
  }
  return out;
}

json mismatches_to_json(const std::vector<Mismatch>& m) {
  json arr = json::array();
  for (const auto& x : m)
    arr.push_back({{"component", x.component}, {"coefficient_lhs", x.lhs}, {"coefficient_rhs", x.rhs}});
  return arr;
}

json report_to_json(const SymmetrizerReport& r) {
  return {{"datum", r.datum},       {"flavor", r.flavor}, {"lambda", r.lambda},
          {"depth", r.depth},       {"cap", r.cap},       {"exact", r.exact},
          {"stabilized", r.stabilized}, {"mismatches", mismatches_to_json(r.mismatches)},
          {"result", r.ok() ? "pass" : "fail"}};
}

}  // namespace kmw::io
