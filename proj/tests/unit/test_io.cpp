#include <gtest/gtest.h>

#include "io.hpp"
#include "kmw/verify.hpp"

using namespace kmw;
using io::json;

TEST(GoldenTable, ComputationReproducesShippedTable) {
  auto golden = io::load_type_table(io::default_golden_path());
  EXPECT_EQ(golden.size(), 23u);
  auto outcome = check_type_table(golden);
  EXPECT_TRUE(outcome.pass) << outcome.detail;
}

TEST(GoldenTable, ChangedCellIsDetected) {
  auto golden = io::load_type_table(io::default_golden_path());
  golden[3].types[5] = "A1(1)";
  EXPECT_FALSE(check_type_table(golden).pass);
}

TEST(GoldenTable, JsonRoundTrip) {
  auto rows = compute_type_table(4);
  auto back = io::type_table_from_json(io::type_table_to_json(rows));
  ASSERT_EQ(back.size(), rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].family, rows[i].family);
    EXPECT_EQ(back[i].types, rows[i].types);
  }
}

TEST(Datum, ParsesFullAndMinimalDocuments) {
  auto m = io::datum_from_json(json::parse(R"({"cartan":[[2,-2],[-1,2]],"form":[2,1],"n":2})"));
  EXPECT_EQ(m.n(), 2);
  EXPECT_EQ(m.form().values(), (std::vector<int64_t>{2, 1}));
  auto s = io::datum_from_json(json::parse(R"({"cartan":[[2,-1],[-1,2]]})"));
  EXPECT_EQ(s.n(), 1);
  EXPECT_EQ(io::datum_from_json(io::datum_to_json(m)).form().values(), m.form().values());
}

TEST(Datum, MalformedDocumentsAreInvalidInput) {
  for (const char* doc : {R"({"form":[1]})", R"({"cartan":"A2"})", R"({"cartan":[[2,-1],[-1,2]],"n":"two"})",
                          R"({"cartan":[[2,-1],[-1,2]],"extra":1})", R"({"cartan":[[2,-1],[0,2]]})",
                          R"({"cartan":[[2,-2],[-1,2]],"form":[1,2]})", R"([1,2])"})
    EXPECT_THROW(io::datum_from_json(json::parse(doc)), InvalidInput) << doc;
}

TEST(Coweight, ParsesBothSyntaxes) {
  EXPECT_EQ(io::parse_coweight("2,0", 2), Coweight::of({2, 0}));
  EXPECT_EQ(io::parse_coweight("[1, -1, 3]", 3), Coweight::of({1, -1, 3}));
  EXPECT_THROW(io::parse_coweight("1,x", 2), InvalidInput);
  EXPECT_THROW(io::parse_coweight("1", 2), InvalidInput);
}
