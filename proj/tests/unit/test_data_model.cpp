#include <sstream>

#include <gtest/gtest.h>

#include "fdp/data_model.hpp"
#include "helpers.hpp"

namespace {

fdp::Schema st_ok() {
  fdp::Schema s;
  s.positive_labels = {"ST"};
  s.negative_labels = {"OK"};
  return s;
}

fdp::Dataset parse(const std::string& text, const fdp::Schema& s) {
  std::istringstream in(text);
  return fdp::parse_dataset(in, s, "mem");
}

}  // namespace

TEST(DataModel, ParsesLabelsWithSchemaMapping) {
  const auto d = parse("id,label,F1,F2\nC001,ST,1,2\nC002,OK,3,4\nC003,OK,5,6\n", st_ok());
  EXPECT_EQ(d.rows(), 3u);
  EXPECT_EQ(d.cols(), 2u);
  EXPECT_EQ(d.labels(), (fdp::Labels{1, -1, -1}));
  EXPECT_EQ(*d.value(2, 1), 6.0);
}

TEST(DataModel, EmptyCellIsMissing) {
  const auto d = parse("id,label,F1,F2\nC001,ST,,2\nC002,OK,3,4\n", st_ok());
  EXPECT_FALSE(d.value(0, 0).has_value());
  EXPECT_TRUE(d.value(0, 1).has_value());
  EXPECT_TRUE(d.value(1, 0).has_value());
  EXPECT_EQ(d.missing_count(0), 1u);
}

TEST(DataModel, SentinelTokenIsMissing) {
  auto s = st_ok();
  s.missing_tokens = {"NA"};
  const auto d = parse("id,label,F1\nC001,ST,NA\nC002,OK,1\n", s);
  EXPECT_FALSE(d.value(0, 0).has_value());
}

TEST(DataModel, DuplicateIdNamesTheId) {
  try {
    parse("id,label,F1\nC001,ST,1\nC001,OK,2\n", st_ok());
    FAIL() << "no error";
  } catch (const fdp::Error& e) {
    EXPECT_EQ(e.kind(), fdp::ErrorKind::kUniqueness);
    EXPECT_NE(std::string(e.what()).find("C001"), std::string::npos);
  }
}

TEST(DataModel, WrongArityReportsLine) {
  try {
    parse("id,label,F1\nC001,ST,1\nC002,OK\n", st_ok());
    FAIL() << "no error";
  } catch (const fdp::Error& e) {
    EXPECT_EQ(e.kind(), fdp::ErrorKind::kParse);
    EXPECT_NE(std::string(e.what()).find("mem:3"), std::string::npos);
  }
}

TEST(DataModel, UnknownLabelToken) {
  EXPECT_FDP_ERROR(parse("id,label,F1\nC001,maybe,1\n", st_ok()), fdp::ErrorKind::kLabel);
}

TEST(DataModel, RoundTripIsBitExact) {
  const auto d = parse("id,label,F1,F2\nC001,ST,0.1,\nC002,OK,-3.3333333333333335,1e-300\n", st_ok());
  std::ostringstream out;
  fdp::write_dataset(out, d, st_ok());
  const auto back = parse(out.str(), st_ok());
  ASSERT_EQ(back.cells().size(), d.cells().size());
  for (std::size_t i = 0; i < d.cells().size(); ++i) EXPECT_EQ(back.cells()[i], d.cells()[i]);
  EXPECT_EQ(back.labels(), d.labels());
  EXPECT_EQ(back.sample_ids(), d.sample_ids());
}

TEST(DataModel, ValidateCleanDataset) {
  fdp::Matrix x(2, 2);
  x(0, 0) = 1;
  x(1, 1) = 1;
  const auto d = fdp::Dataset::from_matrix({"F1", "F2"}, x, {1, -1});
  const auto r = fdp::validate_dataset(d, fdp::default_catalog());
  EXPECT_TRUE(r.uncataloged.empty());
  for (const auto& [name, f] : r.missing_fraction) EXPECT_EQ(f, 0.0) << name;
}

TEST(DataModel, ValidateFlagsUncataloged) {
  fdp::Matrix x(2, 2);
  const auto d = fdp::Dataset::from_matrix({"F1", "Z9"}, x, {1, -1});
  const auto r = fdp::validate_dataset(d, fdp::default_catalog());
  EXPECT_EQ(r.uncataloged, std::vector<std::string>{"Z9"});
}

TEST(DataModel, ValidateClassCounts) {
  fdp::Matrix x(75, 1);
  fdp::Labels y(75, -1);
  for (int i = 0; i < 25; ++i) y[static_cast<std::size_t>(i)] = 1;
  const auto d = fdp::Dataset::from_matrix({"F1"}, x, y);
  const auto before = d.cells();
  const auto r = fdp::validate_dataset(d, fdp::default_catalog());
  EXPECT_EQ(r.positives, 25u);
  EXPECT_EQ(r.negatives, 50u);
  EXPECT_EQ(d.cells(), before);
}

TEST(DataModel, CatalogHas43UniqueCodes) {
  const auto& c = fdp::default_catalog();
  EXPECT_EQ(c.size(), 43u);
  EXPECT_TRUE(c.contains("Audittyp"));
  EXPECT_TRUE(c.contains("DAP"));
  EXPECT_TRUE(c.contains("emotion"));
  EXPECT_FALSE(c.contains("F29"));
}

TEST(DataModel, LabelsMustBeSigned) {
  fdp::Matrix x(1, 1);
  EXPECT_FDP_ERROR(fdp::Dataset::from_matrix({"F1"}, x, {0}), fdp::ErrorKind::kLabel);
}
