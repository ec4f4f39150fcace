// Copyright 2026, The arl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "arl/dataset.hpp"
#include "arl/error.hpp"
#include "arl/learner.hpp"
#include "arl/probe.hpp"
#include "arl/serialize.hpp"
#include "support/oracle.hpp"

using namespace arl;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& text) {
  const fs::path path = fs::temp_directory_path() / ("arl_core_" + name);
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

std::vector<std::string> column(const Dataset& d, const std::string& name) {
  return get_labels(d, d.universe().require_feature(name));
}

Dataset clinical_sample() {
  return testing::table({"Age", "Sex", "Steroid", "Antiviral", "Class"}, {{"30", "female", "no", "yes", "LIVE"},
                                                                          {"50", "male", "no", "yes", "LIVE"},
                                                                          {"78", "male", "yes", "yes", "LIVE"},
                                                                          {"39", "male", "yes", "no", "DIE"}});
}

}  // namespace

TEST_CASE("ingest_csv counts distinct values per column") {
  const auto path = write_temp("toy.csv",
                               "A,B,C\na1,b1,c1\na1,b2,c2\na2,b1,c1\na2,b2,c2\na1,b1,c2\na2,b2,c1\n");
  const Dataset d = ingest_csv(path, true);
  CHECK(d.feature_count() == 3);
  CHECK(d.universe().item_count() == 6);
  CHECK(d.row_count() == 6);
  // First-occurrence category order.
  CHECK(d.universe().feature(1).categories == std::vector<std::string>{"b1", "b2"});
}

TEST_CASE("ingest_csv reports the ragged row by file line") {
  const auto path = write_temp("ragged.csv", "A,B,C\na1,b1,c1\na1,b2,c2\na2,b1,c1\na2,b2\n");
  try {
    (void)ingest_csv(path, true);
    FAIL("expected an error");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("ragged row 5") != std::string::npos);
  }
}

TEST_CASE("ingest_csv rejects empty input and missing files") {
  CHECK_THROWS_AS(ingest_csv(write_temp("empty.csv", ""), true), DataError);
  CHECK_THROWS_AS(ingest_csv(write_temp("header_only.csv", "A,B\n"), true), DataError);
  CHECK_THROWS_AS(ingest_csv("/nonexistent/arl.csv", true), DataError);
}

TEST_CASE("csv parsing handles quotes, CRLF, blank lines and missing cells") {
  const TextTable t = parse_csv("x,y\r\n\"a,1\",\"say \"\"hi\"\"\"\r\n\r\nb,\n", true);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0][0] == "a,1");
  CHECK(t.rows[0][1] == "say \"hi\"");
  const Dataset d = Dataset::from_table(t);
  CHECK(d.value(1, 1) == std::string(kMissingCategory));

  const TextTable headless = parse_csv("p,q\nr,s\n", false);
  CHECK(headless.columns == std::vector<std::string>{"col1", "col2"});
  CHECK(headless.rows.size() == 2);
}

TEST_CASE("clinical-style table exposes its items") {
  const Dataset d = clinical_sample();
  CHECK(d.universe().find_item("Antiviral", "yes").has_value());
  CHECK(d.universe().find_item("Class", "LIVE").has_value());
  CHECK(column(d, "Class") == std::vector<std::string>{"LIVE", "LIVE", "LIVE", "DIE"});
}

TEST_CASE("one-hot rows satisfy the per-feature simplex constraint") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Dataset d = testing::random_dataset(seed);
    const Eigen::MatrixXd x = d.one_hot();
    const auto& u = d.universe();
    for (Eigen::Index r = 0; r < x.rows(); ++r)
      for (FeatureId f = 0; f < u.feature_count(); ++f)
        CHECK(x.row(r).segment(u.offset(f), u.cardinality(f)).sum() == 1.0);
  }
}

TEST_CASE("equal-frequency discretization") {
  auto bins_of = [](const std::vector<std::string>& values, int bins) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& v : values) rows.push_back({v});
    const Dataset d = discretize_equal_frequency(testing::table({"x"}, rows), std::vector<std::string>{"x"}, bins);
    return std::make_pair(d, get_labels(d, 0));
  };

  SUBCASE("exact split") {
    auto [d, labels] = bins_of({"1", "2", "3", "4", "5", "6", "7", "8", "9", "10"}, 2);
    CHECK(d.universe().feature(0).categories == std::vector<std::string>{"[1,5]", "[6,10]"});
    CHECK(labels[4] == "[1,5]");
    CHECK(labels[5] == "[6,10]");
  }
  SUBCASE("identical values collapse into one bin") {
    auto [d, labels] = bins_of(std::vector<std::string>(10, "7"), 2);
    CHECK(d.universe().cardinality(0) == 1);
    CHECK(labels.front() == "[7,7]");
  }
  SUBCASE("ties stay in the lower bin") {
    auto [d, labels] = bins_of({"1", "1", "1", "2", "3", "4"}, 2);
    CHECK(labels == std::vector<std::string>{"[1,1]", "[1,1]", "[1,1]", "[2,4]", "[2,4]", "[2,4]"});
    auto [d2, labels2] = bins_of({"3", "1", "1", "2", "1", "1"}, 2);
    // Scan oracle: four 1s exceed the nominal bin of size 3, so all 1s stay together.
    CHECK(labels2 == std::vector<std::string>{"[2,3]", "[1,1]", "[1,1]", "[2,3]", "[1,1]", "[1,1]"});
  }
  SUBCASE("non-numeric cell is reported with row and column") {
    const Dataset d = testing::table({"x"}, {{"1"}, {"oops"}});
    try {
      (void)discretize_equal_frequency(d, std::vector<std::string>{"x"}, 2);
      FAIL("expected an error");
    } catch (const DataError& e) {
      const std::string what = e.what();
      CHECK(what.find("row 2") != std::string::npos);
      CHECK(what.find("'x'") != std::string::npos);
    }
  }
  SUBCASE("unknown column") {
    CHECK_THROWS_AS(discretize_equal_frequency(testing::t1(), std::vector<std::string>{"Z"}, 2), ConfigError);
  }
}

TEST_CASE("discretization properties on random columns") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 60)(rng);
    const int bins = std::uniform_int_distribution<int>(1, 12)(rng);
    const int spread = std::uniform_int_distribution<int>(1, 30)(rng);
    std::vector<std::vector<std::string>> rows;
    std::vector<double> values;
    for (int i = 0; i < n; ++i) {
      const double v = std::uniform_int_distribution<int>(0, spread)(rng) * 0.5;
      values.push_back(v);
      std::ostringstream os;
      os << v;
      rows.push_back({os.str(), "k"});
    }
    const Dataset raw = testing::table({"x", "other"}, rows);
    const std::vector<std::string> cols{"x"};
    const Dataset d = discretize_equal_frequency(raw, cols, bins);
    REQUIRE(d.row_count() == n);
    CHECK(d.universe().cardinality(0) <= bins);

    // Equal values share a bin, and bins are ordered intervals.
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (values[static_cast<std::size_t>(i)] == values[static_cast<std::size_t>(j)])
          CHECK(d.code(i, 0) == d.code(j, 0));
        if (values[static_cast<std::size_t>(i)] < values[static_cast<std::size_t>(j)])
          CHECK(d.code(i, 0) <= d.code(j, 0));
      }
    // Without ties, populations differ by at most one.
    std::set<double> distinct(values.begin(), values.end());
    if (distinct.size() == values.size()) {
      std::vector<int> sizes(static_cast<std::size_t>(d.universe().cardinality(0)), 0);
      for (int i = 0; i < n; ++i) ++sizes[static_cast<std::size_t>(d.code(i, 0))];
      CHECK(*std::max_element(sizes.begin(), sizes.end()) - *std::min_element(sizes.begin(), sizes.end()) <= 1);
    }
    // Idempotent.
    const Dataset again = discretize_equal_frequency(d, cols, bins);
    CHECK(again.universe() == d.universe());
    CHECK(again.codes() == d.codes());
  }
}

TEST_CASE("probe vectors follow the marked/uniform layout") {
  const Dataset d = testing::table({"Antiviral", "Malaise", "Class"},
                                   {{"yes", "yes", "LIVE"}, {"no", "no", "DIE"}});
  const ProbeMatrix q = generate_probe_vectors({0, 1}, d.universe());
  REQUIRE(q.rows() == 4);
  Eigen::RowVectorXd expected(6);
  expected << 1, 0, 1, 0, 0.5, 0.5;
  CHECK(q.values.row(0) == expected);
  CHECK(q.marked(0, 0) == 0);
  CHECK(q.marked(3, 1) == 1);
  // Last marked feature varies fastest.
  CHECK(q.marked(1, 0) == 0);
  CHECK(q.marked(1, 1) == 1);
}

TEST_CASE("probe matrix invariants on random universes") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Dataset d = testing::random_dataset(seed, {50, 5, 4, 1});
    const auto& u = d.universe();
    const int k = u.feature_count();
    for (const auto& S : enumerate_antecedent_feature_sets(k, k)) {
      const ProbeMatrix q = generate_probe_vectors(S, u);
      std::int64_t expected_rows = 1;
      for (FeatureId f : S) expected_rows *= u.cardinality(f);
      REQUIRE(q.rows() == expected_rows);
      for (Eigen::Index r = 0; r < q.rows(); ++r) {
        CHECK(q.values.row(r).sum() == doctest::Approx(k).epsilon(1e-12));
        for (FeatureId f = 0; f < k; ++f) {
          const auto block = q.values.row(r).segment(u.offset(f), u.cardinality(f));
          if (std::binary_search(S.begin(), S.end(), f)) {
            CHECK(block.maxCoeff() == 1.0);
            CHECK(block.sum() == 1.0);
          } else {
            CHECK((block.array() == 1.0 / u.cardinality(f)).all());
          }
        }
      }
      const ProbeMatrix again = generate_probe_vectors(S, u);
      CHECK(again.values == q.values);
      if (static_cast<int>(S.size()) == k) CHECK(((q.values.array() == 0.0) || (q.values.array() == 1.0)).all());
    }
  }
}

TEST_CASE("probe generation rejects bad feature sets") {
  const Dataset d = testing::t1();
  const auto& u = d.universe();
  CHECK_THROWS_AS(generate_probe_vectors({}, u), ConfigError);
  CHECK_THROWS_AS(generate_probe_vectors({1, 0}, u), ConfigError);
  CHECK_THROWS_AS(generate_probe_vectors({3}, u), ConfigError);
}

TEST_CASE("remove_feature on matrices and datasets") {
  const Dataset d = testing::t1();
  Eigen::MatrixXd row(1, 6);
  row << 1, 0, 1, 0, 0.5, 0.5;
  Eigen::MatrixXd expected(1, 4);
  expected << 1, 0, 0.5, 0.5;
  CHECK(remove_feature(row, d.universe(), 1) == expected);
  CHECK(row(0, 2) == 1.0);  // source untouched

  const Dataset without_b = remove_feature(d, 1);
  CHECK(without_b.feature_count() == 2);
  CHECK(without_b.universe().feature(1).name == "C");
  CHECK(without_b.value(3, 1) == "c2");
  CHECK(d.feature_count() == 3);
  CHECK_THROWS_AS(remove_feature(d, 5), ConfigError);
  CHECK_THROWS_AS(get_labels(d, -1), ConfigError);
}

TEST_CASE("hard evidence reads exact one-hot blocks only") {
  const Dataset d = testing::t1();
  const auto& u = d.universe();
  Eigen::RowVectorXd row(6);
  row << 1, 0, 0.5, 0.5, 0, 1;
  CHECK(hard_evidence(row, u) == std::vector<int>{0, -1, 1});
}

TEST_CASE("feature-set enumeration count matches the binomial sum") {
  CHECK(enumerate_antecedent_feature_sets(4, 2).size() == 10);
  CHECK(enumerate_antecedent_feature_sets(3, 3).size() == 7);
  CHECK(enumerate_antecedent_feature_sets(6, 2).size() == 21);
  for (int k = 1; k <= 8; ++k)
    for (int a = 1; a <= k; ++a)
      CHECK(static_cast<std::int64_t>(enumerate_antecedent_feature_sets(k, a).size()) == feature_set_count(k, a));
  CHECK_THROWS_AS(enumerate_antecedent_feature_sets(3, 0), ConfigError);
  CHECK_THROWS_AS(enumerate_antecedent_feature_sets(3, 4), ConfigError);
}

TEST_CASE("dataset summary json and digest") {
  const Dataset d = testing::t1();
  const auto j = dataset_summary(d);
  CHECK(j["n"] == 6);
  CHECK(j["m"] == 6);
  CHECK(j["features"][2]["name"] == "C");
  CHECK(j["features"][2]["categories"] == nlohmann::json::array({"c1", "c2"}));
  CHECK(d.digest() == testing::t1().digest());
  CHECK(d.digest() != remove_feature(d, 0).digest());
}
