#include "cvanish/catalog.hpp"
#include "cvanish/errors.hpp"
#include "support.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>

using namespace cvanish;

namespace {

// dim G - dim K from the Lie algebras, independent of the root data.
int so_dim(int n) { return n * (n - 1) / 2; }
int sp_dim(int n) { return n * (2 * n + 1); }

int classical_dim(const std::string& family, const std::vector<int>& p) {
  if (family == "AI") return (p[0] * p[0] - 1) - so_dim(p[0]);
  if (family == "AII") return (4 * p[0] * p[0] - 1) - sp_dim(p[0]);
  if (family == "AIII") return ((p[0] + p[1]) * (p[0] + p[1]) - 1) - (p[0] * p[0] + p[1] * p[1] - 1);
  if (family == "BDI") return so_dim(p[0] + p[1]) - so_dim(p[0]) - so_dim(p[1]);
  if (family == "DIII") return so_dim(2 * p[0]) - p[0] * p[0];
  if (family == "CI") return sp_dim(p[0]) - p[0] * p[0];
  if (family == "CII") return sp_dim(p[0] + p[1]) - sp_dim(p[0]) - sp_dim(p[1]);
  return -1;
}

int classical_rank(const std::string& family, const std::vector<int>& p) {
  if (family == "AI" || family == "AII") return p[0] - 1;
  if (family == "DIII") return p[0] / 2;
  if (family == "CI") return p[0];
  return std::min(p[0], p[1]);
}

// (dim g, dim k, rank) for the exceptional noncompact real forms.
const std::map<std::string, std::tuple<int, int, int>> kExceptional = {
    {"EI", {78, 36, 6}},   {"EII", {78, 38, 4}},    {"EIII", {78, 46, 2}}, {"EIV", {78, 52, 2}},
    {"EV", {133, 63, 7}},  {"EVI", {133, 69, 4}},   {"EVII", {133, 79, 3}}, {"EVIII", {248, 120, 8}},
    {"EIX", {248, 136, 4}}, {"FI", {52, 24, 4}},    {"FII", {52, 36, 1}},  {"G", {14, 6, 2}}};

bool listed(const SpaceDescriptor& s) {
  const auto& p = s.params;
  const auto& f = s.family;
  if (f == "AI") return p[0] >= 4;
  if (f == "AII" || f == "CII") return true;
  if (f == "AIII") return p[0] + p[1] >= 4;
  if (f == "BDI") return std::min(p[0], p[1]) == 1 ? p[0] + p[1] >= 4 : p[0] + p[1] >= 6;
  if (f == "DIII" || f == "CI") return p[0] >= 3;
  return kExceptional.count(f) == 1;
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("lookup of the worked examples") {
  const Catalog cat;
  SUBCASE("SL(3,R)/SO(3)") {
    const auto s = cat.lookup("SL(3,R)/SO(3)");
    CHECK(s.rank == 2);
    CHECK(s.dim == 5);
    CHECK(s.system.type_name() == "A2");
    CHECK(s.multiplicities == MultiplicityMap{{"all", 1}});
  }
  SUBCASE("SU(1,2)/S(U(1)xU(2))") {
    const auto s = cat.lookup("SU(1,2)/S(U(1)xU(2))");
    CHECK(s.rank == 1);
    CHECK(s.dim == 4);
    CHECK(s.system.type_name() == "BC1");
    CHECK(s.system.multiplicities() == std::vector<int>{2, 1});
  }
  SUBCASE("Sp(2,R)/U(2)") {
    const auto s = cat.lookup("Sp(2,R)/U(2)");
    CHECK(s.rank == 2);
    CHECK(s.dim == 6);
    CHECK(s.system.type_name() == "C2");
    CHECK(s.system.total_multiplicity() == 4);
  }
  SUBCASE("SO_0(2,2)/SO(2)xSO(2)") {
    const auto s = cat.lookup("SO_0(2,2)/SO(2)xSO(2)");
    CHECK(s.rank == 2);
    CHECK(s.dim == 4);
    CHECK(s.system.type_name() == "D2");
    CHECK(s.flags.reducible_exception);
    CHECK_FALSE(s.in_theorem_scope());
  }
  SUBCASE("SO_0(2,3)/SO(2)xSO(3)") {
    const auto s = cat.lookup("SO_0(2,3)/SO(2)xSO(3)");
    CHECK(s.rank == 2);
    CHECK(s.dim == 6);
    CHECK(s.system.type_name() == "B2");
  }
}

TEST_CASE("names are case-insensitive, whitespace-tolerant and order-insensitive in p, q") {
  const Catalog cat;
  const auto ref = cat.lookup("AIII(2,1)");
  for (const char* name : {"aiii(1,2)", " AIII ( 2 , 1 ) ", "su(1,2)/s(u(1)xu(2))", "SU(2,1)/S(U(2)×U(1))",
                           "SU(1, 2) / S(U(1) x U(2))"})
    CHECK(cat.lookup(name).label == ref.label);
  CHECK(cat.lookup("SO_0(2,3)").label == cat.lookup("SO0(3,2)/SO(3)xSO(2)").label);
  CHECK(cat.lookup("SO(2,3)").label == "BDI(3,2)");
  CHECK(cat.lookup("SL(4,ℝ)/SO(4)").label == "AI(4)");
  CHECK(cat.lookup("Sp(3,R)/U(3)").label == "CI(3)");
  CHECK(cat.lookup("SO*(6)/U(3)").label == "DIII(3)");
  CHECK(cat.lookup("SU*(6)/Sp(3)").label == "AII(3)");
  CHECK(cat.lookup("Sp(1,2)/Sp(1)xSp(2)").label == "CII(2,1)");
  CHECK(cat.lookup("eiv").label == "EIV");
  CHECK(cat.lookup("G").label == "G");
}

TEST_CASE("lookup errors") {
  const Catalog cat;
  CHECK_THROWS_AS(cat.lookup("XVII"), LookupError);
  CHECK_THROWS_AS(cat.lookup("SL(3,C)/SU(3)"), LookupError);
  CHECK_THROWS_AS(cat.lookup("AI(1)"), ParameterError);
  CHECK_THROWS_AS(cat.lookup("AII(1)"), ParameterError);
  CHECK_THROWS_AS(cat.lookup("AIII(0,2)"), ParameterError);
  CHECK_THROWS_AS(cat.lookup("DIII(1)"), ParameterError);
  CHECK_THROWS_AS(cat.lookup("CI(0)"), ParameterError);
  CHECK_THROWS_AS(cat.lookup("BDI(1,1)"), ParameterError);
  CHECK_THROWS_AS(cat.lookup("SO*(5)"), ParameterError);
  CHECK_THROWS_AS(cat.lookup("SU*(5)"), ParameterError);
}

TEST_CASE("dimension identity and dim g - dim k for every built-in row") {
  const auto all = Catalog{}.enumerate();
  std::size_t exceptional_seen = 0;
  for (const auto& s : all) {
    CAPTURE(s.label);
    CHECK(s.dim == s.rank + s.system.total_multiplicity());
    CHECK(s.rank == s.system.rank());
    if (auto it = kExceptional.find(s.family); it != kExceptional.end()) {
      const auto [g, k, r] = it->second;
      CHECK(s.dim == g - k);
      CHECK(s.rank == r);
      ++exceptional_seen;
    } else {
      CHECK(s.dim == classical_dim(s.family, s.params));
      CHECK(s.rank == classical_rank(s.family, s.params));
    }
  }
  CHECK(exceptional_seen == 12);
}

TEST_CASE("spot dimensions") {
  const Catalog cat;
  for (int n = 2; n <= 8; ++n) CHECK(cat.lookup("AI(" + std::to_string(n) + ")").dim == (n - 1) * (n + 2) / 2);
  CHECK(cat.lookup("AIII(5,3)").dim == 30);
  CHECK(cat.lookup("BDI(5,3)").dim == 15);
  CHECK(cat.lookup("CI(4)").dim == 20);
  CHECK(cat.lookup("CII(3,2)").dim == 24);
  CHECK(cat.lookup("EIV").dim == 26);
  CHECK(cat.lookup("FII").dim == 16);
  CHECK(cat.lookup("G").dim == 8);
}

TEST_CASE("theorem list flags follow the published parameter constraints") {
  for (const auto& s : Catalog{}.enumerate()) {
    CAPTURE(s.label);
    CHECK(s.flags.in_theorem_1_3_list == listed(s));
    CHECK(s.flags.reducible_exception == (s.label == "BDI(2,2)"));
  }
}

TEST_CASE("enumerate filters") {
  const Catalog cat;
  SUBCASE("dimension 3..6 with parameters up to 4") {
    CatalogFilter f;
    f.dim_range = std::pair{3, 6};
    f.max_param = 4;
    std::set<std::string> labels;
    for (const auto& s : cat.enumerate(f)) {
      CHECK(s.dim >= 3);
      CHECK(s.dim <= 6);
      labels.insert(s.label);
    }
    for (const char* l : {"AI(3)", "AIII(2,1)", "BDI(3,2)", "CI(2)", "BDI(2,2)"}) CHECK(labels.count(l) == 1);
    CHECK(labels.count("AI(2)") == 0);
  }
  SUBCASE("theorem list only") {
    CatalogFilter f;
    f.theorem_1_3_only = true;
    f.max_param = 4;
    std::set<std::string> labels;
    for (const auto& s : cat.enumerate(f)) labels.insert(s.label);
    CHECK(labels.count("AI(4)") == 1);
    CHECK(labels.count("AIII(2,2)") == 1);
    CHECK(labels.count("AI(3)") == 0);
  }
  SUBCASE("family and rank filters") {
    CatalogFilter f;
    f.family = "BDI";
    f.rank_range = std::pair{2, 2};
    f.max_param = 5;
    const auto rows = cat.enumerate(f);
    CHECK_FALSE(rows.empty());
    for (const auto& s : rows) {
      CHECK(s.family == "BDI");
      CHECK(s.rank == 2);
    }
  }
  SUBCASE("empty filter lists every exceptional space exactly once, in order") {
    std::vector<std::string> seen;
    for (const auto& s : cat.enumerate())
      if (kExceptional.count(s.label)) seen.push_back(s.label);
    CHECK(seen == exceptional_labels());
  }
  SUBCASE("max_param bounds every classical parameter") {
    CatalogFilter f;
    f.max_param = 3;
    for (const auto& s : cat.enumerate(f))
      for (int p : s.params) CHECK(p <= 3);
  }
}

TEST_CASE("enumeration is deterministic and lookup of enumerated labels is idempotent") {
  const Catalog cat;
  const auto a = cat.enumerate();
  const auto b = cat.enumerate();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].label == b[i].label);
    for (const auto& name : {a[i].label, a[i].quotient}) {
      const auto again = cat.lookup(name);
      CAPTURE(name);
      CHECK(again.label == a[i].label);
      CHECK(again.quotient == a[i].quotient);
      CHECK(again.rank == a[i].rank);
      CHECK(again.dim == a[i].dim);
      CHECK(again.multiplicities == a[i].multiplicities);
      CHECK(again.system.multiplicities() == a[i].system.multiplicities());
      CHECK(again.flags.in_theorem_1_3_list == a[i].flags.in_theorem_1_3_list);
    }
  }
}

TEST_CASE("catalog override files") {
  const Catalog base;
  SUBCASE("a custom BC2 row with a wrong dimension is rejected by the dimension identity") {
    const auto path = write_temp("cvanish_bad_dim.json", R"([{"label": "CUSTOM", "family": "CUSTOM", "rank": 2,
      "dim": 20, "roots_type": "BC2", "multiplicities": {"e_i+-e_j": 2, "e_i": 2, "2e_i": 1}, "flags": {}}])");
    try {
      load_catalog_override(path, base);
      FAIL("expected a DataError");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).find("dimension identity") != std::string::npos);
    }
  }
  SUBCASE("a rank mismatch is rejected by the rank identity") {
    const auto path = write_temp("cvanish_bad_rank.json", R"([{"label": "CUSTOM", "family": "CUSTOM", "rank": 3,
      "dim": 5, "roots_type": "A2", "multiplicities": {"all": 1}}])");
    CHECK_THROWS_WITH_AS(load_catalog_override(path, base), doctest::Contains("rank identity"), DataError);
  }
  SUBCASE("a reducible row without the exception flag is rejected") {
    const auto path = write_temp("cvanish_reducible.json", R"([{"label": "PAIR", "family": "PAIR", "rank": 2,
      "dim": 4, "roots_type": "D2", "multiplicities": {"all": 1}}])");
    CHECK_THROWS_AS(load_catalog_override(path, base), DataError);
  }
  SUBCASE("duplicating EIV with m = 8 on A2 and dim 26 is accepted") {
    const auto path = write_temp("cvanish_eiv.json", R"([{"label": "EIV", "family": "EIV", "rank": 2, "dim": 26,
      "roots_type": "A2", "multiplicities": {"all": 8}, "flags": {"in_theorem_1_3_list": true}}])");
    const Catalog cat = load_catalog_override(path, base);
    const auto s = cat.lookup("EIV");
    CHECK(s.dim == 26);
    CHECK(s.system.total_multiplicity() == 24);
    std::size_t count = 0;
    for (const auto& r : cat.enumerate())
      if (r.label == "EIV") ++count;
    CHECK(count == 1);
  }
  SUBCASE("a new row is appended and becomes queryable") {
    const auto path = write_temp("cvanish_new.json", R"([{"label": "MY-G2", "family": "MY-G2", "rank": 2, "dim": 8,
      "roots_type": "G2", "multiplicities": {"long": 1, "short": 1}}])");
    const Catalog cat = load_catalog_override(path, base);
    CHECK(cat.lookup("my-g2").dim == 8);
    CHECK(cat.enumerate().back().label == "MY-G2");
    CHECK(cat.enumerate().size() == base.enumerate().size() + 1);
  }
  SUBCASE("an empty file leaves the catalog unchanged") {
    const auto path = write_temp("cvanish_empty.json", "");
    const Catalog cat = load_catalog_override(path, base);
    CHECK(cat.overrides().empty());
    CHECK(cat.enumerate().size() == base.enumerate().size());
  }
  SUBCASE("syntax errors and missing files are data errors") {
    CHECK_THROWS_AS(parse_catalog_rows("[{"), DataError);
    CHECK_THROWS_AS(parse_catalog_rows(R"({"label": "x"})"), DataError);
    CHECK_THROWS_AS(load_catalog_override("/nonexistent/cvanish.json", base), DataError);
  }
}
