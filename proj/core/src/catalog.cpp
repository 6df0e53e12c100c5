#include "cvanish/catalog.hpp"

#include "cvanish/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>

namespace cvanish {
namespace {

struct ExceptionalRow {
  const char* label;
  const char* quotient;
  const char* roots_type;
  int dim;
  MultiplicityMap multiplicities;
};

// Restricted root data of the exceptional noncompact spaces.
const std::vector<ExceptionalRow>& exceptional_rows() {
  static const std::vector<ExceptionalRow> rows = {
      {"EI", "E6(6)/Sp(4)", "E6", 42, {{"all", 1}}},
      {"EII", "E6(2)/SU(6)xSU(2)", "F4", 40, {{"long", 1}, {"short", 2}}},
      {"EIII", "E6(-14)/SO(10)xSO(2)", "BC2", 32, {{"e_i+-e_j", 6}, {"e_i", 8}, {"2e_i", 1}}},
      {"EIV", "E6(-26)/F4", "A2", 26, {{"all", 8}}},
      {"EV", "E7(7)/SU(8)", "E7", 70, {{"all", 1}}},
      {"EVI", "E7(-5)/SO(12)xSU(2)", "F4", 64, {{"long", 1}, {"short", 4}}},
      {"EVII", "E7(-25)/E6xSO(2)", "C3", 54, {{"e_i+-e_j", 8}, {"2e_i", 1}}},
      {"EVIII", "E8(8)/SO(16)", "E8", 128, {{"all", 1}}},
      {"EIX", "E8(-24)/E7xSU(2)", "F4", 112, {{"long", 1}, {"short", 8}}},
      {"FI", "F4(4)/Sp(3)xSU(2)", "F4", 28, {{"long", 1}, {"short", 1}}},
      {"FII", "F4(-20)/SO(9)", "BC1", 16, {{"e_i", 8}, {"2e_i", 7}}},
      {"G", "G2(2)/SO(4)", "G2", 8, {{"long", 1}, {"short", 1}}},
  };
  return rows;
}

const std::vector<std::string> kClassicalFamilies = {"AI", "AII", "AIII", "BDI", "DIII", "CI", "CII"};

std::string upper(std::string_view s) {
  std::string out;
  for (char c : s) out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  return out;
}

std::string param_label(const std::string& family, const std::vector<int>& params) {
  std::string s = family + "(";
  for (std::size_t i = 0; i < params.size(); ++i) s += (i ? "," : "") + std::to_string(params[i]);
  return s + ")";
}

void expect_params(const std::string& family, const std::vector<int>& params, std::size_t count) {
  if (params.size() != count)
    throw ParameterError(family + " takes " + std::to_string(count) + " parameter(s)");
}

SpaceDescriptor classical_space(const std::string& family, std::vector<int> params) {
  CatalogRow row;
  row.family = family;
  std::string quotient;
  int expected_dim = 0;
  bool theorem = false;

  const bool two = family == "AIII" || family == "BDI" || family == "CII";
  expect_params(family, params, two ? 2 : 1);
  if (two && params[0] < params[1]) std::swap(params[0], params[1]);
  for (int x : params)
    if (x < 1) throw ParameterError(family + " parameters must be positive");

  if (family == "AI") {
    const int n = params[0];
    if (n < 2) throw ParameterError("AI(n) requires n >= 2");
    row.roots_type = root_type_name(Family::A, n - 1);
    row.multiplicities = {{"all", 1}};
    quotient = "SL(" + std::to_string(n) + ",R)/SO(" + std::to_string(n) + ")";
    expected_dim = (n - 1) * (n + 2) / 2;
    theorem = n >= 4;
  } else if (family == "AII") {
    const int n = params[0];
    if (n < 2) throw ParameterError("AII(n) requires n >= 2");
    row.roots_type = root_type_name(Family::A, n - 1);
    row.multiplicities = {{"all", 4}};
    quotient = "SU*(" + std::to_string(2 * n) + ")/Sp(" + std::to_string(n) + ")";
    expected_dim = (n - 1) * (2 * n + 1);
    theorem = true;
  } else if (family == "AIII") {
    const int p = params[0], q = params[1];
    if (p > q) {
      row.roots_type = root_type_name(Family::BC, q);
      row.multiplicities = {{"e_i+-e_j", 2}, {"e_i", 2 * (p - q)}, {"2e_i", 1}};
    } else {
      row.roots_type = root_type_name(Family::C, q);
      row.multiplicities = {{"e_i+-e_j", 2}, {"2e_i", 1}};
    }
    const auto sp = std::to_string(p), sq = std::to_string(q);
    quotient = "SU(" + sq + "," + sp + ")/S(U(" + sq + ")xU(" + sp + "))";
    expected_dim = 2 * p * q;
    theorem = p + q >= 4;
  } else if (family == "BDI") {
    const int p = params[0], q = params[1];
    if (p == 1) throw ParameterError("BDI(1,1) is not semisimple");
    if (p > q) {
      row.roots_type = root_type_name(Family::B, q);
      row.multiplicities = {{"e_i+-e_j", 1}, {"e_i", p - q}};
    } else {
      row.roots_type = root_type_name(Family::D, q);
      row.multiplicities = {{"all", 1}};
    }
    const auto sp = std::to_string(p), sq = std::to_string(q);
    quotient = "SO_0(" + sq + "," + sp + ")/SO(" + sq + ")xSO(" + sp + ")";
    expected_dim = p * q;
    theorem = q == 1 ? p + q >= 4 : p + q >= 6;
    row.flags.reducible_exception = p == 2 && q == 2;
  } else if (family == "DIII") {
    const int n = params[0];
    if (n < 2) throw ParameterError("DIII(n) requires n >= 2");
    if (n % 2 == 0) {
      row.roots_type = root_type_name(Family::C, n / 2);
      row.multiplicities = {{"e_i+-e_j", 4}, {"2e_i", 1}};
    } else {
      row.roots_type = root_type_name(Family::BC, (n - 1) / 2);
      row.multiplicities = {{"e_i+-e_j", 4}, {"e_i", 4}, {"2e_i", 1}};
    }
    quotient = "SO*(" + std::to_string(2 * n) + ")/U(" + std::to_string(n) + ")";
    expected_dim = n * (n - 1);
    theorem = n >= 3;
  } else if (family == "CI") {
    const int n = params[0];
    row.roots_type = root_type_name(Family::C, n);
    row.multiplicities = {{"e_i+-e_j", 1}, {"2e_i", 1}};
    quotient = "Sp(" + std::to_string(n) + ",R)/U(" + std::to_string(n) + ")";
    expected_dim = n * (n + 1);
    theorem = n >= 3;
  } else if (family == "CII") {
    const int p = params[0], q = params[1];
    if (p > q) {
      row.roots_type = root_type_name(Family::BC, q);
      row.multiplicities = {{"e_i+-e_j", 4}, {"e_i", 4 * (p - q)}, {"2e_i", 3}};
    } else {
      row.roots_type = root_type_name(Family::C, q);
      row.multiplicities = {{"e_i+-e_j", 4}, {"2e_i", 3}};
    }
    const auto sp = std::to_string(p), sq = std::to_string(q);
    quotient = "Sp(" + sq + "," + sp + ")/Sp(" + sq + ")xSp(" + sp + ")";
    expected_dim = 4 * p * q;
    theorem = true;
  } else {
    throw LookupError("unknown space family '" + family + "'");
  }

  row.label = param_label(family, params);
  row.rank = parse_root_type(row.roots_type).second;
  row.dim = expected_dim;
  row.flags.in_theorem_1_3_list = theorem;
  SpaceDescriptor d = make_space(row);
  d.quotient = quotient;
  d.params = params;
  return d;
}

SpaceDescriptor exceptional_space(const ExceptionalRow& e) {
  CatalogRow row;
  row.label = e.label;
  row.family = e.label;
  row.roots_type = e.roots_type;
  row.rank = parse_root_type(e.roots_type).second;
  row.dim = e.dim;
  row.multiplicities = e.multiplicities;
  row.flags.in_theorem_1_3_list = true;
  SpaceDescriptor d = make_space(row);
  d.quotient = e.quotient;
  return d;
}

bool in_range(int x, const std::optional<std::pair<int, int>>& r) {
  return !r || (x >= r->first && x <= r->second);
}

bool passes(const SpaceDescriptor& d, const CatalogFilter& f) {
  if (f.family && upper(*f.family) != d.family) return false;
  if (!in_range(d.rank, f.rank_range) || !in_range(d.dim, f.dim_range)) return false;
  if (f.theorem_1_3_only && !d.flags.in_theorem_1_3_list) return false;
  return true;
}

std::vector<std::vector<int>> parameter_grid(const std::string& family, int bound) {
  std::vector<std::vector<int>> out;
  if (family == "AIII" || family == "BDI" || family == "CII") {
    for (int p = 1; p <= bound; ++p)
      for (int q = 1; q <= p; ++q) {
        if (family == "BDI" && p == 1) continue;
        out.push_back({p, q});
      }
    return out;
  }
  const int lo = family == "CI" ? 1 : 2;
  for (int n = lo; n <= bound; ++n) out.push_back({n});
  return out;
}

std::vector<int> parse_ints(const std::string& a, const std::string& b = {}) {
  std::vector<int> v{std::stoi(a)};
  if (!b.empty()) v.push_back(std::stoi(b));
  return v;
}

}  // namespace

const std::vector<std::string>& exceptional_labels() {
  static const std::vector<std::string> labels = [] {
    std::vector<std::string> v;
    for (const auto& e : exceptional_rows()) v.emplace_back(e.label);
    return v;
  }();
  return labels;
}

std::string normalize_space_name(std::string_view name) {
  std::string out;
  for (std::size_t i = 0; i < name.size(); ++i) {
    const auto c = static_cast<unsigned char>(name[i]);
    if (std::isspace(c)) continue;
    // UTF-8: "×" (C3 97), "ℝ" (E2 84 9D), subscript zero "₀" (E2 82 80)
    if (c == 0xC3 && i + 1 < name.size() && static_cast<unsigned char>(name[i + 1]) == 0x97) {
      out.push_back('x');
      ++i;
      continue;
    }
    if (c == 0xE2 && i + 2 < name.size()) {
      const auto b1 = static_cast<unsigned char>(name[i + 1]);
      const auto b2 = static_cast<unsigned char>(name[i + 2]);
      if (b1 == 0x84 && b2 == 0x9D) {
        out.push_back('r');
        i += 2;
        continue;
      }
      if (b1 == 0x82 && b2 == 0x80) {
        out.push_back('0');
        i += 2;
        continue;
      }
    }
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

SpaceDescriptor make_space(const CatalogRow& row) {
  const auto [family, type_rank] = parse_root_type(row.roots_type);
  RestrictedRootSystem system = build_root_system(family, type_rank);
  system = attach_multiplicities(std::move(system), row.multiplicities);
  if (row.rank != system.rank())
    throw DataError("rank identity violated for " + row.label + ": rank " + std::to_string(row.rank) +
                    " but " + row.roots_type + " has rank " + std::to_string(system.rank()));
  const int n = system.total_multiplicity();
  if (row.dim != row.rank + n)
    throw DataError("dimension identity violated for " + row.label + ": dim " + std::to_string(row.dim) +
                    " != rank " + std::to_string(row.rank) + " + sum of multiplicities " + std::to_string(n));
  if (!row.flags.reducible_exception && !system.dynkin_connected())
    throw DataError("irreducibility violated for " + row.label + ": Dynkin graph of " + row.roots_type +
                    " is disconnected");
  system = killing_normalize(std::move(system));

  SpaceDescriptor d;
  d.label = row.label;
  d.quotient = row.label;
  d.family = row.family;
  d.rank = row.rank;
  d.dim = row.dim;
  d.multiplicities = row.multiplicities;
  d.system = std::move(system);
  d.flags = row.flags;
  return d;
}

SpaceDescriptor make_space(std::string_view family, const std::vector<int>& params) {
  const std::string f = upper(family);
  for (const auto& e : exceptional_rows())
    if (f == e.label) {
      if (!params.empty()) throw ParameterError(f + " takes no parameters");
      return exceptional_space(e);
    }
  return classical_space(f, params);
}

const SpaceDescriptor* Catalog::find_override(std::string_view normalized) const {
  for (const auto& d : overrides_)
    if (normalize_space_name(d.label) == normalized || normalize_space_name(d.quotient) == normalized) return &d;
  return nullptr;
}

SpaceDescriptor Catalog::lookup(std::string_view name) const {
  const std::string s = normalize_space_name(name);
  if (const auto* d = find_override(s)) return *d;

  static const std::regex cartan(R"(^(ai|aii|aiii|bdi|diii|ci|cii)\((\d+)(?:,(\d+))?\)$)");
  static const std::regex sl(R"(^sl\((\d+),r\)(/.*)?$)");
  static const std::regex su_star(R"(^su\*\((\d+)\)(/.*)?$)");
  static const std::regex su(R"(^su\((\d+),(\d+)\)(/.*)?$)");
  static const std::regex so(R"(^so(?:_?[0o])?\((\d+),(\d+)\)(/.*)?$)");
  static const std::regex so_star(R"(^so\*\((\d+)\)(/.*)?$)");
  static const std::regex sp_real(R"(^sp\((\d+),r\)(/.*)?$)");
  static const std::regex sp(R"(^sp\((\d+),(\d+)\)(/.*)?$)");

  std::smatch m;
  try {
    if (std::regex_match(s, m, cartan)) return make_space(upper(m[1].str()), parse_ints(m[2].str(), m[3].str()));
    if (std::regex_match(s, m, sl)) return make_space("AI", parse_ints(m[1].str()));
    if (std::regex_match(s, m, su_star)) {
      const int two_n = std::stoi(m[1].str());
      if (two_n % 2 != 0) throw ParameterError("SU*(2n) requires an even argument");
      return make_space("AII", {two_n / 2});
    }
    if (std::regex_match(s, m, su)) return make_space("AIII", parse_ints(m[1].str(), m[2].str()));
    if (std::regex_match(s, m, so)) return make_space("BDI", parse_ints(m[1].str(), m[2].str()));
    if (std::regex_match(s, m, so_star)) {
      const int two_n = std::stoi(m[1].str());
      if (two_n % 2 != 0) throw ParameterError("SO*(2n) requires an even argument");
      return make_space("DIII", {two_n / 2});
    }
    if (std::regex_match(s, m, sp_real)) return make_space("CI", parse_ints(m[1].str()));
    if (std::regex_match(s, m, sp)) return make_space("CII", parse_ints(m[1].str(), m[2].str()));
  } catch (const std::out_of_range&) {
    throw ParameterError("parameter out of range in '" + std::string(name) + "'");
  }
  for (const auto& e : exceptional_rows())
    if (s == normalize_space_name(e.label) || s == normalize_space_name(e.quotient)) return exceptional_space(e);
  throw LookupError("unknown symmetric space '" + std::string(name) + "'");
}

std::vector<SpaceDescriptor> Catalog::enumerate(const CatalogFilter& filter) const {
  std::vector<SpaceDescriptor> out;
  std::vector<bool> used(overrides_.size(), false);
  auto emit = [&](SpaceDescriptor d) {
    const std::string key = normalize_space_name(d.label);
    for (std::size_t i = 0; i < overrides_.size(); ++i)
      if (normalize_space_name(overrides_[i].label) == key) {
        used[i] = true;
        d = overrides_[i];
        break;
      }
    if (passes(d, filter)) out.push_back(std::move(d));
  };
  for (const auto& family : kClassicalFamilies)
    for (const auto& params : parameter_grid(family, filter.max_param)) emit(classical_space(family, params));
  for (const auto& e : exceptional_rows()) emit(exceptional_space(e));
  for (std::size_t i = 0; i < overrides_.size(); ++i)
    if (!used[i] && passes(overrides_[i], filter)) out.push_back(overrides_[i]);
  return out;
}

Catalog Catalog::with_overrides(const std::vector<CatalogRow>& rows) const {
  Catalog c = *this;
  for (const auto& row : rows) {
    SpaceDescriptor d = make_space(row);
    const std::string key = normalize_space_name(d.label);
    auto it = std::find_if(c.overrides_.begin(), c.overrides_.end(),
                           [&](const SpaceDescriptor& o) { return normalize_space_name(o.label) == key; });
    if (it != c.overrides_.end())
      *it = std::move(d);
    else
      c.overrides_.push_back(std::move(d));
  }
  return c;
}

std::vector<CatalogRow> parse_catalog_rows(std::string_view json_text) {
  if (std::all_of(json_text.begin(), json_text.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }))
    return {};
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("catalog override parse error: ") + e.what());
  }
  if (!doc.is_array()) throw DataError("catalog override must be a JSON array of row objects");
  std::vector<CatalogRow> rows;
  for (const auto& item : doc) {
    try {
      CatalogRow row;
      row.label = item.at("label").get<std::string>();
      row.family = item.value("family", row.label);
      row.rank = item.at("rank").get<int>();
      row.dim = item.at("dim").get<int>();
      row.roots_type = item.at("roots_type").get<std::string>();
      for (const auto& [key, value] : item.at("multiplicities").items()) row.multiplicities[key] = value.get<int>();
      if (item.contains("flags")) {
        const auto& flags = item.at("flags");
        row.flags.reducible_exception = flags.value("reducible_exception", false);
        row.flags.in_theorem_1_3_list = flags.value("in_theorem_1_3_list", false);
      }
      rows.push_back(std::move(row));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(std::string("catalog override parse error: ") + e.what());
    }
  }
  return rows;
}

Catalog load_catalog_override(const std::filesystem::path& path, const Catalog& base) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open catalog override '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return base.with_overrides(parse_catalog_rows(buffer.str()));
}

}  // namespace cvanish
