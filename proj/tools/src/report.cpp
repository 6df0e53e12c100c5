#include "cvanish/cli/report.hpp"

#include "cvanish/errors.hpp"

namespace cvanish::cli {

using nlohmann::json;

namespace {

json vector_to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Eigen::VectorXd vector_from_json(const json& a) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v[static_cast<Eigen::Index>(i)] = a[i].get<double>();
  return v;
}

}  // namespace

json certificate_to_json(const VanishingCertificate& c) {
  json j = {
      {"space", c.space_label},
      {"p", c.p},
      {"condition", std::string(condition_name(c.condition))},
      {"holds", c.holds},
      {"margin", c.margin},
      {"margin_exact", c.margin_exact},
      {"method", c.method},
      {"in_theorem_scope", c.in_theorem_scope},
  };
  j["witness_direction"] = c.witness_direction ? vector_to_json(*c.witness_direction) : json(nullptr);
  if (c.witness_triple) {
    const auto& t = *c.witness_triple;
    j["witness_triple"] = {{"lambda", t.lambda},   {"nu", t.nu},           {"mu", t.mu},
                           {"norm_lambda", t.norm_lambda}, {"norm_nu", t.norm_nu}, {"norm_mu", t.norm_mu}};
  } else {
    j["witness_triple"] = nullptr;
  }
  return j;
}

VanishingCertificate certificate_from_json(const json& j) {
  try {
    VanishingCertificate c;
    c.space_label = j.at("space").get<std::string>();
    c.p = j.at("p").get<int>();
    c.condition = parse_condition(j.at("condition").get<std::string>());
    c.holds = j.at("holds").get<bool>();
    c.margin = j.at("margin").get<double>();
    c.margin_exact = j.at("margin_exact").get<std::string>();
    c.method = j.at("method").get<std::string>();
    c.in_theorem_scope = j.at("in_theorem_scope").get<bool>();
    if (const auto& w = j.at("witness_direction"); !w.is_null()) c.witness_direction = vector_from_json(w);
    if (const auto& t = j.at("witness_triple"); !t.is_null()) {
      RootTriple triple;
      triple.lambda = t.at("lambda").get<int>();
      triple.nu = t.at("nu").get<int>();
      triple.mu = t.at("mu").get<int>();
      triple.norm_lambda = t.at("norm_lambda").get<double>();
      triple.norm_nu = t.at("norm_nu").get<double>();
      triple.norm_mu = t.at("norm_mu").get<double>();
      c.witness_triple = triple;
    }
    return c;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed certificate: ") + e.what());
  } catch (const ParameterError& e) {
    throw DataError(std::string("malformed certificate: ") + e.what());
  }
}

json to_json(const Report& report) {
  json j = {{"schema_version", report.schema_version},
            {"command", report.command},
            {"query", report.query},
            {"certificates", json::array()},
            {"payload", report.payload}};
  for (const auto& c : report.certificates) j["certificates"].push_back(certificate_to_json(c));
  if (report.timing_seconds) j["timing_seconds"] = *report.timing_seconds;
  return j;
}

Report report_from_json(const json& j) {
  try {
    Report r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kSchemaVersion)
      throw DataError("unsupported report schema_version " + std::to_string(r.schema_version));
    r.command = j.at("command").get<std::string>();
    r.query = j.at("query");
    r.payload = j.at("payload");
    for (const auto& c : j.at("certificates")) r.certificates.push_back(certificate_from_json(c));
    if (j.contains("timing_seconds")) r.timing_seconds = j.at("timing_seconds").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed report: ") + e.what());
  }
}

std::string emit(const Report& report) { return to_json(report).dump(2) + "\n"; }

Report parse_report(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("report is not valid JSON: ") + e.what());
  }
  return report_from_json(j);
}

}  // namespace cvanish::cli
