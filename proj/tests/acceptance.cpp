// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "cvanish/matrixlab.hpp"
#include "cvanish/vanishing.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace cvanish;
using Eigen::VectorXd;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

VectorXd random_unit(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = g(rng);
  return v / v.norm();
}

std::vector<SpaceDescriptor> spaces_with_params(int max_param) {
  CatalogFilter f;
  f.max_param = max_param;
  return Catalog{}.enumerate(f);
}

const std::vector<std::string> kWorked = {"SL(3,R)/SO(3)", "SU(1,2)/S(U(1)xU(2))", "SO_0(2,3)/SO(2)xSO(3)",
                                          "Sp(2,R)/U(2)"};

Outcome dimension_identity() {
  const Catalog cat;
  const auto all = cat.enumerate();
  int bad = 0, exceptional = 0;
  for (const auto& s : all) {
    if (s.dim != s.rank + s.system.total_multiplicity()) ++bad;
    if (std::find(exceptional_labels().begin(), exceptional_labels().end(), s.label) != exceptional_labels().end())
      ++exceptional;
  }
  struct Spot {
    const char* name;
    int dim, rank;
  };
  for (const Spot& sp : {Spot{"SL(3,R)/SO(3)", 5, 2}, Spot{"SU(1,2)/S(U(1)xU(2))", 4, 1},
                         Spot{"SO_0(2,3)/SO(2)xSO(3)", 6, 2}, Spot{"Sp(2,R)/U(2)", 6, 2},
                         Spot{"SO_0(2,2)/SO(2)xSO(2)", 4, 2}}) {
    const auto s = cat.lookup(sp.name);
    if (s.dim != sp.dim || s.rank != sp.rank) ++bad;
  }
  return {bad == 0 && exceptional == 12,
          std::to_string(all.size()) + " rows (" + std::to_string(exceptional) + " exceptional), " +
              std::to_string(bad) + " violations, 5 spot values checked"};
}

Outcome ricci_identity() {
  std::mt19937_64 rng(1);
  double worst = 0.0;
  int inexact = 0;
  const auto all = Catalog{}.enumerate();
  for (const auto& s : all) {
    const auto& roots = s.system.flat_roots();
    for (int t = 0; t < 100; ++t) {
      const VectorXd h = random_unit(s.rank, rng);
      double sum = 0.0;
      for (Eigen::Index i = 0; i < roots.cols(); ++i) {
        const double v = roots.col(i).dot(h);
        sum += s.system.multiplicities()[static_cast<std::size_t>(i)] * v * v;
      }
      worst = std::max(worst, std::abs(sum - 0.5));
    }
    // exact: scale^2 * W == gram / 2 on the simple roots
    const RationalMatrix w = weighted_simple_form(s.system);
    const RationalMatrix& gram = s.system.chamber().gram;
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = 0; j < w.size(); ++j)
        if (s.system.scale_squared() * w[i][j] != gram[i][j] / Rational(2)) ++inexact;
  }
  return {worst <= 1e-12 && inexact == 0, std::to_string(all.size()) + " spaces x 100 directions, max |err| " +
                                              fmt_double(worst) + ", exact mismatches " + std::to_string(inexact)};
}

Outcome worked_examples() {
  const Catalog cat;
  bool ok = true;
  std::string detail;
  for (const auto& name : kWorked) {
    const auto c = check_eigen_sum(cat.lookup(name), 1);
    ok = ok && c.holds && std::abs(c.margin) <= 1e-9;
    detail += name + " " + c.margin_exact + "; ";
  }
  const auto d2 = check_eigen_sum(cat.lookup("SO_0(2,2)/SO(2)xSO(2)"), 1);
  ok = ok && !d2.holds && std::abs(d2.margin + std::sqrt(0.5)) <= 1e-6;
  const auto h2 = check_eigen_sum(cat.lookup("SL(2,R)/SO(2)"), 1);
  ok = ok && !h2.holds;
  detail += "SO_0(2,2) " + d2.margin_exact + "; SL(2,R) " + (h2.holds ? "holds" : "fails");
  return {ok, detail};
}

Outcome oracle_equivalence() {
  const Catalog cat;
  std::vector<std::string> names = kWorked;
  for (const char* extra : {"SL(4,R)/SO(4)", "SU(2,2)/S(U(2)xU(2))", "SO_0(2,4)/SO(2)xSO(4)", "Sp(3,R)/U(3)"})
    names.emplace_back(extra);
  double worst = 0.0;
  bool ok = true;
  for (const auto& name : names) {
    const auto r = cross_check(cat.lookup(name), 20, 11);
    ok = ok && r.passed && r.max_discrepancy <= 1e-8;
    worst = std::max(worst, r.max_discrepancy);
  }
  return {ok, std::to_string(names.size()) + " spaces x 20 directions, max discrepancy " + fmt_double(worst)};
}

Outcome optimizer_soundness() {
  // small catalog: classical parameters <= 4, rank <= 3
  double worst = 0.0;
  int pairs = 0;
  for (const auto& s : spaces_with_params(4)) {
    if (s.rank > 3) continue;
    for (int p = 1; p <= std::min(3, s.dim - 1); ++p) {
      const double exact = sum_of_p_largest_max(s, p).value;
      const double grid = grid_oracle(s, p, 100000, 5).value;
      worst = std::max(worst, std::abs(exact - grid));
      ++pairs;
    }
  }
  return {worst <= 1e-6, std::to_string(pairs) + " (space, p) pairs, max |exact - grid| " + fmt_double(worst)};
}

Outcome implication() {
  const auto r = check_pinching_implies_eigen_sum(spaces_with_params(6), 1, 3);
  return {r.counterexamples.empty() && r.premise_held > 0,
          std::to_string(r.checked) + " instances, pinching held in " + std::to_string(r.premise_held) + ", " +
              std::to_string(r.counterexamples.size()) + " counterexamples"};
}

Outcome flagged_list() {
  CatalogFilter f;
  f.max_param = 6;
  f.theorem_1_3_only = true;
  const auto spaces = Catalog{}.enumerate(f);
  int failing = 0;
  std::string which;
  for (const auto& s : spaces)
    if (!check_eigen_sum(s, 1).holds) {
      ++failing;
      which += " " + s.label;
    }
  return {failing == 0 && !spaces.empty(),
          std::to_string(spaces.size()) + " flagged spaces, " + std::to_string(failing) + " failing" + which};
}

Outcome proof_chain() {
  // the holding degrees form an initial segment 1..degree
  double worst = std::numeric_limits<double>::infinity();
  int cases = 0;
  std::size_t evaluations = 0;
  for (const auto& s : Catalog{}.enumerate()) {
    const int degree = max_vanishing_degree(s).degree;
    for (int p = 1; p <= degree; ++p) {
      const auto r = verify_proof_chain(s, p, 1000, {0.1, 1.0, 10.0}, static_cast<std::uint64_t>(p));
      worst = std::min(worst, r.min_value);
      evaluations += r.evaluations;
      ++cases;
    }
  }
  return {cases > 0 && worst >= -kVerdictTolerance, std::to_string(cases) + " (space, p) cases, " +
                                                        std::to_string(evaluations) + " evaluations, minimum " +
                                                        fmt_double(worst)};
}

Outcome hessian_limits() {
  double series_rel = 0.0;
  for (double r : {0.25, 1.0, 4.0, 50.0}) {
    const double v = kSeriesSwitchover / r;
    const double direct = lambda_coth_direct(v, r);
    series_rel = std::max(series_rel, std::abs(lambda_coth_series(v, r) - direct) / std::abs(direct));
  }

  // r = 50 against the limiting list, entry by entry in root order
  const Catalog cat;
  std::vector<std::string> names = kWorked;
  names.emplace_back("SO_0(2,2)/SO(2)xSO(2)");
  std::mt19937_64 rng(2);
  const double r = 50.0;
  double worst = 0.0, worst_root = 0.0, worst_flat = 0.0;
  for (const auto& name : names) {
    const auto s = cat.lookup(name);
    for (int t = 0; t < 20; ++t) {
      const VectorXd h = random_unit(s.rank, rng);
      const auto finite = hessian_spectrum(s, h, r);
      const auto limit = asymptotic_hessian_spectrum(s, h);
      for (std::size_t i = 0; i < finite.entries.size(); ++i) {
        const double err = std::abs(finite.entries[i].value - limit.entries[i].value);
        worst = std::max(worst, err);
        if (limit.entries[i].value == 0.0)
          worst_flat = std::max(worst_flat, err);
        else
          worst_root = std::max(worst_root, err);
      }
    }
  }
  const bool ok = series_rel <= 1e-12 && worst <= 1e-6;
  std::string detail = "series vs direct rel " + fmt_double(series_rel) + "; r=50 vs limit max " + fmt_double(worst) +
                       " (root entries " + fmt_double(worst_root) + ", flat entries " + fmt_double(worst_flat) + ")";
  if (!ok && series_rel <= 1e-12)
    detail += "; flat directions give 1/r and small |lambda(h)| give lambda(coth(lambda r)-1), neither is within 1e-6 at r=50";
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"dimension identity", dimension_identity},
      {"Ricci identity", ricci_identity},
      {"worked examples at p=1", worked_examples},
      {"matrix-model oracle equivalence", oracle_equivalence},
      {"optimizer soundness", optimizer_soundness},
      {"pinching implies eigen-sum", implication},
      {"flagged 1-form list", flagged_list},
      {"Hessian proof chain", proof_chain},
      {"Hessian limits", hessian_limits},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto started = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    if (!o.pass) ++failed;
    std::printf("%s %zu %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
