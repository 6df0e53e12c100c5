#include "cvanish/errors.hpp"
#include "cvanish/matrixlab.hpp"

#include "support.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>

using namespace cvanish;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

MatrixXd bracket(const MatrixXd& a, const MatrixXd& b) { return a * b - b * a; }

const std::vector<std::string>& model_spaces() {
  static const std::vector<std::string> names = {
      "SL(3,R)/SO(3)",         "SL(4,R)/SO(4)",        "SU(1,2)/S(U(1)xU(2))",  "SU(2,2)/S(U(2)xU(2))",
      "SO_0(2,3)/SO(2)xSO(3)", "SO_0(3,3)/SO(3)xSO(3)", "Sp(2,R)/U(2)",          "Sp(3,R)/U(3)"};
  return names;
}

}  // namespace

TEST_CASE("model dimensions") {
  const auto sl3 = build_algebra(MatrixFamily::sl_real, {3});
  CHECK(sl3.dim() == 8);
  CHECK(sl3.p_dim == 5);
  CHECK(sl3.k_dim == 3);
  CHECK(sl3.rank == 2);
  CHECK(sl3.name == "sl(3,R)");

  const auto so23 = build_algebra(MatrixFamily::so, {2, 3});
  CHECK(so23.dim() == 10);
  CHECK(so23.p_dim == 6);
  CHECK(so23.rank == 2);

  const auto sp2 = build_algebra(MatrixFamily::sp_real, {2});
  CHECK(sp2.dim() == 10);
  CHECK(sp2.p_dim == 6);

  const auto su12 = build_algebra(MatrixFamily::su, {1, 2});
  CHECK(su12.dim() == 8);
  CHECK(su12.p_dim == 4);
  CHECK(su12.rank == 1);

  CHECK_THROWS_AS(build_algebra(MatrixFamily::sl_real, {7}), ParameterError);
  CHECK_THROWS_AS(build_algebra(MatrixFamily::su, {4, 3}), ParameterError);
  CHECK_THROWS_AS(build_algebra(MatrixFamily::so, {1, 1}), ParameterError);
}

TEST_CASE("structure of the models") {
  for (const auto& [family, params] : std::vector<std::pair<MatrixFamily, std::vector<int>>>{
           {MatrixFamily::sl_real, {3}},
           {MatrixFamily::su, {1, 2}},
           {MatrixFamily::so, {2, 3}},
           {MatrixFamily::sp_real, {2}}}) {
    const auto g = build_algebra(family, params);
    CAPTURE(g.name);
    CHECK(g.closure_residual <= 1e-10);

    // orthonormal basis, theta eigenvalues split k and p
    for (int i = 0; i < g.dim(); ++i) {
      CHECK(g.basis[i].squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(g.theta[i] == (i < g.k_dim ? 1.0 : -1.0));
      CHECK((g.basis[i] + g.theta[i] * g.basis[i].transpose()).norm() < 1e-12);
    }

    // Jacobi identity on a few triples, through the element/coordinate round trip
    std::mt19937_64 rng(2);
    for (int t = 0; t < 5; ++t) {
      const MatrixXd x = g.element(test_support::random_unit(g.dim(), rng));
      const MatrixXd y = g.element(test_support::random_unit(g.dim(), rng));
      const MatrixXd z = g.element(test_support::random_unit(g.dim(), rng));
      const MatrixXd jac = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
      CHECK(jac.norm() < 1e-12);
      CHECK((g.element(g.coordinates(x)) - x).norm() < 1e-12);
      // ad is a representation: ad[x,y] = [ad x, ad y]
      const VectorXd cx = g.coordinates(x), cy = g.coordinates(y);
      const MatrixXd lhs = g.ad_of(g.coordinates(bracket(x, y)));
      const MatrixXd rhs = g.ad_of(cx) * g.ad_of(cy) - g.ad_of(cy) * g.ad_of(cx);
      CHECK((lhs - rhs).norm() < 1e-10);
    }

    // a is abelian
    for (int i : g.a_basis)
      for (int j : g.a_basis) CHECK(bracket(g.basis[i], g.basis[j]).norm() < 1e-12);

    const MatrixXd b = killing_form(g);
    CHECK((b - b.transpose()).norm() < 1e-10);
    for (int i = 0; i < g.dim(); ++i) {
      if (i < g.k_dim)
        CHECK(b(i, i) < 0.0);
      else
        CHECK(b(i, i) > 0.0);
      for (int j = 0; j < g.dim(); ++j)
        if ((i < g.k_dim) != (j < g.k_dim)) CHECK(std::abs(b(i, j)) < 1e-10);
    }

    // ad of k is skew, ad of p is symmetric, in a Frobenius-orthonormal basis
    for (int i = 0; i < g.dim(); ++i) {
      if (i < g.k_dim)
        CHECK((g.ad[i] + g.ad[i].transpose()).norm() < 1e-10);
      else
        CHECK((g.ad[i] - g.ad[i].transpose()).norm() < 1e-10);
    }
  }
}

TEST_CASE("Killing form of sl(n) is 2n tr(XY)") {
  for (int n = 2; n <= 5; ++n) {
    const auto g = build_algebra(MatrixFamily::sl_real, {n});
    const MatrixXd b = killing_form(g);
    for (int i = 0; i < g.dim(); ++i)
      for (int j = 0; j < g.dim(); ++j)
        CHECK(b(i, j) == doctest::Approx(2.0 * n * (g.basis[i] * g.basis[j]).trace()).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("curvature operator") {
  std::mt19937_64 rng(8);
  for (const auto& [family, params] : std::vector<std::pair<MatrixFamily, std::vector<int>>>{
           {MatrixFamily::sl_real, {4}}, {MatrixFamily::su, {2, 3}}, {MatrixFamily::sp_real, {3}}}) {
    const auto g = build_algebra(family, params);
    CAPTURE(g.name);
    const MatrixXd b = killing_form(g);
    const MatrixXd flat = killing_orthonormal_flat(g, b);
    CHECK((flat.transpose() * b * flat - MatrixXd::Identity(g.rank, g.rank)).norm() < 1e-10);

    const VectorXd h = test_support::random_unit(g.rank, rng);
    const MatrixXd r = curvature_operator_matrix(g, b, h);
    CHECK(r.rows() == g.p_dim);
    CHECK((r - r.transpose()).norm() < 1e-10);
    // trace is -(Ricci) = -1/2 in Killing units
    CHECK(r.trace() == doctest::Approx(-0.5).epsilon(1e-10));
    // annihilates a: the first rank coordinates of p span a, up to the orthonormalization
    const auto values = sym_eigenvalues(r);
    int zeros = 0;
    for (double v : values) {
      CHECK(v <= 1e-10);
      if (std::abs(v) < 1e-10) ++zeros;
    }
    CHECK(zeros >= g.rank);

    CHECK_THROWS_AS(curvature_operator_matrix(g, b, VectorXd::Zero(g.rank)), ParameterError);
    CHECK_THROWS_AS(curvature_operator_matrix(g, b, VectorXd::Ones(g.rank + 1)), ParameterError);
  }
}

TEST_CASE("Jacobi eigensolver") {
  SUBCASE("small examples") {
    MatrixXd a(2, 2);
    a << 2, 1, 1, 2;
    const auto v = sym_eigenvalues(a);
    REQUIRE(v.size() == 2);
    CHECK(v[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(v[1] == doctest::Approx(1.0).epsilon(1e-14));

    const auto d = sym_eigenvalues(Eigen::Vector3d(1, 5, -2).asDiagonal().toDenseMatrix());
    CHECK(d == std::vector<double>{5, 1, -2});

    MatrixXd bad(2, 2);
    bad << 1, 2, 0, 1;
    CHECK_THROWS_AS(jacobi_eigen(bad), ParameterError);
  }

  SUBCASE("random symmetric matrices against Eigen") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    for (int n : {1, 3, 8, 20}) {
      MatrixXd m(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = g(rng);
      m = (m + m.transpose()).eval();
      const auto ours = jacobi_eigen(m);
      Eigen::SelfAdjointEigenSolver<MatrixXd> ref(m);
      VectorXd expected = ref.eigenvalues().reverse();
      CHECK((ours.values - expected).norm() < 1e-10 * std::max(1.0, m.norm()));
      CHECK(ours.values.sum() == doctest::Approx(m.trace()).epsilon(1e-12).scale(1.0));
      CHECK((m * ours.vectors - ours.vectors * ours.values.asDiagonal()).norm() < 1e-9);
      CHECK((ours.vectors.transpose() * ours.vectors - MatrixXd::Identity(n, n)).norm() < 1e-10);
    }
  }
}

TEST_CASE("oracle roots") {
  const Catalog cat;
  const auto s = cat.lookup("SU(1,2)/S(U(1)xU(2))");
  const auto g = build_algebra_for(s);
  const auto roots = oracle_positive_roots(g, killing_form(g));
  REQUIRE(roots.size() == 2);
  std::vector<std::pair<double, int>> got;
  for (const auto& r : roots) got.emplace_back(r.vector.norm(), r.multiplicity);
  std::sort(got.begin(), got.end());
  CHECK(got[0].first == doctest::Approx(1.0 / std::sqrt(12.0)).epsilon(1e-10));
  CHECK(got[0].second == 2);
  CHECK(got[1].first == doctest::Approx(2.0 / std::sqrt(12.0)).epsilon(1e-10));
  CHECK(got[1].second == 1);
}

TEST_CASE("cross-check against the root tables") {
  const Catalog cat;
  for (const auto& name : model_spaces()) {
    CAPTURE(name);
    const auto s = cat.lookup(name);
    REQUIRE(has_matrix_model(s));
    const auto r = cross_check(s, 10, 1);
    CHECK(r.passed);
    CHECK(r.max_discrepancy <= 1e-8);
    CHECK(r.max_trace_error <= 1e-8);
    CHECK(r.diagnostic.empty());
    CHECK(r.trials == 10);
    // the isometry carries the catalog flat onto the model flat
    CHECK((r.isometry.transpose() * r.isometry - MatrixXd::Identity(s.rank, s.rank)).norm() < 1e-8);
  }

  SUBCASE("no model for exceptional or other classical families") {
    const auto e = cat.lookup("EIV");
    CHECK_FALSE(has_matrix_model(e));
    CHECK_THROWS_WITH_AS(build_algebra_for(e), doctest::Contains("no matrix model"), ParameterError);
    CHECK_THROWS_AS(cross_check(e, 3), ParameterError);
    CHECK_FALSE(has_matrix_model(cat.lookup("SU*(6)/Sp(3)")));
  }

  SUBCASE("corrupted multiplicity is caught and named") {
    // m(e_i) + 4 m(2e_i) + 2 m(e_i+-e_j) is unchanged, so the normalization and
    // simple-root Gram matrix still match and only the multiplicities disagree
    auto s = cat.lookup("SU(2,3)/S(U(2)xU(3))");
    MultiplicityMap map = s.multiplicities;
    map["e_i"] = 4;
    map["e_i+-e_j"] = 1;
    s.system = killing_normalize(attach_multiplicities(build_root_system(s.system.family(), s.rank), map));
    s.multiplicities = map;
    const auto r = cross_check(s, 5, 1);
    CAPTURE(r.diagnostic);
    CHECK_FALSE(r.passed);
    CHECK(r.diagnostic.find("multiplicity mismatch") != std::string::npos);
    CHECK((r.diagnostic.find("'e_i'") != std::string::npos || r.diagnostic.find("'e_i+-e_j'") != std::string::npos));
  }

  SUBCASE("a multiplicity change that rescales the roots fails on the Gram check") {
    auto s = cat.lookup("SU(1,2)/S(U(1)xU(2))");
    MultiplicityMap map = s.multiplicities;
    for (auto& [orbit, m] : map) m += 1;
    s.system = killing_normalize(attach_multiplicities(build_root_system(s.system.family(), s.rank), map));
    const auto r = cross_check(s, 5, 1);
    CHECK_FALSE(r.passed);
    CHECK(r.diagnostic.find("coordinate matching failed") != std::string::npos);
  }
}
