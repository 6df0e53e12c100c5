#include "cvanish/matrixlab.hpp"

#include "cvanish/curvature.hpp"
#include "cvanish/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

namespace cvanish {
namespace {

using Mat = Eigen::MatrixXd;

Mat unit_matrix(int n, int i, int j) {
  Mat m = Mat::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

/// [[X, -Y], [Y, X]] for Z = X + iY.
Mat realify(const Mat& re, const Mat& im) {
  const auto n = re.rows();
  Mat m(2 * n, 2 * n);
  m << re, -im, im, re;
  return m;
}

struct Generators {
  int size = 0;
  std::vector<Mat> spanning;
  std::vector<Mat> flat;  // spanning set of a, inside p
  int expected_dim = 0;
};

Generators sl_generators(int n) {
  Generators g;
  g.size = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) g.spanning.push_back(unit_matrix(n, i, j));
  for (int i = 0; i + 1 < n; ++i) {
    Mat d = unit_matrix(n, i, i) - unit_matrix(n, i + 1, i + 1);
    g.spanning.push_back(d);
    g.flat.push_back(d);
  }
  g.expected_dim = n * n - 1;
  return g;
}

Generators so_generators(int p, int q) {
  Generators g;
  const int n = p + q;
  g.size = n;
  auto block = [p](int i) { return i < p ? 0 : 1; };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (block(i) == block(j))
        g.spanning.push_back(unit_matrix(n, i, j) - unit_matrix(n, j, i));
      else
        g.spanning.push_back(unit_matrix(n, i, j) + unit_matrix(n, j, i));
    }
  for (int k = 0; k < std::min(p, q); ++k) g.flat.push_back(unit_matrix(n, k, p + k) + unit_matrix(n, p + k, k));
  g.expected_dim = n * (n - 1) / 2;
  return g;
}

Generators sp_generators(int n) {
  Generators g;
  g.size = 2 * n;
  auto embed = [n](const Mat& a, const Mat& b, const Mat& c) {
    Mat m = Mat::Zero(2 * n, 2 * n);
    m.topLeftCorner(n, n) = a;
    m.topRightCorner(n, n) = b;
    m.bottomLeftCorner(n, n) = c;
    m.bottomRightCorner(n, n) = -a.transpose();
    return m;
  };
  const Mat zero = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.spanning.push_back(embed(unit_matrix(n, i, j), zero, zero));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Mat s = unit_matrix(n, i, j) + unit_matrix(n, j, i);
      if (i == j) s = unit_matrix(n, i, i);
      g.spanning.push_back(embed(zero, s, zero));
      g.spanning.push_back(embed(zero, zero, s));
    }
  for (int i = 0; i < n; ++i) g.flat.push_back(embed(unit_matrix(n, i, i), zero, zero));
  g.expected_dim = n * (2 * n + 1);
  return g;
}

Generators su_generators(int p, int q) {
  Generators g;
  const int n = p + q;
  g.size = 2 * n;
  const Mat zero = Mat::Zero(n, n);
  auto block = [p](int i) { return i < p ? 0 : 1; };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Mat e = unit_matrix(n, i, j), et = unit_matrix(n, j, i);
      if (block(i) == block(j)) {
        g.spanning.push_back(realify(e - et, zero));
        g.spanning.push_back(realify(zero, e + et));
      } else {
        g.spanning.push_back(realify(e + et, zero));
        g.spanning.push_back(realify(zero, e - et));
      }
    }
  for (int i = 0; i + 1 < n; ++i) g.spanning.push_back(realify(zero, unit_matrix(n, i, i) - unit_matrix(n, i + 1, i + 1)));
  for (int k = 0; k < std::min(p, q); ++k)
    g.flat.push_back(realify(unit_matrix(n, k, p + k) + unit_matrix(n, p + k, k), zero));
  g.expected_dim = n * n - 1;
  return g;
}

double frob(const Mat& a, const Mat& b) { return (a.array() * b.array()).sum(); }

void orthonormal_append(std::vector<Mat>& out, std::size_t first, Mat m) {
  for (int pass = 0; pass < 2; ++pass)
    for (std::size_t i = first; i < out.size(); ++i) m -= frob(out[i], m) * out[i];
  const double norm = m.norm();
  if (norm > 1e-9) out.push_back(m / norm);
}

/// Cholesky factor L (lower) with G = L L^T; throws on indefinite input.
Mat cholesky_lower(const Mat& g, const char* what) {
  Eigen::LLT<Mat> llt(g);
  if (llt.info() != Eigen::Success) throw InternalError(std::string(what) + " is not positive definite");
  return llt.matrixL();
}

std::vector<std::vector<int>> group_by_value(const Eigen::VectorXd& values, double tol) {
  std::vector<std::vector<int>> groups;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (!groups.empty() && std::abs(values[groups.back().front()] - values[i]) <= tol)
      groups.back().push_back(static_cast<int>(i));
    else
      groups.push_back({static_cast<int>(i)});
  }
  return groups;
}

}  // namespace

std::string_view matrix_family_name(MatrixFamily family) {
  switch (family) {
    case MatrixFamily::sl_real: return "sl";
    case MatrixFamily::su: return "su";
    case MatrixFamily::so: return "so";
    case MatrixFamily::sp_real: return "sp";
  }
  return "?";
}

Eigen::VectorXd MatrixAlgebra::coordinates(const Eigen::MatrixXd& m) const {
  Eigen::VectorXd c(dim());
  for (int k = 0; k < dim(); ++k) c[k] = frob(basis[k], m);
  return c;
}

Eigen::MatrixXd MatrixAlgebra::element(const Eigen::VectorXd& coords) const {
  Mat m = Mat::Zero(basis.front().rows(), basis.front().cols());
  for (int k = 0; k < dim(); ++k) m += coords[k] * basis[k];
  return m;
}

Eigen::MatrixXd MatrixAlgebra::ad_of(const Eigen::VectorXd& coords) const {
  Mat m = Mat::Zero(dim(), dim());
  for (int k = 0; k < dim(); ++k)
    if (coords[k] != 0.0) m += coords[k] * ad[k];
  return m;
}

MatrixAlgebra build_algebra(MatrixFamily family, const std::vector<int>& params) {
  Generators gens;
  MatrixAlgebra a;
  a.family = family;
  a.params = params;
  auto need = [&](std::size_t count) {
    if (params.size() != count) throw ParameterError("wrong number of parameters for matrix model");
  };
  switch (family) {
    case MatrixFamily::sl_real:
      need(1);
      if (params[0] < 2 || params[0] > 6) throw ParameterError("sl(n,R) model requires 2 <= n <= 6");
      gens = sl_generators(params[0]);
      a.name = "sl(" + std::to_string(params[0]) + ",R)";
      break;
    case MatrixFamily::sp_real:
      need(1);
      if (params[0] < 1 || params[0] > 6) throw ParameterError("sp(n,R) model requires 1 <= n <= 6");
      gens = sp_generators(params[0]);
      a.name = "sp(" + std::to_string(params[0]) + ",R)";
      break;
    case MatrixFamily::so:
    case MatrixFamily::su: {
      need(2);
      const int p = params[0], q = params[1];
      if (p < 1 || q < 1 || p + q > 6) throw ParameterError("matrix model requires p, q >= 1 and p + q <= 6");
      if (family == MatrixFamily::so && p + q < 3) throw ParameterError("so(1,1) is not semisimple");
      gens = family == MatrixFamily::so ? so_generators(p, q) : su_generators(p, q);
      a.name = std::string(matrix_family_name(family)) + "(" + std::to_string(p) + "," + std::to_string(q) + ")";
      break;
    }
  }

  // Split every generator into its theta-eigenparts; the flat goes first in p.
  std::vector<Mat> k_part, p_part;
  for (const auto& f : gens.flat) orthonormal_append(p_part, 0, f);
  a.rank = static_cast<int>(p_part.size());
  for (const auto& g : gens.spanning) {
    orthonormal_append(k_part, 0, 0.5 * (g - g.transpose()));
    orthonormal_append(p_part, 0, 0.5 * (g + g.transpose()));
  }
  a.k_dim = static_cast<int>(k_part.size());
  a.p_dim = static_cast<int>(p_part.size());
  a.basis = k_part;
  a.basis.insert(a.basis.end(), p_part.begin(), p_part.end());
  if (a.dim() != gens.expected_dim)
    throw InternalError(a.name + ": basis has dimension " + std::to_string(a.dim()) + ", expected " +
                        std::to_string(gens.expected_dim));
  a.theta = Eigen::VectorXd::Ones(a.dim());
  for (int i = a.k_dim; i < a.dim(); ++i) {
    a.theta[i] = -1.0;
    a.p_basis.push_back(i);
  }
  a.a_basis.assign(a.p_basis.begin(), a.p_basis.begin() + a.rank);

  const int d = a.dim();
  a.ad.assign(d, Mat::Zero(d, d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Mat bracket = a.basis[i] * a.basis[j] - a.basis[j] * a.basis[i];
      Mat rest = bracket;
      for (int k = 0; k < d; ++k) {
        const double c = frob(a.basis[k], bracket);
        a.ad[i](k, j) = c;
        if (c != 0.0) rest -= c * a.basis[k];
      }
      a.closure_residual = std::max(a.closure_residual, rest.norm());
    }
  return a;
}

bool has_matrix_model(const SpaceDescriptor& space) {
  const auto& f = space.family;
  const auto& pr = space.params;
  if ((f == "AI" || f == "CI") && pr.size() == 1) return pr[0] <= 6;
  if ((f == "AIII" || f == "BDI") && pr.size() == 2) return pr[0] + pr[1] <= 6;
  return false;
}

MatrixAlgebra build_algebra_for(const SpaceDescriptor& space) {
  if (!has_matrix_model(space))
    throw ParameterError("no matrix model for " + space.label +
                         " (supported: AI(n) n<=6, CI(n) n<=6, AIII(p,q) and BDI(p,q) with p+q<=6)");
  if (space.family == "AI") return build_algebra(MatrixFamily::sl_real, space.params);
  if (space.family == "CI") return build_algebra(MatrixFamily::sp_real, space.params);
  if (space.family == "AIII") return build_algebra(MatrixFamily::su, space.params);
  return build_algebra(MatrixFamily::so, space.params);
}

Eigen::MatrixXd killing_form(const MatrixAlgebra& algebra) {
  const int d = algebra.dim();
  Mat k(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      k(i, j) = (algebra.ad[i].array() * algebra.ad[j].transpose().array()).sum();
      k(j, i) = k(i, j);
    }
  Eigen::FullPivLU<Mat> lu(k);
  lu.setThreshold(1e-10);
  if (lu.rank() < d) throw InternalError(algebra.name + ": Killing form is singular (algebra not semisimple)");
  return k;
}

Eigen::MatrixXd killing_orthonormal_flat(const MatrixAlgebra& algebra, const Eigen::MatrixXd& killing) {
  const int r = algebra.rank;
  Mat g(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) g(i, j) = killing(algebra.a_basis[i], algebra.a_basis[j]);
  const Mat l = cholesky_lower(g, "Killing form on a");
  const Mat v = l.transpose().triangularView<Eigen::Upper>().solve(Mat::Identity(r, r));  // L^{-T}
  Mat out = Mat::Zero(algebra.dim(), r);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < r; ++i) out(algebra.a_basis[i], j) = v(i, j);
  return out;
}

Eigen::MatrixXd curvature_operator_matrix(const MatrixAlgebra& algebra, const Eigen::MatrixXd& killing,
                                          const Eigen::VectorXd& h_flat) {
  if (h_flat.size() != algebra.rank) throw ParameterError("h must have one coordinate per flat dimension");
  const double norm = h_flat.norm();
  if (!(norm > 0.0)) throw ParameterError("h must be nonzero");
  const Mat flat = killing_orthonormal_flat(algebra, killing);
  const Eigen::VectorXd h = flat * (h_flat / norm);
  const Mat ad_h = algebra.ad_of(h);
  const Mat square = ad_h * ad_h;

  const int np = algebra.p_dim;
  Mat m(np, np), g(np, np);
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j) {
      m(i, j) = -square(algebra.p_basis[i], algebra.p_basis[j]);
      g(i, j) = killing(algebra.p_basis[i], algebra.p_basis[j]);
    }
  const Mat l = cholesky_lower(g, "Killing form on p");
  // z = L^T x:  M' = L^T M L^{-T}
  const Mat lt = l.transpose();
  const Mat right = lt.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(m);  // M L^{-T}
  return lt * right;
}

SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() != matrix.cols()) throw ParameterError("matrix must be square");
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  if ((matrix - matrix.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw ParameterError("non-symmetric input to symmetric eigensolver");
  const Eigen::Index n = matrix.rows();
  Mat a = 0.5 * (matrix + matrix.transpose());
  Mat v = Mat::Identity(n, n);
  const double target = 1e-12 * std::max(1.0, a.norm());

  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  SymmetricEigen result;
  for (int sweep = 0; sweep < 100 && off_norm() > target; ++sweep) {
    result.sweeps = sweep + 1;
    for (Eigen::Index p = 0; p < n - 1; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return a(x, x) > a(y, y); });
  result.values.resize(n);
  result.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    result.values[i] = a(order[i], order[i]);
    result.vectors.col(i) = v.col(order[i]);
  }
  return result;
}

std::vector<double> sym_eigenvalues(const Eigen::MatrixXd& matrix) {
  const auto e = jacobi_eigen(matrix);
  return {e.values.data(), e.values.data() + e.values.size()};
}

std::vector<OracleRoot> oracle_positive_roots(const MatrixAlgebra& algebra, const Eigen::MatrixXd& killing,
                                              std::uint64_t seed) {
  const int d = algebra.dim();
  // <X,Y> = -B(X, theta Y) is positive definite; ad(h) is symmetric for it when h is in p.
  Mat inner(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) inner(i, j) = -killing(i, j) * algebra.theta[j];
  const Mat l = cholesky_lower(inner, "theta-twisted Killing form");
  const Mat lt = l.transpose();
  auto to_orthonormal = [&](const Mat& m) {
    return Mat(lt * lt.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(m));
  };

  const Mat flat = killing_orthonormal_flat(algebra, killing);
  std::vector<Mat> ad_flat;
  for (int j = 0; j < algebra.rank; ++j) ad_flat.push_back(to_orthonormal(algebra.ad_of(flat.col(j))));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd h0(algebra.rank);
  for (int j = 0; j < algebra.rank; ++j) h0[j] = gauss(rng);
  h0.normalize();
  Mat generic = Mat::Zero(d, d);
  for (int j = 0; j < algebra.rank; ++j) generic += h0[j] * ad_flat[j];
  generic = 0.5 * (generic + generic.transpose());

  const SymmetricEigen eig = jacobi_eigen(generic);
  std::vector<OracleRoot> roots;
  for (const auto& group : group_by_value(eig.values, 1e-7)) {
    const double value = eig.values[group.front()];
    if (value <= 1e-7) continue;
    Mat v(d, static_cast<Eigen::Index>(group.size()));
    for (std::size_t c = 0; c < group.size(); ++c) v.col(static_cast<Eigen::Index>(c)) = eig.vectors.col(group[c]);
    OracleRoot root;
    root.multiplicity = static_cast<int>(group.size());
    root.vector.resize(algebra.rank);
    for (int j = 0; j < algebra.rank; ++j) root.vector[j] = (v.transpose() * ad_flat[j] * v).trace() / root.multiplicity;
    roots.push_back(std::move(root));
  }
  return roots;
}

CrossCheckReport cross_check(const SpaceDescriptor& space, int trials, std::uint64_t seed) {
  CrossCheckReport report;
  report.space_label = space.label;
  report.trials = trials;
  const MatrixAlgebra algebra = build_algebra_for(space);
  report.algebra_name = algebra.name;
  const Mat killing = killing_form(algebra);
  const auto oracle = oracle_positive_roots(algebra, killing);
  const int r = space.rank;
  if (algebra.rank != r) {
    report.diagnostic = "rank mismatch: catalog " + std::to_string(r) + ", matrix model " + std::to_string(algebra.rank);
    return report;
  }

  // Simple roots of the oracle: positive roots that are not a sum of two positive roots.
  std::vector<int> simple;
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    bool decomposable = false;
    for (std::size_t a = 0; a < oracle.size() && !decomposable; ++a)
      for (std::size_t b = a; b < oracle.size() && !decomposable; ++b)
        decomposable = (oracle[a].vector + oracle[b].vector - oracle[i].vector).norm() < 1e-7;
    if (!decomposable) simple.push_back(static_cast<int>(i));
  }
  if (static_cast<int>(simple.size()) != r) {
    report.diagnostic = "matrix model has " + std::to_string(simple.size()) + " simple restricted roots, catalog rank is " +
                        std::to_string(r);
    return report;
  }

  const auto& system = space.system;
  const Mat catalog_simple = system.chamber().walls;
  const Mat& catalog_roots = system.flat_roots();
  std::vector<int> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  std::string first_failure;
  bool matched = false;
  do {
    bool gram_ok = true;
    for (int i = 0; i < r && gram_ok; ++i)
      for (int j = 0; j < r && gram_ok; ++j)
        gram_ok = std::abs(catalog_simple.col(i).dot(catalog_simple.col(j)) -
                           oracle[simple[perm[i]]].vector.dot(oracle[simple[perm[j]]].vector)) <= 1e-8;
    if (!gram_ok) continue;
    Mat target(r, r);
    for (int i = 0; i < r; ++i) target.col(i) = oracle[simple[perm[i]]].vector;
    const Mat q = target * catalog_simple.inverse();
    if ((q.transpose() * q - Mat::Identity(r, r)).cwiseAbs().maxCoeff() > 1e-8) continue;

    std::string failure;
    std::vector<bool> used(oracle.size(), false);
    for (Eigen::Index i = 0; i < catalog_roots.cols() && failure.empty(); ++i) {
      const Eigen::VectorXd image = q * catalog_roots.col(i);
      int found = -1;
      for (std::size_t k = 0; k < oracle.size(); ++k)
        if ((oracle[k].vector - image).norm() < 1e-7) found = static_cast<int>(k);
      const std::string& orbit = system.orbit_classes()[i];
      if (found < 0) {
        failure = "orbit '" + orbit + "' has no counterpart among the matrix model's restricted roots";
      } else if (oracle[found].multiplicity != system.multiplicities()[i]) {
        failure = "multiplicity mismatch on orbit '" + orbit + "': catalog " +
                  std::to_string(system.multiplicities()[i]) + ", matrix model " +
                  std::to_string(oracle[found].multiplicity);
      } else {
        used[found] = true;
      }
    }
    if (failure.empty() && std::count(used.begin(), used.end(), false) > 0)
      failure = "matrix model has restricted roots missing from the catalog system";
    if (failure.empty()) {
      report.isometry = q;
      matched = true;
      break;
    }
    if (first_failure.empty()) first_failure = failure;
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (!matched) {
    report.diagnostic = first_failure.empty() ? "coordinate matching failed: no simple-root correspondence with equal Gram matrix"
                                              : "coordinate matching failed: " + first_failure;
    return report;
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd h(r);
    for (int i = 0; i < r; ++i) h[i] = gauss(rng);
    h.normalize();
    const Mat op = curvature_operator_matrix(algebra, killing, report.isometry * h);
    std::vector<double> observed = sym_eigenvalues(op);
    std::vector<double> predicted = curvature_spectrum(space, h).expanded();
    predicted.push_back(0.0);  // h itself
    std::sort(predicted.begin(), predicted.end(), std::greater<>());
    if (observed.size() != predicted.size()) {
      report.diagnostic = "spectrum size mismatch: matrix model " + std::to_string(observed.size()) + ", catalog " +
                          std::to_string(predicted.size());
      return report;
    }
    for (std::size_t i = 0; i < observed.size(); ++i)
      report.max_discrepancy = std::max(report.max_discrepancy, std::abs(observed[i] - predicted[i]));
    report.max_trace_error = std::max(report.max_trace_error, std::abs(op.trace() + 0.5));
  }
  report.passed = report.max_discrepancy <= 1e-8;
  return report;
}

}  // namespace cvanish
