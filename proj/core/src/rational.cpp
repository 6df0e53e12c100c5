#include "cvanish/rational.hpp"

#include <stdexcept>
#include <utility>

namespace cvanish {

RationalMatrix invert(RationalMatrix m) {
  const std::size_t n = m.size();
  RationalMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) throw std::domain_error("singular rational matrix");
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);

    const Rational d = m[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] /= d;
      inv[col][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

std::vector<Rational> solve(const RationalMatrix& m, const std::vector<Rational>& b) {
  const RationalMatrix inv = invert(m);
  std::vector<Rational> x(b.size(), Rational(0));
  for (std::size_t i = 0; i < inv.size(); ++i) x[i] = dot(inv[i], b);
  return x;
}

}  // namespace cvanish
