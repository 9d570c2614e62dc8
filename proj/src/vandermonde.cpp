// Bjorck-Pereyra solvers for Vandermonde systems in the monomial basis.
// Both run in O(n^2) and keep accuracy where dense LU on the (badly
// conditioned) monomial matrix would not.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "slenderquad/errors.hpp"
#include "slenderquad/quadcore.hpp"

namespace slenderquad {

namespace {

void check_nodes(std::span<const double> nodes, std::size_t rhs_size) {
  if (nodes.size() != rhs_size)
    throw std::invalid_argument("Vandermonde solve: node and right-hand side lengths differ");
  if (nodes.empty() || nodes.size() > static_cast<std::size_t>(kMaxRuleOrder))
    throw std::invalid_argument("Vandermonde solve: size must be in [1, 64]");
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (nodes[i] == nodes[j]) throw SingularSystemError("Vandermonde solve: duplicate nodes");
}

}  // namespace

std::vector<double> solve_vandermonde_transpose(std::span<const double> x, std::span<const double> rhs) {
  check_nodes(x, rhs.size());
  const int n = static_cast<int>(x.size()) - 1;
  std::vector<double> b(rhs.begin(), rhs.end());
  for (int k = 0; k < n; ++k)
    for (int i = n; i >= k + 1; --i) b[i] -= x[k] * b[i - 1];
  for (int k = n - 1; k >= 0; --k) {
    for (int i = k + 1; i <= n; ++i) b[i] /= x[i] - x[i - k - 1];
    for (int i = k; i <= n - 1; ++i) b[i] -= b[i + 1];
  }
  return b;
}

std::vector<double> solve_vandermonde(std::span<const double> x, std::span<const double> rhs) {
  check_nodes(x, rhs.size());
  const int n = static_cast<int>(x.size()) - 1;
  std::vector<double> c(rhs.begin(), rhs.end());
  // Newton divided differences, then expansion to monomials.
  for (int k = 0; k < n; ++k)
    for (int i = n; i >= k + 1; --i) c[i] = (c[i] - c[i - 1]) / (x[i] - x[i - k - 1]);
  for (int k = n - 1; k >= 0; --k)
    for (int i = k; i <= n - 1; ++i) c[i] -= c[i + 1] * x[k];
  return c;
}

}  // namespace slenderquad
