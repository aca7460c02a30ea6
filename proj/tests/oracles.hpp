#pragma once

// Test-only oracles, kept independent of the library construction paths they
// check: classical (unmodified) Gram-Schmidt run directly on monomial samples
// with the quadrature inner product, plus small helpers.

#include <random>

#include "opuckit/opuckit.hpp"

namespace oracles {

using namespace opuckit;

/// Classical Gram-Schmidt on {1, t^{-1}, ..., t^{-N}} using only
/// integrate_measure; returns sample functions, normalized so that
/// <e_{-n}, phi_n> > 0.
inline std::vector<GridFunction> brute_force_basis(const CircleMeasure& mu, int N) {
  const GridPtr& grid = mu.grid_ptr();
  std::vector<GridFunction> monos;
  for (int k = 0; k <= N; ++k)
    monos.push_back(sample_on_grid(grid, [k](Complex t) { return std::pow(std::conj(t), k); }));
  std::vector<GridFunction> phi;
  for (int n = 0; n <= N; ++n) {
    std::vector<Complex> v = monos[static_cast<size_t>(n)].values;
    for (int j = 0; j < n; ++j) {
      const Complex c = inner_l2(GridFunction(grid, v), phi[static_cast<size_t>(j)], mu);
      for (size_t s = 0; s < v.size(); ++s) v[s] -= c * phi[static_cast<size_t>(j)].values[s];
    }
    GridFunction g(grid, std::move(v));
    const double nrm = norm_l2(g, mu);
    for (Complex& z : g.values) z /= nrm;
    const Complex sign = inner_l2(monos[static_cast<size_t>(n)], g, mu);
    const Complex c = sign / std::abs(sign);
    for (Complex& z : g.values) z *= c;
    phi.push_back(std::move(g));
  }
  return phi;
}

inline double h2_norm(const Poly& f) {
  double s = 0.0;
  for (const Complex& c : f) s += std::norm(c);
  return std::sqrt(s);
}

inline Poly random_poly(std::mt19937& rng, int deg) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Poly p;
  for (int k = 0; k <= deg; ++k) p.push_back(Complex{u(rng), u(rng)});
  return p;
}

}  // namespace oracles
