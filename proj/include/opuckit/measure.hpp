#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "opuckit/grid.hpp"

namespace opuckit {

struct Atom {
  int index;    // grid node carrying the point mass
  double mass;  // > 0
};

/// Probability measure mu = w m + mu_s on the circle: an absolutely
/// continuous density sampled on a dyadic grid plus finitely many atoms.
/// Atoms must sit exactly on grid nodes so a single set of samples serves
/// both the density quadrature and atom evaluation.
class CircleMeasure {
public:
  CircleMeasure(GridPtr grid, std::vector<double> density, std::vector<Atom> atoms = {},
                double total_tol = 1e-8)
      : grid_(std::move(grid)), density_(std::move(density)), atoms_(std::move(atoms)) {
    if (!grid_) raise(errc::precondition, "measure needs a grid");
    const int n = grid_->size();
    if (static_cast<int>(density_.size()) != n) raise(errc::precondition, "density sample count mismatch");
    for (double& w : density_) {
      if (!std::isfinite(w)) raise(errc::precondition, "density contains non-finite samples");
      if (w < 0.0) {
        if (w < -1e-12) raise(errc::precondition, "density has negative samples beyond tolerance");
        w = 0.0;
      }
    }
    std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) { return a.index < b.index; });
    for (size_t i = 0; i < atoms_.size(); ++i) {
      const Atom& a = atoms_[i];
      if (a.index < 0 || a.index >= n) raise(errc::precondition, "atom index out of range");
      if (!(a.mass > 0.0) || !std::isfinite(a.mass)) raise(errc::precondition, "atom mass must be positive");
      if (i > 0 && atoms_[i - 1].index == a.index) raise(errc::precondition, "duplicate atom location");
    }
    if (std::abs(total_mass() - 1.0) > total_tol)
      raise(errc::precondition, "not a probability measure: total mass deviates from 1");
  }

  static CircleMeasure lebesgue(const GridPtr& grid) {
    return CircleMeasure(grid, std::vector<double>(static_cast<size_t>(grid->size()), 1.0));
  }

  const GridPtr& grid_ptr() const noexcept { return grid_; }
  const UnitGrid& grid() const noexcept { return *grid_; }
  const std::vector<double>& density() const noexcept { return density_; }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }

  double total_mass() const {
    double s = 0.0;
    for (double w : density_) s += w;
    s /= static_cast<double>(density_.size());
    for (const Atom& a : atoms_) s += a.mass;
    return s;
  }

  bool has_atom(int j) const {
    for (const Atom& a : atoms_)
      if (a.index == j) return true;
    return false;
  }

  std::vector<int> atom_indices() const {
    std::vector<int> idx;
    idx.reserve(atoms_.size());
    for (const Atom& a : atoms_) idx.push_back(a.index);
    return idx;
  }

private:
  GridPtr grid_;
  std::vector<double> density_;
  std::vector<Atom> atoms_;
};

/// Quadrature of f against mu: mean(f w) + sum of atom masses times f at the atoms.
inline Complex integrate_measure(const GridFunction& f, const CircleMeasure& mu) {
  if (f.grid->size() != mu.grid().size()) raise(errc::precondition, "grid mismatch between function and measure");
  const int n = f.size();
  Complex s{0.0, 0.0};
  for (int j = 0; j < n; ++j) s += f[j] * mu.density()[static_cast<size_t>(j)];
  s /= static_cast<double>(n);
  for (const Atom& a : mu.atoms()) s += a.mass * f.value_at(a.index);
  return s;
}

/// L^2(mu) inner product <f, g> = integral of f conj(g) d(mu); linear in the
/// first argument.
inline Complex inner_l2(const GridFunction& f, const GridFunction& g, const CircleMeasure& mu) {
  if (f.grid->size() != g.grid->size()) raise(errc::precondition, "grid mismatch");
  const int n = f.size();
  Complex s{0.0, 0.0};
  for (int j = 0; j < n; ++j) s += f[j] * std::conj(g[j]) * mu.density()[static_cast<size_t>(j)];
  s /= static_cast<double>(n);
  for (const Atom& a : mu.atoms()) s += a.mass * f.value_at(a.index) * std::conj(g.value_at(a.index));
  return s;
}

inline double norm_l2(const GridFunction& f, const CircleMeasure& mu) {
  return std::sqrt(std::max(0.0, inner_l2(f, f, mu).real()));
}

/// Moments c_k = integral of t^{-k} d(mu) for k = 0..N (c_{-k} = conj(c_k)).
/// Exact up to rounding as long as N < n/2 and the density is band-limited.
inline std::vector<Complex> raw_moments(const CircleMeasure& mu, int N) {
  const GridPtr& g = mu.grid_ptr();
  std::vector<Complex> wsamples(static_cast<size_t>(g->size()));
  for (int j = 0; j < g->size(); ++j) wsamples[static_cast<size_t>(j)] = Complex{mu.density()[static_cast<size_t>(j)], 0.0};
  const FourierTable tbl = fourier_coeffs(GridFunction(g, std::move(wsamples)), N);
  std::vector<Complex> c(static_cast<size_t>(N + 1));
  for (int k = 0; k <= N; ++k) {
    Complex s = tbl.at(k);
    for (const Atom& a : mu.atoms()) s += a.mass * std::pow(std::conj(g->point(a.index)), k);
    c[static_cast<size_t>(k)] = s;
  }
  return c;
}

}  // namespace opuckit
