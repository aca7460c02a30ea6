#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>
#include <vector>

#include "opuckit/common.hpp"

namespace opuckit {

/// Dyadic sampling of the unit circle: t_j = exp(2*pi*i*j/n), j = 0..n-1.
/// n must be a power of two and at least 8 so a radix-2 transform always applies.
class UnitGrid {
public:
  explicit UnitGrid(int n) : n_(n) {
    if (n < 8 || !is_pow2(n)) raise(errc::precondition, "grid size must be a power of two >= 8");
    points_.resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) points_[static_cast<size_t>(j)] = std::polar(1.0, 2.0 * pi * j / n);
  }

  static std::shared_ptr<const UnitGrid> make(int n) { return std::make_shared<const UnitGrid>(n); }

  int size() const noexcept { return n_; }
  const Complex& point(int j) const { return points_[static_cast<size_t>(j)]; }
  const std::vector<Complex>& points() const noexcept { return points_; }

  /// Nearest grid index for a unit-modulus point. Rejects points whose
  /// chordal distance to the nearest node exceeds `tol`; atoms are required
  /// to sit exactly on grid nodes.
  int snap_index(Complex t, double tol = 1e-12) const {
    double theta = std::arg(t);
    if (theta < 0) theta += 2.0 * pi;
    int j = static_cast<int>(std::lround(theta * n_ / (2.0 * pi))) % n_;
    if (std::abs(t / std::abs(t) - points_[static_cast<size_t>(j)]) > tol)
      raise(errc::precondition, "point does not sit on a grid node");
    return j;
  }

private:
  int n_;
  std::vector<Complex> points_;
};

using GridPtr = std::shared_ptr<const UnitGrid>;

/// Complex samples over a UnitGrid. Values must be finite.
///
/// `point_overrides` carries values that differ from the a.e. samples at
/// individual nodes; quadrature against the absolutely continuous part always
/// uses `values`, while point masses evaluate through `value_at`.  This keeps
/// the Riemann sums exact for functions that are redefined on a null set
/// (the completion functions vanish on the atom set but keep their a.e.
/// boundary values next to it).
struct GridFunction {
  GridPtr grid;
  std::vector<Complex> values;
  std::vector<std::pair<int, Complex>> point_overrides;

  GridFunction(GridPtr g, std::vector<Complex> v, std::vector<std::pair<int, Complex>> overrides = {})
      : grid(std::move(g)), values(std::move(v)), point_overrides(std::move(overrides)) {
    if (!grid) raise(errc::precondition, "grid function needs a grid");
    if (static_cast<int>(values.size()) != grid->size())
      raise(errc::precondition, "sample count does not match grid size");
    for (const Complex& z : values)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        raise(errc::precondition, "grid function contains non-finite samples");
    for (const auto& [idx, z] : point_overrides) {
      if (idx < 0 || idx >= grid->size()) raise(errc::precondition, "override index out of range");
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        raise(errc::precondition, "override value not finite");
    }
  }

  int size() const noexcept { return grid->size(); }
  Complex operator[](int j) const { return values[static_cast<size_t>(j)]; }

  /// Value used when a point mass sits at node j.
  Complex value_at(int j) const {
    for (const auto& [idx, z] : point_overrides)
      if (idx == j) return z;
    return values[static_cast<size_t>(j)];
  }
};

template <typename F>
GridFunction sample_on_grid(const GridPtr& grid, F&& f) {
  std::vector<Complex> v(static_cast<size_t>(grid->size()));
  for (int j = 0; j < grid->size(); ++j) v[static_cast<size_t>(j)] = f(grid->point(j));
  return GridFunction(grid, std::move(v));
}

/// Uniform average of the samples, i.e. the quadrature of f against the
/// normalized Lebesgue measure m on the circle.
inline Complex mean(const GridFunction& f) {
  Complex s{0.0, 0.0};
  for (const Complex& z : f.values) s += z;
  return s / static_cast<double>(f.size());
}

/// In-place radix-2 FFT.  forward: a_m <- sum_j a_j exp(-2*pi*i*j*m/n).
inline void fft_radix2(std::vector<Complex>& a, bool inverse = false) {
  const size_t n = a.size();
  if (!is_pow2(static_cast<int>(n))) raise(errc::precondition, "fft length must be a power of two");
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    for (size_t i = 0; i < n; i += len) {
      for (size_t j = 0; j < len / 2; ++j) {
        const Complex w = std::polar(1.0, ang * static_cast<double>(j));
        Complex u = a[i + j];
        Complex v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }
  if (inverse)
    for (Complex& x : a) x /= static_cast<double>(n);
}

/// Table of coefficients c_k ~ integral of t^{-k} f(t) m(dt) for |k| <= kmax.
class FourierTable {
public:
  FourierTable(int kmax, std::vector<Complex> coeffs) : kmax_(kmax), c_(std::move(coeffs)) {
    if (static_cast<int>(c_.size()) != 2 * kmax_ + 1) raise(errc::internal, "fourier table size mismatch");
  }
  int kmax() const noexcept { return kmax_; }
  Complex at(int k) const {
    if (std::abs(k) > kmax_) raise(errc::precondition, "fourier coefficient index out of range");
    return c_[static_cast<size_t>(k + kmax_)];
  }

private:
  int kmax_;
  std::vector<Complex> c_;  // index k + kmax
};

/// Discrete Fourier analysis of a grid function.  Exact (up to rounding) for
/// trigonometric polynomials of degree < n/2; kmax >= n/2 would alias and is
/// rejected.
inline FourierTable fourier_coeffs(const GridFunction& f, int kmax) {
  const int n = f.size();
  if (kmax < 0) raise(errc::precondition, "kmax must be nonnegative");
  if (kmax >= n / 2) raise(errc::precondition, "kmax too large for grid: aliasing");
  std::vector<Complex> a = f.values;
  fft_radix2(a, false);
  std::vector<Complex> c(static_cast<size_t>(2 * kmax + 1));
  for (int k = -kmax; k <= kmax; ++k) {
    int m = ((k % n) + n) % n;
    c[static_cast<size_t>(k + kmax)] = a[static_cast<size_t>(m)] / static_cast<double>(n);
  }
  return FourierTable(kmax, std::move(c));
}

/// Inverse of fourier_coeffs on band-limited data.  With the analysis
/// convention c_k = integral of t^{-k} f, synthesis is f(t) = sum_k c_k t^k.
inline GridFunction synthesize(const FourierTable& table, const GridPtr& grid) {
  std::vector<Complex> v(static_cast<size_t>(grid->size()), Complex{0.0, 0.0});
  for (int j = 0; j < grid->size(); ++j) {
    const Complex t = grid->point(j);
    const Complex u = std::conj(t);  // t^{-1}
    Complex tp{1.0, 0.0};
    Complex tm{1.0, 0.0};
    Complex s = table.at(0);
    for (int k = 1; k <= table.kmax(); ++k) {
      tp *= t;
      tm *= u;
      s += table.at(k) * tp + table.at(-k) * tm;
    }
    v[static_cast<size_t>(j)] = s;
  }
  return GridFunction(grid, std::move(v));
}

}  // namespace opuckit
