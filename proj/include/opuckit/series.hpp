#pragma once

#include <cmath>
#include <vector>

#include "opuckit/common.hpp"

namespace opuckit {

/// Truncated power series: coefficients in ascending powers of the variable.
using Series = std::vector<Complex>;

inline Series series_resize(Series a, int m) {
  a.resize(static_cast<size_t>(m + 1), Complex{0.0, 0.0});
  return a;
}

inline Series series_add(const Series& a, const Series& b, int m) {
  Series r = series_resize(a, m);
  for (size_t k = 0; k < r.size() && k < b.size(); ++k) r[k] += b[k];
  return r;
}

inline Series series_sub(const Series& a, const Series& b, int m) {
  Series r = series_resize(a, m);
  for (size_t k = 0; k < r.size() && k < b.size(); ++k) r[k] -= b[k];
  return r;
}

inline Series series_mul(const Series& a, const Series& b, int m) {
  Series r(static_cast<size_t>(m + 1), Complex{0.0, 0.0});
  for (size_t i = 0; i < a.size() && i <= static_cast<size_t>(m); ++i) {
    if (a[i] == Complex{0.0, 0.0}) continue;
    for (size_t j = 0; j < b.size() && i + j <= static_cast<size_t>(m); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

/// a/b with b[0] != 0.
inline Series series_div(const Series& a, const Series& b, int m) {
  if (b.empty() || std::abs(b[0]) < 1e-300) raise(errc::degenerate, "series division by zero constant term");
  Series r(static_cast<size_t>(m + 1), Complex{0.0, 0.0});
  for (int k = 0; k <= m; ++k) {
    Complex s = k < static_cast<int>(a.size()) ? a[static_cast<size_t>(k)] : Complex{0.0, 0.0};
    for (int j = 1; j <= k && j < static_cast<int>(b.size()); ++j)
      s -= b[static_cast<size_t>(j)] * r[static_cast<size_t>(k - j)];
    r[static_cast<size_t>(k)] = s / b[0];
  }
  return r;
}

/// exp(a) truncated at order m: d_0 = exp(a_0), d_k = (1/k) sum_{j=1..k} j a_j d_{k-j}.
inline Series series_exp(const Series& a, int m) {
  Series d(static_cast<size_t>(m + 1), Complex{0.0, 0.0});
  d[0] = std::exp(a.empty() ? Complex{0.0, 0.0} : a[0]);
  for (int k = 1; k <= m; ++k) {
    Complex s{0.0, 0.0};
    for (int j = 1; j <= k && j < static_cast<int>(a.size()); ++j)
      s += static_cast<double>(j) * a[static_cast<size_t>(j)] * d[static_cast<size_t>(k - j)];
    d[static_cast<size_t>(k)] = s / static_cast<double>(k);
  }
  return d;
}

inline Complex series_eval(const Series& a, Complex z) {
  Complex s{0.0, 0.0};
  for (size_t k = a.size(); k-- > 0;) s = s * z + a[k];
  return s;
}

/// Multiply by the variable (shift coefficients up one slot).
inline Series series_shift_up(const Series& a, int m) {
  Series r(static_cast<size_t>(m + 1), Complex{0.0, 0.0});
  for (size_t k = 0; k + 1 <= static_cast<size_t>(m) && k < a.size(); ++k) r[k + 1] = a[k];
  return r;
}

/// Divide by the variable; the constant term must vanish within `tol`.
inline Series series_deflate_zero(const Series& a, double tol = 1e-9) {
  if (!a.empty() && std::abs(a[0]) > tol)
    raise(errc::precondition, "series has a non-vanishing constant term; cannot deflate");
  Series r;
  if (a.size() > 1) r.assign(a.begin() + 1, a.end());
  if (r.empty()) r.push_back(Complex{0.0, 0.0});
  return r;
}

}  // namespace opuckit
