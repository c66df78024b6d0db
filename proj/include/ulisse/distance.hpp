/*
 * Copyright 2026 The ULISSE Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ULISSE_DISTANCE_HPP
#define ULISSE_DISTANCE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "ulisse/errors.hpp"
#include "ulisse/series.hpp"

namespace ulisse
{
/// Sakoe-Chiba band half-width in points.
struct WarpingWindow {
  std::size_t r{0};

  /// r = ceil(fraction * query_len), clamped below the query length.
  static WarpingWindow
  from_fraction(double fraction, std::size_t query_len)
  {
    if (!(fraction >= 0.0)) throw ArgumentError("warping fraction must be >= 0");
    if (query_len < 1) throw ArgumentError("query length must be >= 1");
    // tolerate representation error, e.g. 0.1 * 160 landing just above 16
    const double raw = fraction * static_cast<double>(query_len);
    auto r = static_cast<std::size_t>(std::ceil(raw - 1e-9 * std::max(1.0, raw)));
    return WarpingWindow{std::min(r, query_len - 1)};
  }

  void
  validate(std::size_t len) const
  {
    if (r >= len) throw ArgumentError("warping window must be smaller than the series length");
  }

  friend bool operator==(const WarpingWindow &, const WarpingWindow &) = default;
};

struct DtwEnvelope {
  DataSeries lower{};
  DataSeries upper{};
  WarpingWindow window{};

  [[nodiscard]] std::size_t
  size() const noexcept
  {
    return lower.size();
  }
};

/// Work counters for early-abandoned computations.
struct DistanceTally {
  std::size_t points_total{0};    ///< candidate points a full computation would visit
  std::size_t points_skipped{0};  ///< points never visited because of abandoning
  std::size_t abandons{0};

  DistanceTally &
  operator+=(const DistanceTally &o) noexcept
  {
    points_total += o.points_total;
    points_skipped += o.points_skipped;
    abandons += o.abandons;
    return *this;
  }
};

struct Identity {
  constexpr double
  operator()(double x) const noexcept
  {
    return x;
  }
};

namespace detail
{
inline void
check_same_length(std::size_t a, std::size_t b)
{
  if (a != b) throw ArgumentError("length mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  if (a == 0) throw ArgumentError("empty series");
}

inline double
abandon_square(std::optional<double> abandon_at)
{
  return abandon_at ? (*abandon_at) * (*abandon_at) : std::numeric_limits<double>::infinity();
}
}  // namespace detail

/**
 * @brief Squared ED between q and map(c), abandoned once the partial sum exceeds limit_sq.
 *
 * `map` transforms candidate points on the fly (e.g. Z-normalization).
 */
template <class Map = Identity>
std::optional<double>
squared_euclidean(std::span<const double> q, std::span<const double> c, double limit_sq, Map map = {},
                  DistanceTally *tally = nullptr)
{
  detail::check_same_length(q.size(), c.size());
  double sum = 0.0;
  const std::size_t n = q.size();
  if (tally != nullptr) tally->points_total += n;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = q[i] - map(c[i]);
    sum += d * d;
    if (sum > limit_sq) {
      if (tally != nullptr) {
        tally->points_skipped += n - i - 1;
        ++tally->abandons;
      }
      return std::nullopt;
    }
  }
  return sum;
}

inline std::optional<double>
euclidean(std::span<const double> a, std::span<const double> b, std::optional<double> abandon_at = {})
{
  const auto sq = squared_euclidean(a, b, detail::abandon_square(abandon_at));
  if (!sq) return std::nullopt;
  return std::sqrt(*sq);
}

inline std::optional<double>
euclidean(const DataSeries &a, const DataSeries &b, std::optional<double> abandon_at = {})
{
  return euclidean(a.view(), b.view(), abandon_at);
}

/**
 * @brief Squared banded DTW cost, two rolling rows of width 2r+1.
 *
 * Row i holds cells j in [i-r, i+r]; the computation is abandoned when a whole
 * row exceeds limit_sq, since every path crosses every row.
 */
template <class Map = Identity>
std::optional<double>
squared_dtw(std::span<const double> a, std::span<const double> b, WarpingWindow window, double limit_sq,
            Map map = {}, DistanceTally *tally = nullptr)
{
  detail::check_same_length(a.size(), b.size());
  window.validate(a.size());
  constexpr double kInfCost = std::numeric_limits<double>::infinity();
  const auto n = static_cast<std::ptrdiff_t>(a.size());
  const auto r = static_cast<std::ptrdiff_t>(window.r);
  const std::size_t width = 2 * window.r + 1;
  std::vector<double> prev(width, kInfCost);
  std::vector<double> curr(width, kInfCost);
  if (tally != nullptr) tally->points_total += a.size();

  for (std::ptrdiff_t i = 0; i < n; ++i) {
    std::fill(curr.begin(), curr.end(), kInfCost);
    double row_min = kInfCost;
    const std::ptrdiff_t j_lo = std::max<std::ptrdiff_t>(0, i - r);
    const std::ptrdiff_t j_hi = std::min<std::ptrdiff_t>(n - 1, i + r);
    for (std::ptrdiff_t j = j_lo; j <= j_hi; ++j) {
      const auto k = static_cast<std::size_t>(j - i + r);
      const double d = a[static_cast<std::size_t>(i)] - map(b[static_cast<std::size_t>(j)]);
      const double cost = d * d;
      double best;
      if (i == 0 && j == 0) {
        best = 0.0;
      } else {
        best = prev[k];                               // (i-1, j-1)
        if (k + 1 < width) best = std::min(best, prev[k + 1]);  // (i-1, j)
        if (k > 0) best = std::min(best, curr[k - 1]);          // (i, j-1)
      }
      curr[k] = cost + best;
      row_min = std::min(row_min, curr[k]);
    }
    if (row_min > limit_sq) {
      if (tally != nullptr) {
        tally->points_skipped += static_cast<std::size_t>(n - i - 1);
        ++tally->abandons;
      }
      return std::nullopt;
    }
    std::swap(prev, curr);
  }
  const double total = prev[static_cast<std::size_t>(r)];
  if (total > limit_sq) {
    if (tally != nullptr) ++tally->abandons;
    return std::nullopt;
  }
  return total;
}

inline std::optional<double>
dtw(std::span<const double> a, std::span<const double> b, WarpingWindow window,
    std::optional<double> abandon_at = {})
{
  const auto sq = squared_dtw(a, b, window, detail::abandon_square(abandon_at));
  if (!sq) return std::nullopt;
  return std::sqrt(*sq);
}

inline std::optional<double>
dtw(const DataSeries &a, const DataSeries &b, WarpingWindow window, std::optional<double> abandon_at = {})
{
  return dtw(a.view(), b.view(), window, abandon_at);
}

/// Running min/max of q over [i-r, i+r], clipped at both ends.
inline DtwEnvelope
build_dtw_envelope(std::span<const double> q, WarpingWindow window)
{
  if (q.empty()) throw ArgumentError("cannot build a DTW envelope of an empty series");
  const std::size_t n = q.size();
  DtwEnvelope env;
  env.window = window;
  env.lower.values.resize(n);
  env.upper.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= window.r ? i - window.r : 0;
    const std::size_t hi = std::min(n - 1, i + window.r);
    const auto [mn, mx] = std::minmax_element(q.begin() + static_cast<std::ptrdiff_t>(lo),
                                              q.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
    env.lower.values[i] = *mn;
    env.upper.values[i] = *mx;
  }
  return env;
}

inline DtwEnvelope
build_dtw_envelope(const DataSeries &q, WarpingWindow window)
{
  auto env = build_dtw_envelope(q.view(), window);
  env.lower.id = env.upper.id = q.id;
  return env;
}

/// Squared LB_Keogh of map(c) against a query DTW envelope.
template <class Map = Identity>
std::optional<double>
squared_lb_keogh(const DtwEnvelope &env, std::span<const double> c, double limit_sq, Map map = {},
                 DistanceTally *tally = nullptr)
{
  detail::check_same_length(env.size(), c.size());
  double sum = 0.0;
  const auto &lo = env.lower.values;
  const auto &hi = env.upper.values;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double x = map(c[i]);
    double d = 0.0;
    if (x > hi[i]) {
      d = x - hi[i];
    } else if (x < lo[i]) {
      d = x - lo[i];
    }
    sum += d * d;
    if (sum > limit_sq) {
      if (tally != nullptr) ++tally->abandons;
      return std::nullopt;
    }
  }
  return sum;
}

inline std::optional<double>
lb_keogh(const DtwEnvelope &env, std::span<const double> c, std::optional<double> abandon_at = {})
{
  const auto sq = squared_lb_keogh(env, c, detail::abandon_square(abandon_at));
  if (!sq) return std::nullopt;
  return std::sqrt(*sq);
}

inline std::optional<double>
lb_keogh(const DtwEnvelope &env, const DataSeries &c, std::optional<double> abandon_at = {})
{
  return lb_keogh(env, c.view(), abandon_at);
}

}  // namespace ulisse

#endif  // ULISSE_DISTANCE_HPP
