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

#ifndef ULISSE_SCORER_HPP
#define ULISSE_SCORER_HPP

#include <optional>
#include <span>
#include <vector>

#include "ulisse/distance.hpp"
#include "ulisse/series.hpp"

namespace ulisse
{
enum class Measure { kEuclidean, kDtw };

struct ScoreTally {
  DistanceTally distance{};
  std::size_t true_dist_computed{0};
  std::size_t lbkeogh_computed{0};
  std::size_t lbkeogh_pruned{0};
};

/**
 * @brief True distance between a prepared query and subsequences of raw series.
 *
 * Both the index and the sequential-scan oracle score through this type, so a
 * subsequence gets the same bits from either. Normalized mode Z-normalizes the
 * query once and every candidate on the fly from O(1) window moments.
 * Not thread-safe (DTW candidates are materialized into a scratch buffer).
 */
class SubsequenceScorer
{
 public:
  SubsequenceScorer(std::span<const double> query, Measure measure, WarpingWindow window, bool normalized)
      : measure_{measure}, window_{window}, normalized_{normalized}
  {
    if (query.empty()) throw ArgumentError("empty query");
    if (normalized_) {
      query_ = znormalize(DataSeries{0, {query.begin(), query.end()}}).series.values;
    } else {
      query_.assign(query.begin(), query.end());
    }
    if (measure_ == Measure::kDtw) {
      window_.validate(query_.size());
      envelope_ = build_dtw_envelope(query_, window_);
      scratch_.resize(query_.size());
    }
  }

  /// The query as compared (Z-normalized in normalized mode).
  [[nodiscard]] const std::vector<double> &
  query() const noexcept
  {
    return query_;
  }

  [[nodiscard]] std::size_t
  length() const noexcept
  {
    return query_.size();
  }

  [[nodiscard]] Measure
  measure() const noexcept
  {
    return measure_;
  }

  [[nodiscard]] WarpingWindow
  window() const noexcept
  {
    return window_;
  }

  [[nodiscard]] const DtwEnvelope &
  dtw_envelope() const noexcept
  {
    return envelope_;
  }

  /**
   * @brief Squared distance to the subsequence at 0-based `start`, or nullopt
   * once it provably exceeds limit_sq. With `lb_keogh_first`, DTW candidates
   * are screened by LB_Keogh before the dynamic program.
   */
  std::optional<double>
  score(std::span<const double> series, const WindowStats &stats, std::size_t start, double limit_sq,
        bool lb_keogh_first, ScoreTally &tally)
  {
    const auto cand = series.subspan(start, query_.size());
    if (measure_ == Measure::kEuclidean) {
      ++tally.true_dist_computed;
      if (!normalized_) return squared_euclidean(query_, cand, limit_sq, Identity{}, &tally.distance);
      const auto m = stats.moments(start, query_.size());
      return squared_euclidean(query_, cand, limit_sq, [m](double x) { return m.normalize(x); },
                               &tally.distance);
    }

    std::span<const double> view = cand;
    if (normalized_) {
      const auto m = stats.moments(start, query_.size());
      for (std::size_t i = 0; i < cand.size(); ++i) scratch_[i] = m.normalize(cand[i]);
      view = scratch_;
    }
    if (lb_keogh_first) {
      ++tally.lbkeogh_computed;
      if (!squared_lb_keogh(envelope_, view, limit_sq)) {
        ++tally.lbkeogh_pruned;
        return std::nullopt;
      }
    }
    ++tally.true_dist_computed;
    return squared_dtw(query_, view, window_, limit_sq, Identity{}, &tally.distance);
  }

 private:
  Measure measure_;
  WarpingWindow window_;
  bool normalized_;
  std::vector<double> query_{};
  DtwEnvelope envelope_{};
  std::vector<double> scratch_{};
};

}  // namespace ulisse

#endif  // ULISSE_SCORER_HPP
