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

#ifndef ULISSE_ORACLE_HPP
#define ULISSE_ORACLE_HPP

#include <algorithm>
#include <vector>

#include "ulisse/query.hpp"
#include "ulisse/scorer.hpp"
#include "ulisse/series.hpp"
#include "ulisse/summarization.hpp"

namespace ulisse
{
/// Sequential-scan switches. Neither changes the answer, only the work done.
struct ScanOptions {
  bool early_abandon{true};
  bool lb_keogh{true};  ///< DTW only
};

struct ScanStats {
  std::size_t candidates{0};
  ScoreTally tally{};
};

namespace detail
{
inline void
check_scan(const SeriesCollection &c, const QuerySpec &spec, std::optional<LengthRange> range)
{
  spec.validate();
  if (range && !range->contains(spec.q.size())) {
    throw QueryLengthError("query length " + std::to_string(spec.q.size()) + " outside [" +
                           std::to_string(range->l_min) + ", " + std::to_string(range->l_max) + "]");
  }
  if (c.empty()) throw ArgumentError("empty collection");
}

/// Calls visit(series id, 0-based start, squared distance) for every surviving candidate.
template <class Visit, class Limit>
void
scan(const SeriesCollection &c, const QuerySpec &spec, const ScanOptions &opt, Limit &&limit_sq, Visit &&visit,
     ScanStats *stats)
{
  SubsequenceScorer scorer{spec.q.view(), spec.measure,
                           spec.measure == Measure::kDtw ? spec.window() : WarpingWindow{}, spec.normalized};
  const std::size_t len = scorer.length();
  const bool keogh = opt.lb_keogh && spec.measure == Measure::kDtw;
  ScanStats local;
  for (const auto &d : c.series) {
    if (d.size() < len) continue;
    const WindowStats ws{d.view()};
    for (std::size_t start = 0; start + len <= d.size(); ++start) {
      ++local.candidates;
      const double lim = opt.early_abandon ? limit_sq() : kInf;
      const auto sq = scorer.score(d.view(), ws, start, lim, keogh && opt.early_abandon, local.tally);
      if (sq) visit(d.id, start, *sq);
    }
  }
  if (stats != nullptr) *stats = local;
}
}  // namespace detail

/**
 * @brief Exact k-NN by enumerating every subsequence of length |q|.
 *
 * `range` optionally enforces the same length contract as an index.
 */
inline std::vector<Match>
scan_knn(const SeriesCollection &c, const QuerySpec &spec, const ScanOptions &opt = {},
         std::optional<LengthRange> range = std::nullopt, ScanStats *stats = nullptr)
{
  if (spec.epsilon) throw ArgumentError("k-NN scan given an epsilon");
  detail::check_scan(c, spec, range);
  TopK top{spec.k};
  const std::size_t len = spec.q.size();
  detail::scan(
      c, spec, opt, [&top] { return top.limit_sq(); },
      [&](std::uint32_t id, std::size_t start, double sq) { top.offer(detail::make_match(id, start, len, sq)); },
      stats);
  return top.items();
}

/// Every subsequence within epsilon, in canonical order.
inline std::vector<Match>
scan_range(const SeriesCollection &c, const QuerySpec &spec, const ScanOptions &opt = {},
           std::optional<LengthRange> range = std::nullopt, ScanStats *stats = nullptr)
{
  if (!spec.epsilon) throw ArgumentError("range scan needs an epsilon");
  detail::check_scan(c, spec, range);
  const double eps_sq = *spec.epsilon * *spec.epsilon;
  const std::size_t len = spec.q.size();
  std::vector<Match> out;
  detail::scan(
      c, spec, opt, [eps_sq] { return eps_sq; },
      [&](std::uint32_t id, std::size_t start, double sq) {
        if (sq <= eps_sq) out.push_back(detail::make_match(id, start, len, sq));
      },
      stats);
  std::sort(out.begin(), out.end(), match_less);
  return out;
}

/// Every (offset, length) an envelope represents, offset-major.
inline std::vector<SubsequenceRef>
enumerate_represented(const UEnvelope &e, const SeriesCollection &c)
{
  if (e.series_id >= c.size()) throw ArgumentError("envelope references a missing series");
  const std::size_t n = c[e.series_id].size();
  std::vector<SubsequenceRef> out;
  for (std::size_t i = e.start_offset; i <= std::size_t{e.start_offset} + e.gamma; ++i) {
    for (std::size_t len = e.range.l_min; len <= e.range.l_max; ++len) {
      if (i + len - 1 > n) break;
      out.push_back(SubsequenceRef{e.series_id, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(len)});
    }
  }
  return out;
}

}  // namespace ulisse

#endif  // ULISSE_ORACLE_HPP
