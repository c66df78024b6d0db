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

#ifndef ULISSE_BOUNDS_HPP
#define ULISSE_BOUNDS_HPP

#include <cmath>
#include <optional>
#include <span>
#include <utility>

#include "ulisse/distance.hpp"
#include "ulisse/errors.hpp"
#include "ulisse/summarization.hpp"

namespace ulisse
{
/**
 * @brief What the bounds need to know about a query.
 *
 * paa covers the longest s-multiple prefix. The DTW pair is the PAA of the
 * query's warping envelope over that same prefix; the envelope itself is taken
 * over the whole query so that prefix positions near the cut still see every
 * point they may align with.
 */
struct QuerySummary {
  PaaVector paa{};
  std::optional<std::pair<PaaVector, PaaVector>> dtw_paa{};  ///< (PAA(L^DTW), PAA(U^DTW))
  std::size_t query_len{0};
  std::size_t segment_len{1};

  [[nodiscard]] std::size_t
  segments() const noexcept
  {
    return paa.size();
  }
};

inline QuerySummary
summarize_query(std::span<const double> q, std::size_t segment_len,
                std::optional<WarpingWindow> window = std::nullopt)
{
  QuerySummary out;
  out.query_len = q.size();
  out.segment_len = segment_len;
  out.paa = paa(q, segment_len);
  if (window) {
    const auto env = build_dtw_envelope(q, *window);
    out.dtw_paa.emplace(paa(env.lower.view(), segment_len), paa(env.upper.view(), segment_len));
  }
  return out;
}

/// Whether bounds against an envelope use its exact [L, U] or the iSAX regions of its words.
enum class BoundSource { kExact, kDiscretized };

namespace detail
{
/// Squared gap between x and [lo, hi]; zero inside.
inline double
interval_gap_sq(double x, double lo, double hi) noexcept
{
  if (x > hi) return (x - hi) * (x - hi);
  if (x < lo) return (lo - x) * (lo - x);
  return 0.0;
}

/// Squared gap between the intervals [q_lo, q_hi] and [lo, hi]; zero when they overlap.
inline double
interval_pair_gap_sq(double q_lo, double q_hi, double lo, double hi) noexcept
{
  if (lo > q_hi) return (lo - q_hi) * (lo - q_hi);
  if (q_lo > hi) return (q_lo - hi) * (q_lo - hi);
  return 0.0;
}

inline void
check_summary(const QuerySummary &q, std::size_t segment_len, std::size_t word_len)
{
  if (q.segment_len != segment_len) throw ArgumentError("query summary segment length differs from envelope");
  if (q.segments() > word_len) throw ArgumentError("query summary has more segments than the envelope");
}

inline void
check_dtw(const QuerySummary &q)
{
  if (!q.dtw_paa) throw ArgumentError("query summary lacks the DTW envelope PAA");
}
}  // namespace detail

/// Squared gap between a PAA coefficient and the region of one iSAX symbol.
inline double
dist_lb(double paa_coeff, std::uint32_t symbol, std::uint8_t card_bits, const Breakpoints &bp)
{
  return detail::interval_gap_sq(paa_coeff, bp.lower(symbol, card_bits), bp.upper(symbol, card_bits));
}

/// sqrt(len / w) * sqrt(sum of dist_lb) between a PAA vector and an equally long word.
inline double
mindist_paa_isax(const PaaVector &q, const ISaxWord &w, std::size_t series_len, const Breakpoints &bp)
{
  if (q.size() != w.size()) throw ArgumentError("segment count mismatch");
  if (q.size() == 0) throw ArgumentError("empty PAA vector");
  double sum = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k) sum += dist_lb(q[k], w.symbols[k], w.card_bits[k], bp);
  return std::sqrt(static_cast<double>(series_len) / static_cast<double>(q.size())) * std::sqrt(sum);
}

/**
 * @brief ED lower bound between a query and per-segment value intervals.
 *
 * Shared by envelopes and tree nodes; only the first q.segments() intervals are read.
 */
inline double
mindist_intervals(const QuerySummary &q, std::span<const double> lo, std::span<const double> hi)
{
  double sum = 0.0;
  for (std::size_t k = 0; k < q.segments(); ++k) sum += detail::interval_gap_sq(q.paa[k], lo[k], hi[k]);
  return std::sqrt(static_cast<double>(q.segment_len)) * std::sqrt(sum);
}

/// DTW lower bound between the query's warping-envelope PAA and per-segment value intervals.
inline double
lb_pal_intervals(const QuerySummary &q, std::span<const double> lo, std::span<const double> hi)
{
  detail::check_dtw(q);
  const auto &[q_lo, q_hi] = *q.dtw_paa;
  double sum = 0.0;
  for (std::size_t k = 0; k < q.segments(); ++k) {
    sum += detail::interval_pair_gap_sq(q_lo[k], q_hi[k], lo[k], hi[k]);
  }
  return std::sqrt(static_cast<double>(q.segment_len)) * std::sqrt(sum);
}

/// Region edges [beta_l(lower_k), beta_u(upper_k)] of a word pair, for the first n segments.
inline std::pair<std::vector<double>, std::vector<double>>
word_intervals(const ISaxWord &lower, const ISaxWord &upper, const Breakpoints &bp, std::size_t n)
{
  std::pair<std::vector<double>, std::vector<double>> out;
  out.first.resize(n);
  out.second.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.first[k] = bp.lower(lower.symbols[k], lower.card_bits[k]);
    out.second[k] = bp.upper(upper.symbols[k], upper.card_bits[k]);
  }
  return out;
}

namespace detail
{
inline void
check_admissible(const QuerySummary &q, const UEnvelope &e)
{
  check_summary(q, e.segment_len, e.lower_paa.size());
  if (!e.admits(q.query_len)) {
    throw DomainError("envelope represents no subsequence of length " + std::to_string(q.query_len));
  }
}
}  // namespace detail

/**
 * @brief ED lower bound between a query and every same-length subsequence an envelope represents.
 *
 * Below the envelope the gap is taken to its lowest reachable value
 * (beta_l of iSAX(L), or L itself).
 */
inline double
mindist_ulisse(const QuerySummary &q, const UEnvelope &e, const Breakpoints &bp,
               BoundSource source = BoundSource::kExact)
{
  detail::check_admissible(q, e);
  if (source == BoundSource::kExact) return mindist_intervals(q, e.lower_paa.coeffs, e.upper_paa.coeffs);
  const auto [lo, hi] = word_intervals(e.lower, e.upper, bp, q.segments());
  return mindist_intervals(q, lo, hi);
}

/// LB_Keogh between the query's warping-envelope PAA and the regions of one word.
inline double
lb_keogh_paa_isax(const QuerySummary &q, const ISaxWord &w, std::size_t series_len, const Breakpoints &bp)
{
  detail::check_dtw(q);
  if (q.segments() != w.size()) throw ArgumentError("segment count mismatch");
  if (q.segments() == 0) throw ArgumentError("empty PAA vector");
  const auto &[q_lo, q_hi] = *q.dtw_paa;
  double sum = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    sum += detail::interval_pair_gap_sq(q_lo[k], q_hi[k], bp.lower(w.symbols[k], w.card_bits[k]),
                                        bp.upper(w.symbols[k], w.card_bits[k]));
  }
  return std::sqrt(static_cast<double>(series_len) / static_cast<double>(w.size())) * std::sqrt(sum);
}

/**
 * @brief DTW lower bound between a query and every same-length subsequence an envelope represents.
 *
 * A segment contributes when the envelope lies entirely above PAA(U^DTW)
 * or entirely below PAA(L^DTW).
 */
inline double
lb_pal(const QuerySummary &q, const UEnvelope &e, const Breakpoints &bp, BoundSource source = BoundSource::kExact)
{
  detail::check_admissible(q, e);
  if (source == BoundSource::kExact) return lb_pal_intervals(q, e.lower_paa.coeffs, e.upper_paa.coeffs);
  const auto [lo, hi] = word_intervals(e.lower, e.upper, bp, q.segments());
  return lb_pal_intervals(q, lo, hi);
}

}  // namespace ulisse

#endif  // ULISSE_BOUNDS_HPP
