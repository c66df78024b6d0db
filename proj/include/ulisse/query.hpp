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

#ifndef ULISSE_QUERY_HPP
#define ULISSE_QUERY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <queue>
#include <tuple>
#include <vector>

#include "ulisse/bounds.hpp"
#include "ulisse/errors.hpp"
#include "ulisse/index.hpp"
#include "ulisse/scorer.hpp"
#include "ulisse/series.hpp"

namespace ulisse
{
struct QuerySpec {
  DataSeries q{};
  std::size_t k{1};
  std::optional<double> epsilon{};  ///< set for range queries
  Measure measure{Measure::kEuclidean};
  double warp_fraction{0.0};                ///< DTW band as a fraction of |q|
  std::optional<std::size_t> warp_points{};  ///< absolute band, overrides warp_fraction
  bool normalized{false};

  [[nodiscard]] WarpingWindow
  window() const
  {
    if (warp_points) return WarpingWindow{*warp_points};
    return WarpingWindow::from_fraction(warp_fraction, q.size());
  }

  void
  validate() const
  {
    if (q.values.empty()) throw ArgumentError("empty query");
    if (epsilon) {
      if (!(*epsilon >= 0.0)) throw ArgumentError("epsilon must be >= 0");
    } else if (k < 1) {
      throw ArgumentError("k must be >= 1");
    }
    if (measure == Measure::kDtw && window().r >= q.size()) {
      throw ConfigError("warping window must be smaller than the query length");
    }
  }
};

struct Match {
  SubsequenceRef ref{};
  double distance{0.0};
  double squared{0.0};

  friend bool operator==(const Match &, const Match &) = default;
};

/// Canonical order: (distance, series id, offset).
inline bool
match_less(const Match &a, const Match &b) noexcept
{
  return std::tie(a.squared, a.ref.series_id, a.ref.offset) < std::tie(b.squared, b.ref.series_id, b.ref.offset);
}

struct QueryStats {
  std::size_t total_envelopes{0};
  std::size_t leaves_visited{0};
  std::size_t envelopes_pruned{0};
  std::size_t envelopes_checked{0};
  std::size_t candidates_compared{0};
  std::size_t true_dist_computed{0};
  std::size_t lbkeogh_computed{0};
  std::size_t points_fetched{0};
  std::size_t abandons{0};
  std::size_t points_total{0};
  std::size_t points_skipped{0};

  [[nodiscard]] double
  pruning_power() const noexcept
  {
    return total_envelopes == 0 ? 0.0
                                : static_cast<double>(envelopes_pruned) / static_cast<double>(total_envelopes);
  }

  [[nodiscard]] double
  abandoning_power() const noexcept
  {
    return points_total == 0 ? 0.0 : static_cast<double>(points_skipped) / static_cast<double>(points_total);
  }

  void
  absorb(const ScoreTally &t) noexcept
  {
    true_dist_computed += t.true_dist_computed;
    lbkeogh_computed += t.lbkeogh_computed;
    abandons += t.distance.abandons;
    points_total += t.distance.points_total;
    points_skipped += t.distance.points_skipped;
  }
};

/// The k best matches seen so far under the canonical order.
class TopK
{
 public:
  explicit TopK(std::size_t k) : k_{k} { items_.reserve(k); }

  /// Squared distance a candidate must not exceed to enter.
  [[nodiscard]] double
  limit_sq() const noexcept
  {
    return items_.size() < k_ ? kInf : items_.back().squared;
  }

  bool
  offer(const Match &m)
  {
    if (items_.size() == k_) {
      if (!match_less(m, items_.back())) return false;
      items_.pop_back();
    }
    items_.insert(std::upper_bound(items_.begin(), items_.end(), m, match_less), m);
    return true;
  }

  /// Distances, padded with +inf up to k.
  [[nodiscard]] std::vector<double>
  bsf() const
  {
    std::vector<double> out(k_, kInf);
    for (std::size_t i = 0; i < items_.size(); ++i) out[i] = items_[i].distance;
    return out;
  }

  [[nodiscard]] const std::vector<Match> &
  items() const noexcept
  {
    return items_;
  }

 private:
  std::size_t k_;
  std::vector<Match> items_{};
};

struct ApproxResult {
  std::vector<Match> matches{};
  std::vector<double> bsf{};
  QueryStats stats{};
  bool exact{false};
  bool padded{false};
};

struct QueryResult {
  std::vector<Match> matches{};
  QueryStats stats{};
  bool padded{false};
};

namespace detail
{
inline Match
make_match(std::uint32_t series_id, std::size_t start0, std::size_t len, double sq)
{
  return Match{SubsequenceRef{series_id, static_cast<std::uint32_t>(start0 + 1), static_cast<std::uint32_t>(len)},
               std::sqrt(sq), sq};
}

/**
 * @brief Per-query state shared by the approximate, exact and range paths.
 */
class Search
{
 public:
  Search(const UlisseIndex &idx, const QuerySpec &spec)
      : idx_{idx},
        spec_{checked(idx, spec)},
        scorer_{spec.q.view(), spec.measure, spec.measure == Measure::kDtw ? spec.window() : WarpingWindow{},
                spec.normalized},
        summary_{summarize_query(scorer_.query(), idx.config().paa.segment_len,
                                 spec.measure == Measure::kDtw ? std::optional{scorer_.window()} : std::nullopt)},
        done_(idx.envelopes().size(), false)
  {
    stats_.total_envelopes = idx.envelopes().size();
  }

  [[nodiscard]] double
  bound(std::span<const double> lo, std::span<const double> hi) const
  {
    return spec_.measure == Measure::kEuclidean ? mindist_intervals(summary_, lo, hi)
                                                : lb_pal_intervals(summary_, lo, hi);
  }

  [[nodiscard]] double
  node_bound(const IndexNode &n) const
  {
    const auto [lo, hi] = idx_.node_intervals(n, summary_.segments());
    return bound(lo, hi);
  }

  [[nodiscard]] double
  envelope_bound(const UEnvelope &e) const
  {
    return bound(e.lower_paa.coeffs, e.upper_paa.coeffs);
  }

  [[nodiscard]] bool
  admits(const IndexNode &n) const noexcept
  {
    return n.max_length >= len();
  }

  [[nodiscard]] std::size_t
  len() const noexcept
  {
    return scorer_.length();
  }

  /**
   * @brief Bound-check one envelope against `limit` (a distance) and score its
   * candidates when it survives. Every envelope is processed at most once.
   */
  template <class Accept>
  void
  process(std::uint32_t pos, double limit, bool lb_keogh_first, Accept &&accept, auto &&current_limit_sq)
  {
    if (done_[pos]) return;
    done_[pos] = true;
    const UEnvelope &e = idx_.envelopes()[pos];
    if (!e.admits(len()) || envelope_bound(e) > limit) {
      ++stats_.envelopes_pruned;
      return;
    }
    ++stats_.envelopes_checked;
    stats_.points_fetched += std::min<std::size_t>(e.series_length - e.start_offset + 1,
                                                   std::size_t{e.gamma} + idx_.config().range.l_max);
    const auto &series = idx_.data()[e.series_id];
    const auto &ws = idx_.window_stats(e.series_id);
    ScoreTally tally;
    for (std::uint32_t a = e.start_offset; a <= e.last_start(len()); ++a) {
      ++stats_.candidates_compared;
      const auto sq = scorer_.score(series.view(), ws, a - 1, current_limit_sq(), lb_keogh_first, tally);
      if (sq) accept(make_match(e.series_id, a - 1, len(), *sq));
    }
    stats_.absorb(tally);
  }

  /// Count every envelope not yet processed as pruned.
  void
  prune_rest()
  {
    for (std::size_t i = 0; i < done_.size(); ++i) {
      if (!done_[i]) {
        done_[i] = true;
        ++stats_.envelopes_pruned;
      }
    }
  }

  QueryStats &
  stats() noexcept
  {
    return stats_;
  }

  [[nodiscard]] const QuerySpec &
  spec() const noexcept
  {
    return spec_;
  }

 private:
  static const QuerySpec &
  checked(const UlisseIndex &idx, const QuerySpec &spec)
  {
    spec.validate();
    const auto &r = idx.config().range;
    if (!r.contains(spec.q.size())) {
      throw QueryLengthError("query length " + std::to_string(spec.q.size()) + " outside [" +
                             std::to_string(r.l_min) + ", " + std::to_string(r.l_max) + "]");
    }
    if (spec.normalized != idx.config().normalized) {
      throw ConfigError(spec.normalized ? "normalized query against a raw index"
                                        : "raw query against a normalized index");
    }
    return spec;
  }

  const UlisseIndex &idx_;
  const QuerySpec &spec_;
  SubsequenceScorer scorer_;
  QuerySummary summary_;
  std::vector<bool> done_;
  QueryStats stats_{};
};

/// Best-first leaf visits; stops once a whole leaf leaves the answer unchanged.
inline bool
approx_phase(const UlisseIndex &idx, Search &s, TopK &top)
{
  struct Item {
    double bound;
    std::uint64_t seq;
    const IndexNode *node;
    bool operator>(const Item &o) const noexcept { return std::tie(bound, seq) > std::tie(o.bound, o.seq); }
  };
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  std::uint64_t seq = 0;
  for (const auto &[key, node] : idx.roots()) {
    if (s.admits(*node)) pq.push(Item{s.node_bound(*node), seq++, node.get()});
  }

  const auto limit_sq = [&top] { return top.limit_sq(); };
  const auto accept = [&top](const Match &m) { top.offer(m); };
  while (!pq.empty()) {
    const Item it = pq.top();
    const double kth = std::sqrt(top.limit_sq());
    if (it.bound >= kth) return it.bound > kth;
    pq.pop();
    const IndexNode &n = *it.node;
    if (!n.is_leaf()) {
      for (const auto &c : n.children) {
        if (c && s.admits(*c)) pq.push(Item{s.node_bound(*c), seq++, c.get()});
      }
      continue;
    }
    ++s.stats().leaves_visited;
    auto entries = n.entries;
    std::sort(entries.begin(), entries.end());
    const auto before = top.items();
    for (const auto pos : entries) s.process(pos, std::sqrt(top.limit_sq()), false, accept, limit_sq);
    if (top.items() == before) return false;
  }
  return true;
}
}  // namespace detail

/**
 * @brief Approximate k-NN: best-first descent to the most promising leaves.
 *
 * `exact` is set when the remaining tree provably holds nothing better.
 */
inline ApproxResult
knn_approx(const UlisseIndex &idx, const QuerySpec &spec)
{
  if (spec.epsilon) throw ArgumentError("k-NN search given an epsilon");
  detail::Search s{idx, spec};
  TopK top{spec.k};
  ApproxResult out;
  out.exact = detail::approx_phase(idx, s, top);
  out.matches = top.items();
  out.bsf = top.bsf();
  out.stats = s.stats();
  out.padded = out.matches.size() < spec.k;
  return out;
}

/// Exact k-NN: approximate seeding, then a bound-filtered scan of the envelope list.
inline QueryResult
knn_exact(const UlisseIndex &idx, const QuerySpec &spec)
{
  if (spec.epsilon) throw ArgumentError("k-NN search given an epsilon");
  detail::Search s{idx, spec};
  TopK top{spec.k};
  const bool exact = detail::approx_phase(idx, s, top);
  if (exact) {
    s.prune_rest();
  } else {
    const auto limit_sq = [&top] { return top.limit_sq(); };
    const auto accept = [&top](const Match &m) { top.offer(m); };
    const bool keogh = spec.measure == Measure::kDtw;
    for (std::uint32_t pos = 0; pos < idx.envelopes().size(); ++pos) {
      s.process(pos, std::sqrt(top.limit_sq()), keogh, accept, limit_sq);
    }
  }
  QueryResult out;
  out.matches = top.items();
  out.stats = s.stats();
  out.padded = out.matches.size() < spec.k;
  return out;
}

/// Every subsequence of length |q| within epsilon, in canonical order.
inline QueryResult
range_search(const UlisseIndex &idx, const QuerySpec &spec)
{
  if (!spec.epsilon) throw ArgumentError("range search needs an epsilon");
  detail::Search s{idx, spec};
  const double eps = *spec.epsilon;
  const double eps_sq = eps * eps;
  QueryResult out;
  const auto limit_sq = [eps_sq] { return eps_sq; };
  const auto accept = [&out](const Match &m) { out.matches.push_back(m); };
  const bool keogh = spec.measure == Measure::kDtw;
  for (std::uint32_t pos = 0; pos < idx.envelopes().size(); ++pos) s.process(pos, eps, keogh, accept, limit_sq);
  std::sort(out.matches.begin(), out.matches.end(), match_less);
  out.stats = s.stats();
  return out;
}

}  // namespace ulisse

#endif  // ULISSE_QUERY_HPP
