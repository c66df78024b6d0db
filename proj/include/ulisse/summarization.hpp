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

#ifndef ULISSE_SUMMARIZATION_HPP
#define ULISSE_SUMMARIZATION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "ulisse/errors.hpp"
#include "ulisse/series.hpp"

namespace ulisse
{
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Segment length s, word length w = floor(l_max / s), and symbol bits.
struct PaaConfig {
  std::uint32_t segment_len{16};
  std::uint32_t word_len{16};
  std::uint8_t max_card_bits{8};

  static PaaConfig
  for_range(std::uint32_t segment_len, const LengthRange &range, std::uint8_t max_card_bits = 8)
  {
    if (segment_len < 1) throw ArgumentError("segment length must be >= 1");
    PaaConfig cfg{segment_len, range.l_max / segment_len, max_card_bits};
    cfg.validate();
    return cfg;
  }

  void
  validate() const
  {
    if (segment_len < 1) throw ArgumentError("segment length must be >= 1");
    if (word_len < 1) throw ArgumentError("word length must be >= 1 (segment longer than l_max?)");
    if (max_card_bits < 1 || max_card_bits > 8) throw ArgumentError("max_card_bits must be in [1, 8]");
  }

  friend bool operator==(const PaaConfig &, const PaaConfig &) = default;
};

struct PaaVector {
  std::vector<double> coeffs{};

  [[nodiscard]] std::size_t
  size() const noexcept
  {
    return coeffs.size();
  }

  double
  operator[](std::size_t i) const
  {
    return coeffs[i];
  }

  friend bool operator==(const PaaVector &, const PaaVector &) = default;
};

/// PAA of the longest prefix whose length is a multiple of s.
inline PaaVector
paa(std::span<const double> values, std::size_t s)
{
  if (s < 1) throw ArgumentError("segment length must be >= 1");
  if (values.size() < s) throw ArgumentError("series shorter than one PAA segment");
  PaaVector out;
  out.coeffs.resize(values.size() / s);
  for (std::size_t k = 0; k < out.coeffs.size(); ++k) {
    double sum = 0.0;
    for (std::size_t j = k * s; j < (k + 1) * s; ++j) sum += values[j];
    out.coeffs[k] = sum / static_cast<double>(s);
  }
  return out;
}

inline PaaVector
paa(const DataSeries &d, std::size_t s)
{
  return paa(d.view(), s);
}

/*##################################################################################
 * Breakpoints
 *################################################################################*/

enum class BreakpointMode : std::uint8_t { kGaussian = 0, kEmpirical = 1 };

/**
 * @brief Nested iSAX breakpoints for every cardinality 2^b, b = 1..max_bits.
 *
 * Only the finest level is stored; level b keeps every 2^(max_bits-b)-th
 * threshold, so refinement nesting holds by construction and the level-b
 * symbol of a value is its finest symbol shifted right.
 */
class Breakpoints
{
 public:
  Breakpoints() = default;

  Breakpoints(BreakpointMode mode, std::uint8_t max_bits, std::vector<double> finest)
      : mode_{mode}, max_bits_{max_bits}, finest_{std::move(finest)}
  {
    if (max_bits_ < 1 || max_bits_ > 8) throw ArgumentError("breakpoint bits must be in [1, 8]");
    if (finest_.size() != (std::size_t{1} << max_bits_) - 1) {
      throw ArgumentError("expected 2^bits - 1 thresholds");
    }
    for (std::size_t i = 1; i < finest_.size(); ++i) {
      if (!(finest_[i - 1] < finest_[i])) throw ArgumentError("thresholds must ascend strictly");
    }
  }

  [[nodiscard]] BreakpointMode
  mode() const noexcept
  {
    return mode_;
  }

  [[nodiscard]] std::uint8_t
  max_bits() const noexcept
  {
    return max_bits_;
  }

  [[nodiscard]] const std::vector<double> &
  finest() const noexcept
  {
    return finest_;
  }

  /// The 2^bits - 1 ascending thresholds of one level.
  [[nodiscard]] std::vector<double>
  level(std::uint8_t bits) const
  {
    check_bits(bits);
    const std::size_t stride = std::size_t{1} << (max_bits_ - bits);
    std::vector<double> out;
    for (std::size_t j = 1; j < (std::size_t{1} << bits); ++j) out.push_back(finest_[j * stride - 1]);
    return out;
  }

  /// Region index of x at the given cardinality; a value on a threshold goes up.
  [[nodiscard]] std::uint32_t
  symbol_of(double x, std::uint8_t bits) const
  {
    check_bits(bits);
    const auto finest_symbol =
        static_cast<std::uint32_t>(std::upper_bound(finest_.begin(), finest_.end(), x) - finest_.begin());
    return finest_symbol >> (max_bits_ - bits);
  }

  /// beta_l: lower edge of a region (-inf for the bottom one).
  [[nodiscard]] double
  lower(std::uint32_t symbol, std::uint8_t bits) const
  {
    check_bits(bits);
    if (symbol == 0) return -kInf;
    return finest_[(static_cast<std::size_t>(symbol) << (max_bits_ - bits)) - 1];
  }

  /// beta_u: upper edge of a region (+inf for the top one).
  [[nodiscard]] double
  upper(std::uint32_t symbol, std::uint8_t bits) const
  {
    check_bits(bits);
    if (symbol + 1 >= (std::uint32_t{1} << bits)) return kInf;
    return finest_[(static_cast<std::size_t>(symbol + 1) << (max_bits_ - bits)) - 1];
  }

  friend bool operator==(const Breakpoints &, const Breakpoints &) = default;

 private:
  void
  check_bits(std::uint8_t bits) const
  {
    if (bits < 1 || bits > max_bits_) throw ArgumentError("cardinality exceeds breakpoint levels");
  }

  BreakpointMode mode_{BreakpointMode::kGaussian};
  std::uint8_t max_bits_{1};
  std::vector<double> finest_{0.0};
};

/// Equi-probable N(0,1) regions.
inline Breakpoints
gaussian_breakpoints(std::uint8_t max_card_bits)
{
  if (max_card_bits < 1 || max_card_bits > 8) throw ArgumentError("breakpoint bits must be in [1, 8]");
  const boost::math::normal_distribution<double> standard{0.0, 1.0};
  const std::size_t card = std::size_t{1} << max_card_bits;
  std::vector<double> finest(card - 1);
  for (std::size_t j = 1; j < card; ++j) {
    // exact zero at the median keeps the 1-bit threshold at 0
    finest[j - 1] = 2 * j == card ? 0.0
                                  : boost::math::quantile(standard, static_cast<double>(j) /
                                                                        static_cast<double>(card));
  }
  return Breakpoints{BreakpointMode::kGaussian, max_card_bits, std::move(finest)};
}

/**
 * @brief Empirical quantiles of `sample` segment means drawn uniformly over
 * (series, start position).
 */
inline Breakpoints
empirical_breakpoints(const SeriesCollection &c, const PaaConfig &cfg, std::size_t sample,
                      std::uint64_t seed)
{
  if (c.empty()) throw ArgumentError("empirical breakpoints need a non-empty collection");
  if (sample < 1) throw ArgumentError("sample size must be >= 1");
  const std::size_t s = cfg.segment_len;
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].size() >= s) eligible.push_back(i);
  }
  if (eligible.empty()) throw DegenerateDataError("no series holds a full PAA segment");

  std::mt19937_64 rng{seed};
  std::vector<double> coeffs(sample);
  for (auto &coef : coeffs) {
    const auto &d = c[eligible[std::uniform_int_distribution<std::size_t>{0, eligible.size() - 1}(rng)]];
    const auto start = std::uniform_int_distribution<std::size_t>{0, d.size() - s}(rng);
    double sum = 0.0;
    for (std::size_t j = start; j < start + s; ++j) sum += d.values[j];
    coef = sum / static_cast<double>(s);
  }
  std::sort(coeffs.begin(), coeffs.end());
  if (coeffs.front() == coeffs.back()) throw DegenerateDataError("all sampled PAA coefficients are identical");

  const std::size_t card = std::size_t{1} << cfg.max_card_bits;
  std::vector<double> finest(card - 1);
  for (std::size_t j = 1; j < card; ++j) {
    const std::size_t pos = std::min(coeffs.size() - 1, j * coeffs.size() / card);
    finest[j - 1] = coeffs[pos];
  }
  for (std::size_t j = 1; j < finest.size(); ++j) {
    if (finest[j] <= finest[j - 1]) finest[j] = std::nextafter(finest[j - 1], kInf);
  }
  return Breakpoints{BreakpointMode::kEmpirical, cfg.max_card_bits, std::move(finest)};
}

/*##################################################################################
 * iSAX words
 *################################################################################*/

struct ISaxWord {
  std::vector<std::uint8_t> symbols{};
  std::vector<std::uint8_t> card_bits{};

  [[nodiscard]] std::size_t
  size() const noexcept
  {
    return symbols.size();
  }

  /// Lower every segment to `bits` (or keep it if already coarser) by dropping trailing bits.
  [[nodiscard]] ISaxWord
  promoted(std::span<const std::uint8_t> bits) const
  {
    ISaxWord out{symbols, card_bits};
    for (std::size_t k = 0; k < symbols.size(); ++k) {
      if (bits[k] < card_bits[k]) {
        out.symbols[k] = static_cast<std::uint8_t>(symbols[k] >> (card_bits[k] - bits[k]));
        out.card_bits[k] = bits[k];
      }
    }
    return out;
  }

  friend bool operator==(const ISaxWord &, const ISaxWord &) = default;
};

inline ISaxWord
to_isax(const PaaVector &p, const Breakpoints &bp, std::uint8_t card_bits)
{
  if (card_bits < 1 || card_bits > bp.max_bits()) throw ArgumentError("cardinality exceeds breakpoint levels");
  ISaxWord w;
  w.symbols.resize(p.size());
  w.card_bits.assign(p.size(), card_bits);
  for (std::size_t k = 0; k < p.size(); ++k) {
    w.symbols[k] = static_cast<std::uint8_t>(bp.symbol_of(p[k], card_bits));
  }
  return w;
}

/*##################################################################################
 * ULISSE envelopes
 *################################################################################*/

/**
 * @brief Summary of every subsequence with length in [l_min, l_max] starting at
 * offsets start_offset .. start_offset + gamma of one series.
 *
 * lower_paa/upper_paa hold the containment area rounded outward to float, and
 * lower/upper their words at the finest cardinality. Segments at and beyond
 * covered_segments are represented by no subsequence; they repeat the last
 * covered segment so tree routing stays meaningful.
 */
struct UEnvelope {
  ISaxWord lower{};
  ISaxWord upper{};
  PaaVector lower_paa{};
  PaaVector upper_paa{};
  std::uint32_t series_id{0};
  std::uint32_t start_offset{1};
  std::uint32_t gamma{0};
  LengthRange range{};
  bool normalized{false};
  std::uint32_t series_length{0};
  std::uint32_t segment_len{1};

  /// Length of the longest represented subsequence.
  [[nodiscard]] std::uint32_t
  max_length() const noexcept
  {
    return std::min(series_length - start_offset + 1, range.l_max);
  }

  [[nodiscard]] std::uint32_t
  covered_segments() const noexcept
  {
    return max_length() / segment_len;
  }

  /// True when some represented subsequence has length `len`.
  [[nodiscard]] bool
  admits(std::size_t len) const noexcept
  {
    return range.contains(len) && len <= max_length();
  }

  /// Last start offset (1-based) of a represented subsequence of length `len`.
  [[nodiscard]] std::uint32_t
  last_start(std::size_t len) const noexcept
  {
    return std::min<std::uint32_t>(start_offset + gamma,
                                   series_length - static_cast<std::uint32_t>(len) + 1);
  }

  friend bool operator==(const UEnvelope &, const UEnvelope &) = default;
};

/// Counts raw points touched while building envelopes.
struct BuildTally {
  std::size_t points_read{0};
};

namespace detail
{
inline double
round_down_float(double v)
{
  v -= 1e-9 * (1.0 + std::abs(v));
  auto f = static_cast<float>(v);
  if (static_cast<double>(f) > v) f = std::nextafter(f, -std::numeric_limits<float>::infinity());
  return f;
}

inline double
round_up_float(double v)
{
  v += 1e-9 * (1.0 + std::abs(v));
  auto f = static_cast<float>(v);
  if (static_cast<double>(f) < v) f = std::nextafter(f, std::numeric_limits<float>::infinity());
  return f;
}

struct EnvelopeFrame {
  std::size_t n{0};
  std::size_t first{0};       // 1-based first master start
  std::size_t last{0};        // 1-based last master start
  std::size_t window_end{0};  // 1-based last point read
};

inline std::optional<EnvelopeFrame>
envelope_frame(std::size_t n, const PaaConfig &cfg, const LengthRange &r, std::size_t gamma,
               std::size_t a)
{
  cfg.validate();
  r.validate();
  if (a < 1) throw ArgumentError("envelope start offset is 1-based");
  if (cfg.segment_len > r.l_min) throw ArgumentError("segment length exceeds l_min");
  if (a > n || n - (a - 1) < r.l_min) return std::nullopt;
  EnvelopeFrame f;
  f.n = n;
  f.first = a;
  f.last = std::min(a + gamma, n - r.l_min + 1);
  f.window_end = std::min(n, f.last + r.l_max - 1);
  return f;
}

inline UEnvelope
finish_envelope(std::vector<double> lo, std::vector<double> hi, const DataSeries &d,
                const PaaConfig &cfg, const LengthRange &r, std::size_t gamma, std::size_t a,
                bool normalized, const Breakpoints *bp)
{
  UEnvelope e;
  e.series_id = d.id;
  e.start_offset = static_cast<std::uint32_t>(a);
  e.gamma = static_cast<std::uint32_t>(gamma);
  e.range = r;
  e.normalized = normalized;
  e.series_length = static_cast<std::uint32_t>(d.size());
  e.segment_len = cfg.segment_len;
  const std::size_t covered = e.covered_segments();
  for (std::size_t k = 0; k < lo.size(); ++k) {
    if (k >= covered) {
      lo[k] = lo[covered - 1];
      hi[k] = hi[covered - 1];
    } else {
      lo[k] = round_down_float(lo[k]);
      hi[k] = round_up_float(hi[k]);
    }
  }
  e.lower_paa.coeffs = std::move(lo);
  e.upper_paa.coeffs = std::move(hi);
  if (bp != nullptr) {
    e.lower = to_isax(e.lower_paa, *bp, cfg.max_card_bits);
    e.upper = to_isax(e.upper_paa, *bp, cfg.max_card_bits);
  }
  return e;
}
}  // namespace detail

/**
 * @brief Envelope of non-normalized subsequences.
 *
 * A running sum over the last s points yields every segment mean in the
 * window a .. a + gamma + l_max - 1; the mean of the segment starting at p is
 * the k-th coefficient of the master series starting at p - k*s whenever that
 * master series is long enough to hold segment k. Words are filled when `bp`
 * is given.
 */
inline std::optional<UEnvelope>
build_envelope_raw(const DataSeries &d, const PaaConfig &cfg, const LengthRange &r, std::size_t gamma,
                   std::size_t a, const Breakpoints *bp = nullptr, BuildTally *tally = nullptr)
{
  const auto frame = detail::envelope_frame(d.size(), cfg, r, gamma, a);
  if (!frame) return std::nullopt;
  const std::size_t s = cfg.segment_len;
  const std::size_t w = cfg.word_len;
  std::vector<double> lo(w, kInf);
  std::vector<double> hi(w, -kInf);

  double running = 0.0;
  for (std::size_t i = a; i <= frame->window_end; ++i) {
    running += d.values[i - 1];
    if (i - a + 1 > s) running -= d.values[i - 1 - s];
    if (i - a + 1 < s) continue;
    const double mean = running / static_cast<double>(s);
    const std::size_t seg_start = i - s + 1;
    for (std::size_t k = 0; k < w && seg_start >= a + k * s; ++k) {
      const std::size_t master = seg_start - k * s;
      if (master > frame->last) continue;
      const std::size_t master_len = std::min(frame->n - master + 1, std::size_t{r.l_max});
      if ((k + 1) * s > master_len) continue;
      lo[k] = std::min(lo[k], mean);
      hi[k] = std::max(hi[k], mean);
    }
  }
  if (tally != nullptr) tally->points_read += frame->window_end - a + 1;
  return detail::finish_envelope(std::move(lo), std::move(hi), d, cfg, r, gamma, a, false, bp);
}

/**
 * @brief Envelope of Z-normalized subsequences.
 *
 * The first loop walks window points keeping sliding segment sums and the
 * running sum / squared sum. Once l_min points are in, the second loop peels
 * leading points off those sums to visit every subsequence ending at the
 * current point, normalizing each of its segment sums with its own moments.
 */
inline std::optional<UEnvelope>
build_envelope_norm(const DataSeries &d, const PaaConfig &cfg, const LengthRange &r, std::size_t gamma,
                    std::size_t a, const Breakpoints *bp = nullptr, BuildTally *tally = nullptr)
{
  const auto frame = detail::envelope_frame(d.size(), cfg, r, gamma, a);
  if (!frame) return std::nullopt;
  const std::size_t s = cfg.segment_len;
  const std::size_t w = cfg.word_len;
  std::vector<double> lo(w, kInf);
  std::vector<double> hi(w, -kInf);

  // Sums run over x - ref; shifting leaves every normalized coefficient
  // unchanged and keeps constant windows at exactly zero variance.
  const double ref = d.values[a - 1];
  // seg_sums[j] = shifted sum of the s points starting at a + j
  std::vector<double> seg_sums;
  seg_sums.reserve(frame->window_end - a + 1);
  double running = 0.0;
  double acc_sum = 0.0;
  double acc_sq = 0.0;
  const double sd = static_cast<double>(s);

  for (std::size_t i = a; i <= frame->window_end; ++i) {
    const double x = d.values[i - 1] - ref;
    running += x;
    if (i - a + 1 > s) running -= d.values[i - 1 - s] - ref;
    if (i - a + 1 >= s) seg_sums.push_back(running);
    acc_sum += x;
    acc_sq += x * x;

    const std::size_t span = i - (a - 1);
    if (span < r.l_min) continue;
    double sub_sum = acc_sum;
    double sub_sq = acc_sq;
    const std::size_t starts = std::min(frame->last - a + 1, span - r.l_min + 1);
    for (std::size_t j = 0; j < starts; ++j) {
      const std::size_t len = span - j;
      if (len <= r.l_max) {
        const double n = static_cast<double>(len);
        const double mu = sub_sum / n;
        const double var = sub_sq / n - mu * mu;
        const double sigma = var > 0.0 ? std::sqrt(var) : 0.0;
        const std::size_t segs = std::min(len / s, w);
        for (std::size_t z = 0; z < segs; ++z) {
          const double coef = sigma < kSigmaFloor ? 0.0 : ((seg_sums[j + z * s] - sd * mu) / sigma) / sd;
          lo[z] = std::min(lo[z], coef);
          hi[z] = std::max(hi[z], coef);
        }
      }
      const double lead = d.values[a - 1 + j] - ref;
      sub_sum -= lead;
      sub_sq -= lead * lead;
    }
  }
  if (tally != nullptr) tally->points_read += frame->window_end - a + 1;
  return detail::finish_envelope(std::move(lo), std::move(hi), d, cfg, r, gamma, a, true, bp);
}

}  // namespace ulisse

#endif  // ULISSE_SUMMARIZATION_HPP
