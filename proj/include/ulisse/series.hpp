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

#ifndef ULISSE_SERIES_HPP
#define ULISSE_SERIES_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ulisse/errors.hpp"

namespace ulisse
{
/// Population standard deviation below which a window counts as constant.
inline constexpr double kSigmaFloor = 1e-9;

/**
 * @brief An ordered sequence of points.
 *
 * Values are held in double precision; series read from disk are exactly
 * representable as 32-bit floats, which keeps save/load bit-exact.
 */
struct DataSeries {
  std::uint32_t id{0};
  std::vector<double> values{};

  [[nodiscard]] std::size_t
  size() const noexcept
  {
    return values.size();
  }

  [[nodiscard]] std::span<const double>
  view() const noexcept
  {
    return values;
  }

  friend bool operator==(const DataSeries &, const DataSeries &) = default;
};

/// A subsequence D_{o,l}; offset is 1-based.
struct SubsequenceRef {
  std::uint32_t series_id{0};
  std::uint32_t offset{1};
  std::uint32_t length{1};

  friend bool operator==(const SubsequenceRef &, const SubsequenceRef &) = default;
  friend auto operator<=>(const SubsequenceRef &, const SubsequenceRef &) = default;

  /// True when the reference lies inside a series of the given length.
  [[nodiscard]] bool
  fits(std::size_t series_length) const noexcept
  {
    return offset >= 1 && length >= 1 &&
           static_cast<std::size_t>(offset) + length - 1 <= series_length;
  }
};

struct LengthRange {
  std::uint32_t l_min{1};
  std::uint32_t l_max{1};

  void
  validate() const
  {
    if (l_min < 1 || l_min > l_max) {
      throw ArgumentError("invalid length range [" + std::to_string(l_min) + ", " +
                          std::to_string(l_max) + "]");
    }
  }

  [[nodiscard]] bool
  contains(std::size_t len) const noexcept
  {
    return len >= l_min && len <= l_max;
  }

  friend bool operator==(const LengthRange &, const LengthRange &) = default;
};

struct SeriesCollection {
  std::vector<DataSeries> series{};
  std::filesystem::path source_path{};
  std::optional<std::uint32_t> fixed_length{};

  [[nodiscard]] std::size_t
  size() const noexcept
  {
    return series.size();
  }

  [[nodiscard]] bool
  empty() const noexcept
  {
    return series.empty();
  }

  const DataSeries &
  operator[](std::size_t i) const
  {
    return series[i];
  }

  /// Checks dense ids, lengths and finiteness.
  void
  validate() const
  {
    for (std::size_t i = 0; i < series.size(); ++i) {
      const auto &s = series[i];
      if (s.id != i) throw ArgumentError("series ids must be dense, found " + std::to_string(s.id));
      if (s.values.empty()) throw ArgumentError("series " + std::to_string(i) + " is empty");
      if (fixed_length && s.size() != *fixed_length) {
        throw ArgumentError("series " + std::to_string(i) + " violates the fixed length");
      }
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (!std::isfinite(s.values[j])) {
          throw DataError("non-finite value in series " + std::to_string(i) + " at offset " +
                          std::to_string(j + 1));
        }
      }
    }
  }

  friend bool
  operator==(const SeriesCollection &a, const SeriesCollection &b)
  {
    return a.series == b.series && a.fixed_length == b.fixed_length;
  }
};

/// Build a collection with dense ids from raw value vectors.
inline SeriesCollection
make_collection(std::vector<std::vector<double>> rows)
{
  SeriesCollection c;
  c.series.reserve(rows.size());
  bool same = !rows.empty();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size()) same = false;
    c.series.push_back(DataSeries{static_cast<std::uint32_t>(i), std::move(rows[i])});
  }
  if (same) c.fixed_length = static_cast<std::uint32_t>(c.series.front().size());
  return c;
}

/*##################################################################################
 * Dataset file format
 *
 * "ULSD" | u8 version | u32 count | u32 length | [u64 start table] | f32 points
 *
 * All integers and floats little-endian. length == 0 selects variable-length
 * mode: `count` u64 entries follow, each the 0-based start of a series in the
 * point payload. Lengths derive from consecutive starts and the payload size.
 *################################################################################*/

inline constexpr std::string_view kDatasetMagic = "ULSD";
inline constexpr std::uint8_t kDatasetVersion = 1;
inline constexpr std::size_t kDatasetHeaderSize = 13;

namespace detail
{
class ByteWriter
{
 public:
  void
  u8(std::uint8_t v)
  {
    buf_.push_back(static_cast<char>(v));
  }

  void
  u32(std::uint32_t v)
  {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFFU));
  }

  void
  u64(std::uint64_t v)
  {
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFFU));
  }

  void
  f32(float v)
  {
    u32(std::bit_cast<std::uint32_t>(v));
  }

  void
  f64(double v)
  {
    u64(std::bit_cast<std::uint64_t>(v));
  }

  void
  bytes(std::string_view s)
  {
    buf_.insert(buf_.end(), s.begin(), s.end());
  }

  [[nodiscard]] const std::vector<char> &
  data() const noexcept
  {
    return buf_;
  }

 private:
  std::vector<char> buf_{};
};

class ByteReader
{
 public:
  explicit ByteReader(std::span<const char> data) : data_{data} {}

  [[nodiscard]] std::size_t
  remaining() const noexcept
  {
    return data_.size() - pos_;
  }

  [[nodiscard]] std::size_t
  position() const noexcept
  {
    return pos_;
  }

  std::uint8_t
  u8()
  {
    need(1);
    return static_cast<std::uint8_t>(data_[pos_++]);
  }

  std::uint32_t
  u32()
  {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data_[pos_++])) << (8 * i);
    }
    return v;
  }

  std::uint64_t
  u64()
  {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_++])) << (8 * i);
    }
    return v;
  }

  float
  f32()
  {
    return std::bit_cast<float>(u32());
  }

  double
  f64()
  {
    return std::bit_cast<double>(u64());
  }

  std::string
  bytes(std::size_t n)
  {
    need(n);
    std::string s(data_.data() + pos_, n);
    pos_ += n;
    return s;
  }

 private:
  void
  need(std::size_t n) const
  {
    if (remaining() < n) throw IoError("unexpected end of file");
  }

  std::span<const char> data_;
  std::size_t pos_{0};
};

inline std::vector<char>
read_file(const std::filesystem::path &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed for " + path.string());
  return buf;
}

inline void
write_file(const std::filesystem::path &path, const std::vector<char> &bytes)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace detail

inline SeriesCollection
load_collection(const std::filesystem::path &path)
{
  const auto raw = detail::read_file(path);
  detail::ByteReader in{raw};
  if (raw.size() < kDatasetHeaderSize) {
    if (raw.size() >= 4 && std::string_view(raw.data(), 4) != kDatasetMagic) {
      throw FormatError(path.string() + ": bad magic");
    }
    throw FormatError(path.string() + ": header too short");
  }
  if (in.bytes(4) != kDatasetMagic) throw FormatError(path.string() + ": bad magic");
  if (const auto v = in.u8(); v != kDatasetVersion) {
    throw FormatError(path.string() + ": unsupported dataset version " + std::to_string(v));
  }
  const std::uint32_t count = in.u32();
  const std::uint32_t length = in.u32();

  std::vector<std::uint64_t> starts;
  std::uint64_t total = 0;
  if (length > 0) {
    total = static_cast<std::uint64_t>(count) * length;
    for (std::uint32_t i = 0; i < count; ++i) starts.push_back(static_cast<std::uint64_t>(i) * length);
  } else {
    starts.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) starts.push_back(in.u64());
    if (in.remaining() % 4 != 0) throw IoError(path.string() + ": truncated payload");
    total = in.remaining() / 4;
    for (std::uint32_t i = 0; i < count; ++i) {
      const auto next = i + 1 < count ? starts[i + 1] : total;
      if ((i == 0 && starts[0] != 0) || starts[i] >= next) {
        throw FormatError(path.string() + ": invalid series start table");
      }
    }
  }
  if (in.remaining() < total * 4) throw IoError(path.string() + ": truncated payload");
  if (in.remaining() > total * 4) throw FormatError(path.string() + ": trailing bytes after payload");

  SeriesCollection c;
  c.source_path = path;
  if (length > 0) c.fixed_length = length;
  c.series.resize(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto next = i + 1 < count ? starts[i + 1] : total;
    auto &s = c.series[i];
    s.id = i;
    s.values.resize(next - starts[i]);
    for (std::size_t j = 0; j < s.values.size(); ++j) {
      const float v = in.f32();
      if (!std::isfinite(v)) {
        throw DataError(path.string() + ": non-finite value in series " + std::to_string(i) +
                        " at offset " + std::to_string(j + 1));
      }
      s.values[j] = v;
    }
  }
  return c;
}

inline std::vector<char>
encode_collection(const SeriesCollection &c)
{
  c.validate();
  bool fixed = !c.empty();
  for (const auto &s : c.series) fixed = fixed && s.size() == c.series.front().size();

  detail::ByteWriter out;
  out.bytes(kDatasetMagic);
  out.u8(kDatasetVersion);
  out.u32(static_cast<std::uint32_t>(c.size()));
  out.u32(fixed ? static_cast<std::uint32_t>(c.series.front().size()) : 0U);
  if (!fixed) {
    std::uint64_t start = 0;
    for (const auto &s : c.series) {
      out.u64(start);
      start += s.size();
    }
  }
  for (const auto &s : c.series) {
    for (const double v : s.values) out.f32(static_cast<float>(v));
  }
  return out.data();
}

inline void
save_collection(const SeriesCollection &c, const std::filesystem::path &path)
{
  detail::write_file(path, encode_collection(c));
}

/**
 * @brief Random walks: point 1 is a N(0,1) draw, point t adds a fresh draw to point t-1.
 *
 * Each point is rounded to float so the in-memory collection equals what a
 * save/load cycle returns.
 */
inline SeriesCollection
generate_random_walk(std::size_t n_series, std::size_t length, std::uint64_t seed)
{
  if (n_series < 1 || length < 1) throw ArgumentError("random walk needs n_series >= 1 and length >= 1");
  std::mt19937_64 rng{seed};
  std::normal_distribution<double> gauss{0.0, 1.0};
  SeriesCollection c;
  c.fixed_length = static_cast<std::uint32_t>(length);
  c.series.resize(n_series);
  for (std::size_t i = 0; i < n_series; ++i) {
    auto &s = c.series[i];
    s.id = static_cast<std::uint32_t>(i);
    s.values.resize(length);
    double prev = 0.0;
    for (std::size_t t = 0; t < length; ++t) {
      prev = static_cast<float>(prev + gauss(rng));
      s.values[t] = prev;
    }
  }
  return c;
}

/**
 * @brief Queries cut from random positions of a collection plus N(0, noise_std) noise.
 *
 * Query i has length lengths[i % lengths.size()]; points are rounded to float.
 */
inline SeriesCollection
extract_noisy_queries(const SeriesCollection &c, std::size_t n, std::span<const std::size_t> lengths,
                      double noise_std, std::uint64_t seed)
{
  if (n < 1 || lengths.empty()) throw ArgumentError("need at least one query and one length");
  if (!(noise_std >= 0.0)) throw ArgumentError("noise std must be >= 0");
  std::mt19937_64 rng{seed};
  std::normal_distribution<double> gauss{0.0, noise_std > 0.0 ? noise_std : 1.0};
  std::vector<std::vector<double>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t len = lengths[i % lengths.size()];
    std::vector<std::size_t> hosts;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j].size() >= len) hosts.push_back(j);
    }
    if (hosts.empty()) throw ArgumentError("no series is long enough for a query of length " + std::to_string(len));
    const auto &src = c[hosts[std::uniform_int_distribution<std::size_t>{0, hosts.size() - 1}(rng)]];
    const std::size_t off = std::uniform_int_distribution<std::size_t>{0, src.size() - len}(rng);
    rows[i].resize(len);
    for (std::size_t t = 0; t < len; ++t) {
      const double noise = noise_std > 0.0 ? gauss(rng) : 0.0;
      rows[i][t] = static_cast<float>(src.values[off + t] + noise);
    }
  }
  return make_collection(std::move(rows));
}

struct ZNormalized {
  DataSeries series{};
  bool constant{false};  ///< input sigma fell below kSigmaFloor; output is all zeros
};

/// Z-normalization with population sigma.
inline ZNormalized
znormalize(const DataSeries &d)
{
  if (d.values.empty()) throw ArgumentError("cannot z-normalize an empty series");
  const auto n = static_cast<double>(d.size());
  double mean = 0.0;
  for (const double v : d.values) mean += v;
  mean /= n;
  double var = 0.0;
  for (const double v : d.values) var += (v - mean) * (v - mean);
  const double sigma = std::sqrt(var / n);

  ZNormalized out;
  out.series.id = d.id;
  out.series.values.assign(d.size(), 0.0);
  if (sigma < kSigmaFloor) {
    out.constant = true;
    return out;
  }
  for (std::size_t i = 0; i < d.size(); ++i) out.series.values[i] = (d.values[i] - mean) / sigma;
  return out;
}

struct WindowMoments {
  double mean{0.0};
  double sigma{0.0};

  [[nodiscard]] bool
  constant() const noexcept
  {
    return sigma < kSigmaFloor;
  }

  /// Z-normalized value of a point under these moments (0 for constant windows).
  [[nodiscard]] double
  normalize(double x) const noexcept
  {
    return constant() ? 0.0 : (x - mean) / sigma;
  }
};

/**
 * @brief O(1) mean/sigma of any window of one series.
 *
 * Prefix sums are taken over values centred on the series mean, which limits
 * cancellation in E[x^2] - E[x]^2.
 */
class WindowStats
{
 public:
  WindowStats() = default;

  explicit WindowStats(std::span<const double> values)
      : sum_(values.size() + 1, 0.0), sq_(values.size() + 1, 0.0)
  {
    for (const double v : values) centre_ += v;
    if (!values.empty()) centre_ /= static_cast<double>(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double y = values[i] - centre_;
      sum_[i + 1] = sum_[i] + y;
      sq_[i + 1] = sq_[i] + y * y;
    }
  }

  /// Moments of the window starting at 0-based `start` with `len` points.
  [[nodiscard]] WindowMoments
  moments(std::size_t start, std::size_t len) const noexcept
  {
    const auto n = static_cast<double>(len);
    const double m = (sum_[start + len] - sum_[start]) / n;
    const double var = (sq_[start + len] - sq_[start]) / n - m * m;
    return WindowMoments{m + centre_, var > 0.0 ? std::sqrt(var) : 0.0};
  }

 private:
  double centre_{0.0};
  std::vector<double> sum_{};
  std::vector<double> sq_{};
};

}  // namespace ulisse

#endif  // ULISSE_SERIES_HPP
