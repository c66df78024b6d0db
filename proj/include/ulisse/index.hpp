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

#ifndef ULISSE_INDEX_HPP
#define ULISSE_INDEX_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ulisse/bounds.hpp"
#include "ulisse/errors.hpp"
#include "ulisse/series.hpp"
#include "ulisse/summarization.hpp"

namespace ulisse
{
struct IndexConfig {
  PaaConfig paa{};
  LengthRange range{160, 256};
  std::uint32_t gamma{96};
  bool normalized{false};
  BreakpointMode breakpoint_mode{BreakpointMode::kEmpirical};
  std::uint32_t leaf_capacity{2000};
  std::uint32_t breakpoint_sample{100000};
  std::uint64_t breakpoint_seed{0};

  /// Defaults: s = 16, 8-bit symbols, Gaussian breakpoints for normalized data, empirical otherwise.
  static IndexConfig
  make(LengthRange range, std::uint32_t gamma, bool normalized, std::uint32_t segment_len = 16)
  {
    range.validate();
    IndexConfig cfg;
    cfg.range = range;
    cfg.paa = PaaConfig::for_range(segment_len, range);
    cfg.gamma = gamma;
    cfg.normalized = normalized;
    cfg.breakpoint_mode = normalized ? BreakpointMode::kGaussian : BreakpointMode::kEmpirical;
    return cfg;
  }

  void
  validate() const
  {
    range.validate();
    paa.validate();
    if (paa.word_len != range.l_max / paa.segment_len) throw ArgumentError("word length must be floor(l_max / s)");
    if (paa.segment_len > range.l_min) throw ArgumentError("segment length must not exceed l_min");
    if (leaf_capacity < 1) throw ArgumentError("leaf capacity must be >= 1");
  }

  friend bool operator==(const IndexConfig &, const IndexConfig &) = default;
};

/// Envelopes one series yields: ceil((|D| - l_min + 1) / (gamma + 1)), or 0 when |D| < l_min.
inline std::size_t
expected_envelope_count(std::size_t series_len, const LengthRange &r, std::size_t gamma)
{
  if (series_len < r.l_min) return 0;
  return (series_len - r.l_min + 1 + gamma) / (gamma + 1);
}

/// Space model (2w) * b * N bytes with b-byte disk pointers.
inline double
space_model_bytes(std::size_t envelopes, std::size_t word_len, std::size_t pointer_bytes = 8)
{
  return 2.0 * static_cast<double>(word_len) * static_cast<double>(pointer_bytes) *
         static_cast<double>(envelopes);
}

/// Dataset identity: byte size plus FNV-1a over sampled blocks.
struct DataFingerprint {
  std::uint64_t size{0};
  std::uint64_t checksum{0};

  static DataFingerprint
  of(std::span<const char> bytes)
  {
    constexpr std::size_t kBlock = 256;
    constexpr std::size_t kBlocks = 4096;
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::span<const char> b) {
      for (const char ch : b) {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ULL;
      }
    };
    if (bytes.size() <= kBlock * kBlocks) {
      mix(bytes);
    } else {
      const std::size_t stride = (bytes.size() - kBlock) / (kBlocks - 1);
      for (std::size_t i = 0; i < kBlocks; ++i) mix(bytes.subspan(i * stride, kBlock));
      mix(bytes.subspan(bytes.size() - kBlock));
    }
    return DataFingerprint{bytes.size(), h};
  }

  friend bool operator==(const DataFingerprint &, const DataFingerprint &) = default;
};

/**
 * @brief Tree node. Leaves hold envelope-list positions whose iSAX(L) equals
 * lower_word at the node's cardinalities; upper_word (same cardinalities)
 * dominates every descendant's iSAX(U).
 */
struct IndexNode {
  ISaxWord lower_word{};
  ISaxWord upper_word{};
  std::uint32_t max_length{0};  ///< longest subsequence any descendant envelope represents
  std::uint32_t next_split{0};  ///< first segment tried by the next split
  std::optional<std::uint32_t> split_segment{};
  std::array<std::unique_ptr<IndexNode>, 2> children{};
  std::vector<std::uint32_t> entries{};

  [[nodiscard]] bool
  is_leaf() const noexcept
  {
    return !split_segment.has_value();
  }
};

class UlisseIndex
{
 public:
  using RootKey = std::vector<std::uint8_t>;
  using RootMap = std::map<RootKey, std::unique_ptr<IndexNode>>;

  UlisseIndex(IndexConfig config, Breakpoints breakpoints, std::shared_ptr<const SeriesCollection> data)
      : config_{std::move(config)}, breakpoints_{std::move(breakpoints)}, data_{std::move(data)}
  {
    config_.validate();
    if (breakpoints_.max_bits() < config_.paa.max_card_bits) {
      throw ArgumentError("breakpoints are coarser than the configured cardinality");
    }
    if (!data_) throw ArgumentError("index needs a dataset");
    fingerprint_ = DataFingerprint::of(encode_collection(*data_));
    window_stats_.reserve(data_->size());
    for (const auto &s : data_->series) window_stats_.emplace_back(s.view());
  }

  UlisseIndex(const UlisseIndex &) = delete;
  UlisseIndex &operator=(const UlisseIndex &) = delete;
  UlisseIndex(UlisseIndex &&) noexcept = default;
  UlisseIndex &operator=(UlisseIndex &&) noexcept = default;

  /*##################################################################################
   * Accessors
   *################################################################################*/

  [[nodiscard]] const IndexConfig &
  config() const noexcept
  {
    return config_;
  }

  [[nodiscard]] const Breakpoints &
  breakpoints() const noexcept
  {
    return breakpoints_;
  }

  /// All envelopes at the finest cardinality, in raw-data order.
  [[nodiscard]] const std::vector<UEnvelope> &
  envelopes() const noexcept
  {
    return envelopes_;
  }

  [[nodiscard]] const RootMap &
  roots() const noexcept
  {
    return roots_;
  }

  [[nodiscard]] const SeriesCollection &
  data() const noexcept
  {
    return *data_;
  }

  [[nodiscard]] const WindowStats &
  window_stats(std::uint32_t series_id) const
  {
    return window_stats_.at(series_id);
  }

  [[nodiscard]] const DataFingerprint &
  fingerprint() const noexcept
  {
    return fingerprint_;
  }

  [[nodiscard]] const std::filesystem::path &
  data_path() const noexcept
  {
    return data_path_;
  }

  void
  set_data_path(std::filesystem::path p)
  {
    data_path_ = std::move(p);
  }

  void
  set_fingerprint(DataFingerprint fp) noexcept
  {
    fingerprint_ = fp;
  }

  /// Value intervals [beta_l(lower_word), beta_u(upper_word)] of a node's first n segments.
  [[nodiscard]] std::pair<std::vector<double>, std::vector<double>>
  node_intervals(const IndexNode &n, std::size_t segments) const
  {
    return word_intervals(n.lower_word, n.upper_word, breakpoints_, segments);
  }

  /// Visit every node in pre-order (roots in key order).
  void
  for_each_node(const std::function<void(const IndexNode &, std::size_t depth)> &fn) const
  {
    const std::function<void(const IndexNode &, std::size_t)> walk = [&](const IndexNode &n, std::size_t depth) {
      fn(n, depth);
      for (const auto &c : n.children) {
        if (c) walk(*c, depth + 1);
      }
    };
    for (const auto &[key, node] : roots_) walk(*node, 0);
  }

  /// Leaf reached by descending with an envelope's own iSAX(L), or nullptr.
  [[nodiscard]] const IndexNode *
  find_leaf(const UEnvelope &e) const
  {
    const auto it = roots_.find(root_key(e));
    if (it == roots_.end()) return nullptr;
    const IndexNode *n = it->second.get();
    while (n != nullptr && !n->is_leaf()) n = n->children[route_bit(*n, e)].get();
    return n;
  }

  /*##################################################################################
   * Construction
   *################################################################################*/

  /**
   * @brief Append an envelope to the list and route it to a leaf by iSAX(L),
   * widening iSAX(U) and max_length along the path.
   */
  void
  insert_envelope(UEnvelope e)
  {
    if (e.lower.size() != config_.paa.word_len || e.upper.size() != config_.paa.word_len) {
      throw ArgumentError("envelope word length does not match the index");
    }
    const auto pos = static_cast<std::uint32_t>(envelopes_.size());
    envelopes_.push_back(std::move(e));
    const UEnvelope &env = envelopes_.back();

    auto &slot = roots_[root_key(env)];
    if (!slot) {
      slot = std::make_unique<IndexNode>();
      slot->lower_word.symbols = root_key(env);
      slot->lower_word.card_bits.assign(config_.paa.word_len, 1);
      slot->upper_word = slot->lower_word;
    }
    IndexNode *n = slot.get();
    while (true) {
      widen(*n, env);
      if (n->is_leaf()) break;
      const auto bit = route_bit(*n, env);
      auto &child = n->children[bit];
      if (!child) child = make_child(*n, bit);
      n = child.get();
    }
    n->entries.push_back(pos);
    if (n->entries.size() > config_.leaf_capacity) split_leaf(*n);
  }

  /**
   * @brief Turn an over-full leaf into an inner node with two children refined
   * by one bit of the next splittable segment (round-robin). A child that
   * receives nothing is not created. Returns false when every segment is at
   * the finest cardinality, leaving the leaf oversized.
   */
  bool
  split_leaf(IndexNode &n)
  {
    if (!n.is_leaf()) throw ArgumentError("only leaves split");
    const std::uint32_t w = config_.paa.word_len;
    std::optional<std::uint32_t> seg;
    for (std::uint32_t t = 0; t < w; ++t) {
      const std::uint32_t k = (n.next_split + t) % w;
      if (n.lower_word.card_bits[k] < config_.paa.max_card_bits) {
        seg = k;
        break;
      }
    }
    if (!seg) return false;

    n.split_segment = *seg;
    std::vector<std::uint32_t> entries = std::move(n.entries);
    n.entries.clear();
    for (const auto pos : entries) {
      const UEnvelope &env = envelopes_[pos];
      const auto bit = route_bit(n, env);
      auto &child = n.children[bit];
      if (!child) child = make_child(n, bit);
      widen(*child, env);
      child->entries.push_back(pos);
    }
    for (auto &child : n.children) {
      if (child && child->entries.size() > config_.leaf_capacity) split_leaf(*child);
    }
    return true;
  }

  /*##################################################################################
   * Persistence hooks
   *################################################################################*/

  void
  adopt_tree(std::vector<UEnvelope> envelopes, RootMap roots)
  {
    envelopes_ = std::move(envelopes);
    roots_ = std::move(roots);
  }

  [[nodiscard]] RootKey
  root_key(const UEnvelope &e) const
  {
    RootKey key(e.lower.size());
    for (std::size_t k = 0; k < key.size(); ++k) {
      key[k] = static_cast<std::uint8_t>(e.lower.symbols[k] >> (e.lower.card_bits[k] - 1));
    }
    return key;
  }

 private:
  [[nodiscard]] std::size_t
  route_bit(const IndexNode &n, const UEnvelope &e) const
  {
    const std::uint32_t seg = *n.split_segment;
    const std::uint8_t bits = n.lower_word.card_bits[seg] + 1;
    return (e.lower.symbols[seg] >> (e.lower.card_bits[seg] - bits)) & 1U;
  }

  [[nodiscard]] std::unique_ptr<IndexNode>
  make_child(const IndexNode &parent, std::size_t bit) const
  {
    auto child = std::make_unique<IndexNode>();
    const std::uint32_t seg = *parent.split_segment;
    child->lower_word = parent.lower_word;
    child->lower_word.card_bits[seg] += 1;
    child->lower_word.symbols[seg] = static_cast<std::uint8_t>((parent.lower_word.symbols[seg] << 1) | bit);
    child->upper_word.symbols.assign(parent.lower_word.size(), 0);
    child->upper_word.card_bits = child->lower_word.card_bits;
    child->next_split = (seg + 1) % config_.paa.word_len;
    return child;
  }

  static void
  widen(IndexNode &n, const UEnvelope &e)
  {
    for (std::size_t k = 0; k < n.upper_word.size(); ++k) {
      const auto sym = static_cast<std::uint8_t>(e.upper.symbols[k] >> (e.upper.card_bits[k] - n.upper_word.card_bits[k]));
      n.upper_word.symbols[k] = std::max(n.upper_word.symbols[k], sym);
    }
    n.max_length = std::max(n.max_length, e.max_length());
  }

  IndexConfig config_;
  Breakpoints breakpoints_;
  std::shared_ptr<const SeriesCollection> data_;
  std::vector<WindowStats> window_stats_{};
  DataFingerprint fingerprint_{};
  std::filesystem::path data_path_{};
  std::vector<UEnvelope> envelopes_{};
  RootMap roots_{};
};

/// Envelope of series `d` starting at 1-based offset `a`, in the index's mode.
inline std::optional<UEnvelope>
build_envelope(const DataSeries &d, const IndexConfig &cfg, const Breakpoints &bp, std::size_t a,
               BuildTally *tally = nullptr)
{
  return cfg.normalized ? build_envelope_norm(d, cfg.paa, cfg.range, cfg.gamma, a, &bp, tally)
                        : build_envelope_raw(d, cfg.paa, cfg.range, cfg.gamma, a, &bp, tally);
}

/// Sequential insertion of every envelope, series by series, offsets 1, 1+(gamma+1), ...
inline UlisseIndex
build_index(std::shared_ptr<const SeriesCollection> data, const IndexConfig &cfg)
{
  if (!data || data->empty()) throw ArgumentError("cannot index an empty collection");
  cfg.validate();
  Breakpoints bp = cfg.breakpoint_mode == BreakpointMode::kGaussian
                       ? gaussian_breakpoints(cfg.paa.max_card_bits)
                       : empirical_breakpoints(*data, cfg.paa, cfg.breakpoint_sample, cfg.breakpoint_seed);
  UlisseIndex idx{cfg, std::move(bp), data};
  idx.set_data_path(data->source_path);
  if (!data->source_path.empty() && std::filesystem::exists(data->source_path)) {
    idx.set_fingerprint(DataFingerprint::of(detail::read_file(data->source_path)));
  }
  for (const auto &d : data->series) {
    for (std::size_t a = 1;; a += std::size_t{cfg.gamma} + 1) {
      auto e = build_envelope(d, cfg, idx.breakpoints(), a);
      if (!e) break;
      idx.insert_envelope(std::move(*e));
    }
  }
  return idx;
}

inline UlisseIndex
build_index(const SeriesCollection &c, const IndexConfig &cfg)
{
  return build_index(std::make_shared<const SeriesCollection>(c), cfg);
}

/*##################################################################################
 * Index file format
 *
 * "ULSI" | u8 version | config | dataset locator + fingerprint | envelope list | tree
 *
 * config:    u32 s, u32 w, u8 max bits, u32 l_min, u32 l_max, u32 gamma,
 *            u8 normalized, u32 leaf capacity, u8 breakpoint mode,
 *            u32 n, n x f64 finest thresholds
 * dataset:   u32 path length, path bytes, u64 byte size, u64 checksum
 * envelopes: u32 count, then per envelope u32 series id, u32 offset, u32 gamma,
 *            w + w symbol bytes (L, U), w + w f32 (L, U)
 * tree:      u32 root count, then each root in pre-order:
 *            u8 kind (0 leaf, 1 inner), w card bytes, w lower bytes, w upper bytes,
 *            u32 max length, u32 next split;
 *            leaf:  u32 entry count, entries as u32 list positions
 *            inner: u32 split segment, u8 child mask (bit b = child b present), children
 *################################################################################*/

inline constexpr std::string_view kIndexMagic = "ULSI";
inline constexpr std::uint8_t kIndexVersion = 1;

namespace detail
{
inline void
write_node(ByteWriter &out, const IndexNode &n)
{
  out.u8(n.is_leaf() ? 0 : 1);
  for (const auto b : n.lower_word.card_bits) out.u8(b);
  for (const auto s : n.lower_word.symbols) out.u8(s);
  for (const auto s : n.upper_word.symbols) out.u8(s);
  out.u32(n.max_length);
  out.u32(n.next_split);
  if (n.is_leaf()) {
    out.u32(static_cast<std::uint32_t>(n.entries.size()));
    for (const auto e : n.entries) out.u32(e);
  } else {
    out.u32(*n.split_segment);
    out.u8(static_cast<std::uint8_t>((n.children[0] ? 1 : 0) | (n.children[1] ? 2 : 0)));
    for (const auto &c : n.children) {
      if (c) write_node(out, *c);
    }
  }
}

inline std::unique_ptr<IndexNode>
read_node(ByteReader &in, std::size_t w, std::size_t n_envelopes, std::size_t depth = 0)
{
  if (depth > 8 * w + 1) throw FormatError("index tree deeper than any valid split chain");
  auto n = std::make_unique<IndexNode>();
  const auto kind = in.u8();
  if (kind > 1) throw FormatError("unknown node kind");
  n->lower_word.card_bits.resize(w);
  n->lower_word.symbols.resize(w);
  n->upper_word.symbols.resize(w);
  for (auto &b : n->lower_word.card_bits) b = in.u8();
  for (auto &s : n->lower_word.symbols) s = in.u8();
  for (auto &s : n->upper_word.symbols) s = in.u8();
  n->upper_word.card_bits = n->lower_word.card_bits;
  n->max_length = in.u32();
  n->next_split = in.u32();
  if (kind == 0) {
    n->entries.resize(in.u32());
    for (auto &e : n->entries) {
      e = in.u32();
      if (e >= n_envelopes) throw FormatError("leaf references a missing envelope");
    }
  } else {
    n->split_segment = in.u32();
    if (*n->split_segment >= w) throw FormatError("split segment out of range");
    const auto mask = in.u8();
    for (std::size_t b = 0; b < 2; ++b) {
      if ((mask >> b) & 1U) n->children[b] = read_node(in, w, n_envelopes, depth + 1);
    }
  }
  return n;
}
}  // namespace detail

inline std::vector<char>
encode_index(const UlisseIndex &idx)
{
  const auto &cfg = idx.config();
  const std::size_t w = cfg.paa.word_len;
  detail::ByteWriter out;
  out.bytes(kIndexMagic);
  out.u8(kIndexVersion);
  out.u32(cfg.paa.segment_len);
  out.u32(cfg.paa.word_len);
  out.u8(cfg.paa.max_card_bits);
  out.u32(cfg.range.l_min);
  out.u32(cfg.range.l_max);
  out.u32(cfg.gamma);
  out.u8(cfg.normalized ? 1 : 0);
  out.u32(cfg.leaf_capacity);
  out.u8(static_cast<std::uint8_t>(idx.breakpoints().mode()));
  out.u32(static_cast<std::uint32_t>(idx.breakpoints().finest().size()));
  for (const double t : idx.breakpoints().finest()) out.f64(t);

  const std::string path = idx.data_path().string();
  out.u32(static_cast<std::uint32_t>(path.size()));
  out.bytes(path);
  out.u64(idx.fingerprint().size);
  out.u64(idx.fingerprint().checksum);

  out.u32(static_cast<std::uint32_t>(idx.envelopes().size()));
  for (const auto &e : idx.envelopes()) {
    out.u32(e.series_id);
    out.u32(e.start_offset);
    out.u32(e.gamma);
    for (std::size_t k = 0; k < w; ++k) out.u8(e.lower.symbols[k]);
    for (std::size_t k = 0; k < w; ++k) out.u8(e.upper.symbols[k]);
    for (std::size_t k = 0; k < w; ++k) out.f32(static_cast<float>(e.lower_paa[k]));
    for (std::size_t k = 0; k < w; ++k) out.f32(static_cast<float>(e.upper_paa[k]));
  }

  out.u32(static_cast<std::uint32_t>(idx.roots().size()));
  for (const auto &[key, node] : idx.roots()) detail::write_node(out, *node);
  return out.data();
}

/// Writes the index; the dataset must already exist at idx.data_path() for a later load.
inline void
save_index(const UlisseIndex &idx, const std::filesystem::path &path)
{
  detail::write_file(path, encode_index(idx));
}

/**
 * @brief Read an index and re-attach its dataset.
 *
 * The dataset is taken from `data_override` when given, else from the stored
 * locator (relative locators resolve against the index file's directory
 * first). A missing or changed dataset raises FingerprintError.
 */
inline UlisseIndex
load_index(const std::filesystem::path &path, const std::optional<std::filesystem::path> &data_override = {})
{
  const auto raw = detail::read_file(path);
  detail::ByteReader in{raw};
  if (raw.size() < 5 || in.bytes(4) != kIndexMagic) throw FormatError(path.string() + ": not an index file");
  if (const auto v = in.u8(); v != kIndexVersion) {
    throw VersionError(path.string() + ": index version " + std::to_string(v) + ", expected " +
                       std::to_string(kIndexVersion));
  }
  IndexConfig cfg;
  cfg.paa.segment_len = in.u32();
  cfg.paa.word_len = in.u32();
  cfg.paa.max_card_bits = in.u8();
  cfg.range.l_min = in.u32();
  cfg.range.l_max = in.u32();
  cfg.gamma = in.u32();
  cfg.normalized = in.u8() != 0;
  cfg.leaf_capacity = in.u32();
  const auto mode = in.u8();
  if (mode > 1) throw FormatError("unknown breakpoint mode");
  cfg.breakpoint_mode = static_cast<BreakpointMode>(mode);
  std::vector<double> finest(in.u32());
  for (auto &t : finest) t = in.f64();
  cfg.validate();
  const auto bits = static_cast<std::uint8_t>(std::countr_zero(finest.size() + 1));
  Breakpoints bp{cfg.breakpoint_mode, bits, std::move(finest)};

  const std::filesystem::path stored = in.bytes(in.u32());
  DataFingerprint fp;
  fp.size = in.u64();
  fp.checksum = in.u64();

  std::filesystem::path data_path = data_override.value_or(stored);
  if (!data_override && data_path.is_relative()) {
    const auto beside = path.parent_path() / data_path;
    if (std::filesystem::exists(beside)) data_path = beside;
  }
  if (!std::filesystem::exists(data_path)) {
    throw FingerprintError("dataset " + data_path.string() + " referenced by " + path.string() + " is missing");
  }
  if (DataFingerprint::of(detail::read_file(data_path)) != fp) {
    throw FingerprintError("dataset " + data_path.string() + " does not match the index fingerprint");
  }
  auto data = std::make_shared<const SeriesCollection>(load_collection(data_path));
  UlisseIndex idx{cfg, std::move(bp), data};
  idx.set_data_path(stored);
  idx.set_fingerprint(fp);

  const std::size_t w = cfg.paa.word_len;
  std::vector<UEnvelope> envelopes(in.u32());
  for (auto &e : envelopes) {
    e.series_id = in.u32();
    e.start_offset = in.u32();
    e.gamma = in.u32();
    if (e.series_id >= data->size()) throw FormatError("envelope references a missing series");
    e.range = cfg.range;
    e.normalized = cfg.normalized;
    e.segment_len = cfg.paa.segment_len;
    e.series_length = static_cast<std::uint32_t>((*data)[e.series_id].size());
    e.lower.symbols.resize(w);
    e.upper.symbols.resize(w);
    e.lower.card_bits.assign(w, cfg.paa.max_card_bits);
    e.upper.card_bits.assign(w, cfg.paa.max_card_bits);
    for (auto &s : e.lower.symbols) s = in.u8();
    for (auto &s : e.upper.symbols) s = in.u8();
    e.lower_paa.coeffs.resize(w);
    e.upper_paa.coeffs.resize(w);
    for (auto &v : e.lower_paa.coeffs) v = in.f32();
    for (auto &v : e.upper_paa.coeffs) v = in.f32();
  }

  UlisseIndex::RootMap roots;
  const auto n_roots = in.u32();
  for (std::uint32_t i = 0; i < n_roots; ++i) {
    auto node = detail::read_node(in, w, envelopes.size());
    UlisseIndex::RootKey key(node->lower_word.symbols.begin(), node->lower_word.symbols.end());
    roots.emplace(std::move(key), std::move(node));
  }
  if (in.remaining() != 0) throw FormatError(path.string() + ": trailing bytes");
  idx.adopt_tree(std::move(envelopes), std::move(roots));
  return idx;
}

}  // namespace ulisse

#endif  // ULISSE_INDEX_HPP
