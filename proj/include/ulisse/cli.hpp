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

#ifndef ULISSE_CLI_HPP
#define ULISSE_CLI_HPP

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "ulisse/ulisse.hpp"

namespace ulisse::cli
{
inline constexpr int kExitOk = 0;
inline constexpr int kExitContract = 1;
inline constexpr int kExitInternal = 2;

/// CSV headers. Changing a column list is a schema change.
inline constexpr std::string_view kResultHeader = "query_id,rank,series_id,offset,length,distance";
inline constexpr std::string_view kStatsHeader =
    "query_id,length,exact,pruning_power,abandoning_power,leaves_visited,envelopes_pruned,envelopes_checked,"
    "true_dist_computed,lbkeogh_computed,points_fetched,wall_ms";
inline constexpr std::string_view kBenchHeader =
    "length,gamma_pct,gamma,envelopes,queries,mean_ms,pruning_power,abandoning_power,leaves_visited,points_fetched";

/// Printf-style %.10g, with "inf" for infinities.
inline std::string
fmt(double v)
{
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

/// Runs fn(i) for i in [0, n) on up to `jobs` threads.
inline void
parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)> &fn)
{
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          const std::lock_guard lock{failure_mutex};
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto &th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

/// Output stream for a path, "-" meaning `fallback`.
class Sink
{
 public:
  Sink(const std::string &path, std::ostream &fallback)
  {
    if (path.empty() || path == "-") {
      os_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw IoError("cannot open " + path + " for writing");
    os_ = file_.get();
  }

  std::ostream &
  get() noexcept
  {
    return *os_;
  }

 private:
  std::unique_ptr<std::ofstream> file_{};
  std::ostream *os_{nullptr};
};

inline void
write_results(std::ostream &os, std::size_t query_id, const std::vector<Match> &matches)
{
  for (std::size_t r = 0; r < matches.size(); ++r) {
    const auto &m = matches[r];
    os << query_id << ',' << r + 1 << ',' << m.ref.series_id << ',' << m.ref.offset << ',' << m.ref.length << ','
       << fmt(m.distance) << '\n';
  }
}

inline Measure
parse_measure(const std::string &s)
{
  if (s == "ed") return Measure::kEuclidean;
  if (s == "dtw") return Measure::kDtw;
  throw ArgumentError("unknown measure '" + s + "' (expected ed or dtw)");
}

inline std::uint32_t
gamma_from_pct(double pct, const LengthRange &r)
{
  if (!(pct >= 0.0)) throw ArgumentError("gamma percentage must be >= 0");
  return static_cast<std::uint32_t>(std::llround(pct / 100.0 * static_cast<double>(r.l_max - r.l_min)));
}

/*##################################################################################
 * Option sets
 *################################################################################*/

struct GenerateOptions {
  std::size_t n{0};
  std::size_t len{0};
  std::vector<std::size_t> lengths{};
  std::uint64_t seed{0};
  std::string out{};
  std::string from_data{};
  double noise_std{0.0};
};

struct BuildOptions {
  std::string data{};
  std::uint32_t lmin{160};
  std::uint32_t lmax{256};
  std::optional<std::uint32_t> gamma{};
  double gamma_pct{100.0};
  std::uint32_t seg_len{16};
  bool normalized{false};
  std::uint32_t leaf_cap{2000};
  std::string breakpoints{"auto"};
  std::uint32_t bp_sample{100000};
  std::uint64_t seed{0};
  std::string out{};
};

struct SearchOptions {
  std::string index{};
  std::string data{};
  std::string queries{};
  std::size_t k{1};
  std::optional<double> epsilon{};
  std::string measure{"ed"};
  double warp_pct{10.0};
  std::size_t jobs{1};
};

struct QueryOptions : SearchOptions {
  bool approx_only{false};
  std::string stats_out{};
  std::string out{"-"};
};

struct VerifyOptions : SearchOptions {
  std::size_t sweep{200};
  std::uint64_t seed{0};
  bool inject_bound_violation{false};
};

struct BenchOptions {
  std::string data{};
  std::size_t n{200};
  std::size_t len{256};
  std::uint32_t lmin{160};
  std::uint32_t lmax{256};
  std::vector<std::size_t> lengths{160, 192, 224, 256};
  std::vector<double> gamma_pcts{0, 20, 40, 60, 80, 100};
  std::size_t queries{20};
  std::size_t k{1};
  std::string measure{"ed"};
  double warp_pct{10.0};
  bool normalized{false};
  double noise_std{0.1};
  std::uint32_t seg_len{16};
  std::uint32_t leaf_cap{2000};
  std::uint64_t seed{0};
  std::size_t jobs{1};
  std::string out{"-"};
};

/*##################################################################################
 * Commands
 *################################################################################*/

inline int
cmd_generate(const GenerateOptions &o, std::ostream &out)
{
  SeriesCollection c;
  if (!o.from_data.empty()) {
    std::vector<std::size_t> lengths = o.lengths;
    if (lengths.empty() && o.len > 0) lengths.push_back(o.len);
    if (lengths.empty()) throw ArgumentError("--from-data needs --len or --lengths");
    c = extract_noisy_queries(load_collection(o.from_data), o.n, lengths, o.noise_std, o.seed);
  } else {
    if (!o.lengths.empty()) throw ArgumentError("--lengths applies to --from-data only");
    c = generate_random_walk(o.n, o.len, o.seed);
  }
  save_collection(c, o.out);
  std::size_t points = 0;
  for (const auto &s : c.series) points += s.size();
  out << "wrote " << c.size() << " series (" << points << " points) to " << o.out << '\n';
  return kExitOk;
}

inline int
cmd_build(const BuildOptions &o, std::ostream &out)
{
  const LengthRange range{o.lmin, o.lmax};
  range.validate();
  const std::uint32_t gamma = o.gamma ? *o.gamma : gamma_from_pct(o.gamma_pct, range);
  auto cfg = IndexConfig::make(range, gamma, o.normalized, o.seg_len);
  cfg.leaf_capacity = o.leaf_cap;
  cfg.breakpoint_sample = o.bp_sample;
  cfg.breakpoint_seed = o.seed;
  if (o.breakpoints == "gaussian") {
    cfg.breakpoint_mode = BreakpointMode::kGaussian;
  } else if (o.breakpoints == "empirical") {
    cfg.breakpoint_mode = BreakpointMode::kEmpirical;
  } else if (o.breakpoints != "auto") {
    throw ArgumentError("unknown breakpoint mode '" + o.breakpoints + "'");
  }

  auto data = std::make_shared<const SeriesCollection>(load_collection(o.data));
  const auto t0 = std::chrono::steady_clock::now();
  UlisseIndex idx = build_index(data, cfg);
  // record the dataset relative to the index so the pair can move together
  const auto index_dir = std::filesystem::absolute(o.out).parent_path();
  idx.set_data_path(std::filesystem::relative(std::filesystem::absolute(o.data), index_dir));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto bytes = encode_index(idx);
  detail::write_file(o.out, bytes);

  std::size_t leaves = 0;
  idx.for_each_node([&leaves](const IndexNode &n, std::size_t) { leaves += n.is_leaf() ? 1 : 0; });
  out << "envelopes: " << idx.envelopes().size() << '\n'
      << "gamma: " << gamma << '\n'
      << "leaves: " << leaves << '\n'
      << "index bytes: " << bytes.size() << '\n'
      << "space model bytes: "
      << fmt(space_model_bytes(idx.envelopes().size(), cfg.paa.word_len)) << '\n'
      << "build seconds: " << fmt(secs) << '\n';
  return kExitOk;
}

namespace detail
{
inline QuerySpec
make_spec(const SearchOptions &o, const DataSeries &q, bool normalized)
{
  QuerySpec s;
  s.q = q;
  s.k = o.k;
  s.epsilon = o.epsilon;
  s.measure = parse_measure(o.measure);
  s.warp_fraction = o.warp_pct / 100.0;
  s.normalized = normalized;
  return s;
}

inline UlisseIndex
open_index(const SearchOptions &o)
{
  std::optional<std::filesystem::path> data;
  if (!o.data.empty()) data = o.data;
  return load_index(o.index, data);
}
}  // namespace detail

inline int
cmd_query(const QueryOptions &o, std::ostream &out)
{
  if (o.approx_only && o.epsilon) throw ArgumentError("--approx-only applies to k-NN queries");
  const UlisseIndex idx = detail::open_index(o);
  const SeriesCollection queries = load_collection(o.queries);
  const std::size_t n = queries.size();
  std::vector<std::vector<Match>> results(n);
  std::vector<QueryStats> stats(n);
  std::vector<double> wall(n, 0.0);
  std::vector<bool> exact(n, true);

  parallel_for(n, o.jobs, [&](std::size_t i) {
    const auto spec = detail::make_spec(o, queries[i], idx.config().normalized);
    const auto t0 = std::chrono::steady_clock::now();
    if (o.epsilon) {
      auto r = range_search(idx, spec);
      results[i] = std::move(r.matches);
      stats[i] = r.stats;
    } else if (o.approx_only) {
      auto r = knn_approx(idx, spec);
      results[i] = std::move(r.matches);
      stats[i] = r.stats;
      exact[i] = r.exact;
    } else {
      auto r = knn_exact(idx, spec);
      results[i] = std::move(r.matches);
      stats[i] = r.stats;
    }
    wall[i] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  });

  Sink sink{o.out, out};
  sink.get() << kResultHeader << '\n';
  for (std::size_t i = 0; i < n; ++i) write_results(sink.get(), i, results[i]);

  if (!o.stats_out.empty()) {
    Sink ss{o.stats_out, out};
    ss.get() << kStatsHeader << '\n';
    for (std::size_t i = 0; i < n; ++i) {
      const auto &s = stats[i];
      ss.get() << i << ',' << queries[i].size() << ',' << (exact[i] ? 1 : 0) << ',' << fmt(s.pruning_power()) << ','
               << fmt(s.abandoning_power()) << ',' << s.leaves_visited << ',' << s.envelopes_pruned << ','
               << s.envelopes_checked << ',' << s.true_dist_computed << ',' << s.lbkeogh_computed << ','
               << s.points_fetched << ',' << fmt(wall[i]) << '\n';
    }
  }
  return kExitOk;
}

namespace detail
{
/// Z-normalized copy when `normalized`, else the raw window.
inline std::vector<double>
window_values(const DataSeries &d, std::size_t start0, std::size_t len, bool normalized)
{
  DataSeries w{d.id, {d.values.begin() + static_cast<std::ptrdiff_t>(start0),
                      d.values.begin() + static_cast<std::ptrdiff_t>(start0 + len)}};
  return normalized ? znormalize(w).series.values : w.values;
}

struct CheckReport {
  std::size_t checked{0};
  std::size_t violations{0};
  std::string first{};

  void
  fail(std::string what)
  {
    if (violations++ == 0) first = std::move(what);
  }
};

/// Every represented subsequence's PAA lies inside [L, U] on its covered segments.
inline CheckReport
containment_sweep(const UlisseIndex &idx, const std::vector<std::uint32_t> &sample)
{
  CheckReport rep;
  const auto &cfg = idx.config();
  const std::size_t s = cfg.paa.segment_len;
  for (const auto pos : sample) {
    const auto &e = idx.envelopes()[pos];
    const auto &d = idx.data()[e.series_id];
    for (const auto &ref : enumerate_represented(e, idx.data())) {
      const auto v = window_values(d, ref.offset - 1, ref.length, cfg.normalized);
      const auto p = paa(v, s);
      ++rep.checked;
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] < e.lower_paa[k] || p[k] > e.upper_paa[k]) {
          rep.fail("series " + std::to_string(ref.series_id) + " offset " + std::to_string(ref.offset) + " length " +
                   std::to_string(ref.length) + " segment " + std::to_string(k) + " outside the envelope");
          break;
        }
      }
    }
  }
  return rep;
}

/// Envelope bounds never exceed the true distance of a represented same-length subsequence.
inline CheckReport
soundness_sweep(const UlisseIndex &idx, const SeriesCollection &queries, const SearchOptions &o,
                const std::vector<std::uint32_t> &sample, bool inject)
{
  CheckReport rep;
  const auto &cfg = idx.config();
  const Measure measure = parse_measure(o.measure);
  for (std::size_t qi = 0; qi < queries.size(); ++qi) {
    const auto &qd = queries[qi];
    if (!cfg.range.contains(qd.size())) continue;
    const auto spec = make_spec(o, qd, cfg.normalized);
    const WarpingWindow window = measure == Measure::kDtw ? spec.window() : WarpingWindow{};
    SubsequenceScorer scorer{qd.view(), measure, window, cfg.normalized};
    const auto summary = summarize_query(scorer.query(), cfg.paa.segment_len,
                                         measure == Measure::kDtw ? std::optional{window} : std::nullopt);
    for (const auto pos : sample) {
      const auto &e = idx.envelopes()[pos];
      if (!e.admits(qd.size())) continue;
      const double lb = (measure == Measure::kEuclidean ? mindist_ulisse(summary, e, idx.breakpoints())
                                                        : lb_pal(summary, e, idx.breakpoints())) *
                            (inject ? 1e6 : 1.0) +
                        (inject ? 1.0 : 0.0);
      const auto &d = idx.data()[e.series_id];
      ScoreTally tally;
      for (std::uint32_t a = e.start_offset; a <= e.last_start(qd.size()); ++a) {
        const double dist = std::sqrt(*scorer.score(d.view(), idx.window_stats(e.series_id), a - 1, kInf, false, tally));
        ++rep.checked;
        if (lb > dist) {
          rep.fail("query " + std::to_string(qi) + " envelope " + std::to_string(pos) + ": bound " + fmt(lb) +
                   " exceeds distance " + fmt(dist) + " at offset " + std::to_string(a));
        }
      }
    }
  }
  return rep;
}

inline std::vector<std::uint32_t>
sample_envelopes(std::size_t total, std::size_t want, std::uint64_t seed)
{
  std::vector<std::uint32_t> all(total);
  for (std::size_t i = 0; i < total; ++i) all[i] = static_cast<std::uint32_t>(i);
  if (want >= total) return all;
  std::mt19937_64 rng{seed};
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(want);
  std::sort(all.begin(), all.end());
  return all;
}
}  // namespace detail

inline int
cmd_verify(const VerifyOptions &o, std::ostream &out)
{
  std::optional<UlisseIndex> loaded;
  try {
    loaded.emplace(detail::open_index(o));
  } catch (const FingerprintError &e) {
    out << "index: FAIL " << e.what() << '\n' << "verify: FAIL\n";
    return kExitContract;
  }
  const UlisseIndex &idx = *loaded;
  const SeriesCollection queries = load_collection(o.queries);
  const std::size_t n = queries.size();
  out << "index: PASS " << idx.envelopes().size() << " envelopes\n";

  std::vector<std::string> diffs(n);
  parallel_for(n, o.jobs, [&](std::size_t i) {
    const auto spec = detail::make_spec(o, queries[i], idx.config().normalized);
    const auto got = o.epsilon ? range_search(idx, spec).matches : knn_exact(idx, spec).matches;
    const auto want = o.epsilon ? scan_range(idx.data(), spec) : scan_knn(idx.data(), spec);
    if (got == want) return;
    std::string msg = "query " + std::to_string(i) + ": index " + std::to_string(got.size()) + " rows, oracle " +
                      std::to_string(want.size()) + " rows";
    for (std::size_t r = 0; r < std::min(got.size(), want.size()); ++r) {
      if (!(got[r] == want[r])) {
        msg += ", first difference at rank " + std::to_string(r + 1);
        break;
      }
    }
    diffs[i] = msg;
  });
  std::size_t bad = 0;
  std::string first;
  for (const auto &d : diffs) {
    if (d.empty()) continue;
    if (bad++ == 0) first = d;
  }
  bool ok = bad == 0;
  out << "oracle: " << (bad == 0 ? "PASS" : "FAIL") << ' ' << n - bad << '/' << n << " queries agree"
      << (first.empty() ? "" : "; " + first) << '\n';

  const auto sample = detail::sample_envelopes(idx.envelopes().size(), o.sweep, o.seed);
  const auto cont = detail::containment_sweep(idx, sample);
  ok = ok && cont.violations == 0;
  out << "containment: " << (cont.violations == 0 ? "PASS" : "FAIL") << ' ' << cont.checked << " subsequences, "
      << cont.violations << " violations" << (cont.first.empty() ? "" : "; " + cont.first) << '\n';

  const auto sound = detail::soundness_sweep(idx, queries, o, sample, o.inject_bound_violation);
  ok = ok && sound.violations == 0;
  out << "soundness: " << (sound.violations == 0 ? "PASS" : "FAIL") << ' ' << sound.checked << " pairs, "
      << sound.violations << " violations" << (sound.first.empty() ? "" : "; " + sound.first) << '\n';

  out << "verify: " << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kExitOk : kExitContract;
}

inline int
cmd_bench(const BenchOptions &o, std::ostream &out)
{
  const LengthRange range{o.lmin, o.lmax};
  range.validate();
  const SeriesCollection data =
      o.data.empty() ? generate_random_walk(o.n, o.len, o.seed) : load_collection(o.data);
  const auto shared = std::make_shared<const SeriesCollection>(data);
  const Measure measure = parse_measure(o.measure);

  std::vector<SeriesCollection> workloads;
  for (std::size_t li = 0; li < o.lengths.size(); ++li) {
    const std::size_t len = o.lengths[li];
    if (!range.contains(len)) throw QueryLengthError("bench length " + std::to_string(len) + " outside the range");
    const std::vector<std::size_t> one{len};
    workloads.push_back(extract_noisy_queries(data, o.queries, one, o.noise_std, o.seed + 1 + li));
  }

  Sink sink{o.out, out};
  sink.get() << kBenchHeader << '\n';
  for (const double pct : o.gamma_pcts) {
    const std::uint32_t gamma = gamma_from_pct(pct, range);
    auto cfg = IndexConfig::make(range, gamma, o.normalized, o.seg_len);
    cfg.leaf_capacity = o.leaf_cap;
    cfg.breakpoint_seed = o.seed;
    const UlisseIndex idx = build_index(shared, cfg);
    for (std::size_t li = 0; li < o.lengths.size(); ++li) {
      const auto &qs = workloads[li];
      std::vector<QueryStats> stats(qs.size());
      std::vector<double> wall(qs.size());
      parallel_for(qs.size(), o.jobs, [&](std::size_t i) {
        QuerySpec spec;
        spec.q = qs[i];
        spec.k = o.k;
        spec.measure = measure;
        spec.warp_fraction = o.warp_pct / 100.0;
        spec.normalized = o.normalized;
        const auto t0 = std::chrono::steady_clock::now();
        stats[i] = knn_exact(idx, spec).stats;
        wall[i] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      });
      double ms = 0, pp = 0, ap = 0, lv = 0, pf = 0;
      for (std::size_t i = 0; i < qs.size(); ++i) {
        ms += wall[i];
        pp += stats[i].pruning_power();
        ap += stats[i].abandoning_power();
        lv += static_cast<double>(stats[i].leaves_visited);
        pf += static_cast<double>(stats[i].points_fetched);
      }
      const auto m = static_cast<double>(qs.size());
      sink.get() << o.lengths[li] << ',' << fmt(pct) << ',' << gamma << ',' << idx.envelopes().size() << ','
                 << qs.size() << ',' << fmt(ms / m) << ',' << fmt(pp / m) << ',' << fmt(ap / m) << ','
                 << fmt(lv / m) << ',' << fmt(pf / m) << '\n';
    }
  }
  return kExitOk;
}

/*##################################################################################
 * Entry point
 *################################################################################*/

namespace detail
{
inline void
add_search_options(CLI::App &cmd, SearchOptions &o)
{
  cmd.add_option("--index", o.index, "index file")->required();
  cmd.add_option("--data", o.data, "dataset path (overrides the one recorded in the index)");
  cmd.add_option("--queries", o.queries, "query file (dataset format)")->required();
  auto *k = cmd.add_option("--k", o.k, "number of nearest neighbours")->check(CLI::PositiveNumber);
  auto *eps = cmd.add_option("--epsilon", o.epsilon, "range query radius")->check(CLI::NonNegativeNumber);
  k->excludes(eps);
  cmd.add_option("--measure", o.measure, "ed or dtw")->check(CLI::IsMember({"ed", "dtw"}));
  cmd.add_option("--warp-pct", o.warp_pct, "DTW band as a percentage of the query length")
      ->check(CLI::Range(0.0, 100.0));
  cmd.add_option("--jobs", o.jobs, "worker threads across queries")->check(CLI::PositiveNumber);
}
}  // namespace detail

/// Parses argv (program name included) and runs one subcommand.
inline int
run(const std::vector<std::string> &args, std::ostream &out = std::cout, std::ostream &err = std::cerr)
{
  CLI::App app{"Variable-length subsequence similarity search"};
  app.name(args.empty() ? "ulisse" : std::filesystem::path(args.front()).filename().string());
  app.require_subcommand(1);

  GenerateOptions gen;
  auto *g = app.add_subcommand("generate", "write a random-walk dataset or noisy queries cut from one");
  g->add_option("--n", gen.n, "number of series")->required()->check(CLI::PositiveNumber);
  auto *glen = g->add_option("--len", gen.len, "series length");
  auto *glens = g->add_option("--lengths", gen.lengths, "query lengths, cycled (with --from-data)")->delimiter(',');
  glen->excludes(glens);
  g->add_option("--seed", gen.seed, "random seed");
  g->add_option("--out", gen.out, "output file")->required();
  g->add_option("--from-data", gen.from_data, "cut queries from this dataset")->check(CLI::ExistingFile);
  g->add_option("--noise-std", gen.noise_std, "Gaussian noise added to cut queries")->check(CLI::NonNegativeNumber);

  BuildOptions bld;
  auto *b = app.add_subcommand("build", "build an index over a dataset");
  b->add_option("--data", bld.data, "dataset file")->required()->check(CLI::ExistingFile);
  b->add_option("--lmin", bld.lmin, "shortest query length");
  b->add_option("--lmax", bld.lmax, "longest query length");
  auto *bg = b->add_option("--gamma", bld.gamma, "offsets merged per envelope, absolute");
  auto *bgp = b->add_option("--gamma-pct", bld.gamma_pct, "offsets merged per envelope, % of lmax-lmin")
                  ->check(CLI::NonNegativeNumber);
  bg->excludes(bgp);
  b->add_option("--seg-len", bld.seg_len, "PAA segment length")->check(CLI::PositiveNumber);
  b->add_flag("--normalized", bld.normalized, "index Z-normalized subsequences");
  b->add_option("--leaf-cap", bld.leaf_cap, "leaf capacity")->check(CLI::PositiveNumber);
  b->add_option("--breakpoints", bld.breakpoints, "auto, gaussian or empirical")
      ->check(CLI::IsMember({"auto", "gaussian", "empirical"}));
  b->add_option("--bp-sample", bld.bp_sample, "segment means sampled for empirical breakpoints")
      ->check(CLI::PositiveNumber);
  b->add_option("--seed", bld.seed, "random seed");
  b->add_option("--out", bld.out, "index file")->required();

  QueryOptions qry;
  auto *q = app.add_subcommand("query", "answer k-NN or range queries");
  detail::add_search_options(*q, qry);
  q->add_flag("--approx-only", qry.approx_only, "stop after the approximate phase");
  q->add_option("--stats-out", qry.stats_out, "per-query statistics CSV");
  q->add_option("--out", qry.out, "result CSV (default stdout)");

  VerifyOptions ver;
  auto *v = app.add_subcommand("verify", "compare the index with a sequential scan and sweep its invariants");
  detail::add_search_options(*v, ver);
  v->add_option("--sweep", ver.sweep, "envelopes sampled by the containment and soundness sweeps");
  v->add_option("--seed", ver.seed, "sampling seed");
  v->add_flag("--inject-bound-violation", ver.inject_bound_violation)->group("");

  BenchOptions bch;
  auto *bn = app.add_subcommand("bench", "sweep query lengths and gamma, report mean cost per cell");
  bn->add_option("--data", bch.data, "dataset file (default: generated random walks)")->check(CLI::ExistingFile);
  bn->add_option("--n", bch.n, "generated series count")->check(CLI::PositiveNumber);
  bn->add_option("--len", bch.len, "generated series length")->check(CLI::PositiveNumber);
  bn->add_option("--lmin", bch.lmin, "shortest query length");
  bn->add_option("--lmax", bch.lmax, "longest query length");
  bn->add_option("--lengths", bch.lengths, "query lengths")->delimiter(',');
  bn->add_option("--gamma-pcts", bch.gamma_pcts, "gamma values, % of lmax-lmin")->delimiter(',');
  bn->add_option("--queries", bch.queries, "queries per length")->check(CLI::PositiveNumber);
  bn->add_option("--k", bch.k, "nearest neighbours")->check(CLI::PositiveNumber);
  bn->add_option("--measure", bch.measure, "ed or dtw")->check(CLI::IsMember({"ed", "dtw"}));
  bn->add_option("--warp-pct", bch.warp_pct, "DTW band, % of query length")->check(CLI::Range(0.0, 100.0));
  bn->add_flag("--normalized", bch.normalized, "Z-normalized mode");
  bn->add_option("--noise-std", bch.noise_std, "noise added to extracted queries")->check(CLI::NonNegativeNumber);
  bn->add_option("--seg-len", bch.seg_len, "PAA segment length")->check(CLI::PositiveNumber);
  bn->add_option("--leaf-cap", bch.leaf_cap, "leaf capacity")->check(CLI::PositiveNumber);
  bn->add_option("--seed", bch.seed, "random seed");
  bn->add_option("--jobs", bch.jobs, "worker threads across queries")->check(CLI::PositiveNumber);
  bn->add_option("--out", bch.out, "CSV output (default stdout)");

  std::vector<const char *> argv;
  argv.reserve(args.size() + 1);
  if (args.empty()) argv.push_back("ulisse");
  for (const auto &a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << '\n';
    return kExitContract;
  }

  try {
    if (*g) return cmd_generate(gen, out);
    if (*b) return cmd_build(bld, out);
    if (*q) return cmd_query(qry, out);
    if (*v) return cmd_verify(ver, out);
    if (*bn) return cmd_bench(bch, out);
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return kExitContract;
  } catch (const std::exception &e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace ulisse::cli

#endif  // ULISSE_CLI_HPP
