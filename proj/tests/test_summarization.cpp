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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "reference.hpp"
#include "ulisse/summarization.hpp"

using namespace ulisse;
using Catch::Approx;

namespace
{
/// Envelope edges are rounded outward to float; allow that much slack against exact values.
bool
outward_match(double got_lo, double got_hi, double want_lo, double want_hi)
{
  const auto slack = [](double v) { return 1e-6 * (1.0 + std::fabs(v)); };
  return got_lo <= want_lo && got_lo >= want_lo - slack(want_lo) && got_hi >= want_hi &&
         got_hi <= want_hi + slack(want_hi);
}

DataSeries
series_of(const ref::Vec &v)
{
  return DataSeries{0, v};
}
}  // namespace

TEST_CASE("PAA", "[summarization][paa]")
{
  CHECK(paa(std::vector<double>{1, 1, 2, 2}, 2).coeffs == std::vector<double>{1.0, 2.0});
  const auto flat = paa(std::vector<double>(60, 4.25), 20);
  CHECK(flat.coeffs == std::vector<double>{4.25, 4.25, 4.25});
  CHECK(paa(std::vector<double>(60, 0.0), 20).size() == 3);
  CHECK(paa(std::vector<double>(70, 0.0), 20).size() == 3);
  CHECK_THROWS_AS(paa(std::vector<double>(3, 0.0), 4), ArgumentError);

  std::mt19937_64 rng{3};
  for (int t = 0; t < 100; ++t) {
    const auto x = ref::random_walk(256, rng);
    const auto got = paa(x, 16);
    const auto want = ref::paa(x, 16);
    REQUIRE(got.size() == want.size());
    for (std::size_t k = 0; k < want.size(); ++k) CHECK(got[k] == Approx(want[k]).margin(1e-12));
  }
}

TEST_CASE("PAA of a prefix equals the prefix of the PAA", "[summarization][paa]")
{
  std::mt19937_64 rng{4};
  std::uniform_int_distribution<std::size_t> len_d{160, 256};
  for (int t = 0; t < 1000; ++t) {
    const auto master = ref::random_walk(256, rng);
    const std::size_t len = len_d(rng);
    const auto full = paa(master, 16);
    const auto prefix = paa(std::span<const double>(master).first(len), 16);
    REQUIRE(prefix.size() == len / 16);
    for (std::size_t k = 0; k < prefix.size(); ++k) REQUIRE(prefix[k] == full[k]);
  }
}

TEST_CASE("Gaussian breakpoints", "[summarization][breakpoints]")
{
  const auto bp = gaussian_breakpoints(8);
  CHECK(bp.level(1) == std::vector<double>{0.0});
  const auto l2 = bp.level(2);
  REQUIRE(l2.size() == 3);
  CHECK(l2[0] == Approx(ref::normal_quantile(0.25)).margin(1e-9));
  CHECK(l2[1] == 0.0);
  CHECK(l2[2] == Approx(ref::normal_quantile(0.75)).margin(1e-9));
  CHECK(l2[0] == Approx(-0.6745).margin(1e-4));

  for (std::size_t j = 1; j < 256; ++j) {
    CHECK(bp.finest()[j - 1] == Approx(ref::normal_quantile(static_cast<double>(j) / 256.0)).margin(1e-9));
  }
  for (std::uint8_t b = 1; b < 8; ++b) {
    const auto coarse = bp.level(b);
    const auto fine = bp.level(static_cast<std::uint8_t>(b + 1));
    for (const double t : coarse) CHECK(std::find(fine.begin(), fine.end(), t) != fine.end());
  }
}

TEST_CASE("empirical breakpoints follow sample quantiles", "[summarization][breakpoints]")
{
  std::mt19937_64 rng{5};
  std::uniform_real_distribution<double> u{0.0, 1.0};
  std::vector<std::vector<double>> rows(50, std::vector<double>(400));
  std::vector<double> all;
  for (auto &r : rows) {
    for (auto &v : r) all.push_back(v = u(rng));
  }
  std::sort(all.begin(), all.end());
  const auto c = make_collection(rows);
  PaaConfig cfg{1, 1, 2};
  const auto bp = empirical_breakpoints(c, cfg, 20000, 1);
  const auto q = [&all](double p) { return all[static_cast<std::size_t>(p * static_cast<double>(all.size()))]; };
  CHECK(bp.level(1)[0] == Approx(q(0.5)).margin(0.02));
  CHECK(bp.level(1)[0] == Approx(0.5).margin(0.02));
  const auto l2 = bp.level(2);
  CHECK(l2[0] == Approx(q(0.25)).margin(0.02));
  CHECK(l2[1] == Approx(q(0.5)).margin(0.02));
  CHECK(l2[2] == Approx(q(0.75)).margin(0.02));

  CHECK_THROWS_AS(empirical_breakpoints(make_collection({std::vector<double>(64, 2.0)}), PaaConfig{}, 100, 1),
                  DegenerateDataError);

  // heavily repeated values still give strictly ascending thresholds
  std::vector<double> lumpy(4000, 1.0);
  for (std::size_t i = 0; i < 40; ++i) lumpy[i] = static_cast<double>(i);
  const auto lb = empirical_breakpoints(make_collection({lumpy}), PaaConfig{1, 1, 8}, 4000, 2);
  for (std::size_t i = 1; i < lb.finest().size(); ++i) CHECK(lb.finest()[i - 1] < lb.finest()[i]);
}

TEST_CASE("iSAX symbols", "[summarization][isax]")
{
  const auto bp = gaussian_breakpoints(8);
  CHECK(bp.symbol_of(-0.5, 1) == 0);
  CHECK(bp.symbol_of(0.0, 1) == 1);
  CHECK(bp.symbol_of(0.7, 2) == 3);
  CHECK(bp.symbol_of(0.6, 2) == 2);
  CHECK(bp.lower(0, 3) == -kInf);
  CHECK(bp.upper(7, 3) == kInf);

  std::mt19937_64 rng{6};
  std::normal_distribution<double> g{0.0, 1.5};
  for (int t = 0; t < 2000; ++t) {
    const double x = g(rng);
    const auto fine = bp.symbol_of(x, 8);
    for (std::uint8_t b = 1; b <= 8; ++b) {
      const auto sym = bp.symbol_of(x, b);
      CHECK(sym == fine >> (8 - b));
      CHECK(bp.lower(sym, b) <= x);
      CHECK(x < bp.upper(sym, b));
    }
  }

  const auto w = to_isax(PaaVector{{-3.0, 0.0, 0.2, 3.0}}, bp, 8);
  CHECK(w.card_bits == std::vector<std::uint8_t>(4, 8));
  CHECK(w.symbols.front() == 0);
  CHECK(w.symbols.back() == 255);
  const std::vector<std::uint8_t> bits{1, 2, 8, 3};
  const auto p = w.promoted(bits);
  CHECK(p.card_bits == bits);
  CHECK(p.symbols[0] == 0);
  CHECK(p.symbols[1] == 2);
  CHECK(p.symbols[2] == w.symbols[2]);
  CHECK(p.symbols[3] == 7);
}

TEST_CASE("worked example: 60 points, s=20, gamma=20, lengths 40..60", "[summarization][envelope]")
{
  std::mt19937_64 rng{7};
  const auto d = ref::random_walk(60, rng);
  const LengthRange r{40, 60};
  const PaaConfig cfg = PaaConfig::for_range(20, r);
  REQUIRE(cfg.word_len == 3);
  const auto e = build_envelope_raw(series_of(d), cfg, r, 20, 1);
  REQUIRE(e.has_value());
  CHECK(e->lower_paa.size() == 3);
  CHECK(e->max_length() == 60);
  CHECK(e->last_start(40) == 21);
  CHECK_FALSE(build_envelope_raw(series_of(d), cfg, r, 20, 22).has_value());

  const auto want = ref::envelope_by_enumeration(d, 20, 40, 60, 20, 1, false);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(outward_match(e->lower_paa[k], e->upper_paa[k], want.lower[k], want.upper[k]));
  }
}

TEST_CASE("first normalized segment seen by three lengths", "[summarization][envelope]")
{
  std::mt19937_64 rng{8};
  const auto d = ref::random_walk(64, rng);
  const LengthRange r{62, 64};
  const PaaConfig cfg = PaaConfig::for_range(16, r);
  std::set<double> coeffs;
  for (std::size_t len = 62; len <= 64; ++len) coeffs.insert(ref::paa(ref::znorm(ref::slice(d, 0, len)), 16)[0]);
  CHECK(coeffs.size() == 3);
  const auto e = build_envelope_norm(series_of(d), cfg, r, 0, 1);
  REQUIRE(e.has_value());
  CHECK(outward_match(e->lower_paa[0], e->upper_paa[0], *coeffs.begin(), *coeffs.rbegin()));
}

TEST_CASE("degenerate envelopes", "[summarization][envelope]")
{
  const LengthRange r{160, 256};
  const auto cfg = PaaConfig::for_range(16, r);
  const auto flat = series_of(std::vector<double>(256, 3.5));
  SECTION("constant raw series")
  {
    const auto e = build_envelope_raw(flat, cfg, r, 96, 1);
    REQUIRE(e.has_value());
    for (std::size_t k = 0; k < 16; ++k) {
      CHECK(e->lower_paa[k] == Approx(3.5).margin(1e-6));
      CHECK(e->upper_paa[k] == Approx(3.5).margin(1e-6));
    }
  }
  SECTION("constant normalized series")
  {
    const auto e = build_envelope_norm(flat, cfg, r, 96, 1);
    REQUIRE(e.has_value());
    for (std::size_t k = 0; k < 16; ++k) {
      CHECK(e->lower_paa[k] == Approx(0.0).margin(1e-6));
      CHECK(e->upper_paa[k] == Approx(0.0).margin(1e-6));
    }
  }
  SECTION("single master series collapses to its PAA")
  {
    std::mt19937_64 rng{9};
    const auto d = ref::random_walk(256, rng);
    const auto e = build_envelope_raw(series_of(d), cfg, r, 0, 1);
    const auto p = ref::paa(d, 16);
    for (std::size_t k = 0; k < 16; ++k) CHECK(outward_match(e->lower_paa[k], e->upper_paa[k], p[k], p[k]));
  }
  SECTION("series shorter than l_min yields nothing")
  {
    const auto shorty = series_of(std::vector<double>(159, 1.0));
    CHECK_FALSE(build_envelope_raw(shorty, cfg, r, 96, 1).has_value());
    CHECK_FALSE(build_envelope_norm(shorty, cfg, r, 96, 1).has_value());
  }
  SECTION("segment longer than l_min is refused")
  {
    const LengthRange tight{10, 64};
    CHECK_THROWS_AS(build_envelope_raw(flat, PaaConfig{16, 4, 8}, tight, 0, 1), ArgumentError);
  }
}

TEST_CASE("segments beyond the longest subsequence repeat the last covered one", "[summarization][envelope]")
{
  std::mt19937_64 rng{10};
  const auto d = ref::random_walk(200, rng);
  const LengthRange r{160, 256};
  const auto cfg = PaaConfig::for_range(16, r);
  const auto bp = gaussian_breakpoints(8);
  const auto e = build_envelope_raw(series_of(d), cfg, r, 10, 1, &bp);
  REQUIRE(e.has_value());
  CHECK(e->max_length() == 200);
  CHECK(e->covered_segments() == 12);
  for (std::size_t k = 12; k < 16; ++k) {
    CHECK(e->lower_paa[k] == e->lower_paa[11]);
    CHECK(e->upper_paa[k] == e->upper_paa[11]);
  }
  CHECK(e->admits(200));
  CHECK_FALSE(e->admits(201));
  CHECK(e->lower == to_isax(e->lower_paa, bp, 8));
  CHECK(e->upper == to_isax(e->upper_paa, bp, 8));
}

TEST_CASE("envelopes equal exhaustive enumeration", "[summarization][envelope]")
{
  const LengthRange r{160, 256};
  const auto cfg = PaaConfig::for_range(16, r);
  std::mt19937_64 rng{11};
  for (const bool normalized : {false, true}) {
    for (const std::size_t gamma : {std::size_t{0}, std::size_t{24}, std::size_t{96}}) {
      for (int t = 0; t < 4; ++t) {
        const std::size_t n = 200 + 40 * static_cast<std::size_t>(t);
        const auto d = ref::random_walk(n, rng);
        for (std::size_t a = 1; a + r.l_min - 1 <= n; a += gamma + 1) {
          const auto e = normalized ? build_envelope_norm(series_of(d), cfg, r, gamma, a)
                                    : build_envelope_raw(series_of(d), cfg, r, gamma, a);
          REQUIRE(e.has_value());
          const auto want = ref::envelope_by_enumeration(d, 16, 160, 256, gamma, a, normalized);
          REQUIRE(want.lower.size() == e->covered_segments());
          for (std::size_t k = 0; k < want.lower.size(); ++k) {
            INFO("normalized=" << normalized << " gamma=" << gamma << " a=" << a << " k=" << k);
            CHECK(outward_match(e->lower_paa[k], e->upper_paa[k], want.lower[k], want.upper[k]));
          }
        }
      }
    }
  }
}
