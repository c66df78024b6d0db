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

#include <cmath>
#include <limits>
#include <random>

#include "reference.hpp"
#include "support.hpp"
#include "ulisse/series.hpp"

using namespace ulisse;
using Catch::Approx;

TEST_CASE("dataset decode of two fixed-length series", "[series][format]")
{
  support::TempDir dir;
  support::spit(dir / "a.ulsd", support::dataset_bytes(2, 4, {}, {0, 0, 0, 0, 1, 2, 3, 4}));
  const auto c = load_collection(dir / "a.ulsd");
  REQUIRE(c.size() == 2);
  CHECK(c[0].id == 0);
  CHECK(c[1].id == 1);
  CHECK(c[0].values == std::vector<double>{0, 0, 0, 0});
  CHECK(c[1].values == std::vector<double>{1, 2, 3, 4});
  CHECK(c.fixed_length == 4U);
}

TEST_CASE("empty collection round-trips as a header-only file", "[series][format]")
{
  support::TempDir dir;
  support::spit(dir / "e.ulsd", support::dataset_bytes(0, 0, {}, {}));
  const auto c = load_collection(dir / "e.ulsd");
  CHECK(c.empty());
  const auto bytes = encode_collection(SeriesCollection{});
  CHECK(bytes.size() == kDatasetHeaderSize);
  CHECK(bytes == support::dataset_bytes(0, 0, {}, {}));
}

TEST_CASE("payload is four bytes per point", "[series][format]")
{
  const auto c = make_collection({{1, 2, 3}});
  const auto bytes = encode_collection(c);
  CHECK(bytes.size() - kDatasetHeaderSize == 12);
  CHECK(bytes == support::dataset_bytes(1, 3, {}, {1, 2, 3}));
}

TEST_CASE("variable-length collections use the start table", "[series][format]")
{
  const auto c = make_collection({{1, 2, 3}, {4, 5}, {6, 7, 8, 9}});
  CHECK_FALSE(c.fixed_length.has_value());
  const auto bytes = encode_collection(c);
  CHECK(bytes == support::dataset_bytes(3, 0, {0, 3, 5}, {1, 2, 3, 4, 5, 6, 7, 8, 9}));
  support::TempDir dir;
  support::spit(dir / "v.ulsd", bytes);
  const auto back = load_collection(dir / "v.ulsd");
  CHECK(back == c);
  CHECK(back[2].values == std::vector<double>{6, 7, 8, 9});
}

TEST_CASE("save of a loaded generated file is byte-identical", "[series][format]")
{
  support::TempDir dir;
  const auto c = generate_random_walk(100, 256, 11);
  save_collection(c, dir / "g.ulsd");
  const auto loaded = load_collection(dir / "g.ulsd");
  CHECK(loaded == c);
  save_collection(loaded, dir / "g2.ulsd");
  CHECK(support::slurp(dir / "g.ulsd") == support::slurp(dir / "g2.ulsd"));
}

TEST_CASE("malformed dataset files are rejected", "[series][format]")
{
  support::TempDir dir;
  SECTION("bad magic")
  {
    auto b = support::dataset_bytes(1, 2, {}, {1, 2});
    b[0] = 'X';
    support::spit(dir / "f", b);
    CHECK_THROWS_AS(load_collection(dir / "f"), FormatError);
  }
  SECTION("bad version")
  {
    auto b = support::dataset_bytes(1, 2, {}, {1, 2});
    b[4] = 2;
    support::spit(dir / "f", b);
    CHECK_THROWS_AS(load_collection(dir / "f"), FormatError);
  }
  SECTION("truncated payload")
  {
    auto b = support::dataset_bytes(2, 4, {}, {1, 2, 3, 4, 5, 6, 7, 8});
    b.resize(b.size() - 3);
    support::spit(dir / "f", b);
    CHECK_THROWS_AS(load_collection(dir / "f"), IoError);
  }
  SECTION("trailing bytes")
  {
    auto b = support::dataset_bytes(1, 2, {}, {1, 2, 3});
    support::spit(dir / "f", b);
    CHECK_THROWS_AS(load_collection(dir / "f"), FormatError);
  }
  SECTION("non-finite value names its position")
  {
    support::spit(dir / "f", support::dataset_bytes(2, 3, {}, {1, 2, 3, 4, std::numeric_limits<float>::quiet_NaN(), 6}));
    try {
      load_collection(dir / "f");
      FAIL("expected a data error");
    } catch (const DataError &e) {
      const std::string msg = e.what();
      CHECK(msg.find("series 1") != std::string::npos);
      CHECK(msg.find("offset 2") != std::string::npos);
    }
  }
  SECTION("missing file")
  {
    CHECK_THROWS_AS(load_collection(dir / "absent"), IoError);
  }
}

TEST_CASE("random walk generator", "[series][generator]")
{
  SECTION("single point is the first draw of the seeded stream")
  {
    const auto c = generate_random_walk(1, 1, 5);
    std::mt19937_64 rng{5};
    std::normal_distribution<double> g{0.0, 1.0};
    CHECK(c[0].values[0] == static_cast<float>(g(rng)));
  }
  SECTION("deterministic for a seed")
  {
    CHECK(generate_random_walk(10, 64, 3) == generate_random_walk(10, 64, 3));
    CHECK_FALSE(generate_random_walk(10, 64, 3) == generate_random_walk(10, 64, 4));
  }
  SECTION("steps look standard normal")
  {
    const auto c = generate_random_walk(1000, 256, 7);
    double sum = 0, sq = 0;
    std::size_t n = 0;
    for (const auto &s : c.series) {
      for (std::size_t t = 1; t < s.size(); ++t) {
        const double d = s.values[t] - s.values[t - 1];
        sum += d;
        sq += d * d;
        ++n;
      }
    }
    const double mean = sum / static_cast<double>(n);
    const double var = sq / static_cast<double>(n) - mean * mean;
    const double se_mean = 1.0 / std::sqrt(static_cast<double>(n));
    const double se_var = std::sqrt(2.0 / static_cast<double>(n));
    CHECK(std::fabs(mean) < 3 * se_mean);
    CHECK(std::fabs(var - 1.0) < 3 * se_var);
  }
}

TEST_CASE("z-normalization", "[series][znorm]")
{
  SECTION("hand example")
  {
    const auto z = znormalize(DataSeries{0, {1, 2, 3}});
    CHECK(z.series.values[0] == Approx(-std::sqrt(1.5)).epsilon(1e-12));
    CHECK(z.series.values[1] == Approx(0.0).margin(1e-15));
    CHECK(z.series.values[2] == Approx(std::sqrt(1.5)).epsilon(1e-12));
  }
  SECTION("constant series maps to zeros")
  {
    const auto z = znormalize(DataSeries{0, {5, 5, 5, 5}});
    CHECK(z.constant);
    CHECK(z.series.values == std::vector<double>{0, 0, 0, 0});
  }
  SECTION("idempotent and matches the long-double reference")
  {
    std::mt19937_64 rng{1};
    for (int t = 0; t < 50; ++t) {
      const auto x = ref::random_walk(200, rng);
      const auto z = znormalize(DataSeries{0, x}).series;
      const auto zz = znormalize(z).series;
      const auto r = ref::znorm(x);
      for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(zz.values[i] == Approx(z.values[i]).margin(1e-9));
        CHECK(z.values[i] == Approx(r[i]).margin(1e-9));
      }
    }
  }
}

TEST_CASE("window moments agree with direct two-pass statistics", "[series][znorm]")
{
  std::mt19937_64 rng{2};
  const auto x = ref::random_walk(300, rng);
  const WindowStats ws{x};
  std::uniform_int_distribution<std::size_t> len_d{1, 300};
  for (int t = 0; t < 500; ++t) {
    const std::size_t len = len_d(rng);
    const std::size_t start = std::uniform_int_distribution<std::size_t>{0, 300 - len}(rng);
    const auto w = ref::slice(x, start, len);
    long double mean = 0;
    for (const double v : w) mean += v;
    mean /= len;
    long double var = 0;
    for (const double v : w) var += (v - mean) * (v - mean);
    const auto m = ws.moments(start, len);
    CHECK(m.mean == Approx(static_cast<double>(mean)).margin(1e-9));
    CHECK(m.sigma == Approx(static_cast<double>(std::sqrt(var / len))).margin(1e-6));
  }
  const WindowStats flat{std::vector<double>(50, 3.0)};
  CHECK(flat.moments(10, 20).constant());
}

TEST_CASE("noisy query extraction", "[series][generator]")
{
  const auto c = generate_random_walk(20, 256, 1);
  const std::vector<std::size_t> lengths{160, 192};
  const auto q = extract_noisy_queries(c, 5, lengths, 0.0, 9);
  REQUIRE(q.size() == 5);
  CHECK(q[0].size() == 160);
  CHECK(q[1].size() == 192);
  CHECK(q[4].size() == 160);
  // zero noise: every query is an exact subsequence of some series
  for (const auto &s : q.series) {
    bool found = false;
    for (const auto &d : c.series) {
      for (std::size_t o = 0; o + s.size() <= d.size() && !found; ++o) {
        found = std::equal(s.values.begin(), s.values.end(), d.values.begin() + static_cast<std::ptrdiff_t>(o));
      }
    }
    CHECK(found);
  }
  CHECK(extract_noisy_queries(c, 5, lengths, 0.3, 9) == extract_noisy_queries(c, 5, lengths, 0.3, 9));
  CHECK_THROWS_AS(extract_noisy_queries(c, 1, std::vector<std::size_t>{300}, 0.1, 1), ArgumentError);
}

TEST_CASE("collection validation", "[series]")
{
  CHECK_THROWS_AS(encode_collection(make_collection({{1, std::nan("")}})), DataError);
  SeriesCollection c = make_collection({{1, 2}});
  c.series[0].id = 3;
  CHECK_THROWS_AS(c.validate(), ArgumentError);
  CHECK_THROWS_AS((LengthRange{5, 4}.validate()), ArgumentError);
  CHECK((SubsequenceRef{0, 3, 4}.fits(6)));
  CHECK_FALSE((SubsequenceRef{0, 4, 4}.fits(6)));
}
