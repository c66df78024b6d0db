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

#ifndef ULISSE_TESTS_SUPPORT_HPP
#define ULISSE_TESTS_SUPPORT_HPP

#include <atomic>
#include <cstring>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include <unistd.h>

namespace support
{
/// A scratch directory removed on destruction.
class TempDir
{
 public:
  TempDir()
  {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("ulisse-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;
  ~TempDir()
  {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }

  [[nodiscard]] std::filesystem::path
  operator/(const std::string &name) const
  {
    return path_ / name;
  }

  [[nodiscard]] const std::filesystem::path &
  path() const noexcept
  {
    return path_;
  }

 private:
  std::filesystem::path path_;
};

inline std::vector<char>
slurp(const std::filesystem::path &p)
{
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void
spit(const std::filesystem::path &p, const std::vector<char> &bytes)
{
  std::ofstream out(p, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

/// Little-endian byte image of a header plus f32 payload.
inline std::vector<char>
dataset_bytes(std::uint32_t count, std::uint32_t length, const std::vector<std::uint64_t> &starts,
              const std::vector<float> &points)
{
  std::vector<char> out{'U', 'L', 'S', 'D', 1};
  auto put = [&out](std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  };
  put(count, 4);
  put(length, 4);
  for (const auto s : starts) put(s, 8);
  for (const float f : points) {
    std::uint32_t bits;
    static_assert(sizeof bits == sizeof f);
    std::memcpy(&bits, &f, sizeof f);
    put(bits, 4);
  }
  return out;
}
}  // namespace support

#endif  // ULISSE_TESTS_SUPPORT_HPP
