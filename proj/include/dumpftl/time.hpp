// Copyright 2026 The dumpftl Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DUMPFTL_TIME_HPP_
#define DUMPFTL_TIME_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace dumpftl {

// Signed span of time in whole milliseconds. All arithmetic is exact.
struct Duration {
  std::int64_t millis = 0;

  constexpr auto operator<=>(const Duration&) const = default;

  constexpr Duration operator+(Duration o) const { return {millis + o.millis}; }
  constexpr Duration operator-(Duration o) const { return {millis - o.millis}; }
  constexpr Duration operator-() const { return {-millis}; }
  constexpr Duration operator*(std::int64_t k) const { return {millis * k}; }
  constexpr Duration& operator+=(Duration o) {
    millis += o.millis;
    return *this;
  }
};

constexpr Duration Millis(std::int64_t ms) { return {ms}; }
constexpr Duration Seconds(std::int64_t s) { return {s * 1000}; }

// Milliseconds since the Unix epoch, UTC.
struct Timestamp {
  std::int64_t epoch_millis = 0;

  constexpr auto operator<=>(const Timestamp&) const = default;

  constexpr Timestamp operator+(Duration d) const {
    return {epoch_millis + d.millis};
  }
  constexpr Timestamp operator-(Duration d) const {
    return {epoch_millis - d.millis};
  }
  constexpr Duration operator-(Timestamp o) const {
    return {epoch_millis - o.epoch_millis};
  }
};

// "YYYY-MM-DDTHH:MM:SS.mmmZ".
std::string FormatIso8601(Timestamp t);

// Accepts exactly the format produced by FormatIso8601. Returns nullopt on
// any deviation (no lenient coercion).
std::optional<Timestamp> ParseIso8601(std::string_view text);

// Decimal seconds with the shortest exact representation: 30000ms -> "30",
// 10500ms -> "10.5", 1ms -> "0.001".
std::string FormatSeconds(Duration d);

// Inverse of FormatSeconds; at most three fractional digits, optional
// leading '-'. Returns nullopt on malformed input.
std::optional<Duration> ParseSeconds(std::string_view text);

}  // namespace dumpftl

#endif  // DUMPFTL_TIME_HPP_
