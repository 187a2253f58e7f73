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

#include "dumpftl/time.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

namespace dumpftl {
namespace {

constexpr std::int64_t kMillisPerDay = 86'400'000;

std::int64_t FloorDiv(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Parses exactly `width` decimal digits.
std::optional<int> Digits(std::string_view s, std::size_t pos, std::size_t width) {
  if (pos + width > s.size()) return std::nullopt;
  int value = 0;
  for (std::size_t i = pos; i < pos + width; ++i) {
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
    value = value * 10 + (s[i] - '0');
  }
  return value;
}

}  // namespace

std::string FormatIso8601(Timestamp t) {
  using namespace std::chrono;
  const std::int64_t days = FloorDiv(t.epoch_millis, kMillisPerDay);
  std::int64_t rem = t.epoch_millis - days * kMillisPerDay;
  const year_month_day ymd{sys_days{std::chrono::days{days}}};
  const int hh = static_cast<int>(rem / 3'600'000);
  rem %= 3'600'000;
  const int mm = static_cast<int>(rem / 60'000);
  rem %= 60'000;
  const int ss = static_cast<int>(rem / 1000);
  const int ms = static_cast<int>(rem % 1000);
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()), hh, mm, ss, ms);
  return buf;
}

std::optional<Timestamp> ParseIso8601(std::string_view s) {
  using namespace std::chrono;
  // 2021-02-01T00:00:00.000Z
  if (s.size() != 24) return std::nullopt;
  if (s[4] != '-' || s[7] != '-' || s[10] != 'T' || s[13] != ':' ||
      s[16] != ':' || s[19] != '.' || s[23] != 'Z') {
    return std::nullopt;
  }
  const auto y = Digits(s, 0, 4);
  const auto mo = Digits(s, 5, 2);
  const auto d = Digits(s, 8, 2);
  const auto hh = Digits(s, 11, 2);
  const auto mi = Digits(s, 14, 2);
  const auto ss = Digits(s, 17, 2);
  const auto ms = Digits(s, 20, 3);
  if (!y || !mo || !d || !hh || !mi || !ss || !ms) return std::nullopt;
  if (*hh > 23 || *mi > 59 || *ss > 59) return std::nullopt;
  const year_month_day ymd{year{*y}, month{static_cast<unsigned>(*mo)},
                           day{static_cast<unsigned>(*d)}};
  if (!ymd.ok()) return std::nullopt;
  const std::int64_t days = sys_days{ymd}.time_since_epoch().count();
  return Timestamp{days * kMillisPerDay + *hh * 3'600'000LL + *mi * 60'000LL +
                   *ss * 1000LL + *ms};
}

std::string FormatSeconds(Duration d) {
  std::string out;
  std::int64_t ms = d.millis;
  if (ms < 0) {
    out.push_back('-');
    ms = -ms;
  }
  out += std::to_string(ms / 1000);
  std::int64_t frac = ms % 1000;
  if (frac != 0) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), ".%03d", static_cast<int>(frac));
    std::string f = buf;
    while (f.back() == '0') f.pop_back();
    out += f;
  }
  return out;
}

std::optional<Duration> ParseSeconds(std::string_view s) {
  bool negative = false;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s.remove_prefix(1);
  }
  const auto dot = s.find('.');
  const std::string_view whole = s.substr(0, dot);
  if (whole.empty()) return std::nullopt;
  std::int64_t secs = 0;
  const auto [p, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), secs);
  if (ec != std::errc{} || p != whole.data() + whole.size()) return std::nullopt;
  std::int64_t frac_ms = 0;
  if (dot != std::string_view::npos) {
    const std::string_view frac = s.substr(dot + 1);
    if (frac.empty() || frac.size() > 3) return std::nullopt;
    for (char c : frac) {
      if (c < '0' || c > '9') return std::nullopt;
    }
    for (std::size_t i = 0; i < 3; ++i) {
      frac_ms = frac_ms * 10 + (i < frac.size() ? frac[i] - '0' : 0);
    }
  }
  const std::int64_t total = secs * 1000 + frac_ms;
  return Duration{negative ? -total : total};
}

}  // namespace dumpftl
