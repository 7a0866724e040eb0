#include "grid.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string_view>

namespace selfish::cli {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double to_real(std::string_view s) {
  // std::from_chars for double is missing from older libstdc++.
  const std::string buf(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(buf, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (buf.empty() || used != buf.size() || !std::isfinite(v)) {
    throw std::invalid_argument("not a number: '" + buf + "'");
  }
  return v;
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw std::invalid_argument("range must be start:stop:step");
    const double start = to_real(parts[0]);
    const double stop = to_real(parts[1]);
    const double step = to_real(parts[2]);
    if (!(step > 0.0) || stop < start) throw std::invalid_argument("empty or invalid range '" + text + "'");
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 0.5));
    for (std::size_t i = 0; i <= n; ++i) {
      // Snap to 12 decimals so 0.1 * 3 prints and compares as 0.3.
      out.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
    }
  } else {
    for (auto part : split(text, ',')) out.push_back(to_real(part));
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (auto part : split(text, ',')) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size()) {
      throw std::invalid_argument("not a seed: '" + std::string(part) + "'");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace selfish::cli
