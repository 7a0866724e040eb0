#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace selfish::cli {

/// "0,0.1,0.25" or "start:stop:step" (stop inclusive within half a step).
/// Throws std::invalid_argument on malformed input or an empty result.
std::vector<double> parse_real_list(const std::string& text);

/// Comma-separated unsigned integers.
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

}  // namespace selfish::cli
