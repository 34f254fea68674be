#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace isgame {

/// Shortest decimal text that round-trips to the same double ("nan", "inf" for non-finite).
std::string format_double(double v);

/// Fixed significant-digit rendering for human-readable output.
std::string format_sig(double v, int digits = 6);

/// Joins fields with ',' quoting any that contain ',', '"' or a newline.
std::string csv_row(const std::vector<std::string>& fields);

}  // namespace isgame
