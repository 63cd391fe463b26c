#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace syncpersist {

/// Shortest decimal text that parses back to the same double ('.' decimal
/// separator, independent of locale).
std::string format_double(double v);

/// Parses a full field as a double; throws std::invalid_argument otherwise.
double parse_double(std::string_view text);

std::vector<std::string> split(std::string_view line, char sep);

/// Reads a CSV whose first line must equal `header`; returns data rows split
/// into fields. Throws std::runtime_error on a header or arity mismatch.
std::vector<std::vector<std::string>> read_csv(std::istream& is, std::string_view header);

/// Writes `content` to `path` through a temporary file in the same directory
/// followed by a rename, so readers never observe a truncated file.
void atomic_write(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

} // namespace syncpersist
