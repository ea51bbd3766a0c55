#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace safecoal::text {

/// Drops everything from the first '#' on.
std::string_view strip_comment(std::string_view line);

std::string_view trim(std::string_view s);

std::vector<std::string> split_ws(std::string_view s);

/// Lines with comments removed and surrounding whitespace trimmed; blank lines
/// are skipped. Each entry keeps its 1-based line number.
struct Line {
    std::size_t number;
    std::string_view content;
};
std::vector<Line> content_lines(std::string_view text);

/// Splits `key: rest` or `key rest` where key is one of the given header
/// keywords; returns false when the line does not start with `key`.
bool header(std::string_view line, std::string_view key, std::string_view& rest);

}  // namespace safecoal::text
