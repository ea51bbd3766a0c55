#include "safecoal/text.hpp"

#include <cctype>

namespace safecoal::text {

std::string_view strip_comment(std::string_view line) {
    const auto hash = line.find('#');
    return hash == std::string_view::npos ? line : line.substr(0, hash);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])))
            ++j;
        if (j > i)
            out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

std::vector<Line> content_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0;
    while (!text.empty()) {
        ++number;
        const auto eol = text.find('\n');
        std::string_view raw = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        std::string_view line = trim(strip_comment(raw));
        if (!line.empty())
            out.push_back({number, line});
    }
    return out;
}

bool header(std::string_view line, std::string_view key, std::string_view& rest) {
    if (line.substr(0, key.size()) != key)
        return false;
    std::string_view tail = line.substr(key.size());
    if (!tail.empty() && tail.front() == ':')
        tail.remove_prefix(1);
    else if (!tail.empty() && !std::isspace(static_cast<unsigned char>(tail.front())))
        return false;
    rest = trim(tail);
    return true;
}

}  // namespace safecoal::text
