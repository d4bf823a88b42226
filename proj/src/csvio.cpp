#include "qotto/csvio.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string_view>

namespace qotto {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    while (true) {
        const auto pos = s.find(sep);
        if (pos == std::string_view::npos) {
            parts.push_back(s);
            return parts;
        }
        parts.push_back(s.substr(0, pos));
        s.remove_prefix(pos + 1);
    }
}

double parse_double_field(std::string_view text, const char* what) {
    const std::string_view t = trim(text);
    double value{};
    const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size() || t.empty()) {
        throw std::invalid_argument(std::string(what) + ": bad number '" + std::string(text) +
                                    "'");
    }
    return value;
}

long parse_count_field(std::string_view text, const char* what) {
    const std::string_view t = trim(text);
    long value{};
    const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size() || t.empty()) {
        throw std::invalid_argument(std::string(what) + ": bad count '" + std::string(text) +
                                    "'");
    }
    return value;
}

}  // namespace

std::string format_double(double x) {
    char buf[48];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::scientific, 16);
    return std::string(buf, res.ptr);
}

std::vector<double> parse_grid(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) {
        throw std::invalid_argument("grid: expected start:stop:count, got '" + text + "'");
    }
    const double start = parse_double_field(parts[0], "grid");
    const double stop = parse_double_field(parts[1], "grid");
    const long count = parse_count_field(parts[2], "grid");
    if (count < 1) {
        throw std::invalid_argument("grid: count must be >= 1 in '" + text + "'");
    }
    if (count == 1) {
        if (start != stop) {
            throw std::invalid_argument("grid: count 1 requires start == stop in '" + text +
                                        "'");
        }
        return {start};
    }
    std::vector<double> points;
    points.reserve(static_cast<std::size_t>(count));
    for (long k = 0; k < count; ++k) {
        points.push_back(start + (stop - start) * static_cast<double>(k) /
                                     static_cast<double>(count - 1));
    }
    return points;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> values;
    for (const auto part : split(text, ',')) {
        values.push_back(parse_double_field(part, "list"));
    }
    return values;
}

std::vector<std::pair<std::string, std::string>> parse_config_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw std::invalid_argument("config: cannot open '" + path + "'");
    }
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    long line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        const std::string_view body = trim(line);
        if (body.empty() || body.front() == '#') {
            continue;
        }
        const auto pos = body.find('=');
        if (pos == std::string_view::npos) {
            throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                        " is not key=value");
        }
        const std::string key{trim(body.substr(0, pos))};
        const std::string value{trim(body.substr(pos + 1))};
        if (key.empty()) {
            throw std::invalid_argument("config: empty key at line " + std::to_string(line_no));
        }
        for (const auto& [seen, unused] : entries) {
            if (seen == key) {
                throw std::invalid_argument("config: duplicate key '" + key + "'");
            }
        }
        entries.emplace_back(key, value);
    }
    return entries;
}

}  // namespace qotto
