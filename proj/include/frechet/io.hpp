#pragma once

// Curve files: JSON {"points": [[x, y], ...]} when the name ends in .json, otherwise CSV with one
// "x,y" pair per line. Blank lines and lines starting with '#' are skipped in CSV.

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "json.hpp"

#include "frechet/geometry.hpp"

namespace frechet {

struct CurveParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

inline double parse_coordinate(std::string_view s, std::size_t line) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || end != s.data() + s.size() || !std::isfinite(v))
        throw CurveParseError("line " + std::to_string(line) + ": malformed number '" + std::string(s) + "'");
    return v;
}

inline bool ends_with_json(const std::string& path) {
    return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

}  // namespace detail

inline Curve parse_curve_csv(const std::string& text) {
    std::vector<Point> pts;
    std::istringstream in(text);
    std::string raw;
    for (std::size_t line = 1; std::getline(in, raw); ++line) {
        const std::string_view s = detail::trim(raw);
        if (s.empty() || s.front() == '#') continue;
        const auto comma = s.find(',');
        if (comma == std::string_view::npos || s.find(',', comma + 1) != std::string_view::npos)
            throw CurveParseError("line " + std::to_string(line) + ": expected 'x,y'");
        pts.push_back({detail::parse_coordinate(s.substr(0, comma), line),
                       detail::parse_coordinate(s.substr(comma + 1), line)});
    }
    if (pts.empty()) throw CurveParseError("curve has no points");
    return Curve(std::move(pts));
}

inline Curve parse_curve_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw CurveParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array())
        throw CurveParseError("expected an object with a \"points\" array");
    std::vector<Point> pts;
    for (const auto& p : doc["points"]) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw CurveParseError("each point must be [x, y]");
        const Point q{p[0].get<double>(), p[1].get<double>()};
        if (!std::isfinite(q.x) || !std::isfinite(q.y)) throw CurveParseError("non-finite coordinate");
        pts.push_back(q);
    }
    if (pts.empty()) throw CurveParseError("curve has no points");
    return Curve(std::move(pts));
}

inline nlohmann::json curve_to_json(const Curve& c) {
    nlohmann::json pts = nlohmann::json::array();
    for (const Point& p : c.vertices()) pts.push_back({p.x, p.y});
    return {{"points", pts}};
}

/// Shortest representation that parses back to the same double.
inline std::string format_double(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

inline std::string curve_to_csv(const Curve& c) {
    std::string out;
    for (const Point& p : c.vertices()) out += format_double(p.x) + "," + format_double(p.y) + "\n";
    return out;
}

inline Curve read_curve(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CurveParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return detail::ends_with_json(path) ? parse_curve_json(ss.str()) : parse_curve_csv(ss.str());
    } catch (const CurveParseError& e) {
        throw CurveParseError(path + ": " + e.what());
    }
}

inline void write_curve(const std::string& path, const Curve& c) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    if (detail::ends_with_json(path)) out << curve_to_json(c).dump() << "\n";
    else out << curve_to_csv(c);
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace frechet
