#pragma once

// Free-space diagram serialization: JSON with exact door / reach values, SVG for viewing.

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>

#include "json.hpp"

#include "frechet/freespace.hpp"

namespace frechet::tools {

namespace detail {

inline nlohmann::json grid_to_json(const IntervalGrid& g) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < g.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < g.cols(); ++j) {
            const Interval& v = g(i, j);
            if (v.is_empty()) row.push_back(nullptr);
            else row.push_back({v.lo(), v.hi()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline IntervalGrid grid_from_json(const nlohmann::json& rows, std::size_t r, std::size_t c) {
    if (!rows.is_array() || rows.size() != r) throw std::invalid_argument("fsd json: bad grid shape");
    IntervalGrid g(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (!rows[i].is_array() || rows[i].size() != c) throw std::invalid_argument("fsd json: bad grid shape");
        for (std::size_t j = 0; j < c; ++j) {
            const auto& v = rows[i][j];
            if (!v.is_null()) g(i, j) = Interval(v.at(0).get<double>(), v.at(1).get<double>());
        }
    }
    return g;
}

}  // namespace detail

/// Exact part of a diagram: delta, verdict, doors and reach-doors. Polygons are display data
/// and are not serialized.
inline nlohmann::json fsd_to_json(const FsdDiagram& d) {
    const auto& g = d.doors;
    return {
        {"delta", d.delta},
        {"verdict", d.verdict},
        {"n_p", g.n_p},
        {"n_q", g.n_q},
        {"start_free", g.start_free},
        {"end_free", g.end_free},
        {"doors", {{"vertical", detail::grid_to_json(g.vertical)}, {"horizontal", detail::grid_to_json(g.horizontal)}}},
        {"reach",
         {{"vertical", detail::grid_to_json(d.reach.vertical_reach)},
          {"horizontal", detail::grid_to_json(d.reach.horizontal_reach)}}},
    };
}

inline FsdDiagram fsd_from_json(const nlohmann::json& j) {
    FsdDiagram d;
    d.delta = j.at("delta").get<double>();
    d.verdict = j.at("verdict").get<bool>();
    auto& g = d.doors;
    g.n_p = j.at("n_p").get<std::size_t>();
    g.n_q = j.at("n_q").get<std::size_t>();
    g.start_free = j.at("start_free").get<bool>();
    g.end_free = j.at("end_free").get<bool>();
    if (g.n_p == 0 || g.n_q == 0) return d;
    g.vertical = detail::grid_from_json(j.at("doors").at("vertical"), g.n_p + 1, g.n_q);
    g.horizontal = detail::grid_from_json(j.at("doors").at("horizontal"), g.n_p, g.n_q + 1);
    d.reach.vertical_reach = detail::grid_from_json(j.at("reach").at("vertical"), g.n_p + 1, g.n_q);
    d.reach.horizontal_reach = detail::grid_from_json(j.at("reach").at("horizontal"), g.n_p, g.n_q + 1);
    return d;
}

inline std::string fsd_to_svg(const FsdDiagram& d) {
    const std::size_t np = std::max<std::size_t>(d.doors.n_p, 1), nq = std::max<std::size_t>(d.doors.n_q, 1);
    const double cell = std::clamp(800.0 / double(std::max(np, nq)), 2.0, 80.0);
    const double margin = 20.0, w = cell * double(np), h = cell * double(nq);
    auto X = [&](double x) { return margin + x * cell; };
    auto Y = [&](double y) { return margin + h - y * cell; };
    char buf[96];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.3f", v);
        return std::string(buf);
    };
    auto polygon = [&](std::ostringstream& o, const std::vector<Point>& pts, double ox, double oy, const char* style) {
        if (pts.size() < 2) return;
        o << "<polygon points=\"";
        for (const Point& p : pts) o << num(X(ox + p.x)) << ',' << num(Y(oy + p.y)) << ' ';
        o << "\" " << style << "/>\n";
    };
    auto line = [&](std::ostringstream& o, double x1, double y1, double x2, double y2, const char* style) {
        o << "<line x1=\"" << num(X(x1)) << "\" y1=\"" << num(Y(y1)) << "\" x2=\"" << num(X(x2)) << "\" y2=\""
          << num(Y(y2)) << "\" " << style << "/>\n";
    };

    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w + 2 * margin) << "\" height=\""
      << num(h + 2 * margin + 20) << "\">\n";
    o << "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<g id=\"free\">\n";
    for (std::size_t i = 0; i < d.doors.n_p; ++i)
        for (std::size_t j = 0; j < d.doors.n_q; ++j)
            polygon(o, d.free_polygons[i * d.doors.n_q + j], double(i), double(j), "fill=\"#dddddd\" stroke=\"none\"");
    o << "</g>\n<g id=\"reach\">\n";
    for (std::size_t i = 0; i < d.doors.n_p; ++i)
        for (std::size_t j = 0; j < d.doors.n_q; ++j)
            polygon(o, d.reach_polygons[i * d.doors.n_q + j], double(i), double(j),
                    "fill=\"#9fd49f\" fill-opacity=\"0.8\" stroke=\"none\"");
    o << "</g>\n<g id=\"grid\" stroke=\"#888888\" stroke-width=\"0.5\">\n";
    for (std::size_t i = 0; i <= d.doors.n_p; ++i) line(o, double(i), 0, double(i), double(d.doors.n_q), "");
    for (std::size_t j = 0; j <= d.doors.n_q; ++j) line(o, 0, double(j), double(d.doors.n_p), double(j), "");
    o << "</g>\n<g id=\"doors\" stroke=\"#3050c0\" stroke-width=\"2\">\n";
    for (std::size_t i = 0; i <= d.doors.n_p; ++i)
        for (std::size_t j = 0; j < d.doors.n_q; ++j)
            if (const Interval& v = d.doors.vertical(i, j); !v.is_empty())
                line(o, double(i), double(j) + v.lo(), double(i), double(j) + v.hi(), "");
    for (std::size_t i = 0; i < d.doors.n_p; ++i)
        for (std::size_t j = 0; j <= d.doors.n_q; ++j)
            if (const Interval& v = d.doors.horizontal(i, j); !v.is_empty())
                line(o, double(i) + v.lo(), double(j), double(i) + v.hi(), double(j), "");
    o << "</g>\n<g id=\"reach-doors\" stroke=\"#c03030\" stroke-width=\"3\">\n";
    for (std::size_t i = 0; i <= d.doors.n_p; ++i)
        for (std::size_t j = 0; j < d.doors.n_q; ++j)
            if (const Interval& v = d.reach.vertical_reach(i, j); !v.is_empty())
                line(o, double(i), double(j) + v.lo(), double(i), double(j) + v.hi(), "");
    for (std::size_t i = 0; i < d.doors.n_p; ++i)
        for (std::size_t j = 0; j <= d.doors.n_q; ++j)
            if (const Interval& v = d.reach.horizontal_reach(i, j); !v.is_empty())
                line(o, double(i) + v.lo(), double(j), double(i) + v.hi(), double(j), "");
    o << "</g>\n";
    o << "<text x=\"" << num(margin) << "\" y=\"" << num(h + 2 * margin + 12)
      << "\" font-family=\"monospace\" font-size=\"12\">delta = " << num(d.delta)
      << "  verdict: " << (d.verdict ? "YES" : "NO") << "</text>\n";
    o << "</svg>\n";
    return o.str();
}

}  // namespace frechet::tools
