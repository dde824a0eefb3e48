#pragma once

// Instance and report files, CSV tables and SVG rendering.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "otheta/bounds.hpp"
#include "otheta/construction.hpp"
#include "otheta/errors.hpp"
#include "otheta/generators.hpp"
#include "otheta/geometry.hpp"
#include "otheta/metrics.hpp"

namespace otheta {

using Json = nlohmann::ordered_json;

inline constexpr const char* kInstanceVersion = "1";

/// Malformed file contents (as opposed to a well-formed but invalid instance).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(ErrorKind::InvalidArgument, what) {}
};

struct FamilyInfo {
    std::string name;
    int k = 0;
    Json params = Json::object();

    friend bool operator==(const FamilyInfo&, const FamilyInfo&) = default;
};

/// In-file representation of an instance: points and order are label based.
struct InstanceFile {
    int m = 3;
    std::vector<std::string> labels;
    std::vector<Point> points;
    std::vector<std::string> order;
    std::optional<FamilyInfo> family;

    friend bool operator==(const InstanceFile&, const InstanceFile&) = default;

    std::size_t index_of(const std::string& label) const {
        const auto it = std::find(labels.begin(), labels.end(), label);
        if (it == labels.end()) throw Error(ErrorKind::InvalidVertex, "no vertex labelled '" + label + "'");
        return static_cast<std::size_t>(it - labels.begin());
    }

    InsertionOrder insertion_order() const {
        std::map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < labels.size(); ++i) index[labels[i]] = i;
        std::vector<std::size_t> out;
        for (const auto& l : order) {
            const auto it = index.find(l);
            if (it == index.end()) throw Error(ErrorKind::InvalidOrder, "order names unknown label '" + l + "'");
            out.push_back(it->second);
        }
        return InsertionOrder(std::move(out));
    }
};

inline Json params_to_json(const GeneratorParams& p) {
    Json j = Json::object();
    j["generator"] = p.generator;
    if (p.steps) j["steps"] = *p.steps;
    if (p.reps) j["reps"] = *p.reps;
    if (p.n) j["n"] = *p.n;
    if (p.eps) j["eps"] = *p.eps;
    if (p.seed) j["seed"] = *p.seed;
    if (p.box) j["box"] = *p.box;
    return j;
}

inline InstanceFile to_instance_file(const GeneratedInstance& g) {
    InstanceFile f;
    f.m = g.system.cones();
    f.labels = g.labels;
    f.points = g.points;
    for (std::size_t v : g.order) f.order.push_back(g.labels[v]);
    f.family = FamilyInfo{std::string(to_string(g.family.family)), g.family.k, params_to_json(g.params)};
    return f;
}

inline Json to_json(const InstanceFile& f) {
    Json j;
    j["version"] = kInstanceVersion;
    j["m"] = f.m;
    Json pts = Json::array();
    for (std::size_t i = 0; i < f.points.size(); ++i) {
        pts.push_back({{"label", f.labels[i]}, {"x", f.points[i].x}, {"y", f.points[i].y}});
    }
    j["points"] = std::move(pts);
    j["order"] = f.order;
    if (f.family) {
        j["family"] = {{"name", f.family->name}, {"k", f.family->k}, {"params", f.family->params}};
    } else {
        j["family"] = nullptr;
    }
    return j;
}

/// Serialised form. nlohmann::json prints doubles in the shortest form that
/// parses back to the same value, which never needs more than 17 digits.
inline std::string serialize(const InstanceFile& f) { return to_json(f).dump(2) + "\n"; }

namespace detail {

inline const Json& require(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

inline double require_number(const Json& j, const char* key) {
    const Json& v = require(j, key);
    if (!v.is_number()) throw ParseError(std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

}  // namespace detail

/// Parses and validates the structure of an instance file. Geometric validity
/// (general position) is checked separately by the consumers.
inline InstanceFile parse_instance(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    const Json& version = detail::require(j, "version");
    if (!version.is_string() || version.get<std::string>() != kInstanceVersion) {
        throw ParseError("unsupported instance version");
    }
    InstanceFile f;
    const Json& m = detail::require(j, "m");
    if (!m.is_number_integer()) throw ParseError("field 'm' must be an integer");
    f.m = m.get<int>();
    const Json& pts = detail::require(j, "points");
    if (!pts.is_array()) throw ParseError("field 'points' must be an array");
    std::set<std::string> seen;
    for (const auto& p : pts) {
        const Json& label = detail::require(p, "label");
        if (!label.is_string()) throw ParseError("point labels must be strings");
        const auto l = label.get<std::string>();
        if (!seen.insert(l).second) throw ParseError("duplicate label '" + l + "'");
        f.labels.push_back(l);
        f.points.push_back({detail::require_number(p, "x"), detail::require_number(p, "y")});
    }
    const Json& order = detail::require(j, "order");
    if (!order.is_array()) throw ParseError("field 'order' must be an array");
    for (const auto& o : order) {
        if (!o.is_string()) throw ParseError("order entries must be labels");
        f.order.push_back(o.get<std::string>());
    }
    std::set<std::string> ordered(f.order.begin(), f.order.end());
    if (ordered != seen || f.order.size() != f.labels.size()) {
        throw ParseError("order must list every point label exactly once");
    }
    if (j.contains("family") && !j.at("family").is_null()) {
        const Json& fam = j.at("family");
        FamilyInfo info;
        const Json& name = detail::require(fam, "name");
        if (!name.is_string()) throw ParseError("family name must be a string");
        info.name = name.get<std::string>();
        const Json& k = detail::require(fam, "k");
        if (!k.is_number_integer()) throw ParseError("family k must be an integer");
        info.k = k.get<int>();
        if (fam.contains("params")) info.params = fam.at("params");
        f.family = std::move(info);
    }
    return f;
}

enum class BuildMode { Ordered, Unordered };

constexpr std::string_view to_string(BuildMode mode) {
    return mode == BuildMode::Ordered ? "ordered" : "unordered";
}

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

inline std::string format_number(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

inline Json optional_number(std::optional<double> x) { return x ? Json(*x) : Json(nullptr); }

inline Json report_to_json(const InstanceFile& f, BuildMode mode, const StretchReport& stretch,
                           const std::vector<Check>& checks) {
    Json j;
    j["m"] = f.m;
    j["mode"] = std::string(to_string(mode));
    j["max_stretch"] = stretch.max_stretch;
    if (stretch.witness) {
        j["witness"] = {f.labels[stretch.witness->first], f.labels[stretch.witness->second]};
    } else {
        j["witness"] = nullptr;
    }
    j["disconnected"] = stretch.disconnected;
    j["upper_bound"] = optional_number(upper_bound(f.m));
    j["lower_bound"] = optional_number(lower_bound(f.m));
    Json cs = Json::array();
    for (const auto& c : checks) cs.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["checks"] = std::move(cs);
    if (stretch.per_pair) {
        Json rows = Json::array();
        for (const auto& p : *stretch.per_pair) {
            rows.push_back({{"u", f.labels[p.u]},
                            {"w", f.labels[p.w]},
                            {"graph_distance", optional_number(p.graph_distance)},
                            {"euclidean", p.euclidean},
                            {"ratio", optional_number(p.ratio)}});
        }
        j["per_pair"] = std::move(rows);
    }
    return j;
}

/// Per-pair table; disconnected pairs have empty distance and ratio cells.
inline std::string per_pair_csv(const InstanceFile& f, const std::vector<PairStretch>& rows) {
    std::string out = "u,w,graph_distance,euclidean,ratio\n";
    for (const auto& p : rows) {
        out += f.labels[p.u] + "," + f.labels[p.w] + ",";
        out += (p.graph_distance ? format_number(*p.graph_distance) : "") + ",";
        out += format_number(p.euclidean) + ",";
        out += (p.ratio ? format_number(*p.ratio) : "") + "\n";
    }
    return out;
}

struct RenderOptions {
    /// Draws the m cone boundary rays at the vertex with this label.
    std::optional<std::string> cones_at;
    /// Pixels per unit length; the unit is |uw| when both labels exist.
    double unit_px = 400.0;
    double margin_px = 40.0;
};

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

/// Deterministic SVG of the points, the given edges and optional cone rays.
inline std::string render_svg(const InstanceFile& f, const std::vector<Edge>& edges, const RenderOptions& opt = {}) {
    double unit_length = 1.0;
    const auto has = [&](const char* l) { return std::find(f.labels.begin(), f.labels.end(), l) != f.labels.end(); };
    if (has("u") && has("w")) {
        const double d = distance(f.points[f.index_of("u")], f.points[f.index_of("w")]);
        if (d > 0.0) unit_length = d;
    }
    const double scale = opt.unit_px / unit_length;
    double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
    for (std::size_t i = 0; i < f.points.size(); ++i) {
        const Point p = f.points[i];
        if (i == 0 || p.x < min_x) min_x = p.x;
        if (i == 0 || p.x > max_x) max_x = p.x;
        if (i == 0 || p.y < min_y) min_y = p.y;
        if (i == 0 || p.y > max_y) max_y = p.y;
    }
    const double ray = 0.25 * unit_length;
    if (opt.cones_at) {
        const Point c = f.points[f.index_of(*opt.cones_at)];
        min_x = std::min(min_x, c.x - ray);
        max_x = std::max(max_x, c.x + ray);
        min_y = std::min(min_y, c.y - ray);
        max_y = std::max(max_y, c.y + ray);
    }
    const double width = (max_x - min_x) * scale + 2 * opt.margin_px;
    const double height = (max_y - min_y) * scale + 2 * opt.margin_px;
    // SVG's y axis points down.
    const auto sx = [&](double x) { return format_number((x - min_x) * scale + opt.margin_px); };
    const auto sy = [&](double y) { return format_number((max_y - y) * scale + opt.margin_px); };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_number(width) + "\" height=\"" +
           format_number(height) + "\" viewBox=\"0 0 " + format_number(width) + " " + format_number(height) +
           "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<g class=\"edges\" stroke=\"black\" stroke-width=\"1\">\n";
    for (const auto& e : edges) {
        const Point a = f.points[e.u], b = f.points[e.v];
        out += "<line x1=\"" + sx(a.x) + "\" y1=\"" + sy(a.y) + "\" x2=\"" + sx(b.x) + "\" y2=\"" + sy(b.y) +
               "\"/>\n";
    }
    out += "</g>\n";
    if (opt.cones_at) {
        const ConeSystem s(f.m);
        const Point c = f.points[f.index_of(*opt.cones_at)];
        out += "<g class=\"cones\" stroke=\"gray\" stroke-width=\"0.5\" stroke-dasharray=\"4 2\">\n";
        for (int i = 0; i < s.cones(); ++i) {
            const Point end = c + ray * unit(s.cw_boundary_heading(i));
            out += "<line x1=\"" + sx(c.x) + "\" y1=\"" + sy(c.y) + "\" x2=\"" + sx(end.x) + "\" y2=\"" +
                   sy(end.y) + "\"/>\n";
        }
        out += "</g>\n";
    }
    out += "<g class=\"vertices\" font-family=\"sans-serif\" font-size=\"10\">\n";
    for (std::size_t i = 0; i < f.points.size(); ++i) {
        const Point p = f.points[i];
        out += "<circle cx=\"" + sx(p.x) + "\" cy=\"" + sy(p.y) + "\" r=\"3\" fill=\"steelblue\"/>\n";
        out += "<text x=\"" + sx(p.x) + "\" y=\"" + sy(p.y) + "\" dx=\"4\" dy=\"-4\">" + xml_escape(f.labels[i]) + "</text>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

}  // namespace otheta
