#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace peano {

enum class Color { white = 0, black = 1 };

inline const char* color_name(Color c) { return c == Color::white ? "white" : "black"; }

struct RuleTile {
    std::string id;
    Color color = Color::white;
    std::vector<int> slot;  // slot[t] = edge of type t
};

struct RuleEdge {
    std::string id;
    int type = 0;
};

struct CurveStep {
    int edge = 0;
    bool forward = true;  // traversed along its positive orientation
};

struct Point {
    double x = 0, y = 0;
    bool operator==(const Point&) const = default;
};

struct Geometry {
    std::array<std::vector<Point>, 2> chart;        // 0-tile corners by type, white then black
    std::vector<std::vector<Point>> tile_corners;  // per rule tile, corners by type
};

struct CornerRef {
    int tile = 0;
    int corner = 0;
};

// Curve analysis of an invariant rule: which 0-tile each 1-tile lies in and
// where each curve edge sits on C.
struct CurveData {
    std::vector<Color> side;     // per rule tile
    std::vector<int> chain_of;   // per rule edge, -1 off C
    std::vector<int> pos_of;     // per rule edge, position within its chain
};

struct SubdivisionRule {
    std::string name;
    int d = 0;
    int k = 0;
    std::vector<std::string> post;
    std::vector<RuleTile> tiles;
    std::vector<RuleEdge> edges;
    std::vector<std::vector<CurveStep>> curve;  // empty when no invariant curve is declared
    std::vector<CornerRef> post_vertices;       // may be empty when derivable from the curve
    std::optional<Geometry> geometry;

    std::optional<CurveData> curve_data;  // set when the curve analysis succeeds
    std::vector<std::string> curve_errors;

    bool invariant() const { return !curve.empty(); }
    int tile_index(const std::string& id) const;
    int edge_index(const std::string& id) const;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

SubdivisionRule parse_rule(const nlohmann::json& doc);
SubdivisionRule parse_rule_text(const std::string& text);
SubdivisionRule load_rule(const std::string& path);

nlohmann::json rule_to_json(const SubdivisionRule& r);

// Index of a postcritical point given by its label or as "p<j>".
int post_index(const SubdivisionRule& r, const std::string& label);
// The same rule with p_s relabelled p_0; types shift cyclically by -s.
SubdivisionRule with_p0(const SubdivisionRule& r, int s);

}  // namespace peano
