#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "peano/lift.hpp"

namespace peano {

struct RenderError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RenderOptions {
    double stroke = 1.5;
    bool dots = true;
    int pixels = 800;  // width of one chart unit
};

// Corner positions of every tile at levels 1..upto (default: all of lv),
// placed by the affine map taking the 0-tile chart onto the parent tile.
std::vector<std::vector<std::vector<Point>>> tile_positions(const SubdivisionRule& r,
                                                            const std::vector<CellComplex>& lv, int upto = -1);

// One position per vertex, taken from the least-id white tile at it.
std::vector<Point> vertex_positions(const CellComplex& cx, const std::vector<std::vector<Point>>& tiles);

// Closed sequence of chart points visited by the circuit, first point repeated.
std::vector<Point> curve_points(const CellComplex& cx, const EulerCircuit& circuit,
                                const std::vector<Point>& vertex_pos);

std::string render_svg(const SubdivisionRule& r, const Lift& lift, int level, const RenderOptions& opt = {});

// Formats a chart coordinate with fixed precision so output bytes are stable.
std::string coord(double x);

}  // namespace peano
