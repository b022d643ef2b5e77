#include "peano/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace peano {

namespace {

struct Affine {
    double a, b, c, d, e, f;  // x' = a x + b y + e, y' = c x + d y + f
    Point operator()(const Point& p) const { return {a * p.x + b * p.y + e, c * p.x + d * p.y + f}; }
};

// Maps src[0..2] onto dst[0..2].
Affine affine_from(const std::vector<Point>& src, const std::vector<Point>& dst) {
    const double ux = src[1].x - src[0].x, uy = src[1].y - src[0].y;
    const double vx = src[2].x - src[0].x, vy = src[2].y - src[0].y;
    const double det = ux * vy - uy * vx;
    if (std::abs(det) < 1e-15) throw RenderError("degenerate chart corners");
    const double px = dst[1].x - dst[0].x, py = dst[1].y - dst[0].y;
    const double qx = dst[2].x - dst[0].x, qy = dst[2].y - dst[0].y;
    Affine A;
    A.a = (px * vy - qx * uy) / det;
    A.b = (qx * ux - px * vx) / det;
    A.c = (py * vy - qy * uy) / det;
    A.d = (qy * ux - py * vx) / det;
    A.e = dst[0].x - A.a * src[0].x - A.b * src[0].y;
    A.f = dst[0].y - A.c * src[0].x - A.d * src[0].y;
    return A;
}

}  // namespace

std::string coord(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", x);
    std::string s = buf;
    if (s == "-0.0000") s = "0.0000";
    return s;
}

std::vector<std::vector<std::vector<Point>>> tile_positions(const SubdivisionRule& r,
                                                            const std::vector<CellComplex>& lv, int upto) {
    if (!r.geometry) throw RenderError("rule has no geometry");
    const Geometry& g = *r.geometry;
    const std::size_t top = upto < 0 ? lv.size() : std::min(lv.size(), static_cast<std::size_t>(upto) + 1);
    std::vector<std::vector<std::vector<Point>>> out(top);
    if (top < 2) return out;
    for (const auto& t : lv[1].tiles) out[1].push_back(g.tile_corners.at(t.local));
    for (std::size_t n = 2; n < top; ++n) {
        std::vector<Affine> maps;
        for (std::size_t x = 0; x < lv[n - 1].tiles.size(); ++x)
            maps.push_back(affine_from(g.chart[static_cast<int>(lv[n - 1].tiles[x].color)], out[n - 1][x]));
        for (const auto& t : lv[n].tiles) {
            std::vector<Point> pts;
            for (const auto& p : g.tile_corners.at(t.local)) pts.push_back(maps[t.parent](p));
            out[n].push_back(pts);
        }
    }
    return out;
}

std::vector<Point> vertex_positions(const CellComplex& cx, const std::vector<std::vector<Point>>& tiles) {
    std::vector<Point> pos(cx.verts.size());
    std::vector<int> from(cx.verts.size(), -1);
    for (int t = 0; t < static_cast<int>(cx.tiles.size()); ++t) {
        if (cx.tiles[t].color != Color::white) continue;
        for (int c = 0; c < cx.k; ++c) {
            int v = cx.tiles[t].vert[c];
            if (from[v] < 0) from[v] = t, pos[v] = tiles[t][c];
        }
    }
    return pos;
}

std::vector<Point> curve_points(const CellComplex& cx, const EulerCircuit& circuit, const std::vector<Point>& vertex_pos) {
    if (circuit.edges.empty()) throw RenderError("empty circuit");
    std::vector<Point> pts;
    for (int e : circuit.edges) pts.push_back(vertex_pos[cx.edges[e].init]);
    pts.push_back(pts.front());
    return pts;
}

std::string render_svg(const SubdivisionRule& r, const Lift& lift, int level, const RenderOptions& opt) {
    if (!r.geometry)
        throw RenderError("rule '" + r.name +
                          "' has no geometry; add a \"geometry\" section with a \"chart\" (white and black 0-tile "
                          "corners by type) and per-tile corner lists under \"tiles\"");
    if (level < 1 || level >= static_cast<int>(lift.lv.size())) throw RenderError("level out of range");
    auto tiles = tile_positions(r, lift.lv, level);
    const CellComplex& cx = lift.lv[level];
    auto vpos = vertex_positions(cx, tiles[level]);
    auto pts = curve_points(cx, lift.gamma[level], vpos);

    double minx = 1e300, miny = 1e300, maxx = -1e300, maxy = -1e300;
    for (const auto& chart : r.geometry->chart)
        for (const auto& p : chart) {
            minx = std::min(minx, p.x), maxx = std::max(maxx, p.x);
            miny = std::min(miny, p.y), maxy = std::max(maxy, p.y);
        }
    const double s = opt.pixels;
    const double pad = 10;
    // SVG y grows downward; flip so the chart reads upright.
    auto X = [&](double x) { return coord(pad + (x - minx) * s); };
    auto Y = [&](double y) { return coord(pad + (maxy - y) * s); };
    const std::string w = coord(2 * pad + (maxx - minx) * s), h = coord(2 * pad + (maxy - miny) * s);

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w << "\" height=\"" << h
       << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    for (int c = 0; c < 2; ++c) {
        os << "<polygon fill=\"" << (c == 0 ? "#f4f4f4" : "#d0d0d0") << "\" stroke=\"#888888\" points=\"";
        for (std::size_t i = 0; i < r.geometry->chart[c].size(); ++i)
            os << (i ? " " : "") << X(r.geometry->chart[c][i].x) << "," << Y(r.geometry->chart[c][i].y);
        os << "\"/>\n";
    }
    os << "<polyline id=\"curve\" data-level=\"" << level << "\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\""
       << coord(opt.stroke) << "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) os << (i ? " " : "") << X(pts[i].x) << "," << Y(pts[i].y);
    os << "\"/>\n";
    if (opt.dots)
        for (int j = 0; j < cx.k; ++j)
            os << "<circle class=\"post\" cx=\"" << X(vpos[j].x) << "\" cy=\"" << Y(vpos[j].y) << "\" r=\"4.0000\"/>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace peano
