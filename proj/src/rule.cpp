#include "peano/rule.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace peano {

using nlohmann::json;

int SubdivisionRule::tile_index(const std::string& id) const {
    for (std::size_t i = 0; i < tiles.size(); ++i)
        if (tiles[i].id == id) return static_cast<int>(i);
    return -1;
}

int SubdivisionRule::edge_index(const std::string& id) const {
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i].id == id) return static_cast<int>(i);
    return -1;
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ParseError(where + ": " + what); }

const json& need(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) fail(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(where, std::string("missing key '") + key + "'");
    return *it;
}

int need_int(const json& v, const std::string& where) {
    if (!v.is_number_integer()) fail(where, "expected an integer");
    return v.get<int>();
}

std::string need_str(const json& v, const std::string& where) {
    if (!v.is_string()) fail(where, "expected a string");
    return v.get<std::string>();
}

const json& need_array(const json& v, const std::string& where) {
    if (!v.is_array()) fail(where, "expected an array");
    return v;
}

Point need_point(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        fail(where, "expected a coordinate pair");
    return {v[0].get<double>(), v[1].get<double>()};
}

struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

// Vertex classes of (tile, corner) pairs, glued along shared edges.
std::vector<int> corner_classes(const SubdivisionRule& r, const std::vector<std::array<int, 2>>& inc) {
    const int k = r.k;
    Dsu dsu(static_cast<int>(r.tiles.size()) * k);
    for (std::size_t e = 0; e < r.edges.size(); ++e) {
        int t = r.edges[e].type;
        int w = inc[e][0], b = inc[e][1];
        dsu.unite(w * k + t, b * k + t);
        dsu.unite(w * k + (t + 1) % k, b * k + (t + 1) % k);
    }
    std::vector<int> cls(r.tiles.size() * k);
    for (std::size_t i = 0; i < cls.size(); ++i) cls[i] = dsu.find(static_cast<int>(i));
    return cls;
}

void analyze_curve(SubdivisionRule& r, const std::vector<std::array<int, 2>>& inc) {
    auto& errs = r.curve_errors;
    const int k = r.k;
    const int ne = static_cast<int>(r.edges.size());
    if (static_cast<int>(r.curve.size()) != k) {
        errs.push_back("curve must list one chain per 0-edge");
        return;
    }
    auto cls = corner_classes(r, inc);
    auto init_of = [&](int e) { return cls[inc[e][0] * k + r.edges[e].type]; };
    auto term_of = [&](int e) { return cls[inc[e][0] * k + (r.edges[e].type + 1) % k]; };
    auto start_of = [&](const CurveStep& s) { return s.forward ? init_of(s.edge) : term_of(s.edge); };
    auto end_of = [&](const CurveStep& s) { return s.forward ? term_of(s.edge) : init_of(s.edge); };

    CurveData cd;
    cd.chain_of.assign(ne, -1);
    cd.pos_of.assign(ne, -1);
    for (int j = 0; j < k; ++j) {
        const auto& ch = r.curve[j];
        if (ch.empty()) {
            errs.push_back("chain " + std::to_string(j) + " is empty");
            continue;
        }
        for (std::size_t t = 0; t < ch.size(); ++t) {
            int e = ch[t].edge;
            if (cd.chain_of[e] != -1)
                errs.push_back("edge " + r.edges[e].id + " appears twice on the curve");
            cd.chain_of[e] = j;
            cd.pos_of[e] = static_cast<int>(t);
            if (t + 1 < ch.size() && end_of(ch[t]) != start_of(ch[t + 1]))
                errs.push_back("chain " + std::to_string(j) + " breaks after step " + std::to_string(t));
        }
    }
    if (!errs.empty()) return;
    for (int j = 0; j < k; ++j)
        if (end_of(r.curve[j].back()) != start_of(r.curve[(j + 1) % k].front()))
            errs.push_back("chain " + std::to_string(j) + " does not end where chain " + std::to_string((j + 1) % k) +
                           " starts");
    std::set<int> posts;
    for (int j = 0; j < k; ++j) posts.insert(start_of(r.curve[j].front()));
    if (static_cast<int>(posts.size()) != k) errs.push_back("chain endpoints are not k distinct vertices");
    if (!r.post_vertices.empty()) {
        for (int j = 0; j < k; ++j) {
            const auto& pv = r.post_vertices[j];
            if (cls[pv.tile * k + pv.corner] != start_of(r.curve[j].front()))
                errs.push_back("post vertex " + r.post[j] + " is not the start of chain " + std::to_string(j));
        }
    }
    // Every vertex of a chain other than its endpoints must avoid the post set.
    for (int j = 0; j < k; ++j)
        for (std::size_t t = 0; t + 1 < r.curve[j].size(); ++t)
            if (posts.count(end_of(r.curve[j][t])))
                errs.push_back("chain " + std::to_string(j) + " passes through a postcritical vertex");
    if (!errs.empty()) return;

    // Sides: flood fill across edges off C.
    const int nt = static_cast<int>(r.tiles.size());
    Dsu dsu(nt);
    for (int e = 0; e < ne; ++e)
        if (cd.chain_of[e] == -1) dsu.unite(inc[e][0], inc[e][1]);
    int left = -1, right = -1;
    for (const auto& ch : r.curve)
        for (const auto& s : ch) {
            int l = dsu.find(inc[s.edge][s.forward ? 0 : 1]);
            int rr = dsu.find(inc[s.edge][s.forward ? 1 : 0]);
            if (left == -1) left = l, right = rr;
            if (l != left || rr != right) {
                errs.push_back("curve does not separate the tiles into two sides consistently");
                return;
            }
        }
    if (left == right) {
        errs.push_back("both sides of the curve are joined off the curve");
        return;
    }
    cd.side.resize(nt);
    for (int t = 0; t < nt; ++t) {
        int c = dsu.find(t);
        if (c != left && c != right) {
            errs.push_back("tile " + r.tiles[t].id + " is cut off from both sides");
            return;
        }
        cd.side[t] = c == left ? Color::white : Color::black;
    }
    r.curve_data = std::move(cd);
}

}  // namespace

SubdivisionRule parse_rule(const json& doc) {
    SubdivisionRule r;
    if (!doc.is_object()) fail("document", "expected a JSON object");
    if (doc.contains("name")) r.name = need_str(doc["name"], "name");
    r.d = need_int(need(doc, "degree", "document"), "degree");
    if (r.d < 1) fail("degree", "must be positive");
    const json& post = need_array(need(doc, "post", "document"), "post");
    for (std::size_t i = 0; i < post.size(); ++i) {
        std::string p = need_str(post[i], "post[" + std::to_string(i) + "]");
        if (std::find(r.post.begin(), r.post.end(), p) != r.post.end())
            fail("post[" + std::to_string(i) + "]", "duplicate label '" + p + "'");
        r.post.push_back(p);
    }
    r.k = static_cast<int>(r.post.size());
    if (r.k < 3) fail("post", "need at least 3 postcritical points");

    const json& edges = need_array(need(doc, "edges", "document"), "edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        std::string w = "edges[" + std::to_string(i) + "]";
        RuleEdge e;
        e.id = need_str(need(edges[i], "id", w), w + ".id");
        e.type = need_int(need(edges[i], "type", w), w + ".type");
        if (e.type < 0 || e.type >= r.k) fail(w + ".type", "out of range");
        if (r.edge_index(e.id) != -1) fail(w + ".id", "duplicate id '" + e.id + "'");
        r.edges.push_back(e);
    }

    const json& tiles = need_array(need(doc, "tiles", "document"), "tiles");
    std::vector<std::vector<int>> uses(r.edges.size());
    for (std::size_t i = 0; i < tiles.size(); ++i) {
        std::string w = "tiles[" + std::to_string(i) + "]";
        RuleTile t;
        t.id = need_str(need(tiles[i], "id", w), w + ".id");
        if (r.tile_index(t.id) != -1) fail(w + ".id", "duplicate id '" + t.id + "'");
        std::string col = need_str(need(tiles[i], "color", w), w + ".color");
        if (col == "white")
            t.color = Color::white;
        else if (col == "black")
            t.color = Color::black;
        else
            fail(w + ".color", "expected 'white' or 'black'");
        const json& bd = need_array(need(tiles[i], "boundary", w), w + ".boundary");
        if (static_cast<int>(bd.size()) != r.k) fail(w + ".boundary", "expected " + std::to_string(r.k) + " slots");
        t.slot.assign(r.k, -1);
        int prev_type = -1;
        for (std::size_t s = 0; s < bd.size(); ++s) {
            std::string ws = w + ".boundary[" + std::to_string(s) + "]";
            std::string eid = need_str(need(bd[s], "edge", ws), ws + ".edge");
            int e = r.edge_index(eid);
            if (e < 0) fail(ws + ".edge", "unknown edge '" + eid + "'");
            int ty = need_int(need(bd[s], "type", ws), ws + ".type");
            if (ty != r.edges[e].type) fail(ws + ".type", "disagrees with the type of edge '" + eid + "'");
            std::string o = need_str(need(bd[s], "orient", ws), ws + ".orient");
            if (o != "+" && o != "-") fail(ws + ".orient", "expected '+' or '-'");
            // Counterclockwise traversal runs positively along white boundaries only.
            if ((o == "+") != (t.color == Color::white)) fail(ws + ".orient", "orientation disagrees with tile color");
            int step = t.color == Color::white ? 1 : r.k - 1;
            if (s > 0 && ty != (prev_type + step) % r.k)
                fail(ws + ".type", "slot types out of cyclic order");
            if (t.slot[ty] != -1) fail(ws + ".type", "type used twice");
            t.slot[ty] = e;
            prev_type = ty;
            uses[e].push_back(static_cast<int>(i));
        }
        r.tiles.push_back(t);
    }
    for (std::size_t e = 0; e < r.edges.size(); ++e) {
        std::string w = "edges[" + std::to_string(e) + "]";
        if (uses[e].size() != 2) fail(w, "edge '" + r.edges[e].id + "' must bound exactly two tiles");
        if (r.tiles[uses[e][0]].color == r.tiles[uses[e][1]].color)
            fail(w, "edge '" + r.edges[e].id + "' is shared by two " + color_name(r.tiles[uses[e][0]].color) +
                        " tiles (color parity)");
    }
    int white = 0;
    for (const auto& t : r.tiles) white += t.color == Color::white;
    if (static_cast<int>(r.tiles.size()) != 2 * r.d || white != r.d)
        fail("tiles", "expected " + std::to_string(r.d) + " white and " + std::to_string(r.d) + " black tiles");
    if (static_cast<int>(r.edges.size()) != r.k * r.d)
        fail("edges", "expected " + std::to_string(r.k * r.d) + " edges");

    std::vector<std::array<int, 2>> inc(r.edges.size());
    for (std::size_t e = 0; e < r.edges.size(); ++e) {
        int a = uses[e][0], b = uses[e][1];
        if (r.tiles[a].color == Color::black) std::swap(a, b);
        inc[e] = {a, b};
    }

    if (doc.contains("post_vertices")) {
        const json& pv = need_array(doc["post_vertices"], "post_vertices");
        if (static_cast<int>(pv.size()) != r.k) fail("post_vertices", "expected one entry per postcritical point");
        for (std::size_t i = 0; i < pv.size(); ++i) {
            std::string w = "post_vertices[" + std::to_string(i) + "]";
            std::string tid = need_str(need(pv[i], "tile", w), w + ".tile");
            int t = r.tile_index(tid);
            if (t < 0) fail(w + ".tile", "unknown tile '" + tid + "'");
            int c = need_int(need(pv[i], "corner", w), w + ".corner");
            if (c < 0 || c >= r.k) fail(w + ".corner", "out of range");
            r.post_vertices.push_back({t, c});
        }
        auto cls = corner_classes(r, inc);
        std::set<int> distinct;
        for (const auto& p : r.post_vertices) distinct.insert(cls[p.tile * r.k + p.corner]);
        if (static_cast<int>(distinct.size()) != r.k) fail("post_vertices", "entries are not distinct vertices");
    }

    if (doc.contains("curve")) {
        const json& cv = need_array(doc["curve"], "curve");
        for (std::size_t j = 0; j < cv.size(); ++j) {
            std::string w = "curve[" + std::to_string(j) + "]";
            std::vector<CurveStep> ch;
            for (std::size_t s = 0; s < need_array(cv[j], w).size(); ++s) {
                std::string ws = w + "[" + std::to_string(s) + "]";
                std::string eid = need_str(need(cv[j][s], "edge", ws), ws + ".edge");
                int e = r.edge_index(eid);
                if (e < 0) fail(ws + ".edge", "unknown edge '" + eid + "'");
                std::string dir = need_str(need(cv[j][s], "dir", ws), ws + ".dir");
                if (dir != "+" && dir != "-") fail(ws + ".dir", "expected '+' or '-'");
                ch.push_back({e, dir == "+"});
            }
            r.curve.push_back(std::move(ch));
        }
        analyze_curve(r, inc);
    }
    if (r.post_vertices.empty() && !r.curve_data) fail("document", "need post_vertices or a valid curve");

    if (doc.contains("geometry")) {
        const json& g = doc["geometry"];
        Geometry geo;
        const json& chart = need(g, "chart", "geometry");
        const char* names[2] = {"white", "black"};
        for (int c = 0; c < 2; ++c) {
            std::string w = std::string("geometry.chart.") + names[c];
            const json& pts = need_array(need(chart, names[c], "geometry.chart"), w);
            if (static_cast<int>(pts.size()) != r.k) fail(w, "expected one point per postcritical point");
            for (std::size_t i = 0; i < pts.size(); ++i) geo.chart[c].push_back(need_point(pts[i], w));
        }
        const json& gt = need(g, "tiles", "geometry");
        geo.tile_corners.resize(r.tiles.size());
        for (std::size_t t = 0; t < r.tiles.size(); ++t) {
            std::string w = "geometry.tiles." + r.tiles[t].id;
            const json& pts = need_array(need(gt, r.tiles[t].id.c_str(), "geometry.tiles"), w);
            if (static_cast<int>(pts.size()) != r.k) fail(w, "expected one point per corner");
            for (std::size_t i = 0; i < pts.size(); ++i) geo.tile_corners[t].push_back(need_point(pts[i], w));
        }
        r.geometry = std::move(geo);
    }
    return r;
}

SubdivisionRule parse_rule_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("document: not valid JSON (") + e.what() + ")");
    }
    return parse_rule(doc);
}

SubdivisionRule load_rule(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_rule_text(ss.str());
}

json rule_to_json(const SubdivisionRule& r) {
    json doc;
    doc["name"] = r.name;
    doc["degree"] = r.d;
    doc["post"] = r.post;
    json tiles = json::array();
    for (const auto& t : r.tiles) {
        json bd = json::array();
        int ty = 0;
        for (int s = 0; s < r.k; ++s) {
            bd.push_back({{"edge", r.edges[t.slot[ty]].id}, {"type", ty}, {"orient", t.color == Color::white ? "+" : "-"}});
            ty = t.color == Color::white ? (ty + 1) % r.k : (ty + r.k - 1) % r.k;
        }
        tiles.push_back({{"id", t.id}, {"color", color_name(t.color)}, {"boundary", bd}});
    }
    doc["tiles"] = tiles;
    json edges = json::array();
    for (const auto& e : r.edges) edges.push_back({{"id", e.id}, {"type", e.type}});
    doc["edges"] = edges;
    if (r.invariant()) {
        json cv = json::array();
        for (const auto& ch : r.curve) {
            json c = json::array();
            for (const auto& s : ch) c.push_back({{"edge", r.edges[s.edge].id}, {"dir", s.forward ? "+" : "-"}});
            cv.push_back(c);
        }
        doc["curve"] = cv;
    }
    if (!r.post_vertices.empty()) {
        json pv = json::array();
        for (const auto& p : r.post_vertices) pv.push_back({{"tile", r.tiles[p.tile].id}, {"corner", p.corner}});
        doc["post_vertices"] = pv;
    }
    if (r.geometry) {
        auto pts = [](const std::vector<Point>& v) {
            json a = json::array();
            for (const auto& p : v) a.push_back({p.x, p.y});
            return a;
        };
        json g;
        g["chart"] = {{"white", pts(r.geometry->chart[0])}, {"black", pts(r.geometry->chart[1])}};
        g["tiles"] = json::object();
        for (std::size_t t = 0; t < r.tiles.size(); ++t) g["tiles"][r.tiles[t].id] = pts(r.geometry->tile_corners[t]);
        doc["geometry"] = g;
    }
    return doc;
}

int post_index(const SubdivisionRule& r, const std::string& label) {
    for (int j = 0; j < r.k; ++j)
        if (r.post[j] == label || "p" + std::to_string(j) == label) return j;
    throw ParseError("p0: no postcritical point labelled '" + label + "'");
}

SubdivisionRule with_p0(const SubdivisionRule& r, int s) {
    if (s < 0 || s >= r.k) throw ParseError("p0: index out of range");
    if (s == 0) return r;
    const int k = r.k;
    auto ty = [&](int t) { return ((t - s) % k + k) % k; };
    auto rot = [&](json& a) { std::rotate(a.begin(), a.begin() + s, a.end()); };
    json doc = rule_to_json(r);
    for (auto& t : doc["tiles"])
        for (auto& b : t["boundary"]) b["type"] = ty(b["type"].get<int>());
    for (auto& e : doc["edges"]) e["type"] = ty(e["type"].get<int>());
    rot(doc["post"]);
    if (doc.contains("curve")) rot(doc["curve"]);
    if (doc.contains("post_vertices")) {
        rot(doc["post_vertices"]);
        for (auto& p : doc["post_vertices"]) p["corner"] = ty(p["corner"].get<int>());
    }
    if (doc.contains("geometry")) {
        rot(doc["geometry"]["chart"]["white"]);
        rot(doc["geometry"]["chart"]["black"]);
        for (auto& [id, pts] : doc["geometry"]["tiles"].items()) rot(pts);
    }
    return parse_rule(doc);
}

}  // namespace peano
