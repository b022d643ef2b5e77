#include "peano/complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace peano {

namespace {

struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

void build_links(CellComplex& cx) {
    const int k = cx.k;
    const int nv = static_cast<int>(cx.verts.size());
    std::vector<int> start(nv, -1);
    for (int t = 0; t < static_cast<int>(cx.tiles.size()); ++t) {
        const Tile& T = cx.tiles[t];
        if (T.color != Color::white) continue;
        for (int c = 0; c < k; ++c) {
            int v = T.vert[c];
            if (start[v] == -1) start[v] = t;  // tiles scanned in id order
        }
    }
    for (int v = 0; v < nv; ++v) {
        Vertex& V = cx.verts[v];
        V.link_tiles.clear();
        V.link_edges.clear();
        if (start[v] == -1) throw LinkError("vertex " + std::to_string(v) + " has no white tile");
        const int j = V.type;
        int w = start[v];
        const std::size_t guard = 2 * cx.tiles.size() + 2;
        do {
            if (cx.tiles[w].vert[j] != v) throw LinkError("link walk left vertex " + std::to_string(v));
            int ein = cx.tiles[w].edge[(j + k - 1) % k];
            int b = cx.edges[ein].black;
            if (cx.tiles[b].vert[j] != v) throw LinkError("link walk left vertex " + std::to_string(v));
            int eout = cx.tiles[b].edge[j];
            cx.edges[ein].at_term = static_cast<int>(V.link_edges.size());
            V.link_tiles.push_back(w);
            V.link_edges.push_back(ein);
            cx.edges[eout].at_init = static_cast<int>(V.link_edges.size());
            V.link_tiles.push_back(b);
            V.link_edges.push_back(eout);
            w = cx.edges[eout].white;
            if (V.link_tiles.size() > guard) throw LinkError("link of vertex " + std::to_string(v) + " does not close");
        } while (w != start[v]);
        std::set<int> on;
        for (int e : V.link_edges)
            if (cx.edges[e].on_curve >= 0) on.insert(cx.edges[e].on_curve);
        V.on_curve.assign(on.begin(), on.end());
    }
}

// Fills edge incidence, vertices and links from tile slots. Vertex ids follow
// `preferred` first, then first appearance over (tile, corner).
void assemble(CellComplex& cx, const std::vector<std::pair<int, int>>& preferred) {
    const int k = cx.k;
    const int nt = static_cast<int>(cx.tiles.size());
    for (auto& e : cx.edges) e.white = e.black = -1;
    for (int t = 0; t < nt; ++t)
        for (int s = 0; s < k; ++s) {
            Edge& e = cx.edges[cx.tiles[t].edge[s]];
            int& slot = cx.tiles[t].color == Color::white ? e.white : e.black;
            if (slot != -1 || e.type != s) throw ChainMismatch("edge glued inconsistently while assembling tiles");
            slot = t;
        }
    for (std::size_t e = 0; e < cx.edges.size(); ++e)
        if (cx.edges[e].white < 0 || cx.edges[e].black < 0)
            throw ChainMismatch("edge " + std::to_string(e) + " lacks a white or a black tile");

    Dsu dsu(nt * k);
    for (const auto& e : cx.edges) {
        int t = e.type, t1 = (e.type + 1) % k;
        dsu.unite(e.white * k + t, e.black * k + t);
        dsu.unite(e.white * k + t1, e.black * k + t1);
    }
    std::vector<int> id(nt * k, -1);
    int next = 0;
    cx.verts.clear();
    auto claim = [&](int tile, int corner) {
        int root = dsu.find(tile * k + corner);
        if (id[root] == -1) {
            id[root] = next++;
            Vertex v;
            v.type = corner;
            cx.verts.push_back(v);
        }
        return id[root];
    };
    for (auto [t, c] : preferred) {
        int before = next;
        if (claim(t, c) != before) throw ChainMismatch("two preferred corners name the same vertex");
    }
    for (int t = 0; t < nt; ++t)
        for (int c = 0; c < k; ++c) claim(t, c);
    for (int t = 0; t < nt; ++t) {
        cx.tiles[t].vert.assign(k, -1);
        for (int c = 0; c < k; ++c) cx.tiles[t].vert[c] = id[dsu.find(t * k + c)];
    }
    for (auto& e : cx.edges) {
        e.init = cx.tiles[e.white].vert[e.type];
        e.term = cx.tiles[e.white].vert[(e.type + 1) % k];
    }
    build_links(cx);
}

}  // namespace

CellComplex level_zero(const SubdivisionRule& r) {
    CellComplex cx;
    cx.level = 0;
    cx.d = r.d;
    cx.k = r.k;
    for (int c = 0; c < 2; ++c) {
        Tile t;
        t.color = c == 0 ? Color::white : Color::black;
        t.edge.resize(r.k);
        std::iota(t.edge.begin(), t.edge.end(), 0);
        cx.tiles.push_back(t);
    }
    for (int j = 0; j < r.k; ++j) {
        Edge e;
        e.type = j;
        e.on_curve = j;
        cx.edges.push_back(e);
    }
    std::vector<std::pair<int, int>> pref;
    for (int j = 0; j < r.k; ++j) pref.push_back({0, j});
    assemble(cx, pref);
    for (auto& v : cx.verts) v.old = true;
    return cx;
}

CellComplex level_one(const SubdivisionRule& r) {
    CellComplex cx;
    cx.level = 1;
    cx.d = r.d;
    cx.k = r.k;
    const auto& cd = r.curve_data;
    for (std::size_t y = 0; y < r.tiles.size(); ++y) {
        Tile t;
        t.color = r.tiles[y].color;
        t.edge = r.tiles[y].slot;
        t.local = static_cast<int>(y);
        t.image = t.color == Color::white ? 0 : 1;
        t.parent = cd ? (cd->side[y] == Color::white ? 0 : 1) : -1;
        cx.tiles.push_back(t);
    }
    for (std::size_t e = 0; e < r.edges.size(); ++e) {
        Edge E;
        E.type = r.edges[e].type;
        E.local = static_cast<int>(e);
        E.image = E.type;
        if (cd) {
            E.on_curve = cd->chain_of[e];
            E.parent_edge = cd->chain_of[e];
            E.chain_pos = cd->pos_of[e];
        }
        cx.edges.push_back(E);
    }
    // Post vertices get ids 0..k-1.
    std::vector<std::pair<int, int>> pref;
    if (!r.post_vertices.empty()) {
        for (const auto& p : r.post_vertices) pref.push_back({p.tile, p.corner});
    } else {
        for (int j = 0; j < r.k; ++j) {
            const CurveStep& s = r.curve[j].front();
            int white = -1;
            for (std::size_t y = 0; y < r.tiles.size(); ++y)
                if (r.tiles[y].color == Color::white && r.tiles[y].slot[r.edges[s.edge].type] == s.edge)
                    white = static_cast<int>(y);
            int ty = r.edges[s.edge].type;
            pref.push_back({white, s.forward ? ty : (ty + 1) % r.k});
        }
    }
    assemble(cx, pref);
    for (auto& E : cx.edges)
        if (cd && E.on_curve < 0) E.parent_tile = cx.tiles[E.white].parent;
    for (int v = 0; v < static_cast<int>(cx.verts.size()); ++v) {
        cx.verts[v].image = cx.verts[v].type;
        cx.verts[v].old = v < r.k;
    }
    if (!cd) {
        // Only the postcritical points are known to lie on C.
        for (int j = 0; j < r.k; ++j) cx.verts[j].on_curve = {std::min(j, (j + r.k - 1) % r.k), std::max(j, (j + r.k - 1) % r.k)};
    } else {
        cx.child.assign(2, std::vector<int>(r.tiles.size(), -1));
        for (std::size_t y = 0; y < r.tiles.size(); ++y) cx.child[cx.tiles[y].parent][y] = static_cast<int>(y);
    }
    return cx;
}

CellComplex subdivide(const CellComplex& cx, const SubdivisionRule& r) {
    if (!r.curve_data) {
        std::string why = r.invariant() ? "invalid invariant curve" : "rule declares no invariant curve";
        for (const auto& e : r.curve_errors) why += "; " + e;
        throw ChainMismatch(why);
    }
    if (cx.k != r.k || cx.d != r.d) throw ChainMismatch("complex and rule disagree on d or k");
    const auto& cd = *r.curve_data;
    const int k = r.k;
    const int nr = static_cast<int>(r.tiles.size());
    const CellComplex l1 = level_one(r);

    CellComplex nx;
    nx.level = cx.level + 1;
    nx.d = cx.d;
    nx.k = k;

    std::vector<std::vector<int>> curve_child(cx.edges.size());
    for (int e = 0; e < static_cast<int>(cx.edges.size()); ++e) {
        const auto& chain = r.curve[cx.edges[e].type];
        for (int t = 0; t < static_cast<int>(chain.size()); ++t) {
            Edge E;
            E.type = r.edges[chain[t].edge].type;
            E.local = chain[t].edge;
            E.parent_edge = e;
            E.chain_pos = t;
            E.on_curve = cx.edges[e].on_curve;
            curve_child[e].push_back(static_cast<int>(nx.edges.size()));
            nx.edges.push_back(E);
        }
    }
    std::array<std::vector<int>, 2> interior;
    for (int e = 0; e < static_cast<int>(r.edges.size()); ++e)
        if (cd.chain_of[e] < 0) interior[static_cast<int>(cd.side[l1.edges[e].white])].push_back(e);
    std::vector<int> interior_slot(r.edges.size(), -1);
    for (int s = 0; s < 2; ++s)
        for (int i = 0; i < static_cast<int>(interior[s].size()); ++i) interior_slot[interior[s][i]] = i;
    std::vector<int> interior_base(cx.tiles.size());
    for (int X = 0; X < static_cast<int>(cx.tiles.size()); ++X) {
        interior_base[X] = static_cast<int>(nx.edges.size());
        for (int re : interior[static_cast<int>(cx.tiles[X].color)]) {
            Edge E;
            E.type = r.edges[re].type;
            E.local = re;
            E.parent_tile = X;
            nx.edges.push_back(E);
        }
    }

    nx.child.assign(cx.tiles.size(), std::vector<int>(nr, -1));
    for (int X = 0; X < static_cast<int>(cx.tiles.size()); ++X) {
        const Tile& PX = cx.tiles[X];
        for (int Y = 0; Y < nr; ++Y) {
            if (cd.side[Y] != PX.color) continue;
            Tile T;
            T.color = r.tiles[Y].color;
            T.parent = X;
            T.local = Y;
            T.image = cx.level == 0 ? static_cast<int>(T.color) : cx.child[PX.image][Y];
            T.edge.resize(k);
            for (int t = 0; t < k; ++t) {
                int re = r.tiles[Y].slot[t];
                int j = cd.chain_of[re];
                T.edge[t] = j >= 0 ? curve_child[PX.edge[j]][cd.pos_of[re]] : interior_base[X] + interior_slot[re];
            }
            nx.child[X][Y] = static_cast<int>(nx.tiles.size());
            nx.tiles.push_back(T);
        }
    }

    // Old vertices keep their ids: corner j of X sits at the copy of p_j.
    std::array<std::vector<std::pair<int, int>>, 2> post_ref;
    for (int s = 0; s < 2; ++s)
        for (int j = 0; j < k; ++j) {
            int found = -1;
            for (int t : l1.verts[j].link_tiles)
                if (static_cast<int>(cd.side[t]) == s && (found < 0 || t < found)) found = t;
            if (found < 0) throw ChainMismatch("postcritical point missing from one side of C");
            post_ref[s].push_back({found, l1.verts[j].type});
        }
    std::vector<std::pair<int, int>> pref;
    for (const auto& u : cx.verts) {
        int X = u.link_tiles.front();
        auto [Y, c] = post_ref[static_cast<int>(cx.tiles[X].color)][u.type];
        pref.push_back({nx.child[X][Y], c});
    }
    assemble(nx, pref);

    for (auto& E : nx.edges) E.image = cx.tiles[nx.tiles[E.white].image].edge[E.type];
    for (int t = 0; t < static_cast<int>(nx.tiles.size()); ++t)
        for (int c = 0; c < k; ++c) nx.verts[nx.tiles[t].vert[c]].image = cx.tiles[nx.tiles[t].image].vert[c];
    for (int v = 0; v < static_cast<int>(nx.verts.size()); ++v) nx.verts[v].old = v < static_cast<int>(cx.verts.size());
    return nx;
}

std::vector<CellComplex> iterate(const SubdivisionRule& r, int max_level) {
    std::vector<CellComplex> out;
    out.push_back(level_zero(r));
    if (max_level >= 1) out.push_back(level_one(r));
    for (int n = 2; n <= max_level; ++n) out.push_back(subdivide(out.back(), r));
    return out;
}

std::vector<LinkCorner> vertex_link(const CellComplex& cx, int v) {
    std::vector<LinkCorner> out;
    const Vertex& V = cx.verts.at(v);
    for (std::size_t i = 0; i < V.link_tiles.size(); ++i) out.push_back({V.link_tiles[i], V.link_edges[i]});
    return out;
}

bool check_no_opposite_sides(const CellComplex& cx) {
    const int k = cx.k;
    for (const auto& T : cx.tiles) {
        std::set<int> sides;
        for (int v : T.vert)
            for (int j : cx.verts[v].on_curve) sides.insert(j);
        if (k == 3) {
            if (sides.size() == 3) return false;
            continue;
        }
        for (int a : sides)
            for (int b : sides) {
                int gap = ((a - b) % k + k) % k;
                if (gap != 0 && gap != 1 && gap != k - 1) return false;
            }
    }
    return true;
}

void check_complex(const CellComplex& cx, std::vector<CheckEntry>& out) {
    const int k = cx.k;
    long long dn = 1;
    for (int i = 0; i < cx.level; ++i) dn *= cx.d;
    auto add = [&](const std::string& name, bool ok, const std::string& detail = "") { out.push_back({name, ok, detail}); };
    add("tile count 2d^n", static_cast<long long>(cx.tiles.size()) == 2 * dn, std::to_string(cx.tiles.size()));
    add("edge count kd^n", static_cast<long long>(cx.edges.size()) == k * dn, std::to_string(cx.edges.size()));
    add("euler characteristic 2", cx.euler() == 2, std::to_string(cx.euler()));

    bool links_ok = true;
    std::string link_detail;
    std::vector<int> seen(cx.tiles.size() * k, 0);
    for (int v = 0; v < static_cast<int>(cx.verts.size()); ++v) {
        const Vertex& V = cx.verts[v];
        if (V.link_tiles.empty() || V.link_tiles.size() % 2 != 0 || V.link_edges.size() != V.link_tiles.size()) {
            links_ok = false;
            link_detail = "vertex " + std::to_string(v) + " has a malformed link";
            continue;
        }
        for (std::size_t i = 0; i < V.link_tiles.size(); ++i) {
            const Tile& T = cx.tiles[V.link_tiles[i]];
            if ((T.color == Color::white) != (i % 2 == 0)) {
                links_ok = false;
                link_detail = "colors do not alternate at vertex " + std::to_string(v);
            }
            if (T.vert[V.type] != v) {
                links_ok = false;
                link_detail = "link tile misses vertex " + std::to_string(v);
            }
            seen[V.link_tiles[i] * k + V.type]++;
        }
    }
    for (int x : seen)
        if (x != 1) {
            links_ok = false;
            link_detail = "a tile corner is not covered by exactly one link";
        }
    add("vertex links alternate and cover every corner", links_ok, link_detail);

    bool orient_ok = true;
    for (const auto& e : cx.edges) {
        const Tile& W = cx.tiles[e.white];
        const Tile& B = cx.tiles[e.black];
        if (W.edge[e.type] < 0 || cx.edges[W.edge[e.type]].init != e.init || e.init != W.vert[e.type] ||
            e.term != W.vert[(e.type + 1) % k] || B.vert[e.type] != e.init || B.vert[(e.type + 1) % k] != e.term)
            orient_ok = false;
    }
    add("edges positively oriented along their white tile", orient_ok);

    for (Color c : {Color::white, Color::black}) {
        Dsu dsu(static_cast<int>(cx.tiles.size()));
        for (const auto& V : cx.verts)
            for (std::size_t i = static_cast<int>(c); i < V.link_tiles.size(); i += 2)
                dsu.unite(V.link_tiles[i], V.link_tiles[static_cast<int>(c)]);
        std::set<int> roots;
        for (int t = 0; t < static_cast<int>(cx.tiles.size()); ++t)
            if (cx.tiles[t].color == c) roots.insert(dsu.find(t));
        add(std::string("union of ") + color_name(c) + " tiles connected", roots.size() == 1);
    }
}

bool check_commutes(const CellComplex& lower, const CellComplex& upper) {
    if (upper.level != lower.level + 1 || upper.level < 2) return false;
    for (const auto& T : upper.tiles)
        if (lower.tiles.at(T.parent).image != lower.tiles.at(T.image).parent) return false;
    for (const auto& E : upper.edges) {
        int img_parent = E.parent_edge >= 0 ? lower.edges.at(E.parent_edge).image : -1;
        int parent_img = lower.edges.at(E.image).parent_edge;
        if (E.parent_edge >= 0 && img_parent != parent_img) return false;
        if (E.parent_tile >= 0 && lower.tiles.at(E.parent_tile).image != lower.edges.at(E.image).parent_tile) return false;
    }
    return true;
}

bool ValidationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.ok; });
}

std::string ValidationReport::text() const {
    std::ostringstream os;
    os << "V=" << V << " E=" << E << " T=" << T << " chi=" << chi << "\n";
    os << "degrees:";
    for (int d : degrees) os << ' ' << d;
    os << "\n";
    for (const auto& c : checks) {
        os << (c.ok ? "ok   " : "FAIL ") << c.name;
        if (!c.detail.empty()) os << " (" << c.detail << ")";
        os << "\n";
    }
    return os.str();
}

ValidationReport validate(const SubdivisionRule& r) {
    ValidationReport rep;
    rep.T = static_cast<int>(r.tiles.size());
    rep.E = static_cast<int>(r.edges.size());
    CellComplex cx;
    try {
        cx = level_one(r);
    } catch (const std::exception& e) {
        rep.checks.push_back({"cell complex assembles", false, e.what()});
        return rep;
    }
    rep.V = static_cast<int>(cx.verts.size());
    rep.chi = cx.euler();
    for (const auto& v : cx.verts) rep.degrees.push_back(v.degree());
    check_complex(cx, rep.checks);
    if (r.invariant()) {
        std::string why;
        for (const auto& e : r.curve_errors) why += (why.empty() ? "" : "; ") + e;
        rep.checks.push_back({"curve chains close up through p_0..p_{k-1} in order", r.curve_data.has_value(), why});
    } else {
        rep.checks.push_back({"curve chains close up through p_0..p_{k-1} in order", true, "no invariant curve declared"});
    }
    return rep;
}

}  // namespace peano
