#include "peano/spantree.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace peano {

namespace {

int link_pos(const CellComplex& cx, int v, int tile) {
    const auto& lt = cx.verts[v].link_tiles;
    auto it = std::find(lt.begin(), lt.end(), tile);
    return it == lt.end() ? -1 : static_cast<int>(it - lt.begin());
}

Side other(Side s) { return s == Side::white ? Side::black : Side::white; }

// Replaces the partition on side s, recomputing the opposite side and
// carrying a marking along its pass.
void set_side(CncPartition& p, Side s, NcPartition np) {
    int pass = p.mark ? pass_of_pair(p, p.mark->w, p.mark->b) : -1;
    p.side(s) = std::move(np);
    p.side(other(s)) = complement(p.side(s));
    if (pass >= 0) p.mark = pair_of_pass(p, pass);
}

Connection unmarked(const CellComplex& cx) {
    Connection c{&cx, {}};
    for (const auto& v : cx.verts) c.at.push_back(white_singletons(v.degree()));
    return c;
}

std::set<int> sides_touched(const CellComplex& cx, const std::vector<int>& tiles) {
    std::set<int> s;
    for (int t : tiles)
        for (int v : cx.tiles[t].vert)
            for (int j : cx.verts[v].on_curve) s.insert(j);
    return s;
}

bool disjoint_edges(int a, int b, int k) {
    if (k <= 3) return false;
    int gap = ((a - b) % k + k) % k;
    return gap != 0 && gap != 1 && gap != k - 1;
}

std::vector<int> cluster_tiles_with(const Connection& c, int tile) {
    auto cl = clusters(c, Color::white);
    return cl[cluster_of(cl, tile)].tiles;
}

// Merges the singleton white block {i} at v into a block containing a tile
// of `tree`, through the black block adjacent to {i}.
bool attach_at(Connection& conn, int v, int i, const std::vector<int>& tree, const std::string& phase,
               std::vector<MergeEvent>& log) {
    const CellComplex& cx = *conn.cx;
    const CncPartition& p = conn.at[v];
    const Block& own = p.pw.blocks[p.pw.block_of(i)];
    if (own.size() != 1) return false;
    const int a = p.pw.ambient;
    const Block& c = p.pb.blocks[p.pb.block_of((i + 1) % a)];
    for (const auto& b : p.pw.blocks) {
        bool in_tree = std::binary_search(tree.begin(), tree.end(), cx.verts[v].link_tiles[b.front()]);
        if (!in_tree || !adjacent(p, b, c)) continue;
        auto r = merge_via(p, Side::white, b, own, c);
        if (!r) continue;
        log.push_back({phase, v, Side::white, b, own, c});
        conn.at[v] = r->cnc;
        return true;
    }
    return false;
}

}  // namespace

bool is_interior(const CellComplex& cx, int v, Color side) {
    const Vertex& V = cx.verts[v];
    if (!V.on_curve.empty()) return false;
    for (int t : V.link_tiles)
        if (cx.tiles[t].parent != static_cast<int>(side)) return false;
    return true;
}

WhiteDecomposition decompose_white(const CellComplex& cx) {
    WhiteDecomposition wd;
    wd.conn = unmarked(cx);
    for (int v = 0; v < static_cast<int>(cx.verts.size()); ++v) {
        if (!is_interior(cx, v, Color::white)) continue;
        Block full;
        for (int i = 0; i < cx.verts[v].degree(); ++i) full.push_back(2 * i);
        wd.conn.at[v] = make_cnc(make_partition(2 * cx.verts[v].degree(), {full}));
    }
    for (auto& cl : clusters(wd.conn, Color::white))
        if (cx.tiles[cl.id].parent == static_cast<int>(Color::white)) wd.clusters.push_back(cl);
    for (int i = 0; i < static_cast<int>(wd.clusters.size()); ++i) {
        if (static_cast<int>(sides_touched(cx, wd.clusters[i].tiles).size()) != cx.k) continue;
        if (wd.main != -1) throw ConstructionError("two white clusters meet every 0-edge");
        wd.main = i;
    }
    if (wd.main == -1) throw ConstructionError("no white cluster meets every 0-edge");
    return wd;
}

Connection spanning_tree(const Connection& conn, const Cluster& cl, std::vector<MergeEvent>* log,
                         const std::string& phase) {
    const CellComplex& cx = *conn.cx;
    const Side s = cl.color == Color::white ? Side::white : Side::black;
    Connection out = conn;
    // Tile sets the cluster's blocks allow to be joined, per vertex.
    std::map<int, std::vector<std::vector<int>>> allowed;
    for (auto [v, bi] : cl.blocks) {
        const Block& b = conn.at[v].side(s).blocks[bi];
        std::vector<int> tiles;
        for (int i : b) tiles.push_back(cx.verts[v].link_tiles[i]);
        std::sort(tiles.begin(), tiles.end());
        allowed[v].push_back(tiles);
    }
    for (auto& [v, sets] : allowed) {
        std::vector<Block> keep;
        for (const auto& b : out.at[v].side(s).blocks) {
            if (b.size() < 2 || std::find_if(sets.begin(), sets.end(), [&](const auto& t) {
                                    return std::binary_search(t.begin(), t.end(), cx.verts[v].link_tiles[b.front()]);
                                }) == sets.end()) {
                keep.push_back(b);
                continue;
            }
            for (int i : b) keep.push_back({i});
        }
        set_side(out.at[v], s, make_partition(out.at[v].pw.ambient, keep));
    }

    std::vector<char> in_tree(cx.tiles.size(), 0);
    in_tree[cl.tiles.front()] = 1;
    for (std::size_t added = 1; added < cl.tiles.size(); ++added) {
        bool done = false;
        for (int x : cl.tiles) {
            if (in_tree[x]) continue;
            std::vector<int> vs(cx.tiles[x].vert.begin(), cx.tiles[x].vert.end());
            std::sort(vs.begin(), vs.end());
            for (int v : vs) {
                auto it = allowed.find(v);
                if (it == allowed.end()) continue;
                const std::vector<int>* group = nullptr;
                for (const auto& t : it->second)
                    if (std::binary_search(t.begin(), t.end(), x)) group = &t;
                if (!group) continue;
                const CncPartition& p = out.at[v];
                const int a = p.pw.ambient;
                const int ix = link_pos(cx, v, x);
                const NcPartition& same = p.side(s);
                const NcPartition& opp = p.side(other(s));
                const Block& own = same.blocks[same.block_of(ix)];
                const Block& c = opp.blocks[opp.block_of((ix + 1) % a)];
                for (const auto& b : same.blocks) {
                    int t = cx.verts[v].link_tiles[b.front()];
                    if (!in_tree[t] || !std::binary_search(group->begin(), group->end(), t)) continue;
                    bool adj = s == Side::white ? adjacent(p, b, c) : adjacent(p, c, b);
                    if (!adj) continue;
                    auto r = merge_via(p, s, b, own, c);
                    if (!r) continue;
                    if (log) log->push_back({phase, v, s, b, own, c});
                    out.at[v] = r->cnc;
                    done = true;
                    break;
                }
                if (done) break;
            }
            if (done) {
                in_tree[x] = 1;
                break;
            }
        }
        if (!done) throw ConstructionError("spanning tree step found no admissible merge");
    }
    return out;
}

std::vector<std::vector<int>> chain_vertices(const CellComplex& cx) {
    std::vector<std::vector<std::pair<int, int>>> on(cx.k);
    for (int e = 0; e < static_cast<int>(cx.edges.size()); ++e)
        if (cx.edges[e].on_curve >= 0) on[cx.edges[e].on_curve].push_back({cx.edges[e].chain_pos, e});
    std::vector<std::vector<int>> out(cx.k);
    for (int j = 0; j < cx.k; ++j) {
        std::sort(on[j].begin(), on[j].end());
        int cur = j;
        out[j].push_back(cur);
        for (auto [pos, e] : on[j]) {
            const Edge& E = cx.edges[e];
            if (E.init != cur && E.term != cur) throw ConstructionError("curve chain is not connected");
            cur = E.init == cur ? E.term : E.init;
            out[j].push_back(cur);
        }
        if (cur != (j + 1) % cx.k) throw ConstructionError("curve chain does not end at the next postcritical point");
    }
    return out;
}

BlackDecomposition decompose_black(const Connection& conn, std::vector<MergeEvent>* log) {
    const CellComplex& cx = *conn.cx;
    BlackDecomposition bd;
    bd.conn = conn;
    for (int v = 0; v < static_cast<int>(cx.verts.size()); ++v) {
        if (!is_interior(cx, v, Color::black)) continue;
        Block full;
        for (int i = 0; i < cx.verts[v].degree(); ++i) full.push_back(2 * i + 1);
        bd.conn.at[v] = make_cnc_black(make_partition(2 * cx.verts[v].degree(), {full}));
    }
    for (auto& cl : clusters(bd.conn, Color::black))
        if (cx.tiles[cl.id].parent == static_cast<int>(Color::black)) bd.black.push_back(cl);
    for (const auto& cl : bd.black) bd.conn = spanning_tree(bd.conn, cl, log, "black-tree");

    auto cv = chain_vertices(cx);
    std::vector<int> cyc;
    for (const auto& ch : cv) cyc.insert(cyc.end(), ch.begin(), ch.end() - 1);
    std::map<int, int> at;
    for (int i = 0; i < static_cast<int>(cyc.size()); ++i) at[cyc[i]] = i;
    const int L = static_cast<int>(cyc.size());
    for (auto& cl : clusters(bd.conn, Color::white)) {
        if (cx.tiles[cl.id].parent != static_cast<int>(Color::black)) continue;
        if (!is_tree(bd.conn, cl)) bd.white_trees = false;
        std::vector<int> pos;
        for (int t : cl.tiles)
            for (int v : cx.tiles[t].vert)
                if (at.count(v)) pos.push_back(at[v]);
        std::sort(pos.begin(), pos.end());
        pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
        if (pos.size() > 1) {
            // The covering arc is the complement of the widest gap.
            int widest = -1, gi = 0;
            for (int i = 0; i < static_cast<int>(pos.size()); ++i) {
                int nxt = pos[(i + 1) % pos.size()] + (i + 1 == static_cast<int>(pos.size()) ? L : 0);
                if (nxt - pos[i] > widest) widest = nxt - pos[i], gi = i;
            }
            int v = cyc[pos[(gi + 1) % pos.size()]], w = cyc[pos[gi]];
            bool one_tile = false;
            for (int t : cl.tiles) {
                const auto& tv = cx.tiles[t].vert;
                if (std::find(tv.begin(), tv.end(), v) != tv.end() && std::find(tv.begin(), tv.end(), w) != tv.end())
                    one_tile = true;
            }
            if (!one_tile) bd.white_arcs = false;
        }
        bd.white_secondary.push_back(cl);
    }
    return bd;
}

TreeState build_trees(const CellComplex& cx) {
    TreeState st;
    WhiteDecomposition wd = decompose_white(cx);
    Connection conn = wd.conn;
    for (const auto& cl : wd.clusters) conn = spanning_tree(conn, cl, &st.log, "white-tree");
    BlackDecomposition bd = decompose_black(conn, &st.log);
    if (!bd.white_trees) throw ConstructionError("a white cluster inside X0_b is not a tree");
    st.conn = bd.conn;
    st.main_tile = wd.clusters[wd.main].id;
    return st;
}

std::vector<LinkWitness> detect_links(const TreeState& st) {
    const CellComplex& cx = *st.conn.cx;
    const int k = cx.k;
    auto cv = chain_vertices(cx);
    auto km = cluster_tiles_with(st.conn, st.main_tile);
    std::set<int> kmv;
    for (int t : km) kmv.insert(cx.tiles[t].vert.begin(), cx.tiles[t].vert.end());
    std::vector<int> last(k, 0);
    for (int j = 0; j < k; ++j)
        for (int t = 0; t < static_cast<int>(cv[j].size()); ++t)
            if (kmv.count(cv[j][t])) last[j] = t;
    auto has = [&](int tile, int v) {
        const auto& tv = cx.tiles[tile].vert;
        return std::find(tv.begin(), tv.end(), v) != tv.end();
    };
    // Meets 0-edge j away from its initial point p_j.
    auto meets_edge = [&](int tile, int j) {
        for (int v : cx.tiles[tile].vert)
            if (v != j && std::binary_search(cx.verts[v].on_curve.begin(), cx.verts[v].on_curve.end(), j)) return true;
        return false;
    };
    auto meets_tail = [&](int tile, int j) {
        for (std::size_t t = last[j]; t < cv[j].size(); ++t)
            if (has(tile, cv[j][t])) return true;
        return false;
    };
    std::vector<LinkWitness> out;
    for (int j = 0; j < k; ++j) {
        int j2 = (j + 1) % k, j3 = (j + 2) % k;
        // A tail that already ends at its postcritical point adds no secondary.
        if (last[j] + 1 == static_cast<int>(cv[j].size()) || last[j2] + 1 == static_cast<int>(cv[j2].size()))
            continue;
        LinkWitness w;
        w.edge0 = j;
        for (int t = 0; t < static_cast<int>(cx.tiles.size()); ++t) {
            if (cx.tiles[t].color == Color::black) {
                if (w.x1 < 0 && has(t, cv[j][last[j]]) && meets_edge(t, j2)) w.x1 = t;
                if (w.x2 < 0 && has(t, cv[j2][last[j2]]) && meets_edge(t, j3)) w.x2 = t;
            } else if (w.y < 0 && meets_tail(t, j) && meets_tail(t, j2)) {
                w.y = t;
            }
        }
        if (w.x1 >= 0 && w.x2 >= 0 && w.y >= 0) out.push_back(w);
    }
    return out;
}

TreePlan attach_secondaries(TreeState st) {
    const CellComplex& cx = *st.conn.cx;
    const int k = cx.k;
    TreePlan plan;
    plan.main_cluster = cluster_tiles_with(st.conn, st.main_tile).front();
    Connection& conn = st.conn;
    auto cv = chain_vertices(cx);
    std::map<std::pair<int, int>, int> curve_edge;
    for (int e = 0; e < static_cast<int>(cx.edges.size()); ++e)
        if (cx.edges[e].on_curve >= 0) curve_edge[{cx.edges[e].on_curve, cx.edges[e].chain_pos}] = e;

    for (int j = 0; j < k; ++j) {
        const int p = (j + 1) % k;
        for (std::size_t guard = 0;; ++guard) {
            if (guard > cx.tiles.size()) throw ConstructionError("walk along a 0-edge does not terminate");
            auto km = cluster_tiles_with(conn, st.main_tile);
            std::set<int> kmv;
            for (int t : km) kmv.insert(cx.tiles[t].vert.begin(), cx.tiles[t].vert.end());
            int pos = -1;
            for (int t = 0; t < static_cast<int>(cv[j].size()); ++t)
                if (kmv.count(cv[j][t])) pos = t;
            if (pos < 0) throw ConstructionError("main tree misses a 0-edge");
            if (pos + 1 == static_cast<int>(cv[j].size())) {
                // Mark p at the last pass of the main circuit's run through p.
                EulerCircuit ec = boundary_circuit(conn, cx.tiles[km.front()].edge[0]);
                const int n = static_cast<int>(ec.size());
                int chosen = -1, fallback = -1;
                for (int t = 0; t < n; ++t) {
                    if (cx.edges[ec.edges[t]].term != p) continue;
                    if (fallback < 0) fallback = t;
                    for (int s = 1; s <= n; ++s) {
                        int u = cx.edges[ec.edges[(t + s) % n]].term;
                        if (cx.verts[u].on_curve.empty()) continue;
                        if (u == p) break;
                        const auto& oc = cx.verts[u].on_curve;
                        if (chosen < 0 && std::binary_search(oc.begin(), oc.end(), p)) chosen = t;
                        if (fallback < 0 || cx.edges[ec.edges[fallback]].term != p) fallback = t;
                        break;
                    }
                }
                if (chosen < 0) chosen = fallback;
                int i = cx.edges[ec.edges[chosen]].at_term;
                conn.at[p].mark = pair_of_pass(conn.at[p], i);
                st.log.push_back({"mark", p, Side::white, conn.at[p].mark->w, {}, conn.at[p].mark->b});
                break;
            }
            int v = cv[j][pos];
            int e = curve_edge.at({j, pos});
            int x = cx.edges[e].white;
            if (!attach_at(conn, v, link_pos(cx, v, x), km, "walk", st.log))
                throw ConstructionError("walk merge rejected at vertex " + std::to_string(v));
        }
    }

    for (;;) {
        auto km = cluster_tiles_with(conn, st.main_tile);
        if (km.size() * 2 == cx.tiles.size()) break;
        bool attached = false;
        for (int x = 0; x < static_cast<int>(cx.tiles.size()) && !attached; ++x) {
            if (cx.tiles[x].color != Color::white || std::binary_search(km.begin(), km.end(), x)) continue;
            std::vector<int> vs(cx.tiles[x].vert.begin(), cx.tiles[x].vert.end());
            std::sort(vs.begin(), vs.end());
            for (int v : vs) {
                if (cx.verts[v].on_curve.empty()) continue;
                bool meets = false;
                for (int t : cx.verts[v].link_tiles) meets |= std::binary_search(km.begin(), km.end(), t);
                if (!meets) continue;
                if (attach_at(conn, v, link_pos(cx, v, x), km, "attach", st.log)) {
                    attached = true;
                    break;
                }
            }
        }
        if (!attached) throw ConstructionError("a secondary tree cannot be attached");
    }
    for (int j = 0; j < k; ++j)
        if (!conn.at[j].mark) throw ConstructionError("postcritical point left unmarked");

    plan.conn = conn;
    plan.log = std::move(st.log);
    evaluate_plan(plan);
    return plan;
}

TreePlan construct_plan(const CellComplex& cx) {
    if (cx.level != 1) throw ConstructionError("construction runs on the level-1 complex");
    if (!check_no_opposite_sides(cx)) throw ConstructionError("a 1-tile joins opposite sides of C");
    TreeState st = build_trees(cx);
    auto links = detect_links(st);
    if (!links.empty())
        throw ConstructionError("link found at 0-edge " + std::to_string(links.front().edge0));
    return attach_secondaries(std::move(st));
}

HomotopyReport check_homotopy_class(const CellComplex& cx, const EulerCircuit& circuit) {
    HomotopyReport rep;
    const int k = cx.k;
    for (int j = 0; j < k; ++j)
        if (circuit.marked.size() != static_cast<std::size_t>(k) || circuit.marked[j] < 0) {
            rep.violations.push_back("missing marked pass at p" + std::to_string(j));
            return rep;
        }
    EulerCircuit ec = based_at_p0(circuit);
    const int n = static_cast<int>(ec.size());
    rep.order_ok = true;
    for (int j = 2; j < k; ++j)
        if (ec.marked[j] <= ec.marked[j - 1]) rep.order_ok = false;
    if (!rep.order_ok) {
        std::string s = "marked passes out of cyclic order:";
        for (int j = 0; j < k; ++j) s += " " + std::to_string(ec.marked[j]);
        rep.violations.push_back(s);
        return rep;
    }
    rep.segments_ok = true;
    for (int j = 0; j < k; ++j) {
        int from = j == 0 ? 0 : ec.marked[j] + 1;
        int to = j + 1 < k ? ec.marked[j + 1] : n - 1;
        std::vector<int> visited{cx.edges[ec.edges[from]].init};
        for (int t = from; t <= to; ++t) visited.push_back(cx.edges[ec.edges[t]].term);
        for (int u : visited)
            for (int m : cx.verts[u].on_curve)
                if (disjoint_edges(m, j, k)) {
                    rep.segments_ok = false;
                    rep.violations.push_back("segment " + std::to_string(j) + " visits vertex " + std::to_string(u) +
                                             " on 0-edge " + std::to_string(m));
                }
    }
    rep.ok = rep.order_ok && rep.segments_ok;
    return rep;
}

void evaluate_plan(TreePlan& plan) {
    const CellComplex& cx = *plan.conn.cx;
    auto cl = clusters(plan.conn, Color::white);
    plan.c1 = cl.size() == 1 && is_tree(plan.conn, cl.front());
    plan.c2 = false;
    plan.circuit = EulerCircuit{};
    if (!plan.c1) return;
    EulerCircuit ec = boundary_circuit(plan.conn, 0);
    plan.c2_report = check_homotopy_class(cx, ec);
    plan.c2 = plan.c2_report.ok;
    plan.circuit = ec.marked.at(0) >= 0 ? based_at_p0(ec) : ec;
}

namespace {

struct SearchState {
    const CellComplex* cx;
    bool all;
    long long budget;
    SearchResult res;
    std::vector<std::vector<CncPartition>> choices;
    std::vector<int> slack;  // suffix sums of (white tiles at v) - 1
    Connection conn;
    std::vector<int> parent;
    int components = 0;
    bool stop = false;

    int find(int x) const {
        while (parent[x] != x) x = parent[x];
        return x;
    }
};

void search_marks(SearchState& S, int j) {
    if (S.stop) return;
    const CellComplex& cx = *S.cx;
    if (j == cx.k) {
        if (++S.res.nodes > S.budget) {
            S.res.exhausted = S.stop = true;
            return;
        }
        TreePlan plan;
        plan.conn = S.conn;
        evaluate_plan(plan);
        if (plan.c2) {
            ++S.res.c2_count;
            S.res.plans.push_back(plan);
            if (!S.all) S.stop = true;
        }
        return;
    }
    CncPartition base = S.conn.at[j];
    for (auto [wi, bi] : adjacency_tree(base)) {
        S.conn.at[j].mark = Marking{base.pw.blocks[wi], base.pb.blocks[bi]};
        search_marks(S, j + 1);
        if (S.stop) break;
    }
    S.conn.at[j] = base;
}

void search_vertex(SearchState& S, int v) {
    if (S.stop) return;
    const CellComplex& cx = *S.cx;
    if (++S.res.nodes > S.budget) {
        S.res.exhausted = S.stop = true;
        return;
    }
    if (S.components - 1 > S.slack[v]) return;
    if (v == static_cast<int>(cx.verts.size())) {
        if (S.components != 1) return;
        ++S.res.c1_count;
        search_marks(S, 0);
        return;
    }
    const auto& lt = cx.verts[v].link_tiles;
    for (const auto& cnc : S.choices[v]) {
        std::vector<int> saved = S.parent;
        int comps = S.components;
        bool cycle = false;
        for (const auto& b : cnc.pw.blocks) {
            for (std::size_t m = 1; m < b.size() && !cycle; ++m) {
                int r0 = S.find(lt[b.front()]), r1 = S.find(lt[b[m]]);
                if (r0 == r1) cycle = true;
                else {
                    S.parent[r1] = r0;
                    --S.components;
                }
            }
        }
        if (!cycle) {
            S.conn.at[v] = cnc;
            search_vertex(S, v + 1);
        }
        S.parent = std::move(saved);
        S.components = comps;
        if (S.stop) return;
    }
}

}  // namespace

SearchResult search_connections(const CellComplex& cx, bool all, long long budget) {
    SearchState S;
    S.cx = &cx;
    S.all = all;
    S.budget = budget;
    S.conn = unmarked(cx);
    const int nv = static_cast<int>(cx.verts.size());
    S.choices.resize(nv);
    for (int v = 0; v < nv; ++v) {
        int n = cx.verts[v].degree();
        for (const auto& part : enumerate_nc(n)) S.choices[v].push_back(make_cnc(spread_even(part, n)));
    }
    S.slack.assign(nv + 1, 0);
    for (int v = nv - 1; v >= 0; --v) S.slack[v] = S.slack[v + 1] + cx.verts[v].degree() - 1;
    S.parent.resize(cx.tiles.size());
    std::iota(S.parent.begin(), S.parent.end(), 0);
    for (const auto& t : cx.tiles) S.components += t.color == Color::white;
    search_vertex(S, 0);
    return S.res;
}

std::string connection_text(const Connection& c) {
    std::ostringstream os;
    for (std::size_t v = 0; v < c.at.size(); ++v) os << v << ": " << to_string(c.at[v]) << "\n";
    return os.str();
}

nlohmann::json plan_to_json(const TreePlan& plan) {
    nlohmann::json j;
    nlohmann::json verts = nlohmann::json::array();
    for (std::size_t v = 0; v < plan.conn.at.size(); ++v)
        verts.push_back({{"vertex", v}, {"cnc", to_string(plan.conn.at[v])}});
    j["connection"] = verts;
    j["main_cluster"] = plan.main_cluster;
    nlohmann::json log = nlohmann::json::array();
    for (const auto& e : plan.log)
        log.push_back({{"phase", e.phase},
                       {"vertex", e.vertex},
                       {"side", e.side == Side::white ? "white" : "black"},
                       {"into", to_string(e.into)},
                       {"added", to_string(e.added)},
                       {"common", to_string(e.common)}});
    j["log"] = log;
    j["c1"] = plan.c1;
    j["c2"] = plan.c2;
    j["violations"] = plan.c2_report.violations;
    j["circuit"] = plan.circuit.edges;
    j["marked"] = plan.circuit.marked;
    return j;
}

std::string plan_hash(const TreePlan& plan) {
    // FNV-1a; std::hash is not specified to be stable across builds.
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : plan_to_json(plan).dump()) h = (h ^ c) * 1099511628211ULL;
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

}  // namespace peano
