#include "peano/lift.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "peano/spantree.hpp"

namespace peano {

namespace {

int mod(int a, int n) { return ((a % n) + n) % n; }

std::vector<Block> shifted(const std::vector<Block>& blocks, int by, int a) {
    std::vector<Block> out;
    for (const auto& b : blocks) {
        Block s;
        for (int i : b) s.push_back(mod(i + by, a));
        std::sort(s.begin(), s.end());
        out.push_back(s);
    }
    return out;
}

const Block& block_with(const std::vector<Block>& blocks, int i) {
    for (const auto& b : blocks)
        if (std::find(b.begin(), b.end(), i) != b.end()) return b;
    throw LiftError("index " + std::to_string(i) + " lies in no block");
}

CncPartition case_new(const CellComplex& next, int v, const Connection& conn_n) {
    const Vertex& V = next.verts[v];
    const int w = V.image;
    const Vertex& W = conn_n.cx->verts.at(w);
    const int a = static_cast<int>(V.link_tiles.size());
    if (static_cast<int>(W.link_tiles.size()) != a)
        throw LiftError("vertex " + std::to_string(v) + " is critical but not old");
    // F(link_tiles_v[i + r]) = link_tiles_w[i].
    int r = -1;
    for (int s = 0; s < a && r < 0; s += 2) {
        bool fits = true;
        for (int i = 0; i < a && fits; ++i) fits = next.tiles[V.link_tiles[(i + s) % a]].image == W.link_tiles[i];
        if (fits) r = s;
    }
    if (r < 0) throw LiftError("link of vertex " + std::to_string(v) + " does not cover its image");
    return make_cnc(make_partition(a, shifted(conn_n.at[w].pw.blocks, r, a)));
}

struct CurveEnds {
    std::vector<int> first, last;  // per 0-edge: first and last 1-edge of its chain
};

// Link boundary index of edge e at its endpoint v.
int index_at(const CellComplex& cx, int e, int v) {
    const Edge& E = cx.edges[e];
    return E.init == v ? E.at_init : E.at_term;
}

CurveEnds curve_ends(const CellComplex& level1) {
    CurveEnds ce;
    ce.first.assign(level1.k, -1);
    ce.last.assign(level1.k, -1);
    std::vector<int> best(level1.k, -1);
    for (int e = 0; e < static_cast<int>(level1.edges.size()); ++e) {
        const Edge& E = level1.edges[e];
        if (E.on_curve < 0) continue;
        if (E.chain_pos == 0) ce.first[E.on_curve] = e;
        if (E.chain_pos > best[E.on_curve]) best[E.on_curve] = E.chain_pos, ce.last[E.on_curve] = e;
    }
    return ce;
}

CncPartition case_old(const CellComplex& next, int v, const Connection& conn_n, const Connection& conn_1,
                      const std::vector<int>& to1_next, const CurveEnds& ce) {
    const CellComplex& cur = *conn_n.cx;
    const CellComplex& one = *conn_1.cx;
    const int k = one.k;
    const int j = cur.verts[v].type;
    const int p = j;
    const int q = one.verts[p].degree();
    const int m = cur.verts[v].degree();
    const int a1 = 2 * q, an = 2 * m, a = 2 * q * m;
    if (static_cast<int>(next.verts[v].link_tiles.size()) != a)
        throw LiftError("degree at old vertex " + std::to_string(v) + " is not deg_1(p) * deg_n(v)");

    // Level-1 anchor: the marked outgoing 1-edge at p.
    const int e1 = marked_outgoing_edge(conn_1, p);
    if (e1 < 0) throw LiftError("p_" + std::to_string(p) + " is unmarked at level 1");
    const int t = one.edges[e1].at_init;
    const int a0 = index_at(one, ce.first[j], p);
    const int z = index_at(one, ce.last[mod(j - 1, k)], p);
    int delta = mod(t - a0, a1);
    if (delta > 0 && mod(z - a0, a1) < delta) delta -= a1;

    // Level-n anchor: an outgoing n-edge over the 0-edge from p.
    int en = -1;
    if (v < k && cur.level >= 1) {
        en = marked_outgoing_edge(conn_n, v);
    } else {
        for (int i = 1; i < an; i += 2) {
            int e = cur.verts[v].link_edges[i];
            if (cur.edges[e].type == j && (en < 0 || e < en)) en = e;
        }
    }
    if (en < 0) throw LiftError("no n-edge over the 0-edge at vertex " + std::to_string(v));
    const int s = cur.edges[en].at_init;
    int child = -1;
    for (int i = 0; i < a; ++i) {
        int e = next.verts[v].link_edges[i];
        if (next.edges[e].parent_edge == en && next.edges[e].chain_pos == 0) child = i;
    }
    if (child < 0) throw LiftError("anchor n-edge has no child at vertex " + std::to_string(v));
    const int tn = mod(child + delta, a);
    if (tn % 2 == 0 || to1_next[next.verts[v].link_edges[tn]] != e1)
        throw LiftError("lifted anchor at vertex " + std::to_string(v) + " does not map to the marked 1-edge");

    // Anchor labelings: tile x sits at link position x + anchor + 1.
    auto pw1 = shifted(conn_1.at[p].pw.blocks, -(t + 1), a1);
    auto pb1 = shifted(conn_1.at[p].pb.blocks, -(t + 1), a1);
    auto pwn = shifted(conn_n.at[v].pw.blocks, -(s + 1), an);
    auto pbn = shifted(conn_n.at[v].pb.blocks, -(s + 1), an);
    const Block& bstar = block_with(pw1, 0);
    const Block& cstar = block_with(pb1, a1 - 1);

    auto build = [&](const std::vector<Block>& one_blocks, const Block& star, const std::vector<Block>& n_blocks,
                     int parity) {
        std::vector<Block> out;
        for (const auto& b : one_blocks) {
            if (b == star) continue;
            for (int jj = 0; jj < m; ++jj) {
                Block s2;
                for (int i : b) s2.push_back(i + a1 * jj);
                out.push_back(s2);
            }
        }
        for (const auto& bn : n_blocks) {
            Block u;
            for (int i : bn)
                for (int x : star) u.push_back(x + a1 * ((i - parity) / 2));
            out.push_back(u);
        }
        return shifted(out, tn + 1, a);
    };
    auto white = build(pw1, bstar, pwn, 0);
    auto black = build(pb1, cstar, pbn, 1);
    CncPartition out = make_cnc(make_partition(a, white));
    if (to_string(out.pb) != to_string(make_partition(a, black)))
        throw LiftError("pulled-back black blocks are not the complement at vertex " + std::to_string(v));
    if (v < k) {
        // The lifted anchor becomes the marked outgoing edge.
        out.mark = Marking{block_with(out.pw.blocks, mod(tn + 1, a)), block_with(out.pb.blocks, tn)};
    }
    return out;
}

}  // namespace

int default_level_cap(int d, int k) {
    // Degree one never grows; keep the same cap as the command line.
    if (d <= 1) return 30;
    long long edges = k;
    int n = 0;
    while (edges * d <= (1LL << 20)) edges *= d, ++n;
    return n;
}

std::vector<int> compose_to_level1(const CellComplex& next, const std::vector<int>& to1) {
    std::vector<int> out(next.edges.size());
    for (std::size_t e = 0; e < next.edges.size(); ++e)
        out[e] = to1.empty() ? next.edges[e].image : to1[next.edges[e].image];
    return out;
}

Connection pullback_connection(const CellComplex& next, const Connection& conn_n, const Connection& conn_1,
                               const std::vector<int>& to1_next) {
    if (next.level != conn_n.cx->level + 1 || conn_1.cx->level != 1)
        throw LiftError("pullback needs levels n, n+1 and 1");
    const CurveEnds ce = curve_ends(*conn_1.cx);
    Connection out{&next, {}};
    out.at.reserve(next.verts.size());
    for (int v = 0; v < static_cast<int>(next.verts.size()); ++v) {
        if (next.verts[v].old) out.at.push_back(case_old(next, v, conn_n, conn_1, to1_next, ce));
        else out.at.push_back(case_new(next, v, conn_n));
    }
    return out;
}

EulerCircuit gamma(const Connection& conn) {
    int e = marked_outgoing_edge(conn, 0);
    if (e < 0) throw LiftError("p_0 carries no marking");
    return based_at_p0(boundary_circuit(conn, e));
}

bool verify_dfold(const CellComplex& next, const EulerCircuit& g_next, const EulerCircuit& g) {
    const std::size_t n = g.size();
    if (n == 0 || g_next.size() != n * static_cast<std::size_t>(next.d)) return false;
    auto it = std::find(g.edges.begin(), g.edges.end(), next.edges[g_next.edges[0]].image);
    if (it == g.edges.end()) return false;
    const std::size_t off = static_cast<std::size_t>(it - g.edges.begin());
    for (std::size_t j = 0; j < g_next.size(); ++j)
        if (next.edges[g_next.edges[j]].image != g.edges[(off + j) % n]) return false;
    return true;
}

bool verify_semiconjugacy(const CellComplex& next, const CellComplex& cur, const ParamGrid& grid_next,
                          const ParamGrid& grid, const mpq_class& theta0, int d, std::vector<std::string>* problems) {
    std::map<mpq_class, int> coarse, fine;
    for (std::size_t i = 0; i < grid.alpha.size(); ++i) coarse[grid.alpha[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < grid_next.alpha.size(); ++i) fine[grid_next.alpha[i]] = static_cast<int>(i);
    bool ok = true;
    auto fail = [&](const std::string& s) {
        ok = false;
        if (problems && problems->size() < 20) problems->push_back(s);
    };
    for (std::size_t j = 0; j < grid_next.alpha.size(); ++j) {
        mpq_class phi = d * grid_next.alpha[j] + theta0;
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), phi.get_num_mpz_t(), phi.get_den_mpz_t());
        phi -= fl;
        auto it = coarse.find(phi);
        if (it == coarse.end()) {
            fail("phi of grid point " + std::to_string(j) + " is not a coarse grid point");
            continue;
        }
        int v = next.edges[grid_next.edges[j]].init;
        int w = cur.edges[grid.edges[it->second]].init;
        if (next.verts[v].image != w) fail("F does not carry grid vertex " + std::to_string(j) + " onto its phi image");
    }
    for (std::size_t i = 0; i < grid.alpha.size(); ++i) {
        auto it = fine.find(grid.alpha[i]);
        if (it == fine.end()) {
            fail("coarse grid point " + std::to_string(i) + " is missing from the finer grid");
            continue;
        }
        if (next.edges[grid_next.edges[it->second]].init != cur.edges[grid.edges[i]].init)
            fail("curves disagree at coarse grid point " + std::to_string(i));
    }
    return ok;
}

bool verify_chain_law(const CellComplex& next, const CellComplex& cur, const ParamGrid& grid_next,
                      const ParamGrid& grid, const Matrix& M, std::vector<std::string>* problems) {
    std::map<mpq_class, int> fine;
    for (std::size_t i = 0; i < grid_next.alpha.size(); ++i) fine[grid_next.alpha[i]] = static_cast<int>(i);
    const int n = static_cast<int>(grid.alpha.size());
    const int nf = static_cast<int>(grid_next.alpha.size());
    for (int i = 0; i < n; ++i) {
        auto a = fine.find(grid.alpha[i]);
        int end = i + 1 < n ? (fine.count(grid.alpha[i + 1]) ? fine[grid.alpha[i + 1]] : -1) : nf;
        if (a == fine.end() || end < 0) {
            if (problems) problems->push_back("chain bounds missing for coarse edge " + std::to_string(i));
            return false;
        }
        std::vector<long long> counts(M.size(), 0);
        for (int t = a->second; t < end; ++t) ++counts[next.edges[grid_next.edges[t]].type];
        if (counts != M[cur.edges[grid.edges[i]].type]) {
            if (problems) problems->push_back("chain of coarse edge " + std::to_string(i) + " breaks the type counts");
            return false;
        }
    }
    return true;
}

bool Lift::ok() const {
    for (std::size_t n = 1; n < reports.size(); ++n)
        if (!reports[n].ok()) return false;
    return reports.size() > 1;
}

namespace {

void suite(Lift& L, int n) {
    LevelReport& rep = L.reports[n];
    const CellComplex& cx = L.lv[n];
    const Connection& conn = L.conn[n];
    const EulerCircuit& g = L.gamma[n];
    rep.level = n;
    rep.edges = g.size();
    std::string why;
    rep.cnc = is_valid_connection(conn, &why);
    if (!rep.cnc) rep.problems.push_back(why);
    auto cl = clusters(conn, Color::white);
    rep.tree = cl.size() == 1 && is_tree(conn, cl.front());
    std::vector<char> seen(cx.edges.size(), 0);
    rep.eulerian = g.size() == cx.edges.size();
    for (int e : g.edges) {
        if (seen[e]) rep.eulerian = false;
        seen[e] = 1;
    }
    rep.oriented = true;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (cx.edges[g.edges[i]].term != cx.edges[g.edges[(i + 1) % g.size()]].init) rep.oriented = false;
    rep.c2 = check_homotopy_class(cx, g).ok;
    rep.dfold = verify_dfold(cx, g, L.gamma[n - 1]);
    std::vector<std::string> sc;
    rep.semiconj = verify_semiconjugacy(cx, L.lv[n - 1], L.grid[n], L.grid[n - 1], L.lengths.theta0, cx.d, &sc);
    rep.refine = std::none_of(sc.begin(), sc.end(), [](const std::string& s) {
        return s.find("coarse grid point") != std::string::npos;
    });
    rep.problems.insert(rep.problems.end(), sc.begin(), sc.end());
    rep.chain_law = verify_chain_law(cx, L.lv[n - 1], L.grid[n], L.grid[n - 1], L.lengths.M, &rep.problems);
    // Chains between the level-0 grid points reproduce the rows of M^n.
    Matrix Mn = mat_pow(L.lengths.M, n);
    std::map<mpq_class, int> fine;
    for (std::size_t i = 0; i < L.grid[n].alpha.size(); ++i) fine[L.grid[n].alpha[i]] = static_cast<int>(i);
    for (int i = 0; i < cx.k && rep.chain_law; ++i) {
        int from = fine.at(L.grid[0].alpha[i]);
        int to = i + 1 < cx.k ? fine.at(L.grid[0].alpha[i + 1]) : static_cast<int>(g.size());
        std::vector<long long> counts(cx.k, 0);
        for (int t = from; t < to; ++t) ++counts[cx.edges[g.edges[t]].type];
        if (counts != Mn[i]) {
            rep.chain_law = false;
            rep.problems.push_back("level chains over 0-edge " + std::to_string(i) + " differ from M^n");
        }
    }
}

}  // namespace

Lift lift_plan(const SubdivisionRule& r, const std::vector<CncPartition>& level1, int max_level,
               const std::string& plan_hash) {
    if (max_level < 1) throw LiftError("max level must be at least 1");
    if (max_level > default_level_cap(r.d, r.k)) throw LiftError("max level exceeds the edge cap");
    Lift L;
    L.lv = iterate(r, max_level);
    L.conn.resize(max_level + 1);
    L.gamma.resize(max_level + 1);
    L.to1.resize(max_level + 1);
    L.grid.resize(max_level + 1);
    L.reports.resize(max_level + 1);
    L.conn[1] = Connection{&L.lv[1], level1};
    std::string why;
    if (!is_valid_connection(L.conn[1], &why)) throw LiftError("level-1 connection invalid: " + why);
    L.gamma[0] = level_zero_circuit(L.lv[0]);
    L.gamma[1] = gamma(L.conn[1]);
    L.lengths = length_system(L.lv[1], L.gamma[1], plan_hash);
    L.grid[0] = alpha_grid(L.lengths, L.lv[0], L.gamma[0]);
    L.grid[1] = alpha_grid(L.lengths, L.lv[1], L.gamma[1]);
    for (int n = 1; n <= max_level; ++n) {
        if (n > 1) {
            L.to1[n] = compose_to_level1(L.lv[n], n == 2 ? std::vector<int>{} : L.to1[n - 1]);
            L.conn[n] = pullback_connection(L.lv[n], L.conn[n - 1], L.conn[1], L.to1[n]);
            L.gamma[n] = gamma(L.conn[n]);
            L.grid[n] = alpha_grid(L.lengths, L.lv[n], L.gamma[n]);
        }
        suite(L, n);
    }
    return L;
}

nlohmann::json curve_json(const Lift& lift, int level) {
    const CellComplex& cx = lift.lv.at(level);
    const ParamGrid& g = lift.grid.at(level);
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t j = 0; j < g.edges.size(); ++j) {
        const Edge& e = cx.edges[g.edges[j]];
        out.push_back({{"t", fraction(g.alpha[j])}, {"vertex", e.init}, {"edge", g.edges[j]}, {"type", e.type}});
    }
    return out;
}

std::string lift_summary(const Lift& lift) {
    std::ostringstream os;
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    for (std::size_t n = 1; n < lift.reports.size(); ++n) {
        const LevelReport& r = lift.reports[n];
        os << "level " << n << ": edges=" << r.edges << " cnc=" << yn(r.cnc) << " tree=" << yn(r.tree)
           << " eulerian=" << yn(r.eulerian) << " oriented=" << yn(r.oriented) << " c2=" << yn(r.c2)
           << " dfold=" << yn(r.dfold) << " semiconj=" << yn(r.semiconj) << " refine=" << yn(r.refine)
           << " chain_law=" << yn(r.chain_law) << "\n";
        for (const auto& p : r.problems) os << "  " << p << "\n";
    }
    return os.str();
}

}  // namespace peano
