#include "peano/connect.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace peano {

CncPartition white_singletons(int n) {
    std::vector<Block> bl;
    for (int i = 0; i < n; ++i) bl.push_back({2 * i});
    return make_cnc(make_partition(2 * n, bl));
}

CncPartition black_singletons(int n) {
    std::vector<Block> bl;
    for (int i = 0; i < n; ++i) bl.push_back({2 * i + 1});
    return make_cnc_black(make_partition(2 * n, bl));
}

Connection disconnected(const CellComplex& cx) {
    Connection c{&cx, {}};
    for (int v = 0; v < static_cast<int>(cx.verts.size()); ++v) {
        CncPartition p = white_singletons(cx.verts[v].degree());
        if (v < cx.k) p.mark = pair_of_pass(p, 0);
        c.at.push_back(p);
    }
    return c;
}

bool is_valid_connection(const Connection& c, std::string* why) {
    if (!c.cx || c.at.size() != c.cx->verts.size()) {
        if (why) *why = "connection does not match its complex";
        return false;
    }
    for (std::size_t v = 0; v < c.at.size(); ++v) {
        const auto& p = c.at[v];
        std::string w;
        if (p.pw.ambient != 2 * c.cx->verts[v].degree()) w = "size differs from the link";
        else if (!is_valid_cnc(p, &w)) {
        } else if ((static_cast<int>(v) < c.cx->k) != p.mark.has_value())
            w = "marking present iff postcritical";
        if (!w.empty()) {
            if (why) *why = "vertex " + std::to_string(v) + ": " + w;
            return false;
        }
    }
    return true;
}

int successor(const Connection& c, int e) {
    const Edge& E = c.cx->edges.at(e);
    const Vertex& V = c.cx->verts[E.term];
    const int a = 2 * V.degree();
    int j = next_in_block(c.at[E.term].pw, E.at_term);
    return V.link_edges[(j - 1 + a) % a];
}

int black_successor(const Connection& c, int e) {
    const Edge& E = c.cx->edges.at(e);
    const Vertex& V = c.cx->verts[E.term];
    int m = prev_in_block(c.at[E.term].pb, E.at_term + 1);
    return V.link_edges[m];
}

int predecessor(const Connection& c, int e) {
    const Edge& E = c.cx->edges.at(e);
    const Vertex& V = c.cx->verts[E.init];
    const int a = 2 * V.degree();
    int i = prev_in_block(c.at[E.init].pw, (E.at_init + 1) % a);
    return V.link_edges[i];
}

int marked_incoming(const Connection& c, int v) {
    const auto& p = c.at.at(v);
    if (!p.mark) return -1;
    return pass_of_pair(p, p.mark->w, p.mark->b);
}

int marked_outgoing_edge(const Connection& c, int v) {
    int i = marked_incoming(c, v);
    if (i < 0) return -1;
    return successor(c, c.cx->verts[v].link_edges[i]);
}

EulerCircuit boundary_circuit(const Connection& c, int start, Color color) {
    EulerCircuit ec;
    ec.level = c.cx->level;
    int e = start;
    const std::size_t guard = c.cx->edges.size() + 1;
    do {
        ec.edges.push_back(e);
        e = color == Color::white ? successor(c, e) : black_successor(c, e);
        if (ec.edges.size() > guard) throw std::logic_error("successor map is not a bijection");
    } while (e != start);
    ec.marked.assign(c.cx->k, -1);
    if (color == Color::white) {
        for (int j = 0; j < c.cx->k; ++j) {
            int i = marked_incoming(c, j);
            if (i < 0) continue;
            int in = c.cx->verts[j].link_edges[i];
            auto it = std::find(ec.edges.begin(), ec.edges.end(), in);
            if (it != ec.edges.end()) ec.marked[j] = static_cast<int>(it - ec.edges.begin());
        }
    }
    return ec;
}

std::vector<EulerCircuit> all_circuits(const Connection& c, Color color) {
    std::vector<EulerCircuit> out;
    std::vector<char> used(c.cx->edges.size(), 0);
    for (int e = 0; e < static_cast<int>(c.cx->edges.size()); ++e) {
        if (used[e]) continue;
        out.push_back(boundary_circuit(c, e, color));
        for (int x : out.back().edges) used[x] = 1;
    }
    return out;
}

EulerCircuit based_at_p0(const EulerCircuit& ec) {
    if (ec.marked.empty() || ec.marked[0] < 0) throw std::runtime_error("circuit lacks the marked pass at p_0");
    const int n = static_cast<int>(ec.size());
    const int shift = (ec.marked[0] + 1) % n;
    EulerCircuit out;
    out.level = ec.level;
    out.edges.resize(n);
    for (int i = 0; i < n; ++i) out.edges[i] = ec.edges[(i + shift) % n];
    out.marked = ec.marked;
    for (auto& m : out.marked)
        if (m >= 0) m = ((m - shift) % n + n) % n;
    return out;
}

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
}  // namespace

std::vector<Cluster> clusters(const Connection& c, Color color) {
    const CellComplex& cx = *c.cx;
    Dsu dsu(static_cast<int>(cx.tiles.size()));
    for (int v = 0; v < static_cast<int>(cx.verts.size()); ++v) {
        const auto& part = color == Color::white ? c.at[v].pw : c.at[v].pb;
        for (const auto& b : part.blocks)
            for (int i : b) dsu.unite(cx.verts[v].link_tiles[i], cx.verts[v].link_tiles[b.front()]);
    }
    std::map<int, Cluster> by_root;
    for (int t = 0; t < static_cast<int>(cx.tiles.size()); ++t) {
        if (cx.tiles[t].color != color) continue;
        Cluster& cl = by_root[dsu.find(t)];
        cl.color = color;
        cl.tiles.push_back(t);
    }
    std::vector<Cluster> out;
    for (auto& [root, cl] : by_root) {
        cl.id = cl.tiles.front();
        out.push_back(cl);
    }
    std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) { return a.id < b.id; });
    for (int v = 0; v < static_cast<int>(cx.verts.size()); ++v) {
        const auto& part = color == Color::white ? c.at[v].pw : c.at[v].pb;
        for (int bi = 0; bi < static_cast<int>(part.blocks.size()); ++bi) {
            if (part.blocks[bi].size() < 2) continue;
            int t = cx.verts[v].link_tiles[part.blocks[bi].front()];
            out[cluster_of(out, t)].blocks.push_back({v, bi});
        }
    }
    return out;
}

int cluster_of(const std::vector<Cluster>& cl, int tile) {
    for (int i = 0; i < static_cast<int>(cl.size()); ++i)
        if (std::binary_search(cl[i].tiles.begin(), cl[i].tiles.end(), tile)) return i;
    return -1;
}

bool is_tree(const Connection& c, const Cluster& cl) {
    const CellComplex& cx = *c.cx;
    int start = cx.tiles[cl.tiles.front()].edge[0];
    EulerCircuit ec = boundary_circuit(c, start, cl.color);
    return ec.size() == static_cast<std::size_t>(cx.k) * cl.tiles.size();
}

bool is_acyclic(const Connection& c, const Cluster& cl) {
    long long nodes = static_cast<long long>(cl.tiles.size()) + static_cast<long long>(cl.blocks.size());
    long long links = 0;
    for (auto [v, bi] : cl.blocks) {
        const auto& part = cl.color == Color::white ? c.at[v].pw : c.at[v].pb;
        links += static_cast<long long>(part.blocks[bi].size());
    }
    return nodes - links == 1;
}

std::string circuit_dump(const CellComplex& cx, const EulerCircuit& ec) {
    std::ostringstream os;
    std::vector<char> mark(ec.size(), 0);
    for (int m : ec.marked)
        if (m >= 0) mark[m] = 1;
    for (std::size_t i = 0; i < ec.size(); ++i) {
        const Edge& e = cx.edges[ec.edges[i]];
        os << i << ' ' << ec.edges[i] << ' ' << e.type << ' ' << e.init << ' ' << e.term << ' ' << int(mark[i]) << '\n';
    }
    return os.str();
}

}  // namespace peano
