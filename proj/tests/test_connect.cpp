#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "peano/connect.hpp"

using namespace peano;

namespace {

// One vertex of degree four with its eight link positions; edge i lies
// between link tiles i and i+1.
CellComplex star_vertex() {
    CellComplex cx;
    cx.level = 1;
    cx.k = 4;
    cx.d = 4;
    Vertex v;
    for (int i = 0; i < 8; ++i) {
        v.link_tiles.push_back(i);
        v.link_edges.push_back(i);
        Edge e;
        if (i % 2 == 0) e.term = 0, e.at_term = i;
        else e.init = 0, e.at_init = i;
        cx.edges.push_back(e);
    }
    cx.verts.push_back(v);
    return cx;
}

// Every connection of a complex whose vertices have degree at most two.
std::vector<Connection> all_connections(const CellComplex& cx) {
    std::vector<int> free;
    for (int v = 0; v < static_cast<int>(cx.verts.size()); ++v) {
        REQUIRE(cx.verts[v].degree() <= 2);
        if (cx.verts[v].degree() == 2) free.push_back(v);
    }
    std::vector<Connection> out;
    for (int mask = 0; mask < (1 << free.size()); ++mask) {
        Connection c = disconnected(cx);
        for (std::size_t i = 0; i < free.size(); ++i) {
            if (!((mask >> i) & 1)) continue;
            auto& p = c.at[free[i]];
            p = make_cnc(make_partition(4, {{0, 2}}));
            if (free[i] < cx.k) p.mark = pair_of_pass(p, 0);
        }
        out.push_back(c);
    }
    return out;
}

int incoming_edge(const CellComplex& cx, int tile, int v) {
    for (int e : cx.tiles[tile].edge)
        if (cx.edges[e].term == v) return e;
    return -1;
}

bool same_cycle(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t s = 0; s < a.size(); ++s) {
        bool eq = true;
        for (std::size_t i = 0; i < a.size() && eq; ++i) eq = a[i] == b[(i + s) % b.size()];
        if (eq) return true;
    }
    return a.empty();
}

}  // namespace

TEST_CASE("successor on the four-tile star") {
    CellComplex cx = star_vertex();
    Connection c{&cx, {make_cnc(make_partition(8, {{0, 2, 6}, {4}}))}};
    // Incoming edge of X2 continues with the outgoing edge of X6, which sits
    // between tiles 5 and 6.
    CHECK(successor(c, 2) == 5);
    CHECK(successor(c, 6) == 7);
    CHECK(successor(c, 0) == 1);
    CHECK(successor(c, 4) == 3);  // singleton: back out of X4 itself
    CHECK(predecessor(c, 5) == 2);
}

TEST_CASE("isolated tiles are their own circuits") {
    CellComplex l1 = level_one(fixtures::rule("lattes_g"));
    Connection c = disconnected(l1);
    REQUIRE(is_valid_connection(c));
    auto circuits = all_circuits(c);
    CHECK(circuits.size() == 4);
    for (const auto& ec : circuits) {
        REQUIRE(ec.size() == 4);
        int tile = l1.edges[ec.edges[0]].white;
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(l1.edges[ec.edges[i]].white == tile);
            CHECK(l1.edges[ec.edges[i]].term == l1.edges[ec.edges[(i + 1) % 4]].init);
        }
    }
}

TEST_CASE("joining two tiles splices their circuits") {
    CellComplex l1 = level_one(fixtures::rule("lattes_g"));
    int v = -1;
    for (int u = 0; u < static_cast<int>(l1.verts.size()) && v < 0; ++u)
        if (l1.verts[u].degree() == 2) v = u;
    REQUIRE(v >= 0);
    int X = l1.verts[v].link_tiles[0], Y = l1.verts[v].link_tiles[2];
    Connection c = disconnected(l1);
    c.at[v] = make_cnc(make_partition(4, {{0, 2}}));
    if (v < l1.k) c.at[v].mark = pair_of_pass(c.at[v], 0);
    REQUIRE(is_valid_connection(c));

    // Rotate each tile's boundary to end at v, then splice.
    auto around = [&](int tile) {
        const auto& es = l1.tiles[tile].edge;
        int i = static_cast<int>(std::find(es.begin(), es.end(), incoming_edge(l1, tile, v)) - es.begin());
        std::vector<int> seq;
        for (int s = 1; s <= l1.k; ++s) seq.push_back(es[(i + s) % l1.k]);
        return seq;
    };
    auto ex = around(X), ey = around(Y);
    std::vector<int> spliced = ex;
    spliced.insert(spliced.end(), ey.begin(), ey.end());

    EulerCircuit ec = boundary_circuit(c, ex.front());
    CHECK(same_cycle(ec.edges, spliced));
    CHECK(ec.size() == 2 * static_cast<std::size_t>(l1.k));
}

TEST_CASE("successor is a bijection and blocks follow the chain criterion") {
    for (const char* name : {"lattes_g", "lattes_h"}) {
        CellComplex l1 = level_one(fixtures::rule(name));
        for (const auto& c : all_connections(l1)) {
            REQUIRE(is_valid_connection(c));
            std::set<int> image;
            for (int e = 0; e < static_cast<int>(l1.edges.size()); ++e) {
                int s = successor(c, e);
                image.insert(s);
                CHECK(predecessor(c, s) == e);
                CHECK(l1.edges[s].init == l1.edges[e].term);
            }
            CHECK(image.size() == l1.edges.size());

            for (int v = 0; v < static_cast<int>(l1.verts.size()); ++v) {
                const Vertex& V = l1.verts[v];
                for (int a = 0; a < 2 * V.degree(); a += 2) {
                    std::set<int> orbit;
                    int tile = V.link_tiles[a];
                    while (orbit.insert(tile).second) tile = l1.edges[successor(c, incoming_edge(l1, tile, v))].white;
                    std::set<int> block;
                    for (int i : c.at[v].pw.blocks[c.at[v].pw.block_of(a)]) block.insert(V.link_tiles[i]);
                    CHECK(orbit == block);
                }
            }
        }
    }
}

TEST_CASE("tree iff single circuit iff acyclic") {
    int trees = 0, cycles = 0;
    for (const char* name : {"lattes_g", "lattes_h"}) {
        CellComplex l1 = level_one(fixtures::rule(name));
        for (const auto& c : all_connections(l1)) {
            auto circuits = all_circuits(c);
            std::size_t covered = 0;
            for (const auto& cl : clusters(c, Color::white)) {
                std::set<int> members(cl.tiles.begin(), cl.tiles.end());
                int mine = 0;
                for (const auto& ec : circuits)
                    if (members.count(l1.edges[ec.edges[0]].white)) {
                        ++mine;
                        for (int e : ec.edges) CHECK(members.count(l1.edges[e].white));
                    }
                bool tree = is_tree(c, cl);
                CHECK(tree == (mine == 1));
                CHECK(tree == is_acyclic(c, cl));
                (tree ? trees : cycles)++;
                covered += cl.tiles.size();
            }
            CHECK(covered == l1.tiles.size() / 2);
        }
    }
    CHECK(trees > 0);
    CHECK(cycles > 0);
}

TEST_CASE("circuit dump lists one edge per line") {
    CellComplex l1 = level_one(fixtures::rule("lattes_g"));
    Connection c = disconnected(l1);
    EulerCircuit ec = boundary_circuit(c, 0);
    std::istringstream in(circuit_dump(l1, ec));
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        std::istringstream f(line);
        int pos, e, type, init, term, mark;
        REQUIRE(static_cast<bool>(f >> pos >> e >> type >> init >> term >> mark));
        CHECK(pos == n);
        CHECK(e == ec.edges[n]);
        CHECK(type == l1.edges[e].type);
        ++n;
    }
    CHECK(n == static_cast<int>(ec.size()));
}

TEST_CASE("invalid connections are reported") {
    CellComplex l1 = level_one(fixtures::rule("lattes_g"));
    Connection c = disconnected(l1);
    c.at[0].mark.reset();
    std::string why;
    CHECK_FALSE(is_valid_connection(c, &why));
    CHECK_FALSE(why.empty());
    Connection d = disconnected(l1);
    d.at.pop_back();
    CHECK_FALSE(is_valid_connection(d));
}
