#pragma once

#include <string>
#include <vector>

#include "peano/rule.hpp"

namespace peano {

struct Tile {
    Color color = Color::white;
    std::vector<int> edge;  // by slot type
    std::vector<int> vert;  // corner t: initial vertex of slot t
    int parent = -1;        // level n-1 tile containing it
    int local = -1;         // rule tile it copies
    int image = -1;         // level n-1 tile it maps onto
};

struct Edge {
    int type = 0;
    int white = -1, black = -1;
    int init = -1, term = -1;  // positive orientation
    int parent_edge = -1;      // set for edges on a parent edge
    int chain_pos = -1;
    int parent_tile = -1;      // set for edges interior to a parent tile
    int local = -1;            // rule edge it copies
    int image = -1;
    int on_curve = -1;         // 0-edge containing it, -1 off C
    int at_term = -1;          // link position index at term (even)
    int at_init = -1;          // link position index at init (odd)
};

struct Vertex {
    int type = 0;  // F^n(v) = p_type
    int image = -1;
    bool old = false;  // also a vertex one level down
    // link_tiles[i] alternates white (even i) and black; link_edges[i] lies
    // between link_tiles[i] and link_tiles[i+1].
    std::vector<int> link_tiles;
    std::vector<int> link_edges;
    std::vector<int> on_curve;  // 0-edges through v, sorted

    int degree() const { return static_cast<int>(link_tiles.size()) / 2; }
};

struct CellComplex {
    int level = 0;
    int d = 0, k = 0;
    std::vector<Tile> tiles;
    std::vector<Edge> edges;
    std::vector<Vertex> verts;
    // child[X][Y]: tile copying rule tile Y inside tile X of the level below.
    std::vector<std::vector<int>> child;

    int euler() const {
        return static_cast<int>(verts.size()) - static_cast<int>(edges.size()) + static_cast<int>(tiles.size());
    }
};

struct ChainMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LinkError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

CellComplex level_zero(const SubdivisionRule& r);
// The rule's own complex in file order; works without an invariant curve.
CellComplex level_one(const SubdivisionRule& r);
CellComplex subdivide(const CellComplex& cx, const SubdivisionRule& r);
// level_one followed by subdivisions.
std::vector<CellComplex> iterate(const SubdivisionRule& r, int max_level);

struct LinkCorner {
    int tile;
    int edge;
};
std::vector<LinkCorner> vertex_link(const CellComplex& cx, int v);

bool check_no_opposite_sides(const CellComplex& level1);

struct CheckEntry {
    std::string name;
    bool ok = true;
    std::string detail;
};

struct ValidationReport {
    int V = 0, E = 0, T = 0, chi = 0;
    std::vector<int> degrees;  // per vertex
    std::vector<CheckEntry> checks;
    bool ok() const;
    std::string text() const;
};

ValidationReport validate(const SubdivisionRule& r);

// Structural invariants of any level; failures appended to out.
void check_complex(const CellComplex& cx, std::vector<CheckEntry>& out);

// image(parent(c)) == parent(image(c)) for tiles and edges of `upper`; needs
// upper.level >= 2, since level-1 images are colors rather than tiles.
bool check_commutes(const CellComplex& lower, const CellComplex& upper);

}  // namespace peano
