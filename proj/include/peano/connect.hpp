#pragma once

#include <string>
#include <vector>

#include "peano/complex.hpp"
#include "peano/ncpart.hpp"

namespace peano {

// Per-vertex cnc-partitions over link positions of `cx`. The complex must
// outlive the connection.
struct Connection {
    const CellComplex* cx = nullptr;
    std::vector<CncPartition> at;
};

CncPartition white_singletons(int n);
CncPartition black_singletons(int n);

// White tiles pairwise disconnected everywhere; postcritical vertices marked
// at their pass with incoming link index 0.
Connection disconnected(const CellComplex& cx);

bool is_valid_connection(const Connection& c, std::string* why = nullptr);

// Edges are positively oriented edge ids. White successor follows pi_w
// counterclockwise; black successor follows pi_b clockwise, keeping the black
// cluster on the right.
int successor(const Connection& c, int e);
int black_successor(const Connection& c, int e);
int predecessor(const Connection& c, int e);

struct EulerCircuit {
    int level = 0;
    std::vector<int> edges;
    // marked[j]: position of the incoming edge of p_j's marked pass, -1 when
    // the circuit does not realize it.
    std::vector<int> marked;

    std::size_t size() const { return edges.size(); }
};

EulerCircuit boundary_circuit(const Connection& c, int start, Color color = Color::white);

// All boundary circuits of one color, each starting at its least edge id,
// ordered by that id.
std::vector<EulerCircuit> all_circuits(const Connection& c, Color color = Color::white);

// Rotates a white circuit so it starts with the outgoing edge of p_0's marked
// pass. Throws when the pass is missing.
EulerCircuit based_at_p0(const EulerCircuit& ec);

// Incoming link index i of the marked pass at a postcritical vertex.
int marked_incoming(const Connection& c, int v);
// Outgoing edge of the marked pass (the marked succeeding edge starting at v).
int marked_outgoing_edge(const Connection& c, int v);

struct Cluster {
    Color color = Color::white;
    int id = -1;             // least member tile
    std::vector<int> tiles;  // sorted
    std::vector<std::pair<int, int>> blocks;  // (vertex, block index) with at least two members
};

std::vector<Cluster> clusters(const Connection& c, Color color);
int cluster_of(const std::vector<Cluster>& cl, int tile);

// Single boundary circuit of length k * |tiles|.
bool is_tree(const Connection& c, const Cluster& cl);
// Connection subgraph acyclic: nodes - edges == 1.
bool is_acyclic(const Connection& c, const Cluster& cl);

std::string circuit_dump(const CellComplex& cx, const EulerCircuit& ec);

}  // namespace peano
