#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "peano/connect.hpp"

namespace peano {

struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MergeEvent {
    std::string phase;  // white-tree, black-tree, walk, attach
    int vertex = -1;
    Side side = Side::white;
    Block into;
    Block added;
    Block common;
};

struct HomotopyReport {
    bool ok = false;
    bool order_ok = false;
    bool segments_ok = false;
    std::vector<std::string> violations;
};

struct LinkWitness {
    int edge0 = 0;  // E^0_1; E^0_2, E^0_3 follow cyclically
    int x1 = -1, x2 = -1, y = -1;
};

struct TreePlan {
    Connection conn;
    int main_cluster = -1;  // least tile of the main tree
    std::vector<MergeEvent> log;
    bool c1 = false;
    bool c2 = false;
    HomotopyReport c2_report;
    EulerCircuit circuit;  // based at p_0 when c1 holds
};

struct WhiteDecomposition {
    Connection conn;
    std::vector<Cluster> clusters;  // white clusters inside X0_w
    int main = -1;                  // index into clusters
};

struct BlackDecomposition {
    Connection conn;
    std::vector<Cluster> black;           // black clusters inside X0_b
    std::vector<Cluster> white_secondary;  // white clusters inside X0_b
    bool white_trees = true;
    bool white_arcs = true;
};

// Tree state before the walk: spanning trees on both sides.
struct TreeState {
    Connection conn;
    int main_tile = -1;
    std::vector<MergeEvent> log;
};

bool is_interior(const CellComplex& cx, int v, Color side);

WhiteDecomposition decompose_white(const CellComplex& cx);
Connection spanning_tree(const Connection& conn, const Cluster& cl, std::vector<MergeEvent>* log = nullptr,
                         const std::string& phase = "tree");
// Expects white spanning trees already in place inside X0_w.
BlackDecomposition decompose_black(const Connection& conn, std::vector<MergeEvent>* log = nullptr);
TreeState build_trees(const CellComplex& cx);

// Vertices along 0-edge j from p_j to p_{j+1}, for a level-1 complex of an
// invariant rule.
std::vector<std::vector<int>> chain_vertices(const CellComplex& cx);

std::vector<LinkWitness> detect_links(const TreeState& st);
TreePlan attach_secondaries(TreeState st);

// Full construction at level 1. Throws ConstructionError when a precondition
// (no opposite sides, no links) fails.
TreePlan construct_plan(const CellComplex& cx);

HomotopyReport check_homotopy_class(const CellComplex& cx, const EulerCircuit& circuit);

// Fills c1, c2, circuit and report from plan.conn.
void evaluate_plan(TreePlan& plan);

struct SearchResult {
    std::vector<TreePlan> plans;  // C1 and C2
    long long c1_count = 0;
    long long c2_count = 0;
    long long nodes = 0;
    bool exhausted = false;  // budget ran out
};

SearchResult search_connections(const CellComplex& cx, bool all, long long budget);

nlohmann::json plan_to_json(const TreePlan& plan);
// Stable digest of plan_to_json, recorded with derived lengths.
std::string plan_hash(const TreePlan& plan);
std::string connection_text(const Connection& c);

}  // namespace peano
