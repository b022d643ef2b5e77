#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "peano/lengths.hpp"

namespace peano {

struct LiftError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Largest level whose edge count k*d^n stays within 2^20 (30 for d = 1).
int default_level_cap(int d, int k);

// Maps (n+1)-edges to 1-edges through F^n, given the same map one level down
// (empty for level 1, meaning the identity).
std::vector<int> compose_to_level1(const CellComplex& next, const std::vector<int>& to1);

// Connection at level n+1 from the connection at level n and the level-1
// plan. to1_next maps (n+1)-edges to 1-edges.
Connection pullback_connection(const CellComplex& next, const Connection& conn_n, const Connection& conn_1,
                               const std::vector<int>& to1_next);

// White boundary circuit starting with the outgoing edge of p_0's marked pass.
EulerCircuit gamma(const Connection& conn);

// F maps g_next onto g as a d-fold cover with a constant offset.
bool verify_dfold(const CellComplex& next, const EulerCircuit& g_next, const EulerCircuit& g);

// Grid-level semiconjugacy phi(t) = d t + theta0 mod 1, plus refinement and
// agreement of the two curves on coarse grid points.
bool verify_semiconjugacy(const CellComplex& next, const CellComplex& cur, const ParamGrid& grid_next,
                          const ParamGrid& grid, const mpq_class& theta0, int d,
                          std::vector<std::string>* problems = nullptr);

// Every coarse edge of type i is replaced by a chain with type counts M[i].
bool verify_chain_law(const CellComplex& next, const CellComplex& cur, const ParamGrid& grid_next,
                      const ParamGrid& grid, const Matrix& M, std::vector<std::string>* problems = nullptr);

struct LevelReport {
    int level = 0;
    std::size_t edges = 0;
    bool cnc = false;       // every vertex carries a valid cnc-partition
    bool tree = false;      // white clusters form one spanning tree
    bool eulerian = false;  // one circuit through every edge once
    bool oriented = false;  // consecutive edges chain head to tail
    bool c2 = false;        // homotopy-class check on the circuit
    bool dfold = false;     // against the level below
    bool semiconj = false;
    bool refine = false;
    bool chain_law = false;
    std::vector<std::string> problems;

    // Everything except c2, which is a sufficient criterion only.
    bool ok() const { return cnc && tree && eulerian && oriented && dfold && semiconj && refine && chain_law; }
};

// Owns the complexes; connections point into them, so the object is
// move-only.
struct Lift {
    std::vector<CellComplex> lv;         // levels 0..N
    std::vector<Connection> conn;        // conn[n] over lv[n], n >= 1
    std::vector<EulerCircuit> gamma;     // gamma[0] is C itself
    std::vector<std::vector<int>> to1;   // to1[n]: n-edges to 1-edges
    LengthSystem lengths;
    std::vector<ParamGrid> grid;
    std::vector<LevelReport> reports;   // reports[n] for n >= 1

    Lift() = default;
    Lift(const Lift&) = delete;
    Lift& operator=(const Lift&) = delete;
    Lift(Lift&&) = default;
    Lift& operator=(Lift&&) = default;

    bool ok() const;
};

// Lifts a level-1 connection through max_level and runs the level suite.
Lift lift_plan(const SubdivisionRule& r, const std::vector<CncPartition>& level1, int max_level,
               const std::string& plan_hash = "");

// Samples {t, vertex, edge, type} per circuit position.
nlohmann::json curve_json(const Lift& lift, int level);
std::string lift_summary(const Lift& lift);

}  // namespace peano
