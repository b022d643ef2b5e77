#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "peano/connect.hpp"

namespace peano {

struct LengthError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Matrix = std::vector<std::vector<long long>>;

struct LengthSystem {
    int d = 0, k = 0;
    Matrix M;                  // M[i][j]: type-j edges in the chain replacing 0-edge i
    std::vector<mpq_class> l;  // positive, sums to 1, M l = d l
    mpq_class theta0;          // in [0, 1)
    std::string plan_hash;     // identifies the plan the chains came from
};

struct ParamGrid {
    int level = 0;
    std::vector<mpq_class> alpha;  // alpha[j]: start of circuit position j
    std::vector<int> edges;        // circuit edge at position j
};

// Chain i runs from just after the marked pass at p_i through the marked pass
// at p_{i+1}. Throws LengthError when marked passes are out of order.
std::vector<std::vector<int>> chain_decomposition(const EulerCircuit& circuit);

Matrix transition_matrix(const CellComplex& cx, const std::vector<std::vector<int>>& chains);
std::vector<long long> column_sums(const Matrix& M);
// Some boolean power M^N with N <= k*k is entrywise positive.
bool is_primitive(const Matrix& M);
Matrix mat_pow(const Matrix& M, int n);

// Exact kernel of M - dI, normalized to sum 1. Throws LengthError unless the
// kernel is one-dimensional and positive; M = dI gives the uniform vector.
std::vector<mpq_class> solve_lengths(const Matrix& M, int d);

// Zero when p_0 is fixed, else the length of C from p_0 to F(p_0).
mpq_class theta0(const CellComplex& level1, const std::vector<mpq_class>& l);

// Full system from a level-1 circuit based at p_0. M must be primitive or dI.
LengthSystem length_system(const CellComplex& level1, const EulerCircuit& circuit, const std::string& plan_hash = "");

// circuit must start at p_0. Level 0 is accepted as the k-edge curve itself.
ParamGrid alpha_grid(const LengthSystem& ls, const CellComplex& cx, const EulerCircuit& circuit);

// The curve C as a level-0 circuit: 0-edges in type order from p_0.
EulerCircuit level_zero_circuit(const CellComplex& level0);

std::string fraction(const mpq_class& q);
std::string length_report(const LengthSystem& ls);

}  // namespace peano
