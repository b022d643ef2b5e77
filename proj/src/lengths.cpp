#include "peano/lengths.hpp"

#include <algorithm>
#include <sstream>

namespace peano {

std::vector<std::vector<int>> chain_decomposition(const EulerCircuit& circuit) {
    const int k = static_cast<int>(circuit.marked.size());
    const int n = static_cast<int>(circuit.size());
    if (k == 0) throw LengthError("circuit carries no marked passes");
    for (int m : circuit.marked)
        if (m < 0) throw LengthError("circuit misses a marked pass");
    std::vector<std::vector<int>> chains(k);
    int total = 0;
    for (int i = 0; i < k; ++i) {
        int from = (circuit.marked[i] + 1) % n;
        int len = ((circuit.marked[(i + 1) % k] - circuit.marked[i]) % n + n) % n;
        if (k == 1) len = n;
        for (int t = 0; t < len; ++t) chains[i].push_back(circuit.edges[(from + t) % n]);
        total += len;
    }
    // Out-of-order passes wrap around more than once.
    if (total != n) throw LengthError("marked passes are not in cyclic order");
    for (const auto& c : chains)
        if (c.empty()) throw LengthError("empty chain between marked passes");
    return chains;
}

Matrix transition_matrix(const CellComplex& cx, const std::vector<std::vector<int>>& chains) {
    const int k = static_cast<int>(chains.size());
    Matrix M(k, std::vector<long long>(k, 0));
    for (int i = 0; i < k; ++i)
        for (int e : chains[i]) ++M[i][cx.edges.at(e).type];
    return M;
}

std::vector<long long> column_sums(const Matrix& M) {
    std::vector<long long> s(M.size(), 0);
    for (const auto& row : M)
        for (std::size_t j = 0; j < row.size(); ++j) s[j] += row[j];
    return s;
}

Matrix mat_pow(const Matrix& M, int n) {
    const std::size_t k = M.size();
    Matrix R(k, std::vector<long long>(k, 0));
    for (std::size_t i = 0; i < k; ++i) R[i][i] = 1;
    for (int p = 0; p < n; ++p) {
        Matrix T(k, std::vector<long long>(k, 0));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t m = 0; m < k; ++m)
                if (R[i][m])
                    for (std::size_t j = 0; j < k; ++j) T[i][j] += R[i][m] * M[m][j];
        R = std::move(T);
    }
    return R;
}

bool is_primitive(const Matrix& M) {
    const std::size_t k = M.size();
    std::vector<std::vector<char>> B(k, std::vector<char>(k)), P;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) B[i][j] = M[i][j] > 0;
    P = B;
    for (std::size_t e = 1; e <= k * k; ++e) {
        bool all = true;
        for (const auto& row : P)
            for (char c : row) all = all && c;
        if (all) return true;
        std::vector<std::vector<char>> T(k, std::vector<char>(k, 0));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t m = 0; m < k; ++m)
                if (P[i][m])
                    for (std::size_t j = 0; j < k; ++j) T[i][j] = T[i][j] || B[m][j];
        P = std::move(T);
    }
    return false;
}

namespace {

bool is_scalar(const Matrix& M, int d) {
    for (std::size_t i = 0; i < M.size(); ++i)
        for (std::size_t j = 0; j < M.size(); ++j)
            if (M[i][j] != (i == j ? d : 0)) return false;
    return true;
}

}  // namespace

std::vector<mpq_class> solve_lengths(const Matrix& M, int d) {
    const int k = static_cast<int>(M.size());
    // Every edge is its own chain: all vectors are eigenvectors, and the
    // symmetric choice is the only canonical one.
    if (is_scalar(M, d)) return std::vector<mpq_class>(k, mpq_class(1, k));
    std::vector<std::vector<mpq_class>> A(k, std::vector<mpq_class>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) A[i][j] = static_cast<long>(M[i][j] - (i == j ? d : 0));
    // Reduced row echelon form.
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < k && row < k; ++col) {
        int piv = -1;
        for (int r = row; r < k; ++r)
            if (A[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(A[row], A[piv]);
        mpq_class inv = 1 / A[row][col];
        for (auto& x : A[row]) x *= inv;
        for (int r = 0; r < k; ++r) {
            if (r == row || A[r][col] == 0) continue;
            mpq_class f = A[r][col];
            for (int c = 0; c < k; ++c) A[r][c] -= f * A[row][c];
        }
        pivot_col.push_back(col);
        ++row;
    }
    if (k - row != 1) throw LengthError("kernel of M - dI has dimension " + std::to_string(k - row));
    int free_col = 0;
    while (free_col < k && std::find(pivot_col.begin(), pivot_col.end(), free_col) != pivot_col.end()) ++free_col;
    std::vector<mpq_class> l(k, 0);
    l[free_col] = 1;
    for (int r = 0; r < row; ++r) l[pivot_col[r]] = -A[r][free_col];
    mpq_class sum = 0;
    for (const auto& x : l) sum += x;
    if (sum == 0) throw LengthError("kernel vector sums to zero");
    for (auto& x : l) {
        x /= sum;
        if (x <= 0) throw LengthError("kernel vector is not positive");
    }
    return l;
}

mpq_class theta0(const CellComplex& level1, const std::vector<mpq_class>& l) {
    mpq_class t = 0;
    for (int j = 0; j < level1.verts.at(0).type; ++j) t += l[j];
    return t;
}

LengthSystem length_system(const CellComplex& level1, const EulerCircuit& circuit, const std::string& plan_hash) {
    LengthSystem ls;
    ls.d = level1.d;
    ls.k = level1.k;
    ls.plan_hash = plan_hash;
    ls.M = transition_matrix(level1, chain_decomposition(circuit));
    for (long long s : column_sums(ls.M))
        if (s != ls.d) throw LengthError("column sum " + std::to_string(s) + " differs from the degree");
    if (!is_primitive(ls.M) && !is_scalar(ls.M, ls.d)) throw LengthError("transition matrix is not primitive");
    ls.l = solve_lengths(ls.M, ls.d);
    ls.theta0 = theta0(level1, ls.l);
    return ls;
}

ParamGrid alpha_grid(const LengthSystem& ls, const CellComplex& cx, const EulerCircuit& circuit) {
    if (circuit.edges.empty() || cx.edges.at(circuit.edges.front()).init != 0)
        throw LengthError("circuit does not start at p_0");
    ParamGrid g;
    g.level = cx.level;
    g.edges = circuit.edges;
    mpz_class scale = 1;
    for (int i = 0; i < cx.level; ++i) scale *= ls.d;
    mpq_class a = 0;
    for (int e : circuit.edges) {
        g.alpha.push_back(a);
        a += ls.l[cx.edges[e].type] / mpq_class(scale);
    }
    if (a != 1) throw LengthError("edge lengths along the circuit do not sum to 1");
    return g;
}

EulerCircuit level_zero_circuit(const CellComplex& level0) {
    EulerCircuit ec;
    ec.level = 0;
    ec.edges.assign(level0.k, -1);
    for (int e = 0; e < static_cast<int>(level0.edges.size()); ++e) ec.edges[level0.edges[e].type] = e;
    for (int j = 0; j < level0.k; ++j) ec.marked.push_back((j + level0.k - 1) % level0.k);
    return ec;
}

std::string fraction(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string length_report(const LengthSystem& ls) {
    std::ostringstream os;
    os << "d=" << ls.d << " k=" << ls.k << "\nM:\n";
    for (const auto& row : ls.M) {
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "  ") << row[j];
        os << "\n";
    }
    os << "l:";
    for (const auto& x : ls.l) os << " " << fraction(x);
    os << "\ntheta0: " << fraction(ls.theta0) << "\n";
    if (!ls.plan_hash.empty()) os << "plan: " << ls.plan_hash << "\n";
    return os.str();
}

}  // namespace peano
