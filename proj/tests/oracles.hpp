#pragma once

#include <numeric>
#include <utility>
#include <vector>

#include "peano/lengths.hpp"

namespace oracles {

using peano::Matrix;

inline long long det(const Matrix& A) {
    const std::size_t n = A.size();
    if (n == 0) return 1;
    long long s = 0;
    for (std::size_t c = 0; c < n; ++c) {
        Matrix m;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<long long> row;
            for (std::size_t j = 0; j < n; ++j)
                if (j != c) row.push_back(A[r][j]);
            m.push_back(row);
        }
        s += (c % 2 ? -1 : 1) * A[0][c] * det(m);
    }
    return s;
}

// Kernel of M - dI from a nonzero adjugate column, as reduced fractions
// (numerator, denominator) normalized to sum 1.
inline std::vector<std::pair<long long, long long>> cofactor_kernel(const Matrix& M, int d) {
    const std::size_t k = M.size();
    Matrix A = M;
    for (std::size_t i = 0; i < k; ++i) A[i][i] -= d;
    for (std::size_t col = 0; col < k; ++col) {
        // Column `col` of adj(A): entry i is the (col, i) cofactor.
        std::vector<long long> v(k);
        for (std::size_t i = 0; i < k; ++i) {
            Matrix m;
            for (std::size_t r = 0; r < k; ++r) {
                if (r == col) continue;
                std::vector<long long> row;
                for (std::size_t j = 0; j < k; ++j)
                    if (j != i) row.push_back(A[r][j]);
                m.push_back(row);
            }
            v[i] = ((i + col) % 2 ? -1 : 1) * det(m);
        }
        long long sum = std::accumulate(v.begin(), v.end(), 0LL);
        if (sum == 0) continue;
        std::vector<std::pair<long long, long long>> out;
        for (long long x : v) {
            long long num = x, den = sum;
            if (den < 0) num = -num, den = -den;
            long long g = std::gcd(num < 0 ? -num : num, den);
            out.push_back({num / g, den / g});
        }
        return out;
    }
    return {};
}

}  // namespace oracles
