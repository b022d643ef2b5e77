#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "peano/lengths.hpp"
#include "peano/spantree.hpp"

using namespace peano;

namespace {

// M recounted from the circuit alone: cut wherever it leaves a
// postcritical vertex, then tally edge types per piece.
Matrix recount(const CellComplex& cx, const EulerCircuit& ec) {
    Matrix M(cx.k, std::vector<long long>(cx.k, 0));
    int chain = -1;
    for (int e : ec.edges) {
        int v = cx.edges[e].init;
        if (v < cx.k && cx.verts[v].degree() == 1) chain = v;
        REQUIRE(chain >= 0);
        ++M[chain][cx.edges[e].type];
    }
    return M;
}

}  // namespace

TEST_CASE("trivial systems") {
    CHECK(solve_lengths({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 1) == std::vector<mpq_class>(3, mpq_class(1, 3)));
    CHECK(solve_lengths({{2, 2}, {2, 2}}, 4) == std::vector<mpq_class>(2, mpq_class(1, 2)));
    CHECK_THROWS_AS(solve_lengths({{2, 0}, {0, 3}}, 2), LengthError);
    CHECK(is_primitive({{0, 1}, {1, 1}}));
    CHECK_FALSE(is_primitive({{0, 1}, {1, 0}}));
    CHECK(mat_pow({{1, 1}, {1, 0}}, 5) == Matrix{{8, 5}, {5, 3}});
    CHECK(column_sums({{1, 2}, {3, 4}}) == std::vector<long long>{4, 6});
    CHECK(fraction(mpq_class(5, 16)) == "5/16");
    CHECK(fraction(mpq_class(0)) == "0");
}

TEST_CASE("cofactor oracle agrees with the exact solver on random primitive matrices") {
    // Column-sum-d matrices built from a fixed deterministic sequence.
    unsigned state = 12345;
    auto next = [&] { return state = state * 1103515245u + 12345u, (state >> 16) & 0x7fff; };
    int tested = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int k = 3 + static_cast<int>(next() % 3), d = 2 + static_cast<int>(next() % 5);
        Matrix M(k, std::vector<long long>(k, 0));
        for (int j = 0; j < k; ++j)
            for (int u = 0; u < d; ++u) ++M[next() % k][j];
        if (!is_primitive(M)) continue;
        auto want = oracles::cofactor_kernel(M, d);
        REQUIRE(!want.empty());
        auto got = solve_lengths(M, d);
        for (int i = 0; i < k; ++i) {
            CHECK(got[i].get_num().get_si() == want[i].first);
            CHECK(got[i].get_den().get_si() == want[i].second);
        }
        ++tested;
    }
    CHECK(tested > 50);
}

TEST_CASE("lengths for the bundled rules") {
    for (const char* name : {"lattes_g", "lattes_h2"}) {
        CellComplex l1 = level_one(fixtures::rule(name));
        TreePlan plan = construct_plan(l1);
        auto chains = chain_decomposition(plan.circuit);
        CHECK(chains.size() == 4);
        std::size_t total = 0;
        for (const auto& c : chains) total += c.size();
        CHECK(total == 16);

        LengthSystem ls = length_system(l1, plan.circuit, plan_hash(plan));
        CAPTURE(name);
        CHECK(ls.M == recount(l1, plan.circuit));
        CHECK(column_sums(ls.M) == std::vector<long long>(4, 4));
        CHECK(is_primitive(ls.M));
        auto want = oracles::cofactor_kernel(ls.M, ls.d);
        mpq_class sum = 0;
        for (int i = 0; i < ls.k; ++i) {
            CHECK(ls.l[i] > 0);
            CHECK(ls.l[i].get_num().get_si() == want[i].first);
            CHECK(ls.l[i].get_den().get_si() == want[i].second);
            mpq_class row = 0;
            for (int j = 0; j < ls.k; ++j) row += mpq_class(static_cast<long>(ls.M[i][j])) * ls.l[j];
            CHECK(row == ls.d * ls.l[i]);
            sum += ls.l[i];
        }
        CHECK(sum == 1);
        CHECK(ls.theta0 == 0);
        CHECK(length_report(ls).find("theta0: 0\n") != std::string::npos);
    }
}

TEST_CASE("rotation offset") {
    // h fixes p0, so the offset vanishes whatever the lengths.
    CellComplex h1 = level_one(fixtures::rule("lattes_h"));
    CHECK(theta0(h1, {mpq_class(1, 10), mpq_class(2, 10), mpq_class(3, 10), mpq_class(4, 10)}) == 0);

    // With p2 of g relabelled p0, the image of p0 is p2, two 0-edges ahead.
    auto r = with_p0(fixtures::rule("lattes_g"), 2);
    CellComplex l1 = level_one(r);
    REQUIRE(l1.verts[0].type == 2);
    TreePlan plan = construct_plan(l1);
    REQUIRE(plan.c1);
    LengthSystem ls = length_system(l1, plan.circuit);
    auto want = oracles::cofactor_kernel(ls.M, ls.d);
    auto q = [](std::pair<long long, long long> p) { return mpq_class(static_cast<long>(p.first), static_cast<unsigned long>(p.second)); };
    mpq_class expect = q(want[0]) + q(want[1]);
    CHECK(ls.theta0 == expect);
}

TEST_CASE("parameter grids") {
    auto r = fixtures::rule("lattes_g");
    CellComplex l0 = level_zero(r);
    CellComplex l1 = level_one(r);
    TreePlan plan = construct_plan(l1);
    LengthSystem ls = length_system(l1, plan.circuit);
    ParamGrid g0 = alpha_grid(ls, l0, level_zero_circuit(l0));
    REQUIRE(g0.alpha.size() == 4);
    mpq_class acc = 0;
    for (int j = 0; j < 4; ++j) {
        CHECK(g0.alpha[j] == acc);
        acc += ls.l[j];
    }
    ParamGrid g1 = alpha_grid(ls, l1, plan.circuit);
    CHECK(g1.alpha.size() == 16);
    for (std::size_t i = 1; i < g1.alpha.size(); ++i) CHECK(g1.alpha[i] > g1.alpha[i - 1]);

    EulerCircuit shifted = plan.circuit;
    std::rotate(shifted.edges.begin(), shifted.edges.begin() + 1, shifted.edges.end());
    CHECK_THROWS_AS(alpha_grid(ls, l1, shifted), LengthError);
}

TEST_CASE("chain decomposition needs ordered passes") {
    EulerCircuit ec;
    ec.edges = {0, 1, 2, 3};
    ec.marked = {3, 0, 1, 2};
    auto chains = chain_decomposition(ec);
    CHECK(chains == std::vector<std::vector<int>>{{0}, {1}, {2}, {3}});
    ec.marked = {3, 1, 0, 2};
    CHECK_THROWS_AS(chain_decomposition(ec), LengthError);
    ec.marked = {3, -1, 0, 2};
    CHECK_THROWS_AS(chain_decomposition(ec), LengthError);
}

TEST_CASE("identity rule") {
    auto r = fixtures::identity_rule(4);
    CellComplex l0 = level_zero(r);
    EulerCircuit c0 = level_zero_circuit(l0);
    auto chains = chain_decomposition(c0);
    for (const auto& c : chains) CHECK(c.size() == 1);
    Matrix M = transition_matrix(l0, chains);
    CHECK(M == Matrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    CHECK(solve_lengths(M, 1) == std::vector<mpq_class>(4, mpq_class(1, 4)));
}
