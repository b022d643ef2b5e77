#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "peano/lift.hpp"
#include "peano/spantree.hpp"

using namespace peano;

namespace {

Lift lift_rule(const SubdivisionRule& r, int levels) {
    CellComplex l1 = level_one(r);
    TreePlan plan = construct_plan(l1);
    REQUIRE(plan.c1);
    return lift_plan(r, plan.conn.at, levels, plan_hash(plan));
}

// White blocks at every vertex, rebuilt from the passes of the circuit:
// consecutive edges through v join the white tiles they bound.
std::vector<std::set<std::set<int>>> blocks_from_circuit(const CellComplex& cx, const EulerCircuit& ec) {
    std::vector<std::map<int, int>> at(cx.verts.size());  // per vertex: tile -> root
    std::function<int(std::map<int, int>&, int)> find = [&](std::map<int, int>& m, int x) {
        if (!m.count(x)) m[x] = x;
        return m[x] == x ? x : m[x] = find(m, m[x]);
    };
    const std::size_t n = ec.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Edge& in = cx.edges[ec.edges[i]];
        const Edge& out = cx.edges[ec.edges[(i + 1) % n]];
        auto& m = at[in.term];
        m[find(m, in.white)] = find(m, out.white);
    }
    std::vector<std::set<std::set<int>>> res(cx.verts.size());
    for (std::size_t v = 0; v < cx.verts.size(); ++v) {
        std::map<int, std::set<int>> groups;
        for (auto& [t, r] : at[v]) groups[find(at[v], t)].insert(t);
        for (auto& [r, g] : groups) res[v].insert(g);
    }
    return res;
}

std::set<std::set<int>> tile_blocks(const CellComplex& cx, const Connection& c, int v) {
    std::set<std::set<int>> out;
    for (const auto& b : c.at[v].pw.blocks) {
        std::set<int> s;
        for (int i : b) s.insert(cx.verts[v].link_tiles[i]);
        out.insert(s);
    }
    return out;
}

}  // namespace

TEST_CASE("level cap") {
    CHECK(default_level_cap(4, 4) == 9);
    CHECK(default_level_cap(2, 4) == 18);
    CHECK(default_level_cap(1, 4) == 30);
    CHECK_THROWS_AS(lift_plan(fixtures::rule("lattes_g"), {}, 10), LiftError);
}

TEST_CASE("g lifts through five levels") {
    auto r = fixtures::rule("lattes_g");
    Lift L = lift_rule(r, 5);
    CHECK(L.ok());
    for (int n = 1; n <= 5; ++n) {
        const LevelReport& rep = L.reports[n];
        CAPTURE(n);
        CHECK(rep.ok());
        CHECK(rep.c2);
        CHECK(rep.problems.empty());
    }
    CHECK(L.gamma[0].size() == 4);
    CHECK(L.gamma[1].size() == 16);
    CHECK(L.gamma[2].size() == 64);
    CHECK(L.gamma[3].size() == 256);
}

TEST_CASE("circuits pass each vertex once per white tile") {
    Lift L = lift_rule(fixtures::rule("lattes_g"), 3);
    for (int n = 1; n <= 3; ++n) {
        const CellComplex& cx = L.lv[n];
        std::vector<int> visits(cx.verts.size(), 0);
        std::set<int> edges;
        for (int e : L.gamma[n].edges) {
            ++visits[cx.edges[e].init];
            edges.insert(e);
        }
        CHECK(edges.size() == cx.edges.size());
        for (std::size_t v = 0; v < cx.verts.size(); ++v) CHECK(visits[v] == cx.verts[v].degree());
    }
}

TEST_CASE("lifted connections agree with the circuits they produce") {
    for (const char* name : {"lattes_g", "lattes_h2"}) {
        Lift L = lift_rule(fixtures::rule(name), 3);
        for (int n = 1; n <= 3; ++n) {
            const CellComplex& cx = L.lv[n];
            CHECK(is_valid_connection(L.conn[n]));
            auto from_curve = blocks_from_circuit(cx, L.gamma[n]);
            for (int v = 0; v < static_cast<int>(cx.verts.size()); ++v) CHECK(from_curve[v] == tile_blocks(cx, L.conn[n], v));
        }
    }
}

TEST_CASE("regular new vertices copy the level-one connection") {
    Lift L = lift_rule(fixtures::rule("lattes_g"), 2);
    const CellComplex& c2 = L.lv[2];
    const CellComplex& c1 = L.lv[1];
    int checked = 0;
    for (int v = 0; v < static_cast<int>(c2.verts.size()); ++v) {
        const Vertex& V = c2.verts[v];
        if (V.old || V.degree() != c1.verts[V.image].degree()) continue;
        std::set<std::set<int>> mapped;
        for (const auto& b : tile_blocks(c2, L.conn[2], v)) {
            std::set<int> s;
            for (int t : b) s.insert(c2.tiles[t].image);
            mapped.insert(s);
        }
        CHECK(mapped == tile_blocks(c1, L.conn[1], V.image));
        ++checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("h2 lifts through three levels") {
    Lift L = lift_rule(fixtures::rule("lattes_h2"), 3);
    CHECK(L.ok());
    for (int n = 1; n <= 3; ++n) CHECK(L.reports[n].c2);
}

TEST_CASE("violations are detected") {
    Lift L = lift_rule(fixtures::rule("lattes_g"), 2);
    const CellComplex& c2 = L.lv[2];
    CHECK(verify_dfold(c2, L.gamma[2], L.gamma[1]));
    EulerCircuit swapped = L.gamma[2];
    std::swap(swapped.edges[5], swapped.edges[6]);
    CHECK_FALSE(verify_dfold(c2, swapped, L.gamma[1]));

    const int d = L.lengths.d, k = L.lengths.k;
    CHECK(verify_semiconjugacy(c2, L.lv[1], L.grid[2], L.grid[1], L.lengths.theta0, d));
    std::vector<std::string> problems;
    CHECK_FALSE(verify_semiconjugacy(c2, L.lv[1], L.grid[2], L.grid[1], L.lengths.theta0 + mpq_class(1, k * d), d,
                                     &problems));
    CHECK_FALSE(problems.empty());

    CHECK(verify_chain_law(c2, L.lv[1], L.grid[2], L.grid[1], L.lengths.M));
    Matrix wrong = L.lengths.M;
    wrong[0][0] += 1;
    wrong[0][1] -= 1;
    CHECK_FALSE(verify_chain_law(c2, L.lv[1], L.grid[2], L.grid[1], wrong));
}

TEST_CASE("identity rule lifts trivially") {
    auto r = fixtures::identity_rule(4);
    CellComplex l1 = level_one(r);
    Lift L = lift_plan(r, disconnected(l1).at, 3);
    CHECK(L.ok());
    for (int n = 1; n <= 3; ++n) {
        CHECK(L.gamma[n].size() == 4);
        CHECK(curve_json(L, n) == curve_json(L, 1));
        CHECK(L.grid[n].alpha == L.grid[0].alpha);
    }
    CHECK(L.lengths.l == std::vector<mpq_class>(4, mpq_class(1, 4)));
    CHECK(L.lengths.theta0 == 0);
}

TEST_CASE("curve samples") {
    Lift L = lift_rule(fixtures::rule("lattes_g"), 3);
    std::size_t want = 16;
    for (int n = 1; n <= 3; ++n, want *= 4) {
        auto j = curve_json(L, n);
        REQUIRE(j.size() == want);
        CHECK(j[0]["t"] == "0");
        CHECK(j[0]["vertex"] == 0);
        for (std::size_t i = 1; i < j.size(); ++i) {
            mpq_class a(j[i - 1]["t"].get<std::string>()), b(j[i]["t"].get<std::string>());
            CHECK(a < b);
        }
    }
    CHECK(lift_summary(L).find("level 3: edges=256") != std::string::npos);
}
