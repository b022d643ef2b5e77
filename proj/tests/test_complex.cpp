#include <algorithm>
#include <filesystem>
#include <map>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "peano/complex.hpp"

using namespace peano;

namespace {

long long power(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// Tile-local shape invariant: per tile, its rule tile and corner degrees.
std::multiset<std::vector<int>> tile_shapes(const CellComplex& cx) {
    std::multiset<std::vector<int>> out;
    for (const auto& t : cx.tiles) {
        std::vector<int> s{t.local};
        for (int v : t.vert) s.push_back(cx.verts[v].degree());
        out.insert(s);
    }
    return out;
}

// Whether some 1-tile meets 0-edges that share no endpoint, read straight
// from the rule's curve chains.
bool opposite_sides_oracle(const SubdivisionRule& r, const CellComplex& l1) {
    std::vector<std::set<int>> chain_verts(r.k);
    for (int j = 0; j < r.k; ++j)
        for (const auto& st : r.curve[j]) {
            chain_verts[j].insert(l1.edges[st.edge].init);
            chain_verts[j].insert(l1.edges[st.edge].term);
        }
    for (const auto& t : l1.tiles) {
        std::set<int> touched;
        for (int v : t.vert)
            for (int j = 0; j < r.k; ++j)
                if (chain_verts[j].count(v)) touched.insert(j);
        if (r.k == 3 && touched.size() == 3) return true;
        for (int a : touched)
            for (int b : touched) {
                int gap = ((a - b) % r.k + r.k) % r.k;
                if (r.k > 3 && gap > 1 && gap < r.k - 1) return true;
            }
    }
    return false;
}

}  // namespace

TEST_CASE("bundled rules parse with the expected sizes") {
    auto g = fixtures::rule("lattes_g");
    CHECK(g.d == 4);
    CHECK(g.k == 4);
    CHECK(g.tiles.size() == 8);
    CHECK(std::count_if(g.tiles.begin(), g.tiles.end(), [](const RuleTile& t) { return t.color == Color::white; }) == 4);
    auto h = fixtures::rule("lattes_h");
    CHECK(h.d == 2);
    CHECK(h.tiles.size() == 4);
    CHECK(g.curve_data);
    CHECK(h.curve_data);
}

TEST_CASE("level-one counts follow from the critical points") {
    // Every critical point of these maps is a vertex, so the local degrees
    // minus one add up to 2d - 2, and the vertex count is kd minus that.
    for (const char* name : {"lattes_g", "lattes_h", "lattes_h2"}) {
        auto r = fixtures::rule(name);
        ValidationReport rep = validate(r);
        CAPTURE(std::string(name));
        CHECK(rep.ok());
        CHECK(rep.T == 2 * r.d);
        CHECK(rep.E == r.k * r.d);
        int excess = 0;
        for (int deg : rep.degrees) excess += deg - 1;
        CHECK(excess == 2 * r.d - 2);
        CHECK(rep.V == r.k * r.d - excess);
        CHECK(rep.chi == 2);
    }
    ValidationReport g = validate(fixtures::rule("lattes_g"));
    CHECK(g.V == 10);
    CHECK(g.E == 16);
    CHECK(std::count(g.degrees.begin(), g.degrees.end(), 2) == 6);
    ValidationReport h = validate(fixtures::rule("lattes_h"));
    CHECK(h.V == 6);
    CHECK(std::count(h.degrees.begin(), h.degrees.end(), 2) == 2);
}

TEST_CASE("iterated complexes keep their counts") {
    for (const char* name : {"lattes_g", "lattes_h", "lattes_h2"}) {
        auto r = fixtures::rule(name);
        auto lv = iterate(r, 4);
        REQUIRE(lv.size() == 5);
        CAPTURE(std::string(name));
        for (const auto& cx : lv) {
            CHECK(static_cast<long long>(cx.tiles.size()) == 2 * power(r.d, cx.level));
            CHECK(static_cast<long long>(cx.edges.size()) == r.k * power(r.d, cx.level));
            CHECK(cx.euler() == 2);
            std::vector<CheckEntry> checks;
            check_complex(cx, checks);
            for (const auto& e : checks) CHECK_MESSAGE(e.ok, std::string(e.name + ": " + e.detail));
            if (cx.level >= 2) CHECK(check_commutes(lv[cx.level - 1], cx));
            // Each n-vertex is an old vertex or new; old ones persist one level up.
            if (cx.level >= 1) {
                int old = static_cast<int>(std::count_if(cx.verts.begin(), cx.verts.end(), [](const Vertex& v) { return v.old; }));
                CHECK(old == static_cast<int>(lv[cx.level - 1].verts.size()));
            }
        }
    }
    auto g2 = iterate(fixtures::rule("lattes_g"), 2)[2];
    CHECK(g2.tiles.size() == 32);
    CHECK(g2.edges.size() == 64);
    auto h2 = iterate(fixtures::rule("lattes_h"), 2)[2];
    CHECK(h2.tiles.size() == 8);
    CHECK(h2.edges.size() == 16);
}

TEST_CASE("subdividing level zero reproduces the rule complex") {
    for (const char* name : {"lattes_g", "lattes_h"}) {
        auto r = fixtures::rule(name);
        CellComplex a = subdivide(level_zero(r), r);
        CellComplex b = level_one(r);
        CHECK(a.verts.size() == b.verts.size());
        CHECK(a.edges.size() == b.edges.size());
        CHECK(tile_shapes(a) == tile_shapes(b));
    }
}

TEST_CASE("postcritical vertices") {
    auto r = fixtures::rule("lattes_g");
    CellComplex l1 = level_one(r);
    for (int j = 0; j < r.k; ++j) CHECK(l1.verts[j].old);
    for (int e = 0; e < static_cast<int>(l1.edges.size()); ++e) CHECK(l1.edges[e].local == e);
    CellComplex l0 = level_zero(r);
    CHECK(l0.verts.size() == static_cast<std::size_t>(r.k));
    for (int j = 0; j < r.k; ++j) {
        CHECK(l0.edges[j].type == j);
        CHECK(l0.edges[j].init == j);
        CHECK(l0.edges[j].term == (j + 1) % r.k);
    }
}

TEST_CASE("vertex links") {
    CellComplex l1 = level_one(fixtures::rule("lattes_g"));
    for (int v = 0; v < static_cast<int>(l1.verts.size()); ++v) {
        auto link = vertex_link(l1, v);
        CHECK(link.size() == 2 * static_cast<std::size_t>(l1.verts[v].degree()));
        for (std::size_t i = 0; i < link.size(); ++i)
            CHECK((l1.tiles[link[i].tile].color == Color::white) == (i % 2 == 0));
    }
    // A critical vertex sees four tiles, a regular one two.
    auto crit = std::find_if(l1.verts.begin(), l1.verts.end(), [](const Vertex& v) { return v.degree() == 2; });
    REQUIRE(crit != l1.verts.end());
    CHECK(vertex_link(l1, static_cast<int>(crit - l1.verts.begin())).size() == 4);
}

TEST_CASE("opposite sides") {
    for (const char* name : {"lattes_g", "lattes_h", "lattes_h2"}) {
        auto r = fixtures::rule(name);
        CellComplex l1 = level_one(r);
        CAPTURE(std::string(name));
        CHECK(check_no_opposite_sides(l1) == !opposite_sides_oracle(r, l1));
    }
    CHECK(check_no_opposite_sides(level_one(fixtures::rule("lattes_g"))));
    CHECK_FALSE(check_no_opposite_sides(level_one(fixtures::rule("lattes_h"))));
    for (const auto& p : std::filesystem::directory_iterator(fixtures::rule_path("lattes_h_alt_orders")))
        CHECK_FALSE(check_no_opposite_sides(level_one(load_rule(p.path().string()))));
    // The single white tile of an identity rule touches every 0-edge.
    CHECK_FALSE(check_no_opposite_sides(level_one(fixtures::identity_rule(3))));
    CHECK_FALSE(check_no_opposite_sides(level_one(fixtures::identity_rule(4))));
}

TEST_CASE("identity rule") {
    auto r = fixtures::identity_rule(4);
    CHECK(validate(r).ok());
    auto lv = iterate(r, 3);
    for (const auto& cx : lv) {
        CHECK(cx.tiles.size() == 2);
        CHECK(cx.verts.size() == 4);
    }
}

TEST_CASE("malformed rules are rejected") {
    CHECK_THROWS_AS(parse_rule_text("{ not json"), ParseError);
    CHECK_THROWS_AS(load_rule(fixtures::rule_path("no_such_rule.json")), IoError);

    auto doc = fixtures::rule("lattes_h");
    nlohmann::json j = rule_to_json(doc);
    CHECK(parse_rule(j).tiles.size() == 4);

    nlohmann::json missing = j;
    missing["edges"].erase(missing["edges"].begin() + 3);
    CHECK_THROWS_AS(parse_rule(missing), ParseError);

    // W1 takes W0's type-0 edge and a black tile takes W1's: one edge then
    // bounds two white tiles and another two black ones.
    nlohmann::json parity = j;
    std::string w0e, w1e;
    for (auto& t : parity["tiles"]) {
        if (t["id"] == "W0") w0e = t["boundary"][0]["edge"];
        if (t["id"] == "W1") w1e = t["boundary"][0]["edge"];
    }
    for (auto& t : parity["tiles"]) {
        if (t["id"] == "W1") t["boundary"][0]["edge"] = w0e;
        if (t["color"] == "black" && t["boundary"][0]["edge"] == w0e) t["boundary"][0]["edge"] = w1e;
    }
    try {
        parse_rule(parity);
        FAIL("parity error not detected");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("color parity") != std::string::npos);
    }
}

TEST_CASE("gluings that do not form a sphere") {
    ValidationReport torus = validate(parse_rule(fixtures::gluing_rule_json(5)));
    CHECK(torus.chi == 0);
    CHECK_FALSE(torus.ok());
    ValidationReport split = validate(parse_rule(fixtures::gluing_rule_json(0)));
    CHECK(split.chi == 4);
    CHECK_FALSE(split.ok());
    CHECK(validate(parse_rule(fixtures::gluing_rule_json(1))).ok());
}

TEST_CASE("relabelling p0") {
    auto r = fixtures::rule("lattes_g");
    for (int s = 0; s < r.k; ++s) {
        auto q = with_p0(r, s);
        CHECK(validate(q).ok());
        CHECK(q.post[0] == r.post[s]);
        CHECK(post_index(r, r.post[s]) == s);
        CHECK(post_index(r, "p" + std::to_string(s)) == s);
    }
    CHECK_THROWS_AS(post_index(r, "nowhere"), ParseError);
}
