#pragma once

#include <string>

#include "peano/rule.hpp"

namespace fixtures {

inline std::string rule_path(const std::string& name) { return std::string(PEANO_RULES_DIR) + "/" + name; }

inline peano::SubdivisionRule rule(const std::string& name) { return peano::load_rule(rule_path(name + ".json")); }

// Degree-one rule whose only white tile is the white 0-tile: C is the
// boundary itself, M is the identity and every level equals level 0.
inline nlohmann::json identity_rule_json(int k) {
    using nlohmann::json;
    json w = json::array(), b = json::array(), edges = json::array(), curve = json::array();
    for (int j = 0; j < k; ++j) {
        std::string e = "e" + std::to_string(j);
        edges.push_back({{"id", e}, {"type", j}});
        w.push_back({{"edge", e}, {"type", j}, {"orient", "+"}});
        curve.push_back(json::array({{{"edge", e}, {"dir", "+"}}}));
    }
    for (int j = 0; j < k; ++j) {
        int t = (k - j) % k;
        b.push_back({{"edge", "e" + std::to_string(t)}, {"type", t}, {"orient", "-"}});
    }
    json post = json::array();
    for (int j = 0; j < k; ++j) post.push_back("p" + std::to_string(j));
    return {{"name", "identity_k" + std::to_string(k)},
            {"degree", 1},
            {"post", post},
            {"tiles", json::array({{{"id", "W"}, {"color", "white"}, {"boundary", w}},
                                   {{"id", "B"}, {"color", "black"}, {"boundary", b}}})},
            {"edges", edges},
            {"curve", curve}};
}

inline peano::SubdivisionRule identity_rule(int k) { return peano::parse_rule(identity_rule_json(k)); }

// Degree-two square gluings without a curve. Bit t of `mask` swaps which
// white tile each black tile meets along type t; mask 5 closes up into a
// torus, mask 0 into two separate spheres.
inline nlohmann::json gluing_rule_json(int mask) {
    using nlohmann::json;
    json edges = json::array(), tiles = json::array(), post = json::array(), pv = json::array();
    for (int t = 0; t < 8; ++t) edges.push_back({{"id", "e" + std::to_string(t)}, {"type", t / 2}});
    for (int w = 0; w < 2; ++w) {
        json b = json::array();
        for (int t = 0; t < 4; ++t) b.push_back({{"edge", "e" + std::to_string(2 * t + w)}, {"type", t}, {"orient", "+"}});
        tiles.push_back({{"id", "W" + std::to_string(w)}, {"color", "white"}, {"boundary", b}});
    }
    for (int bl = 0; bl < 2; ++bl) {
        json b = json::array();
        for (int t : {0, 3, 2, 1}) {
            int w = ((mask >> t) & 1) ^ bl;
            b.push_back({{"edge", "e" + std::to_string(2 * t + w)}, {"type", t}, {"orient", "-"}});
        }
        tiles.push_back({{"id", "B" + std::to_string(bl)}, {"color", "black"}, {"boundary", b}});
    }
    for (int j = 0; j < 4; ++j) {
        post.push_back("p" + std::to_string(j));
        pv.push_back({{"tile", "W0"}, {"corner", j}});
    }
    return {{"name", "gluing"}, {"degree", 2}, {"post", post}, {"tiles", tiles}, {"edges", edges}, {"post_vertices", pv}};
}

}  // namespace fixtures
