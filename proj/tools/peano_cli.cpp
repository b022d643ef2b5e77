#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "peano/render.hpp"
#include "peano/spantree.hpp"

namespace fs = std::filesystem;
using namespace peano;

namespace {

enum Exit { ok = 0, failed = 1, io = 2, budget_out = 3 };

struct Config {
    std::string rule;
    int level = 1;
    std::string p0;
    std::string out;
    long long budget = 10'000'000;
    bool all = false;
};

SubdivisionRule load(const Config& c) {
    SubdivisionRule r = load_rule(c.rule);
    if (!c.p0.empty()) r = with_p0(r, post_index(r, c.p0));
    return r;
}

void write_file(const fs::path& p, const std::string& text) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw IoError("cannot write " + p.string());
    f << text;
}

// Prints to stdout, or writes DIR/name when --out is given.
void emit(const Config& c, const std::string& name, const std::string& text) {
    if (c.out.empty()) std::cout << text;
    else write_file(fs::path(c.out) / name, text);
}

int cmd_validate(const Config& c) {
    ValidationReport rep = validate(load(c));
    std::cout << rep.text();
    return rep.ok() ? ok : failed;
}

int cmd_subdivide(const Config& c) {
    SubdivisionRule r = load(c);
    auto lv = iterate(r, c.level);
    bool good = true;
    for (const auto& cx : lv) {
        std::vector<CheckEntry> checks;
        check_complex(cx, checks);
        bool lvl_ok = std::all_of(checks.begin(), checks.end(), [](const CheckEntry& e) { return e.ok; });
        if (cx.level >= 2) lvl_ok = lvl_ok && check_commutes(lv[cx.level - 1], cx);
        good = good && lvl_ok;
        std::cout << "level " << cx.level << ": V=" << cx.verts.size() << " E=" << cx.edges.size()
                  << " T=" << cx.tiles.size() << " chi=" << cx.euler() << (lvl_ok ? " ok" : " FAIL") << "\n";
        for (const auto& e : checks)
            if (!e.ok) std::cout << "  " << e.name << ": " << e.detail << "\n";
    }
    return good ? ok : failed;
}

TreePlan plan_for(const CellComplex& level1) {
    TreePlan plan = construct_plan(level1);
    if (!plan.c1 || !plan.c2) throw ConstructionError("constructed connection fails C1 or C2");
    return plan;
}

int cmd_tree(const Config& c) {
    SubdivisionRule r = load(c);
    CellComplex l1 = level_one(r);
    TreePlan plan = plan_for(l1);
    emit(c, "plan.json", plan_to_json(plan).dump(2) + "\n");
    return ok;
}

int cmd_lengths(const Config& c) {
    SubdivisionRule r = load(c);
    CellComplex l1 = level_one(r);
    TreePlan plan = plan_for(l1);
    LengthSystem ls = length_system(l1, plan.circuit, plan_hash(plan));
    emit(c, "lengths.txt", length_report(ls));
    return ok;
}

int cmd_curve(const Config& c) {
    SubdivisionRule r = load(c);
    CellComplex l1 = level_one(r);
    TreePlan plan = plan_for(l1);
    Lift L = lift_plan(r, plan.conn.at, c.level, plan_hash(plan));
    for (int n = 1; n <= c.level; ++n)
        emit(c, "curve_level" + std::to_string(n) + ".json", curve_json(L, n).dump() + "\n");
    std::cout << lift_summary(L);
    return L.ok() ? ok : failed;
}

int cmd_render(const Config& c) {
    SubdivisionRule r = load(c);
    if (!r.geometry) {
        std::cerr << "render: rule '" << r.name
                  << "' has no geometry; add a \"geometry\" section with a \"chart\" (white and black 0-tile "
                     "corners by type) and per-tile corner lists under \"tiles\"\n";
        return io;
    }
    CellComplex l1 = level_one(r);
    TreePlan plan = plan_for(l1);
    Lift L = lift_plan(r, plan.conn.at, c.level, plan_hash(plan));
    if (c.out.empty()) {
        std::cout << render_svg(r, L, c.level);
    } else {
        for (int n = 1; n <= c.level; ++n) emit(c, "curve_level" + std::to_string(n) + ".svg", render_svg(r, L, n));
    }
    return L.ok() ? ok : failed;
}

int cmd_search(const Config& c) {
    SubdivisionRule r = load(c);
    CellComplex l1 = level_one(r);
    SearchResult res = search_connections(l1, c.all, c.budget);
    std::cout << "no_opposite_sides=" << (check_no_opposite_sides(l1) ? "true" : "false") << "\n"
              << "c1=" << res.c1_count << " c1c2=" << res.c2_count << " nodes=" << res.nodes
              << (res.exhausted ? " budget exhausted" : " complete") << "\n";
    if (!c.out.empty()) {
        nlohmann::json plans = nlohmann::json::array();
        for (const auto& p : res.plans) plans.push_back(plan_to_json(p));
        write_file(fs::path(c.out) / "search.json", plans.dump(2) + "\n");
    }
    return res.exhausted ? budget_out : ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Combinatorial Peano curves from invariant-curve subdivision rules"};
    app.require_subcommand(1);
    Config cfg;
    auto add_common = [&](CLI::App* s, bool level) {
        s->add_option("--rule", cfg.rule, "rule JSON file")->required();
        s->add_option("--p0", cfg.p0, "postcritical point to use as p0 (label or p<j>)");
        s->add_option("--out", cfg.out, "output directory");
        if (level) s->add_option("--level", cfg.level, "highest level")->check(CLI::Range(1, 30));
    };
    struct Sub {
        const char* name;
        const char* help;
        bool level;
        int (*run)(const Config&);
    };
    const Sub subs[] = {
        {"validate", "check a rule and report counts", false, cmd_validate},
        {"subdivide", "iterate the rule and check every level", true, cmd_subdivide},
        {"tree", "construct the level-1 connection", false, cmd_tree},
        {"lengths", "transition matrix, edge lengths and rotation offset", false, cmd_lengths},
        {"curve", "lift the connection and export the approximations", true, cmd_curve},
        {"render", "draw approximations as SVG", true, cmd_render},
        {"search", "enumerate level-1 connections", false, cmd_search},
    };
    int (*chosen)(const Config&) = nullptr;
    for (const auto& s : subs) {
        CLI::App* sc = app.add_subcommand(s.name, s.help);
        add_common(sc, s.level);
        if (std::string(s.name) == "search") {
            sc->add_option("--budget", cfg.budget, "node budget");
            sc->add_flag("--all", cfg.all, "collect every passing connection");
        }
        auto run = s.run;
        sc->callback([&chosen, run] { chosen = run; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? ok : io;
    }
    try {
        return chosen(cfg);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return io;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return io;
    } catch (const ChainMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return io;
    } catch (const std::exception& e) {
        std::cerr << "failed: " << e.what() << "\n";
        return failed;
    }
}
