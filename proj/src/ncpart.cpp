#include "peano/ncpart.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace peano {

int NcPartition::block_of(int i) const {
    for (std::size_t k = 0; k < blocks.size(); ++k)
        if (std::binary_search(blocks[k].begin(), blocks[k].end(), i)) return static_cast<int>(k);
    return -1;
}

NcPartition make_partition(int ambient, std::vector<Block> blocks) {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::erase_if(blocks, [](const Block& b) { return b.empty(); });
    std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) { return a.front() < b.front(); });
    return NcPartition{ambient, std::move(blocks)};
}

bool is_noncrossing(const std::vector<Block>& blocks, int ambient) {
    std::vector<int> label(ambient, -1);
    std::vector<int> first(blocks.size()), last(blocks.size());
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        if (blocks[k].empty()) throw MalformedPartition("empty block");
        for (int i : blocks[k]) {
            if (i < 0 || i >= ambient) throw MalformedPartition("index out of range: " + std::to_string(i));
            if (label[i] != -1) throw MalformedPartition("index in two blocks: " + std::to_string(i));
            label[i] = static_cast<int>(k);
        }
        first[k] = *std::min_element(blocks[k].begin(), blocks[k].end());
        last[k] = *std::max_element(blocks[k].begin(), blocks[k].end());
    }
    // A block may only be resumed when it is the innermost open one.
    std::vector<int> open;
    for (int i = 0; i < ambient; ++i) {
        int k = label[i];
        if (k < 0) continue;
        if (i == first[k]) {
            if (i != last[k]) open.push_back(k);
            continue;
        }
        if (open.empty() || open.back() != k) return false;
        if (i == last[k]) open.pop_back();
    }
    return true;
}

bool is_noncrossing(const NcPartition& p) { return is_noncrossing(p.blocks, p.ambient); }

static int parity_of(const NcPartition& p) {
    if (p.blocks.empty()) throw MalformedPartition("partition without blocks");
    return p.blocks.front().front() & 1;
}

NcPartition component_partition(const Block& b, int ambient) {
    int opp = 1 - (b.front() & 1);
    std::map<int, Block> gaps;
    for (int x = opp; x < ambient; x += 2) {
        int before = static_cast<int>(std::lower_bound(b.begin(), b.end(), x) - b.begin());
        gaps[before % static_cast<int>(b.size())].push_back(x);
    }
    std::vector<Block> blocks;
    for (auto& [_, g] : gaps) blocks.push_back(std::move(g));
    return make_partition(ambient, std::move(blocks));
}

NcPartition meet(const std::vector<NcPartition>& ps) {
    if (ps.empty()) throw std::invalid_argument("meet of no partitions");
    const int ambient = ps.front().ambient;
    std::set<int> ground;
    for (const auto& b : ps.front().blocks) ground.insert(b.begin(), b.end());
    for (const auto& p : ps) {
        std::set<int> g;
        for (const auto& b : p.blocks) g.insert(b.begin(), b.end());
        if (p.ambient != ambient || g != ground) throw std::invalid_argument("meet: ground sets differ");
    }
    std::map<std::vector<int>, Block> cells;
    for (int x : ground) {
        std::vector<int> key;
        key.reserve(ps.size());
        for (const auto& p : ps) key.push_back(p.block_of(x));
        cells[key].push_back(x);
    }
    std::vector<Block> blocks;
    for (auto& [_, c] : cells) blocks.push_back(std::move(c));
    return make_partition(ambient, std::move(blocks));
}

NcPartition complement(const NcPartition& p) {
    parity_of(p);
    std::vector<NcPartition> parts;
    parts.reserve(p.blocks.size());
    for (const auto& b : p.blocks) parts.push_back(component_partition(b, p.ambient));
    return meet(parts);
}

CncPartition make_cnc(const NcPartition& pw) { return CncPartition{pw, complement(pw), std::nullopt}; }

CncPartition make_cnc_black(const NcPartition& pb) { return CncPartition{complement(pb), pb, std::nullopt}; }

std::vector<std::pair<int, int>> adjacency_tree(const CncPartition& p) {
    const int a = p.pw.ambient;
    std::set<std::pair<int, int>> adj;
    for (int i = 0; i < a; ++i) {
        int j = (i + 1) % a;
        int e = (i % 2 == 0) ? i : j;
        int o = (i % 2 == 0) ? j : i;
        adj.insert({p.pw.block_of(e), p.pb.block_of(o)});
    }
    return {adj.begin(), adj.end()};
}

bool adjacent(const CncPartition& p, const Block& w, const Block& b) {
    const int a = p.pw.ambient;
    for (int i : w) {
        if (std::binary_search(b.begin(), b.end(), (i + 1) % a)) return true;
        if (std::binary_search(b.begin(), b.end(), (i + a - 1) % a)) return true;
    }
    return false;
}

bool is_valid_cnc(const CncPartition& p, std::string* why) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    const int a = p.pw.ambient;
    if (a <= 0 || a % 2 != 0 || p.pb.ambient != a) return fail("bad ambient size");
    std::vector<Block> all;
    for (const auto& b : p.pw.blocks) {
        for (int i : b)
            if (i % 2 != 0) return fail("odd index in white partition");
        all.push_back(b);
    }
    for (const auto& b : p.pb.blocks) {
        for (int i : b)
            if (i % 2 != 1) return fail("even index in black partition");
        all.push_back(b);
    }
    std::size_t total = 0;
    for (const auto& b : all) total += b.size();
    if (total != static_cast<std::size_t>(a)) return fail("blocks do not cover the link");
    try {
        if (!is_noncrossing(all, a)) return fail("union is crossing");
    } catch (const MalformedPartition& e) {
        return fail(e.what());
    }
    if (complement(p.pw) != p.pb) return fail("black partition is not the complement of white");
    if (complement(p.pb) != p.pw) return fail("white partition is not the complement of black");
    if (p.mark) {
        if (p.pw.block_of(p.mark->w.front()) < 0 ||
            p.pw.blocks[p.pw.block_of(p.mark->w.front())] != p.mark->w)
            return fail("marked white block missing");
        if (p.pb.block_of(p.mark->b.front()) < 0 ||
            p.pb.blocks[p.pb.block_of(p.mark->b.front())] != p.mark->b)
            return fail("marked black block missing");
        if (!adjacent(p, p.mark->w, p.mark->b)) return fail("marked blocks not adjacent");
    }
    return true;
}

int pass_of_pair(const CncPartition& p, const Block& w, const Block& b) {
    const int a = p.pw.ambient;
    for (int i : w)
        if (std::binary_search(b.begin(), b.end(), (i + 1) % a)) return i;
    return -1;
}

Marking pair_of_pass(const CncPartition& p, int i) {
    const int a = p.pw.ambient;
    return Marking{p.pw.blocks.at(p.pw.block_of(i)), p.pb.blocks.at(p.pb.block_of((i + 1) % a))};
}

int next_in_block(const NcPartition& p, int i) {
    const Block& b = p.blocks.at(p.block_of(i));
    auto it = std::upper_bound(b.begin(), b.end(), i);
    return it == b.end() ? b.front() : *it;
}

int prev_in_block(const NcPartition& p, int i) {
    const Block& b = p.blocks.at(p.block_of(i));
    auto it = std::lower_bound(b.begin(), b.end(), i);
    return it == b.begin() ? b.back() : *(it - 1);
}

std::optional<MergeResult> merge_via(const CncPartition& p, Side s, const Block& b, const Block& b2,
                                     const Block& common) {
    const NcPartition& same = p.side(s);
    const Side os = s == Side::white ? Side::black : Side::white;
    const NcPartition& opp = p.side(os);
    const int a = same.ambient;
    int ib = same.block_of(b.front()), ib2 = same.block_of(b2.front()), ic = opp.block_of(common.front());
    if (ib < 0 || ib2 < 0 || ic < 0 || ib == ib2) return std::nullopt;
    if (same.blocks[ib] != b || same.blocks[ib2] != b2 || opp.blocks[ic] != common) return std::nullopt;
    const bool w_side = s == Side::white;
    if (!(w_side ? adjacent(p, b, common) : adjacent(p, common, b))) return std::nullopt;
    if (!(w_side ? adjacent(p, b2, common) : adjacent(p, common, b2))) return std::nullopt;

    // b2 sits in the cyclic gap (bj, bj1) of b.
    auto it = std::lower_bound(b.begin(), b.end(), b2.front());
    int bj = it == b.begin() ? b.back() : *(it - 1);
    auto off = [&](int x) { return ((x - bj) % a + a) % a; };
    int first_off = a, last_off = 0;
    for (int x : b2) {
        first_off = std::min(first_off, off(x));
        last_off = std::max(last_off, off(x));
    }
    Block c1, c2;
    for (int x : common) {
        int o = off(x);
        if (o < first_off)
            c1.push_back(x);
        else if (o > last_off)
            c2.push_back(x);
        else
            return std::nullopt;  // common block threads b2: impossible for a cnc
    }

    MergeResult r;
    r.common = common;
    r.split_first = c1;
    r.split_second = c2;
    std::vector<Block> ns, no;
    for (int k = 0; k < static_cast<int>(same.blocks.size()); ++k)
        if (k != ib && k != ib2) ns.push_back(same.blocks[k]);
    Block u = b;
    u.insert(u.end(), b2.begin(), b2.end());
    ns.push_back(u);
    for (int k = 0; k < static_cast<int>(opp.blocks.size()); ++k)
        if (k != ic) no.push_back(opp.blocks[k]);
    no.push_back(c1);
    no.push_back(c2);
    r.cnc.side(s) = make_partition(a, ns);
    r.cnc.side(os) = make_partition(a, no);
    if (p.mark) {
        int i = pass_of_pair(p, p.mark->w, p.mark->b);
        r.cnc.mark = pair_of_pass(r.cnc, i);
    }
    return r;
}

std::optional<MergeResult> merge(const CncPartition& p, Side s, const Block& b, const Block& b2) {
    const NcPartition& opp = s == Side::white ? p.pb : p.pw;
    for (const auto& c : opp.blocks) {  // sorted by minimum
        bool both = s == Side::white ? adjacent(p, b, c) && adjacent(p, b2, c) : adjacent(p, c, b) && adjacent(p, c, b2);
        if (both) return merge_via(p, s, b, b2, c);
    }
    return std::nullopt;
}

std::vector<std::vector<Block>> enumerate_nc(int n, int cap) {
    if (n < 0) throw std::invalid_argument("negative size");
    if (n > cap) throw std::length_error("enumeration cap exceeded");
    std::vector<std::vector<Block>> out;
    std::vector<Block> cur;
    auto rec = [&](auto&& self, int x) -> void {
        if (x == n) {
            out.push_back(cur);
            return;
        }
        for (std::size_t k = 0; k <= cur.size(); ++k) {
            if (k < cur.size()) {
                int lb = cur[k].back();
                bool crosses = false;
                for (std::size_t c = 0; c < cur.size() && !crosses; ++c)
                    if (c != k && cur[c].front() < lb && cur[c].back() > lb) crosses = true;
                if (crosses) continue;
                cur[k].push_back(x);
                self(self, x + 1);
                cur[k].pop_back();
            } else {
                cur.push_back({x});
                self(self, x + 1);
                cur.pop_back();
            }
        }
    };
    rec(rec, 0);
    return out;
}

NcPartition spread_even(const std::vector<Block>& part, int n) {
    std::vector<Block> blocks;
    for (const auto& b : part) {
        Block e;
        for (int i : b) e.push_back(2 * i);
        blocks.push_back(e);
    }
    return make_partition(2 * n, blocks);
}

std::string to_string(const Block& b) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < b.size(); ++i) os << (i ? " " : "") << b[i];
    os << '}';
    return os.str();
}

std::string to_string(const NcPartition& p) {
    std::string s;
    for (const auto& b : p.blocks) s += to_string(b);
    return s;
}

std::string to_string(const CncPartition& p) {
    std::string s = "w:" + to_string(p.pw) + " b:" + to_string(p.pb);
    if (p.mark) s += " mark:(" + to_string(p.mark->w) + "," + to_string(p.mark->b) + ")";
    return s;
}

}  // namespace peano
