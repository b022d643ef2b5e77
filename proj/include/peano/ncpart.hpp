#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace peano {

// Indices live on the cycle [0, 2n). Even indices name white tiles around a
// vertex, odd indices black tiles.
using Block = std::vector<int>;

struct NcPartition {
    int ambient = 0;            // 2n
    std::vector<Block> blocks;  // each sorted, sorted by minimum

    bool operator==(const NcPartition&) const = default;
    int block_of(int i) const;  // index into blocks, -1 if absent
};

enum class Side { white, black };

struct Marking {
    Block w;
    Block b;
    bool operator==(const Marking&) const = default;
};

struct CncPartition {
    NcPartition pw;  // even indices
    NcPartition pb;  // odd indices
    std::optional<Marking> mark;

    int n() const { return pw.ambient / 2; }
    const NcPartition& side(Side s) const { return s == Side::white ? pw : pb; }
    NcPartition& side(Side s) { return s == Side::white ? pw : pb; }
    bool operator==(const CncPartition&) const = default;
};

struct MalformedPartition : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Sorts blocks internally and by minimum.
NcPartition make_partition(int ambient, std::vector<Block> blocks);

// Throws MalformedPartition on overlapping blocks, out-of-range indices or
// blocks mixing parities when a parity is expected.
bool is_noncrossing(const std::vector<Block>& blocks, int ambient);
bool is_noncrossing(const NcPartition& p);

// Kreweras complement: even <-> odd. Meet over blocks of the cyclic component
// partitions of the remaining indices.
NcPartition complement(const NcPartition& p);

// Component partition of the opposite parity induced by one block.
NcPartition component_partition(const Block& b, int ambient);

NcPartition meet(const std::vector<NcPartition>& ps);

CncPartition make_cnc(const NcPartition& pw);
CncPartition make_cnc_black(const NcPartition& pb);

// Pairs (white block index, black block index), sorted, one per adjacency.
std::vector<std::pair<int, int>> adjacency_tree(const CncPartition& p);

bool adjacent(const CncPartition& p, const Block& w, const Block& b);

// Full validity: parities, coverage, non-crossing, mutual complement,
// marking adjacency.
bool is_valid_cnc(const CncPartition& p, std::string* why = nullptr);

// Marked passes: an adjacent pair (w, b) corresponds to exactly one even
// index i with i in w, i+1 in b. That index is the incoming edge of the pass.
int pass_of_pair(const CncPartition& p, const Block& w, const Block& b);
Marking pair_of_pass(const CncPartition& p, int i);

// Cyclic successor of i within its block (i itself for singletons).
int next_in_block(const NcPartition& p, int i);
int prev_in_block(const NcPartition& p, int i);

struct MergeResult {
    CncPartition cnc;
    Block common;  // opposite block adjacent to both; split by the merge
    Block split_first;
    Block split_second;
};

// Merges blocks b and b2 on side s using the common adjacent opposite block
// with least minimum. nullopt when no common adjacent block exists.
std::optional<MergeResult> merge(const CncPartition& p, Side s, const Block& b, const Block& b2);

// Same, with an explicit choice of the common adjacent block.
std::optional<MergeResult> merge_via(const CncPartition& p, Side s, const Block& b, const Block& b2,
                                     const Block& common);

// All non-crossing partitions of {0..n-1}, in lexicographic order of their
// restricted growth strings.
std::vector<std::vector<Block>> enumerate_nc(int n, int cap = 12);

// The partition of [n] spread to the even indices of [2n].
NcPartition spread_even(const std::vector<Block>& part, int n);

std::string to_string(const Block& b);
std::string to_string(const NcPartition& p);
std::string to_string(const CncPartition& p);

}  // namespace peano
