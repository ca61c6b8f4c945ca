#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hurwitz/moves.hpp"
#include "hurwitz/system.hpp"

namespace hurwitz {

enum class MoveSetKind { Braid, Full };

std::string_view to_string(MoveSetKind k);
MoveSetKind parse_move_set(std::string_view text);

/// Elementary moves of the selected set for (h, w), each followed by its
/// inverse: B1 B1' ... B_{w-1}', then (Full only) Pa1 Pa1' Pb1 Pb1' ...
std::vector<Move> move_set(int h, int w, MoveSetKind kind);

/// Named system filters: "all", "full-monodromy", "transitive",
/// "intransitive", or "group=<p1>;<p2>;..." (monodromy equal to the group
/// generated by the listed one-line permutations).
struct FilterSpec {
    std::string name = "all";
    SystemFilter predicate;  // empty for "all"

    static FilterSpec parse(std::string_view text, int degree);
};

struct BfsOptions {
    std::size_t budget = 50'000'000;  // maximum number of states
    int threads = 1;
};

/**
 * One BFS orbit with its predecessor log. Nodes are numbered level by level;
 * within a level they are sorted by packed key, and each node's parent is
 * the first discoverer in (parent id, move order). The content is therefore
 * independent of the number of worker threads.
 */
struct Orbit {
    int d = 0, h = 0, w = 0;
    std::vector<Move> moves;              // the move set, indexed by move_index
    std::vector<std::string> keys;        // packed keys, node order
    std::vector<std::int64_t> parent;     // -1 for the seed
    std::vector<std::int32_t> move_index; // move taking parent to node; -1 for the seed
    bool exhaustive = true;

    std::size_t size() const { return keys.size(); }
    HurwitzSystem system(std::size_t node) const;
    /// Move word taking the seed to `node`.
    MoveWord path_to(std::size_t node) const;
};

Orbit orbit_bfs(const HurwitzSystem& seed, MoveSetKind kind, const BfsOptions& opts = {});

struct OrbitRecord {
    std::string rep;  // lexicographically least system line
    std::size_t size = 0;
    bool full_monodromy = false;
    int genus = 0;
    std::string blocks;  // branching blocks of the representative
    std::vector<std::string> samples;
};

struct CensusParams {
    int d = 2, h = 1, w = 4;
    MoveSetKind moves = MoveSetKind::Full;
    std::string filter = "all";
    std::string mode = "fast";
    std::uint64_t seed = 0;
    std::size_t budget = 50'000'000;
};

struct OrbitCensus {
    CensusParams params;
    std::string catalog_hash;
    std::size_t total = 0;  // filtered systems enumerated
    std::vector<OrbitRecord> orbits;  // sorted by representative
    std::vector<Orbit> logs;          // same order as orbits, when requested

    std::size_t count_full_monodromy() const;
    /// One JSON object per orbit, newline-terminated.
    std::string to_jsonl() const;
};

inline constexpr std::size_t kSamplesPerOrbit = 3;

/// Partition of the filtered systems of (d, h, w) into move orbits.
/// Throws BudgetExceeded when the enumeration guard or the state budget is hit.
OrbitCensus census(const CensusParams& params, const SystemFilter& filter, int threads = 1, bool keep_logs = false);

struct ConnectResult {
    enum class Status { Connected, Disconnected, Inconclusive };
    Status status = Status::Inconclusive;
    MoveWord word;
    std::size_t explored = 0;
};

/// Bidirectional BFS between two systems of equal (d, h, w).
ConnectResult connect(const HurwitzSystem& source, const HurwitzSystem& target, MoveSetKind kind,
                      std::size_t budget = 10'000'000);

/**
 * Binary predecessor log, little-endian:
 *   "HZPL" u32 version=1, u32 d, u32 h, u32 w, u32 orbit_count
 *   per orbit: u64 node_count, then per node
 *     i64 parent, u8 token_length, token bytes (empty for the seed),
 *     d (w + 2h) key bytes (0-based images of t_1..t_w, a_1, b_1, ...).
 */
void write_predecessor_log(std::ostream& out, const std::vector<Orbit>& orbits);
std::vector<Orbit> read_predecessor_log(std::istream& in);

}  // namespace hurwitz
