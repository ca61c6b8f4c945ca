#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hurwitz/catalog.hpp"
#include "hurwitz/system.hpp"

namespace hurwitz {

enum class MoveKind : std::uint8_t {
    Braid,   // B<j>, elementary
    Push,    // Pa<i> / Pb<i>, elementary
    Retype,  // R<j>:x-y>u-v, replaces the equal pair (x y),(x y) at j, j+1 by (u v),(u v)
    Cancel,  // C<j>:x-y, deletes the equal pair (x y),(x y) at j, j+1
    Insert,  // I<j>:x-y, inserts (x y),(x y) at j, j+1
};

/**
 * One named transformation. Elementary moves (braids and pushes) are induced
 * by catalog automorphisms; the macro moves Retype/Cancel/Insert act on the
 * tuple directly and are only used in fast mode.
 *
 * Token forms: "B3", "B3'", "Pa1", "Pb2'", "R3:1-2>2-3", "C3:1-2", "I3:1-2".
 */
struct Move {
    MoveKind kind = MoveKind::Braid;
    int index = 1;
    Side side = Side::A;
    bool inverse = false;
    // Transposition points for macro moves: (p1 p2) old / inserted / cancelled,
    // (q1 q2) the retype target.
    int p1 = 0, p2 = 0, q1 = 0, q2 = 0;

    static Move braid(int j, bool inverse = false) { return {MoveKind::Braid, j, Side::A, inverse}; }
    static Move push(int i, Side side, bool inverse = false) { return {MoveKind::Push, i, side, inverse}; }

    bool elementary() const { return kind == MoveKind::Braid || kind == MoveKind::Push; }
    Move inverted() const;

    std::string token() const;
    static Move parse(std::string_view token);

    friend bool operator==(const Move&, const Move&) = default;
};

class MoveWord {
public:
    MoveWord() = default;
    explicit MoveWord(std::vector<Move> moves) : moves_(std::move(moves)) {}

    const std::vector<Move>& moves() const { return moves_; }
    std::size_t size() const { return moves_.size(); }
    bool empty() const { return moves_.empty(); }

    void push_back(const Move& m) { moves_.push_back(m); }
    MoveWord& operator+=(const MoveWord& rhs);

    /// Moves in reverse order, each inverted.
    MoveWord inverse() const;

    /// Whitespace-separated tokens; empty string for the empty word.
    std::string to_string() const;
    static MoveWord parse(std::string_view text);

    std::size_t elementary_count() const;

    friend bool operator==(const MoveWord&, const MoveWord&) = default;

private:
    std::vector<Move> moves_;
};

/// Shared catalog for (h, w), built once per process.
const MoveCatalog& catalog_for(int h, int w);

/// Braid move on positions j, j+1. Forward:
/// (t_j, t_{j+1}) <- (t_{j+1}, t_{j+1} t_j t_{j+1}); backward is its inverse.
HurwitzSystem braid(const HurwitzSystem& sys, int j, bool inverse = false);

/// Push of the last puncture around handle i (side a modifies b_i, side b
/// modifies a_i), by precomposition with the catalog automorphism.
HurwitzSystem handle_push(const HurwitzSystem& sys, int i, Side side, bool inverse = false);

/// Fast application used by searches. Macro moves check their preconditions.
HurwitzSystem apply_move(const HurwitzSystem& sys, const Move& m);
HurwitzSystem apply_word(HurwitzSystem sys, const MoveWord& word);

/// Independent replay: elementary moves are applied by precomposing every
/// generator image with the full catalog automorphism, never through the
/// braid formula or the partial push evaluation used by apply_move().
HurwitzSystem replay(HurwitzSystem sys, const MoveWord& word);

struct Rewrite {
    HurwitzSystem system;
    MoveWord word;
};

/// Stable sort of the transpositions in `range` into contiguous blocks of the
/// branching partition, ordered by smallest block element, using forward
/// braids on adjacent disjoint pairs only.
Rewrite sort_standard_position(const HurwitzSystem& sys, IndexRange range);

/// L = #A + s - 2, where s is the number of cycles of g on A.
int prop_split_length(std::span<const int> block, const Permutation& g);

/**
 * Normal form for a block A: w_m transpositions of S_A with product g that
 * generate S_A and end with (tau, tau). Layout: one chain per cycle of g on
 * A (cycles ordered by length, descending), each connector between the first
 * points of consecutive cycles twice, then tau repeated w_m - L times.
 */
std::vector<Permutation> prop_split_normal_form(std::span<const int> block, const Permutation& g, int w_m,
                                                const Permutation& tau);

inline constexpr std::size_t kDefaultSearchBudget = 5'000'000;

/// Braid word supported in `range` taking the range tuple of sys to `target`,
/// by bidirectional BFS over the braid orbit. Throws OrbitMismatch if the
/// orbit is exhausted without a meeting, BudgetExceeded if `budget` states
/// are visited first.
MoveWord realize_block_rewrite(const HurwitzSystem& sys, IndexRange range, std::span<const Permutation> target,
                               std::size_t budget = kDefaultSearchBudget);

/// Replaces the equal pair at j, j+1 by (new_t, new_t). Requires the residual
/// monodromy (positions j, j+1 removed) to be all of S_d.
HurwitzSystem pair_retype(const HurwitzSystem& sys, int j, const Permutation& new_t);
HurwitzSystem pair_cancel(const HurwitzSystem& sys, int j);
HurwitzSystem pair_insert(const HurwitzSystem& sys, int j, const Permutation& t);

Move retype_move(const HurwitzSystem& sys, int j, const Permutation& new_t);
Move cancel_move(const HurwitzSystem& sys, int j);
Move insert_move(int j, const Permutation& t);

}  // namespace hurwitz
