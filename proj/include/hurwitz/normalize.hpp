#pragma once

#include <string_view>
#include <vector>

#include "hurwitz/moves.hpp"
#include "hurwitz/system.hpp"

namespace hurwitz {

/// fast: macro moves (pair retyping) are used directly.
/// validate: every macro step is replaced by an elementary-move path found by
/// bidirectional search, so certificates contain braids and pushes only.
enum class Mode { Fast, Validate };

std::string_view to_string(Mode m);
Mode parse_mode(std::string_view text);

struct NormalizeOptions {
    Mode mode = Mode::Fast;
    std::size_t search_budget = kDefaultSearchBudget;
};

/**
 * Makes the transpositions in `range` generate S_d by repeatedly sorting into
 * standard position, rewriting a block with w_m >= 2 #A_m into its normal
 * form ending in an equal pair, and retyping that pair to link the block to
 * another one. Needs range.size() >= 2d and full monodromy. Entries outside
 * the range are never touched.
 */
Rewrite repair_branching_monodromy(const HurwitzSystem& sys, IndexRange range, const NormalizeOptions& opts = {});

struct TrivializeResult {
    HurwitzSystem system;
    MoveWord word;
    /// |lambda| + |mu| of the handle images before each push and at the end.
    std::vector<int> metric_trace;
};

/// Drives handle i to (identity, identity) with pushes of the last puncture,
/// each push lowering |lambda| + |mu| by exactly one.
TrivializeResult trivialize_handle(const HurwitzSystem& sys, int i, const NormalizeOptions& opts = {});

/// trivialize_handle for handle 1.
TrivializeResult b1_trivialize(const HurwitzSystem& sys, const NormalizeOptions& opts = {});

/// Canonical system for (d, h, w): handles trivial and transpositions
/// (1 2) x (w - 2(d-2)), then (1 3),(1 3), ..., (1 d),(1 d).
HurwitzSystem canonical_system(int d, int h, int w);

/// Trivializes handles h, ..., 1 and then braids to canonical_system().
/// Requires a valid full-monodromy system with w >= 2d.
TrivializeResult canonicalize(const HurwitzSystem& sys, const NormalizeOptions& opts = {});

}  // namespace hurwitz
