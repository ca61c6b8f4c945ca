#include "hurwitz/normalize.hpp"

#include <numeric>

#include "hurwitz/errors.hpp"
#include "hurwitz/orbit.hpp"

namespace hurwitz {

std::string_view to_string(Mode m) {
    return m == Mode::Fast ? "fast" : "validate";
}

Mode parse_mode(std::string_view text) {
    if (text == "fast") return Mode::Fast;
    if (text == "validate") return Mode::Validate;
    throw UsageError("unknown mode '" + std::string(text) + "' (expected fast or validate)");
}

namespace {

int handle_metric(const HandlePair& hp) {
    return cycle_type(hp.a).weight() + cycle_type(hp.b).weight();
}

void require_full(const HurwitzSystem& sys) {
    if (const auto rep = validate(sys); !rep.ok) throw PreconditionError("invalid system: " + rep.first_violation);
    if (!is_full_monodromy(sys)) throw PreconditionError("monodromy is not all of S_d");
}

/// Applies `target` to `out` by a macro step or, in validate mode, by an
/// elementary path found by search.
void macro_or_path(Rewrite& out, const HurwitzSystem& target, const Move& macro, const NormalizeOptions& opts) {
    if (opts.mode == Mode::Fast) {
        out.system = target;
        out.word.push_back(macro);
        return;
    }
    const ConnectResult res = connect(out.system, target, MoveSetKind::Full, opts.search_budget);
    if (res.status == ConnectResult::Status::Inconclusive) {
        throw BudgetExceeded("validate mode: no elementary path for " + macro.token() + " within budget",
                             static_cast<double>(opts.search_budget));
    }
    if (res.status == ConnectResult::Status::Disconnected) {
        throw OrbitMismatch("validate mode: macro " + macro.token() + " leaves the elementary-move orbit");
    }
    out.system = target;
    out.word += res.word;
}

void apply_braids(Rewrite& out, const MoveWord& w) {
    out.system = apply_word(out.system, w);
    out.word += w;
}

}  // namespace

Rewrite repair_branching_monodromy(const HurwitzSystem& sys, IndexRange range, const NormalizeOptions& opts) {
    const int d = sys.degree();
    if (range.size() < 2 * d) {
        throw PreconditionError("range holds " + std::to_string(range.size()) + " branch points; at least 2d = " +
                                std::to_string(2 * d) + " are needed");
    }
    require_full(sys);

    Rewrite out{sys, {}};
    while (true) {
        const BlockPartition blocks = branching_blocks(out.system, range);
        if (blocks.is_single_block()) return out;

        const Rewrite sorted = sort_standard_position(out.system, range);
        out.system = sorted.system;
        out.word += sorted.word;

        // Windows of the sorted blocks.
        std::vector<int> count(blocks.size(), 0);
        for (int j = range.first; j <= range.last; ++j) ++count[blocks.block_of(out.system.t(j).transposed_points().first)];
        std::size_t m = blocks.size();
        int start = range.first;
        for (std::size_t b = 0, pos = range.first; b < blocks.size(); pos += count[b], ++b) {
            if (count[b] >= 2 * static_cast<int>(blocks.blocks[b].size())) {
                m = b;
                start = static_cast<int>(pos);
                break;
            }
        }
        if (m == blocks.size()) throw std::logic_error("no block with w_m >= 2 #A_m although range >= 2d");

        const auto& block = blocks.blocks[m];
        const IndexRange window{start, start + count[m] - 1};
        const std::vector<Permutation> current(out.system.transpositions().begin() + (window.first - 1),
                                               out.system.transpositions().begin() + window.last);
        const Permutation tau = Permutation::transposition(d, block[0], block[1]);
        const auto target = prop_split_normal_form(block, product(current, d), count[m], tau);
        apply_braids(out, realize_block_rewrite(out.system, window, target, opts.search_budget));

        // Link the block to the first other block through the final equal pair.
        const std::size_t other = m == 0 ? 1 : 0;
        const Permutation link = Permutation::transposition(d, block.front(), blocks.blocks[other].front());
        const int j = window.last - 1;
        const Move macro = retype_move(out.system, j, link);
        macro_or_path(out, pair_retype(out.system, j, link), macro, opts);
    }
}

TrivializeResult trivialize_handle(const HurwitzSystem& sys, int i, const NormalizeOptions& opts) {
    if (sys.h() < 1 || i < 1 || i > sys.h()) throw UsageError("handle index outside 1..h");
    const int d = sys.degree();
    const int w = sys.w();
    if (w < 2 * d) throw PreconditionError("w >= 2d is required");
    require_full(sys);

    Rewrite cur{sys, {}};
    TrivializeResult res{sys, {}, {handle_metric(sys.handle(i))}};
    std::vector<int> all_points(d);
    std::iota(all_points.begin(), all_points.end(), 1);
    const auto transpositions = all_transpositions(d);

    while (res.metric_trace.back() > 0) {
        const int before = res.metric_trace.back();
        if (!branching_blocks(cur.system, IndexRange::all(w)).is_single_block()) {
            const Rewrite rep = repair_branching_monodromy(cur.system, IndexRange::all(w), opts);
            cur.system = rep.system;
            cur.word += rep.word;
        }
        const HandlePair& hp = cur.system.handle(i);
        const Side side = cycle_type(hp.a).weight() > 0 ? Side::B : Side::A;

        // The push changes one handle image by a conjugate of t_w determined
        // by the handles alone, so candidates for t_w can be simulated.
        const Permutation* chosen = nullptr;
        for (const auto& t : transpositions) {
            auto ts = cur.system.transpositions();
            ts.back() = t;
            const HurwitzSystem trial = handle_push(cur.system.with_transpositions(ts), i, side);
            if (handle_metric(trial.handle(i)) == before - 1) {
                chosen = &t;
                break;
            }
        }
        if (!chosen) throw std::logic_error("no transposition lowers the handle metric");

        // Stage (t, t) at the end by braids; the normal form of the whole
        // tuple ending in that pair is in the same braid orbit.
        const auto target = prop_split_normal_form(all_points, product(cur.system.transpositions(), d), w, *chosen);
        apply_braids(cur, realize_block_rewrite(cur.system, IndexRange::all(w), target, opts.search_budget));
        cur.system = handle_push(cur.system, i, side);
        cur.word.push_back(Move::push(i, side));

        const int after = handle_metric(cur.system.handle(i));
        if (after != before - 1) {
            throw OrbitMismatch("push did not lower |lambda| + |mu| by one (" + std::to_string(before) + " -> " +
                                std::to_string(after) + ")");
        }
        res.metric_trace.push_back(after);
    }
    res.system = cur.system;
    res.word = cur.word;
    return res;
}

TrivializeResult b1_trivialize(const HurwitzSystem& sys, const NormalizeOptions& opts) {
    return trivialize_handle(sys, 1, opts);
}

HurwitzSystem canonical_system(int d, int h, int w) {
    if (d < 1 || h < 0 || w < 0 || w % 2 != 0) throw UsageError("canonical form needs d >= 1, h >= 0 and even w");
    std::vector<HandlePair> hs(h, HandlePair{Permutation(d), Permutation(d)});
    if (d == 1) {
        if (w != 0) throw PreconditionError("S_1 has no transpositions");
        return HurwitzSystem(d, std::move(hs), {});
    }
    if (w < 2 * (d - 1)) throw PreconditionError("canonical form needs w >= 2(d-1)");
    std::vector<Permutation> ts(w - 2 * (d - 2), Permutation::transposition(d, 1, 2));
    for (int k = 3; k <= d; ++k) {
        ts.push_back(Permutation::transposition(d, 1, k));
        ts.push_back(Permutation::transposition(d, 1, k));
    }
    return HurwitzSystem(d, std::move(hs), std::move(ts));
}

TrivializeResult canonicalize(const HurwitzSystem& sys, const NormalizeOptions& opts) {
    const int d = sys.degree();
    if (sys.w() < 2 * d) throw PreconditionError("canonicalize needs w >= 2d");
    require_full(sys);

    TrivializeResult res{sys, {}, {}};
    for (int i = sys.h(); i >= 1; --i) {
        TrivializeResult step = trivialize_handle(res.system, i, opts);
        res.system = step.system;
        res.word += step.word;
        res.metric_trace.insert(res.metric_trace.end(), step.metric_trace.begin(), step.metric_trace.end());
    }
    const HurwitzSystem canon = canonical_system(d, sys.h(), sys.w());
    const MoveWord tail = realize_block_rewrite(res.system, IndexRange::all(sys.w()), canon.transpositions(), opts.search_budget);
    res.system = apply_word(res.system, tail);
    res.word += tail;
    if (res.system != canon) throw OrbitMismatch("canonicalize ended away from the canonical system");
    return res;
}

}  // namespace hurwitz
