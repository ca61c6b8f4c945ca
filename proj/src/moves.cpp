#include "hurwitz/moves.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <unordered_map>

#include "hurwitz/errors.hpp"

namespace hurwitz {

// ---------------------------------------------------------------------------
// Move tokens

namespace {

std::string pair_text(int x, int y) {
    return std::to_string(x) + "-" + std::to_string(y);
}

int read_int(std::string_view s, std::size_t& pos, std::size_t base) {
    int v = 0;
    const auto* first = s.data() + pos;
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (ec != std::errc() || ptr == first) throw ParseError("expected integer in move token", base + pos);
    pos += static_cast<std::size_t>(ptr - first);
    return v;
}

void read_char(std::string_view s, std::size_t& pos, char c, std::size_t base) {
    if (pos >= s.size() || s[pos] != c) {
        throw ParseError(std::string("expected '") + c + "' in move token", base + pos);
    }
    ++pos;
}

}  // namespace

Move Move::inverted() const {
    Move m = *this;
    switch (kind) {
        case MoveKind::Braid:
        case MoveKind::Push: m.inverse = !inverse; break;
        case MoveKind::Retype:
            std::swap(m.p1, m.q1);
            std::swap(m.p2, m.q2);
            break;
        case MoveKind::Cancel: m.kind = MoveKind::Insert; break;
        case MoveKind::Insert: m.kind = MoveKind::Cancel; break;
    }
    return m;
}

std::string Move::token() const {
    const std::string j = std::to_string(index);
    switch (kind) {
        case MoveKind::Braid: return "B" + j + (inverse ? "'" : "");
        case MoveKind::Push: return std::string("P") + side_char(side) + j + (inverse ? "'" : "");
        case MoveKind::Retype: return "R" + j + ":" + pair_text(p1, p2) + ">" + pair_text(q1, q2);
        case MoveKind::Cancel: return "C" + j + ":" + pair_text(p1, p2);
        case MoveKind::Insert: return "I" + j + ":" + pair_text(p1, p2);
    }
    return {};
}

Move Move::parse(std::string_view token) {
    Move m;
    std::size_t pos = 0;
    if (token.empty()) throw ParseError("empty move token", 0);
    const char head = token[pos++];
    switch (head) {
        case 'B': m.kind = MoveKind::Braid; break;
        case 'P':
            m.kind = MoveKind::Push;
            if (pos >= token.size() || (token[pos] != 'a' && token[pos] != 'b')) {
                throw ParseError("expected push side a or b", pos);
            }
            m.side = token[pos++] == 'a' ? Side::A : Side::B;
            break;
        case 'R': m.kind = MoveKind::Retype; break;
        case 'C': m.kind = MoveKind::Cancel; break;
        case 'I': m.kind = MoveKind::Insert; break;
        default: throw ParseError("unknown move kind", 0);
    }
    m.index = read_int(token, pos, 0);
    if (m.index < 1) throw ParseError("move index must be positive", 1);
    if (m.elementary()) {
        if (pos < token.size() && token[pos] == '\'') {
            m.inverse = true;
            ++pos;
        }
    } else {
        read_char(token, pos, ':', 0);
        m.p1 = read_int(token, pos, 0);
        read_char(token, pos, '-', 0);
        m.p2 = read_int(token, pos, 0);
        if (m.kind == MoveKind::Retype) {
            read_char(token, pos, '>', 0);
            m.q1 = read_int(token, pos, 0);
            read_char(token, pos, '-', 0);
            m.q2 = read_int(token, pos, 0);
        }
    }
    if (pos != token.size()) throw ParseError("trailing characters in move token", pos);
    return m;
}

MoveWord& MoveWord::operator+=(const MoveWord& rhs) {
    moves_.insert(moves_.end(), rhs.moves_.begin(), rhs.moves_.end());
    return *this;
}

MoveWord MoveWord::inverse() const {
    MoveWord r;
    r.moves_.reserve(moves_.size());
    for (auto it = moves_.rbegin(); it != moves_.rend(); ++it) r.moves_.push_back(it->inverted());
    return r;
}

std::string MoveWord::to_string() const {
    std::string s;
    for (const auto& m : moves_) {
        if (!s.empty()) s += ' ';
        s += m.token();
    }
    return s;
}

MoveWord MoveWord::parse(std::string_view text) {
    MoveWord w;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        const std::size_t start = pos;
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) break;
        try {
            w.push_back(Move::parse(text.substr(start, pos - start)));
        } catch (const ParseError& e) {
            throw ParseError(e.what(), start + e.offset());
        }
    }
    return w;
}

std::size_t MoveWord::elementary_count() const {
    return static_cast<std::size_t>(std::count_if(moves_.begin(), moves_.end(), [](const Move& m) { return m.elementary(); }));
}

// ---------------------------------------------------------------------------
// Catalog access

namespace {

/// Non-trivial generator images of one push map, for partial evaluation.
struct PushEval {
    std::vector<std::pair<Generator, Word>> images;
};

struct Prepared {
    const MoveCatalog* catalog = nullptr;
    // Indexed by 4 (i - 1) + 2 side + inverse.
    std::vector<PushEval> pushes;
};

PushEval prepare(const EndoMap& m) {
    PushEval e;
    for (std::size_t s = 0; s < m.rank(); ++s) {
        const Generator g = m.generator_at(s);
        if (m.image(g) != Word(g)) e.images.emplace_back(g, m.image(g));
    }
    return e;
}

std::mutex& catalog_mutex() {
    static std::mutex mu;
    return mu;
}

const Prepared& prepared_for(int h, int w) {
    thread_local int last_h = -1;
    thread_local int last_w = -1;
    thread_local const Prepared* last = nullptr;
    if (last && last_h == h && last_w == w) return *last;

    static std::map<std::pair<int, int>, std::unique_ptr<Prepared>> cache;
    static std::map<std::pair<int, int>, std::unique_ptr<MoveCatalog>> catalogs;
    std::lock_guard lock(catalog_mutex());
    auto& slot = cache[{h, w}];
    if (!slot) {
        auto& cat = catalogs[{h, w}];
        if (!cat) cat = std::make_unique<MoveCatalog>(MoveCatalog::build(h, w));
        slot = std::make_unique<Prepared>();
        slot->catalog = cat.get();
        if (w >= 1) {
            for (int i = 1; i <= h; ++i) {
                for (Side side : {Side::A, Side::B}) {
                    const EndoMap& m = cat->push(i, side);
                    slot->pushes.push_back(prepare(m));
                    slot->pushes.push_back(prepare(m.inverse()));
                }
            }
        }
    }
    last_h = h;
    last_w = w;
    last = slot.get();
    return *last;
}

const EndoMap& elementary_map(const MoveCatalog& cat, const Move& m, EndoMap& scratch) {
    const EndoMap& fwd = m.kind == MoveKind::Braid ? cat.braid(m.index) : cat.push(m.index, m.side);
    if (!m.inverse) return fwd;
    scratch = fwd.inverse();
    return scratch;
}

Permutation macro_pair(int d, int x, int y) {
    if (x < 1 || y < 1 || x > d || y > d || x == y) throw PreconditionError("macro move names an invalid transposition");
    return Permutation::transposition(d, x, y);
}

}  // namespace

const MoveCatalog& catalog_for(int h, int w) {
    return *prepared_for(h, w).catalog;
}

// ---------------------------------------------------------------------------
// Elementary moves

HurwitzSystem braid(const HurwitzSystem& sys, int j, bool inverse) {
    if (j < 1 || j >= sys.w()) {
        throw UsageError("braid index " + std::to_string(j) + " outside 1.." + std::to_string(sys.w() - 1));
    }
    std::vector<Permutation> ts = sys.transpositions();
    const Permutation x = ts[j - 1];
    const Permutation y = ts[j];
    if (!inverse) {
        ts[j - 1] = y;
        ts[j] = conjugate(x, y);
    } else {
        ts[j - 1] = conjugate(y, x);
        ts[j] = x;
    }
    return sys.with_transpositions(std::move(ts));
}

HurwitzSystem handle_push(const HurwitzSystem& sys, int i, Side side, bool inverse) {
    if (sys.h() == 0) throw Unsupported("handle push needs h >= 1");
    if (i < 1 || i > sys.h()) throw UsageError("handle index " + std::to_string(i) + " outside 1.." + std::to_string(sys.h()));
    if (sys.w() == 0) throw Unsupported("handle push needs a puncture to move");
    const Prepared& prep = prepared_for(sys.h(), sys.w());
    const PushEval& ev = prep.pushes[4 * (i - 1) + 2 * (side == Side::B ? 1 : 0) + (inverse ? 1 : 0)];

    std::vector<HandlePair> hs = sys.handles();
    std::vector<Permutation> ts = sys.transpositions();
    for (const auto& [g, word] : ev.images) {
        Permutation value = sys.evaluate(word);
        switch (g.kind) {
            case GenKind::HandleA: hs[g.index - 1].a = value; break;
            case GenKind::HandleB: hs[g.index - 1].b = value; break;
            case GenKind::Puncture: ts[g.index - 1] = value; break;
        }
    }
    return HurwitzSystem(sys.degree(), std::move(hs), std::move(ts));
}

HurwitzSystem apply_move(const HurwitzSystem& sys, const Move& m) {
    const int d = sys.degree();
    switch (m.kind) {
        case MoveKind::Braid: return braid(sys, m.index, m.inverse);
        case MoveKind::Push: return handle_push(sys, m.index, m.side, m.inverse);
        case MoveKind::Retype: {
            if (m.index >= sys.w() || sys.t(m.index) != macro_pair(d, m.p1, m.p2)) {
                throw PreconditionError("retype " + m.token() + " does not match the system");
            }
            return pair_retype(sys, m.index, macro_pair(d, m.q1, m.q2));
        }
        case MoveKind::Cancel: {
            if (m.index >= sys.w() || sys.t(m.index) != macro_pair(d, m.p1, m.p2)) {
                throw PreconditionError("cancel " + m.token() + " does not match the system");
            }
            return pair_cancel(sys, m.index);
        }
        case MoveKind::Insert: return pair_insert(sys, m.index, macro_pair(d, m.p1, m.p2));
    }
    throw UsageError("unknown move kind");
}

HurwitzSystem apply_word(HurwitzSystem sys, const MoveWord& word) {
    for (const auto& m : word.moves()) sys = apply_move(sys, m);
    return sys;
}

HurwitzSystem replay(HurwitzSystem sys, const MoveWord& word) {
    for (const auto& m : word.moves()) {
        if (!m.elementary()) {
            sys = apply_move(sys, m);
            continue;
        }
        if (m.kind == MoveKind::Push && sys.h() == 0) throw Unsupported("handle push needs h >= 1");
        // A fresh catalog per (h, w): replay must not share state with search.
        const MoveCatalog cat = MoveCatalog::build(sys.h(), sys.w());
        EndoMap scratch;
        sys = sys.precompose(elementary_map(cat, m, scratch));
    }
    return sys;
}

// ---------------------------------------------------------------------------
// Standard position and block normal forms

Rewrite sort_standard_position(const HurwitzSystem& sys, IndexRange range) {
    const BlockPartition blocks = branching_blocks(sys, range);
    Rewrite out{sys, {}};
    auto block_at = [&](int j) { return blocks.block_of(out.system.t(j).transposed_points().first); };
    // Bubble sort: each swap is a forward braid of a disjoint pair, i.e. a
    // pure interchange, and equal keys are never swapped.
    for (int pass_end = range.last; pass_end > range.first; --pass_end) {
        bool swapped = false;
        for (int j = range.first; j < pass_end; ++j) {
            if (block_at(j) > block_at(j + 1)) {
                out.system = braid(out.system, j);
                out.word.push_back(Move::braid(j));
                swapped = true;
            }
        }
        if (!swapped) break;
    }
    return out;
}

namespace {

std::vector<std::vector<int>> cycles_on_block(std::span<const int> block, const Permutation& g) {
    std::vector<bool> in_block(g.degree() + 1, false);
    for (int p : block) {
        if (p < 1 || p > g.degree()) throw UsageError("block point outside 1..d");
        in_block[p] = true;
    }
    std::vector<std::vector<int>> out;
    for (auto& c : cycles(g)) {
        const bool inside = in_block[c.front()];
        for (int p : c) {
            if (in_block[p] != inside) throw PreconditionError("g does not stabilise the block");
        }
        if (inside) out.push_back(std::move(c));
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.size() > y.size(); });
    return out;
}

}  // namespace

int prop_split_length(std::span<const int> block, const Permutation& g) {
    const auto cs = cycles_on_block(block, g);
    return static_cast<int>(block.size() + cs.size()) - 2;
}

std::vector<Permutation> prop_split_normal_form(std::span<const int> block, const Permutation& g, int w_m,
                                                const Permutation& tau) {
    const int d = g.degree();
    const int n = static_cast<int>(block.size());
    if (n < 2) throw PreconditionError("block needs at least two points");
    if (tau.degree() != d || !tau.is_transposition()) throw UsageError("tau must be a transposition of S_d");
    const auto [t1, t2] = tau.transposed_points();
    if (std::find(block.begin(), block.end(), t1) == block.end() || std::find(block.begin(), block.end(), t2) == block.end()) {
        throw PreconditionError("tau does not lie in S_A");
    }
    const auto cs = cycles_on_block(block, g);
    if (w_m < 2 * n) throw PreconditionError("w_m = " + std::to_string(w_m) + " < 2#A = " + std::to_string(2 * n));
    if (sign(g) != (w_m % 2 == 0 ? 1 : -1)) throw PreconditionError("sign of g differs from (-1)^w_m");

    std::vector<Permutation> out;
    out.reserve(w_m);
    for (const auto& c : cs) {
        // Reversed chain (p_{l-1} p_l), ..., (p_1 p_2) multiplies to the cycle
        // p_1 -> p_2 -> ... -> p_l left to right.
        for (std::size_t k = c.size(); k-- > 1;) out.push_back(Permutation::transposition(d, c[k - 1], c[k]));
    }
    for (std::size_t k = 0; k + 1 < cs.size(); ++k) {
        const auto connector = Permutation::transposition(d, cs[k].front(), cs[k + 1].front());
        out.push_back(connector);
        out.push_back(connector);
    }
    const int length = static_cast<int>(out.size());
    if (length != n + static_cast<int>(cs.size()) - 2) throw std::logic_error("normal form length bookkeeping");
    if ((w_m - length) % 2 != 0 || w_m - length < 2) throw std::logic_error("normal form padding must be even and >= 2");
    while (static_cast<int>(out.size()) < w_m) out.push_back(tau);
    return out;
}

// ---------------------------------------------------------------------------
// Braid-orbit search on a window

namespace {

/// A window of transpositions as (x, y) byte pairs with x < y.
using Tuple = std::string;

Tuple encode(std::span<const Permutation> ts) {
    Tuple s;
    s.reserve(2 * ts.size());
    for (const auto& t : ts) {
        if (!t.is_transposition()) throw PreconditionError("window entry " + t.cycle_string() + " is not a transposition");
        const auto [x, y] = t.transposed_points();
        s.push_back(static_cast<char>(x));
        s.push_back(static_cast<char>(y));
    }
    return s;
}

/// Braid on local positions k, k+1 (0-based) of an encoded window.
void braid_encoded(Tuple& s, std::size_t k, bool inverse) {
    auto swap_through = [](char& x, char& y, char u, char v) {
        auto f = [&](char p) { return p == u ? v : p == v ? u : p; };
        char a = f(x), b = f(y);
        if (a > b) std::swap(a, b);
        x = a;
        y = b;
    };
    char* p = s.data() + 2 * k;
    const char x0 = p[0], x1 = p[1], y0 = p[2], y1 = p[3];
    if (!inverse) {
        // (x, y) -> (y, y x y)
        p[0] = y0;
        p[1] = y1;
        p[2] = x0;
        p[3] = x1;
        swap_through(p[2], p[3], y0, y1);
    } else {
        // (x, y) -> (x y x, x)
        p[0] = y0;
        p[1] = y1;
        swap_through(p[0], p[1], x0, x1);
        p[2] = x0;
        p[3] = x1;
    }
}

struct SearchSide {
    std::vector<Tuple> nodes;
    std::vector<std::int32_t> parent;
    std::vector<std::int32_t> code;  // 2k + inverse
    std::unordered_map<Tuple, std::int32_t> index;
    std::size_t level_begin = 0;

    explicit SearchSide(const Tuple& root) {
        nodes.push_back(root);
        parent.push_back(-1);
        code.push_back(-1);
        index.emplace(root, 0);
    }

    /// Codes along the path root -> node, in order.
    std::vector<std::int32_t> path_to(std::int32_t node) const {
        std::vector<std::int32_t> out;
        for (; parent[node] >= 0; node = parent[node]) out.push_back(code[node]);
        std::reverse(out.begin(), out.end());
        return out;
    }
};

}  // namespace

MoveWord realize_block_rewrite(const HurwitzSystem& sys, IndexRange range, std::span<const Permutation> target,
                               std::size_t budget) {
    if (range.size() > 0 && (range.first < 1 || range.last > sys.w())) throw UsageError("range outside 1..w");
    if (static_cast<int>(target.size()) != range.size()) throw UsageError("target length differs from range length");
    const std::vector<Permutation> source(sys.transpositions().begin() + (range.first - 1),
                                          sys.transpositions().begin() + (range.first - 1) + range.size());
    if (product(source, sys.degree()) != product(target, sys.degree())) {
        throw PreconditionError("window product differs from target product; braids preserve the product");
    }
    const Tuple src = encode(source);
    const Tuple dst = encode(target);
    if (src == dst) return {};

    const std::size_t positions = range.size() >= 2 ? static_cast<std::size_t>(range.size() - 1) : 0;
    SearchSide fwd(src);
    SearchSide bwd(dst);

    auto build = [&](std::int32_t fnode, std::int32_t bnode) {
        MoveWord w;
        for (auto c : fwd.path_to(fnode)) w.push_back(Move::braid(range.first + c / 2, c % 2 == 1));
        const auto back = bwd.path_to(bnode);
        for (auto it = back.rbegin(); it != back.rend(); ++it) w.push_back(Move::braid(range.first + *it / 2, *it % 2 == 0));
        return w;
    };

    while (true) {
        const bool expand_fwd = fwd.nodes.size() - fwd.level_begin <= bwd.nodes.size() - bwd.level_begin;
        SearchSide& side = expand_fwd ? fwd : bwd;
        SearchSide& other = expand_fwd ? bwd : fwd;
        const std::size_t begin = side.level_begin;
        const std::size_t end = side.nodes.size();
        if (begin == end) {
            throw OrbitMismatch("braid orbit of the window exhausted after " + std::to_string(fwd.nodes.size() + bwd.nodes.size()) +
                                " states without reaching the target");
        }
        side.level_begin = end;
        for (std::size_t n = begin; n < end; ++n) {
            for (std::size_t k = 0; k < positions; ++k) {
                for (int inv = 0; inv < 2; ++inv) {
                    Tuple next = side.nodes[n];
                    braid_encoded(next, k, inv == 1);
                    if (side.index.count(next)) continue;
                    const auto id = static_cast<std::int32_t>(side.nodes.size());
                    side.nodes.push_back(next);
                    side.parent.push_back(static_cast<std::int32_t>(n));
                    side.code.push_back(static_cast<std::int32_t>(2 * k + inv));
                    side.index.emplace(next, id);
                    if (auto hit = other.index.find(next); hit != other.index.end()) {
                        return expand_fwd ? build(id, hit->second) : build(hit->second, id);
                    }
                    if (fwd.nodes.size() + bwd.nodes.size() > budget) {
                        throw BudgetExceeded("braid search budget of " + std::to_string(budget) + " states exhausted",
                                             static_cast<double>(budget));
                    }
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Macro moves

namespace {

void check_equal_pair(const HurwitzSystem& sys, int j) {
    if (j < 1 || j + 1 > sys.w()) throw UsageError("pair index " + std::to_string(j) + " outside 1.." + std::to_string(sys.w() - 1));
    if (sys.t(j) != sys.t(j + 1)) throw PreconditionError("positions j, j+1 do not hold an equal pair");
}

void check_residual(const HurwitzSystem& sys, int j) {
    if (!residual_monodromy(sys, j).is_symmetric()) {
        throw PreconditionError("monodromy without positions " + std::to_string(j) + ", " + std::to_string(j + 1) +
                                " is a proper subgroup of S_d");
    }
}

}  // namespace

HurwitzSystem pair_retype(const HurwitzSystem& sys, int j, const Permutation& new_t) {
    check_equal_pair(sys, j);
    if (new_t.degree() != sys.degree() || !new_t.is_transposition()) throw UsageError("new_t must be a transposition of S_d");
    if (new_t == sys.t(j)) return sys;
    check_residual(sys, j);
    auto ts = sys.transpositions();
    ts[j - 1] = new_t;
    ts[j] = new_t;
    return sys.with_transpositions(std::move(ts));
}

HurwitzSystem pair_cancel(const HurwitzSystem& sys, int j) {
    check_equal_pair(sys, j);
    check_residual(sys, j);
    auto ts = sys.transpositions();
    ts.erase(ts.begin() + (j - 1), ts.begin() + (j + 1));
    return sys.with_transpositions(std::move(ts));
}

HurwitzSystem pair_insert(const HurwitzSystem& sys, int j, const Permutation& t) {
    if (j < 1 || j > sys.w() + 1) throw UsageError("insert position outside 1..w+1");
    if (t.degree() != sys.degree() || !t.is_transposition()) throw UsageError("inserted entry must be a transposition of S_d");
    auto ts = sys.transpositions();
    ts.insert(ts.begin() + (j - 1), {t, t});
    return sys.with_transpositions(std::move(ts));
}

Move retype_move(const HurwitzSystem& sys, int j, const Permutation& new_t) {
    Move m{MoveKind::Retype, j};
    std::tie(m.p1, m.p2) = sys.t(j).transposed_points();
    std::tie(m.q1, m.q2) = new_t.transposed_points();
    return m;
}

Move cancel_move(const HurwitzSystem& sys, int j) {
    Move m{MoveKind::Cancel, j};
    std::tie(m.p1, m.p2) = sys.t(j).transposed_points();
    return m;
}

Move insert_move(int j, const Permutation& t) {
    Move m{MoveKind::Insert, j};
    std::tie(m.p1, m.p2) = t.transposed_points();
    return m;
}

}  // namespace hurwitz
