#include "hurwitz/system.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "hurwitz/errors.hpp"

namespace hurwitz {

namespace {

constexpr int kMaxTableDegree = 6;

/// Solutions of [a,b] = c in S_d, indexed by the lexicographic rank of c.
struct CommutatorTable {
    std::vector<Permutation> elements;
    std::unordered_map<std::uint64_t, std::uint32_t> index;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> pairs;

    explicit CommutatorTable(int d) {
        elements = all_permutations(d);
        for (std::uint32_t i = 0; i < elements.size(); ++i) index.emplace(elements[i].packed(), i);
        pairs.resize(elements.size());
        for (std::uint32_t a = 0; a < elements.size(); ++a) {
            for (std::uint32_t b = 0; b < elements.size(); ++b) {
                pairs[index.at(commutator(elements[a], elements[b]).packed())].emplace_back(a, b);
            }
        }
    }

    std::uint32_t rank(const Permutation& p) const { return index.at(p.packed()); }
};

const CommutatorTable& commutator_table(int d) {
    if (d > kMaxTableDegree) {
        throw BudgetExceeded("handle enumeration needs the commutator table of S_" + std::to_string(d) +
                             ", supported up to d=" + std::to_string(kMaxTableDegree));
    }
    static std::mutex mu;
    static std::map<int, std::unique_ptr<CommutatorTable>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[d];
    if (!slot) slot = std::make_unique<CommutatorTable>(d);
    return *slot;
}

void expect(std::string_view text, std::size_t& pos, std::string_view token) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (text.substr(pos, token.size()) != token) {
        throw ParseError("expected '" + std::string(token) + "'", pos);
    }
    pos += token.size();
}

int parse_int(std::string_view text, std::size_t& pos) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    const std::size_t start = pos;
    int v = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        v = v * 10 + (text[pos] - '0');
        if (v > 100000) throw ParseError("integer too large", start);
        ++pos;
    }
    if (pos == start) throw ParseError("expected integer", start);
    return v;
}

/// Splits `text` on `sep`, returning (offset, piece) pairs.
std::vector<std::pair<std::size_t, std::string_view>> split(std::string_view text, char sep,
                                                            std::size_t base) {
    std::vector<std::pair<std::size_t, std::string_view>> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == sep) {
            out.emplace_back(base + start, text.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

bool blank(std::string_view s) {
    return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

Permutation parse_perm_at(std::string_view text, std::size_t offset) {
    try {
        return Permutation::parse(text);
    } catch (const ParseError& e) {
        throw ParseError(std::string("bad permutation: ") + e.what(), offset + e.offset());
    }
}

}  // namespace

HurwitzSystem::HurwitzSystem(int degree, std::vector<HandlePair> handles, std::vector<Permutation> transpositions)
    : d_(degree), handles_(std::move(handles)), ts_(std::move(transpositions)) {
    if (degree < 1 || degree > kMaxDegree) throw UsageError("degree outside 1..16");
    for (const auto& hp : handles_) {
        if (hp.a.degree() != d_ || hp.b.degree() != d_) throw UsageError("handle image degree mismatch");
    }
    for (const auto& t : ts_) {
        if (t.degree() != d_) throw UsageError("transposition degree mismatch");
    }
}

HurwitzSystem HurwitzSystem::with_transpositions(std::vector<Permutation> ts) const {
    return HurwitzSystem(d_, handles_, std::move(ts));
}

HurwitzSystem HurwitzSystem::with_handle(int i, HandlePair pair) const {
    auto hs = handles_;
    hs.at(i - 1) = std::move(pair);
    return HurwitzSystem(d_, std::move(hs), ts_);
}

const Permutation& HurwitzSystem::image(Generator g) const {
    switch (g.kind) {
        case GenKind::HandleA: return handles_.at(g.index - 1).a;
        case GenKind::HandleB: return handles_.at(g.index - 1).b;
        case GenKind::Puncture: return ts_.at(g.index - 1);
    }
    throw UsageError("bad generator");
}

Permutation HurwitzSystem::evaluate(const Word& w) const {
    Permutation r(d_);
    for (const auto& l : w.letters()) {
        const Permutation& p = image(l.gen);
        r = compose(r, l.sign > 0 ? p : p.inverse());
    }
    return r;
}

HurwitzSystem HurwitzSystem::precompose(const EndoMap& e) const {
    if (e.handles() != h() || e.punctures() != w()) throw UsageError("map rank does not match system");
    std::vector<HandlePair> hs;
    hs.reserve(handles_.size());
    for (int i = 1; i <= h(); ++i) {
        hs.push_back({evaluate(e.image(Generator::a(i))), evaluate(e.image(Generator::b(i)))});
    }
    std::vector<Permutation> ts;
    ts.reserve(ts_.size());
    for (int j = 1; j <= w(); ++j) ts.push_back(evaluate(e.image(Generator::g(j))));
    return HurwitzSystem(d_, std::move(hs), std::move(ts));
}

Permutation HurwitzSystem::relator_value() const {
    Permutation r = product(ts_, d_);
    for (const auto& hp : handles_) r = compose(r, commutator(hp.a, hp.b));
    return r;
}

std::string HurwitzSystem::to_line() const {
    std::string s = "d=" + std::to_string(d_) + " h=" + std::to_string(h()) + " w=" + std::to_string(w()) + " | t:";
    for (std::size_t j = 0; j < ts_.size(); ++j) {
        s += j ? " ; " : " ";
        s += ts_[j].to_string();
    }
    s += " | ab:";
    for (std::size_t i = 0; i < handles_.size(); ++i) {
        s += i ? " ; " : " ";
        s += handles_[i].a.to_string() + " , " + handles_[i].b.to_string();
    }
    return s;
}

HurwitzSystem HurwitzSystem::parse(std::string_view line) {
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
    const auto parts = split(line, '|', 0);
    if (parts.size() != 3) throw ParseError("expected three '|'-separated fields", 0);

    std::size_t pos = 0;
    const std::string_view head = parts[0].second;
    expect(head, pos, "d=");
    const int d = parse_int(head, pos);
    expect(head, pos, "h=");
    const int h = parse_int(head, pos);
    expect(head, pos, "w=");
    const int w = parse_int(head, pos);
    if (!blank(head.substr(pos))) throw ParseError("unexpected text in header", pos);
    if (d < 1 || d > kMaxDegree) throw ParseError("degree outside 1..16", 2);

    auto body = [](std::pair<std::size_t, std::string_view> field, std::string_view tag) {
        std::size_t p = 0;
        expect(field.second, p, tag);
        return std::pair{field.first + p, field.second.substr(p)};
    };

    std::vector<Permutation> ts;
    {
        auto [off, text] = body(parts[1], "t:");
        if (!blank(text)) {
            for (auto [o, piece] : split(text, ';', off)) ts.push_back(parse_perm_at(piece, o));
        }
    }
    std::vector<HandlePair> hs;
    {
        auto [off, text] = body(parts[2], "ab:");
        if (!blank(text)) {
            for (auto [o, piece] : split(text, ';', off)) {
                // Each handle is "a , b"; commas inside permutations bind
                // tighter, so split at the " , " separator.
                const std::size_t sep = piece.find(" , ");
                if (sep == std::string_view::npos) throw ParseError("expected 'a , b' handle pair", o);
                hs.push_back({parse_perm_at(piece.substr(0, sep), o), parse_perm_at(piece.substr(sep + 3), o + sep + 3)});
            }
        }
    }
    if (static_cast<int>(ts.size()) != w) throw ParseError("w does not match transposition count", parts[1].first);
    if (static_cast<int>(hs.size()) != h) throw ParseError("h does not match handle count", parts[2].first);
    for (const auto& t : ts) {
        if (t.degree() != d) throw ParseError("transposition degree differs from d", parts[1].first);
    }
    for (const auto& hp : hs) {
        if (hp.a.degree() != d || hp.b.degree() != d) throw ParseError("handle degree differs from d", parts[2].first);
    }
    return HurwitzSystem(d, std::move(hs), std::move(ts));
}

std::string HurwitzSystem::packed_key() const {
    std::string key;
    key.reserve(static_cast<std::size_t>(d_) * (ts_.size() + 2 * handles_.size()));
    auto put = [&](const Permutation& p) {
        for (int i = 0; i < d_; ++i) key.push_back(static_cast<char>(p.image0(i)));
    };
    for (const auto& t : ts_) put(t);
    for (const auto& hp : handles_) {
        put(hp.a);
        put(hp.b);
    }
    return key;
}

HurwitzSystem HurwitzSystem::from_packed(std::string_view key, int degree, int h, int w) {
    if (key.size() != static_cast<std::size_t>(degree) * (w + 2 * h)) throw UsageError("packed key length mismatch");
    std::size_t pos = 0;
    std::array<int, kMaxDegree> buf{};
    auto get = [&] {
        for (int i = 0; i < degree; ++i) buf[i] = static_cast<unsigned char>(key[pos++]) + 1;
        return Permutation::from_images(std::span<const int>(buf.data(), degree));
    };
    std::vector<Permutation> ts;
    ts.reserve(w);
    for (int j = 0; j < w; ++j) ts.push_back(get());
    std::vector<HandlePair> hs;
    hs.reserve(h);
    for (int i = 0; i < h; ++i) {
        Permutation a = get();
        Permutation b = get();
        hs.push_back({a, b});
    }
    return HurwitzSystem(degree, std::move(hs), std::move(ts));
}

ValidationReport validate(const HurwitzSystem& sys) {
    for (int j = 1; j <= sys.w(); ++j) {
        if (!sys.t(j).is_transposition()) {
            return {false, "t" + std::to_string(j) + " = " + sys.t(j).cycle_string() + " is not a transposition"};
        }
    }
    if (sys.w() % 2 != 0) return {false, "w is odd, so the relator cannot hold"};
    if (!sys.relator_value().is_identity()) {
        return {false, "relator product is " + sys.relator_value().cycle_string() + ", not the identity"};
    }
    return {};
}

int genus(int d, int h, int w) {
    return d * (h - 1) + w / 2 + 1;
}

int genus(const HurwitzSystem& sys) {
    return genus(sys.degree(), sys.h(), sys.w());
}

PermGroup monodromy(const HurwitzSystem& sys) {
    std::vector<Permutation> gens;
    for (const auto& hp : sys.handles()) {
        gens.push_back(hp.a);
        gens.push_back(hp.b);
    }
    for (const auto& t : sys.transpositions()) gens.push_back(t);
    return PermGroup(sys.degree(), gens);
}

bool is_full_monodromy(const HurwitzSystem& sys) {
    return monodromy(sys).is_symmetric();
}

bool connected_cover(const HurwitzSystem& sys) {
    return monodromy(sys).is_transitive();
}

BlockPartition branching_blocks(const HurwitzSystem& sys, IndexRange range) {
    if (range.size() > 0 && (range.first < 1 || range.last > sys.w())) {
        throw UsageError("range [" + std::to_string(range.first) + "," + std::to_string(range.last) +
                         "] outside 1.." + std::to_string(sys.w()));
    }
    std::vector<Permutation> ts;
    for (int j = range.first; j <= range.last; ++j) ts.push_back(sys.t(j));
    return transposition_blocks(ts, sys.degree());
}

SystemKey serialize(const HurwitzSystem& sys) {
    return sys.to_line();
}

HurwitzSystem deserialize(std::string_view key) {
    return HurwitzSystem::parse(key);
}

PermGroup residual_monodromy(const HurwitzSystem& sys, int j) {
    if (j < 1 || j + 1 > sys.w()) throw UsageError("pair index out of range");
    std::vector<Permutation> gens;
    for (const auto& hp : sys.handles()) {
        gens.push_back(hp.a);
        gens.push_back(hp.b);
    }
    for (int k = 1; k <= sys.w(); ++k) {
        if (k != j && k != j + 1) gens.push_back(sys.t(k));
    }
    return PermGroup(sys.degree(), gens);
}

double estimated_system_count(int d, int h, int w) {
    const double transpositions = d * (d - 1) / 2.0;
    return std::pow(transpositions, w) * std::pow(static_cast<double>(factorial(d)), 2.0 * h - 1.0);
}

// ---------------------------------------------------------------------------

SystemEnumerator::SystemEnumerator(int d, int h, int w, double limit) : d_(d), h_(h), w_(w) {
    if (d < 1 || d > kMaxDegree || h < 0 || w < 0) throw UsageError("bad enumeration parameters");
    const double estimate = estimated_system_count(d, h, w);
    const double tuples = std::pow(d * (d - 1) / 2.0, w);
    if (estimate > limit || tuples > limit) {
        throw BudgetExceeded("enumeration of d=" + std::to_string(d) + " h=" + std::to_string(h) +
                                 " w=" + std::to_string(w) + " estimated at " + std::to_string(estimate) +
                                 " systems exceeds the limit",
                             estimate);
    }
    transpositions_ = all_transpositions(d);
    for (int j = 0; j < w; ++j) tuple_space_ *= transpositions_.size();
    if (w > 0 && transpositions_.empty()) tuple_space_ = 0;

    if (h >= 1) {
        const CommutatorTable& table = commutator_table(d);
        elements_ = table.elements;
        element_rank_ = table.index;
        commutator_pairs_ = table.pairs;
        // count_table_[c] = number of handle tuples with product c, by
        // repeated convolution of the single-handle counts.
        const std::size_t n = elements_.size();
        std::vector<std::uint64_t> single(n);
        for (std::size_t c = 0; c < n; ++c) single[c] = commutator_pairs_[c].size();
        count_table_ = single;
        for (int level = 2; level <= h; ++level) {
            std::vector<std::uint64_t> next(n, 0);
            for (std::size_t x = 0; x < n; ++x) {
                if (!single[x]) continue;
                for (std::size_t y = 0; y < n; ++y) {
                    if (!count_table_[y]) continue;
                    next[element_index(compose(elements_[x], elements_[y]))] += single[x] * count_table_[y];
                }
            }
            count_table_ = std::move(next);
        }
    }
}

std::size_t SystemEnumerator::element_index(const Permutation& p) const {
    return element_rank_.at(p.packed());
}

void SystemEnumerator::handle_recurse(int level, const Permutation& remaining, std::vector<HandlePair>& prefix,
                                      const std::function<void(const std::vector<HandlePair>&)>& emit) const {
    if (level == h_) {
        for (const auto& [a, b] : commutator_pairs_[element_index(remaining)]) {
            prefix.push_back({elements_[a], elements_[b]});
            emit(prefix);
            prefix.pop_back();
        }
        return;
    }
    // Free choice of this handle, remaining product solved further down.
    for (std::size_t c = 0; c < elements_.size(); ++c) {
        if (commutator_pairs_[c].empty()) continue;
        const Permutation rest = compose(elements_[c].inverse(), remaining);
        if (level + 1 == h_ && commutator_pairs_[element_index(rest)].empty()) continue;
        for (const auto& [a, b] : commutator_pairs_[c]) {
            prefix.push_back({elements_[a], elements_[b]});
            handle_recurse(level + 1, rest, prefix, emit);
            prefix.pop_back();
        }
    }
}

std::vector<std::vector<HandlePair>> SystemEnumerator::handle_solutions(const Permutation& target) const {
    std::vector<std::vector<HandlePair>> out;
    if (h_ == 0) {
        if (target.is_identity()) out.emplace_back();
        return out;
    }
    std::vector<HandlePair> prefix;
    handle_recurse(1, target, prefix, [&](const std::vector<HandlePair>& hs) { out.push_back(hs); });
    return out;
}

void SystemEnumerator::for_each_in_range(std::uint64_t lo, std::uint64_t hi,
                                         const std::function<void(const HurwitzSystem&)>& emit,
                                         const SystemFilter& filter) const {
    hi = std::min(hi, tuple_space_);
    const std::size_t base = transpositions_.size();
    std::vector<Permutation> ts(w_);
    std::vector<HandlePair> prefix;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
        std::uint64_t rest = idx;
        for (int j = w_ - 1; j >= 0; --j) {
            ts[j] = transpositions_[rest % base];
            rest /= base;
        }
        const Permutation target = product(ts, d_).inverse();
        auto deliver = [&](const std::vector<HandlePair>& hs) {
            HurwitzSystem sys(d_, hs, ts);
            if (!filter || filter(sys)) emit(sys);
        };
        if (h_ == 0) {
            if (target.is_identity()) deliver({});
            continue;
        }
        handle_recurse(1, target, prefix, deliver);
    }
}

void SystemEnumerator::for_each(const std::function<void(const HurwitzSystem&)>& emit,
                                const SystemFilter& filter) const {
    for_each_in_range(0, tuple_space_, emit, filter);
}

std::uint64_t SystemEnumerator::count() const {
    const std::size_t base = transpositions_.size();
    std::vector<Permutation> ts(w_);
    std::uint64_t total = 0;
    for (std::uint64_t idx = 0; idx < tuple_space_; ++idx) {
        std::uint64_t rest = idx;
        for (int j = w_ - 1; j >= 0; --j) {
            ts[j] = transpositions_[rest % base];
            rest /= base;
        }
        const Permutation target = product(ts, d_).inverse();
        if (h_ == 0) {
            total += target.is_identity() ? 1 : 0;
        } else {
            total += count_table_[element_index(target)];
        }
    }
    return total;
}

std::vector<HurwitzSystem> enumerate_systems(int d, int h, int w, const SystemFilter& filter, double limit) {
    SystemEnumerator en(d, h, w, limit);
    std::vector<HurwitzSystem> out;
    en.for_each([&](const HurwitzSystem& s) { out.push_back(s); }, filter);
    return out;
}

HurwitzSystem sample_system(int d, int h, int w, std::mt19937_64& rng, bool full_monodromy) {
    if (w % 2 != 0) throw PreconditionError("no valid systems with odd w");
    if (d == 1 && w > 0) throw PreconditionError("S_1 has no transpositions");
    const auto transpositions = all_transpositions(d);
    for (int attempt = 0; attempt < 1000000; ++attempt) {
        std::vector<Permutation> ts;
        for (int j = 0; j < w; ++j) {
            ts.push_back(transpositions[std::uniform_int_distribution<std::size_t>(0, transpositions.size() - 1)(rng)]);
        }
        std::vector<HandlePair> hs;
        if (h == 0) {
            if (w > 0) {
                const Permutation last = product(std::span(ts).first(w - 1), d).inverse();
                if (!last.is_transposition()) continue;
                ts.back() = last;
            }
        } else {
            const CommutatorTable& table = commutator_table(d);
            std::uniform_int_distribution<std::size_t> pick(0, table.elements.size() - 1);
            hs.resize(h);
            Permutation tail(d);
            for (int i = 1; i < h; ++i) {
                hs[i] = {table.elements[pick(rng)], table.elements[pick(rng)]};
                tail = compose(tail, commutator(hs[i].a, hs[i].b));
            }
            // t_1..t_w [a_1,b_1] tail = 1
            const Permutation need = compose(product(ts, d).inverse(), tail.inverse());
            const auto& sols = table.pairs[table.rank(need)];
            if (sols.empty()) continue;
            const auto [a, b] = sols[std::uniform_int_distribution<std::size_t>(0, sols.size() - 1)(rng)];
            hs[0] = {table.elements[a], table.elements[b]};
        }
        HurwitzSystem sys(d, std::move(hs), std::move(ts));
        if (!full_monodromy || is_full_monodromy(sys)) return sys;
    }
    throw BudgetExceeded("could not sample a system with the requested monodromy");
}

}  // namespace hurwitz
