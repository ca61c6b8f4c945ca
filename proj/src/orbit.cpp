#include "hurwitz/orbit.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "hurwitz/errors.hpp"

namespace hurwitz {

std::string_view to_string(MoveSetKind k) {
    return k == MoveSetKind::Braid ? "braid" : "full";
}

MoveSetKind parse_move_set(std::string_view text) {
    if (text == "braid") return MoveSetKind::Braid;
    if (text == "full") return MoveSetKind::Full;
    throw UsageError("unknown move set '" + std::string(text) + "' (expected braid or full)");
}

std::vector<Move> move_set(int h, int w, MoveSetKind kind) {
    std::vector<Move> out;
    for (int j = 1; j < w; ++j) {
        out.push_back(Move::braid(j));
        out.push_back(Move::braid(j, true));
    }
    if (kind == MoveSetKind::Full && w >= 1) {
        for (int i = 1; i <= h; ++i) {
            for (Side s : {Side::A, Side::B}) {
                out.push_back(Move::push(i, s));
                out.push_back(Move::push(i, s, true));
            }
        }
    }
    return out;
}

FilterSpec FilterSpec::parse(std::string_view text, int degree) {
    FilterSpec f;
    f.name = std::string(text);
    if (text == "all") return f;
    if (text == "full-monodromy") {
        f.predicate = [](const HurwitzSystem& s) { return is_full_monodromy(s); };
    } else if (text == "transitive") {
        f.predicate = [](const HurwitzSystem& s) { return connected_cover(s); };
    } else if (text == "intransitive") {
        f.predicate = [](const HurwitzSystem& s) { return !connected_cover(s); };
    } else if (text.rfind("group=", 0) == 0) {
        std::vector<Permutation> gens;
        std::string_view rest = text.substr(6);
        std::size_t offset = 6;
        while (!rest.empty()) {
            const std::size_t cut = rest.find(';');
            const std::string_view piece = rest.substr(0, cut);
            try {
                gens.push_back(Permutation::parse(piece));
            } catch (const ParseError& e) {
                throw ParseError(std::string("bad group generator: ") + e.what(), offset + e.offset());
            }
            if (gens.back().degree() != degree) throw UsageError("group generator degree differs from d");
            if (cut == std::string_view::npos) break;
            rest = rest.substr(cut + 1);
            offset += cut + 1;
        }
        if (gens.empty()) gens.emplace_back(degree);
        const PermGroup target(degree, gens);
        f.predicate = [target](const HurwitzSystem& s) { return monodromy(s).same_subgroup(target); };
    } else {
        throw UsageError("unknown filter '" + std::string(text) + "'");
    }
    return f;
}

// ---------------------------------------------------------------------------

HurwitzSystem Orbit::system(std::size_t node) const {
    return HurwitzSystem::from_packed(keys.at(node), d, h, w);
}

MoveWord Orbit::path_to(std::size_t node) const {
    std::vector<Move> rev;
    for (auto n = static_cast<std::int64_t>(node); parent.at(n) >= 0; n = parent[n]) rev.push_back(moves.at(move_index[n]));
    std::reverse(rev.begin(), rev.end());
    return MoveWord(std::move(rev));
}

namespace {

constexpr std::size_t kShards = 64;

struct Candidate {
    std::string key;
    std::int64_t parent;
    std::int32_t move;
};

template <class Fn>
void run_workers(int threads, Fn&& fn) {
    if (threads <= 1) {
        fn(0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back([&fn, t] { fn(t); });
    for (auto& th : pool) th.join();
}

}  // namespace

Orbit orbit_bfs(const HurwitzSystem& seed, MoveSetKind kind, const BfsOptions& opts) {
    Orbit orb;
    orb.d = seed.degree();
    orb.h = seed.h();
    orb.w = seed.w();
    orb.moves = move_set(orb.h, orb.w, kind);
    const int threads = std::max(1, opts.threads);

    std::vector<std::unordered_set<std::string>> visited(kShards);
    const std::hash<std::string> hasher;
    auto shard_of = [&](const std::string& k) { return hasher(k) % kShards; };

    const std::string root = seed.packed_key();
    visited[shard_of(root)].insert(root);
    orb.keys.push_back(root);
    orb.parent.push_back(-1);
    orb.move_index.push_back(-1);

    std::size_t level_begin = 0;
    while (level_begin < orb.keys.size()) {
        const std::size_t level_end = orb.keys.size();
        const std::size_t n = level_end - level_begin;

        // Expansion: workers read the visited set only.
        std::vector<std::vector<Candidate>> found(threads);
        run_workers(threads, [&](int t) {
            const std::size_t lo = level_begin + n * t / threads;
            const std::size_t hi = level_begin + n * (t + 1) / threads;
            auto& out = found[t];
            for (std::size_t node = lo; node < hi; ++node) {
                const HurwitzSystem sys = orb.system(node);
                for (std::size_t m = 0; m < orb.moves.size(); ++m) {
                    std::string k = apply_move(sys, orb.moves[m]).packed_key();
                    if (visited[shard_of(k)].count(k)) continue;
                    out.push_back({std::move(k), static_cast<std::int64_t>(node), static_cast<std::int32_t>(m)});
                }
            }
        });
        std::vector<Candidate> cands;
        for (auto& part : found) {
            for (auto& c : part) cands.push_back(std::move(c));
        }

        // Deduplication: each worker owns a disjoint set of shards and scans
        // candidates in global order, so the first discoverer wins.
        std::vector<char> winner(cands.size(), 0);
        run_workers(threads, [&](int t) {
            for (std::size_t c = 0; c < cands.size(); ++c) {
                const std::size_t s = shard_of(cands[c].key);
                if (static_cast<int>(s % threads) != t) continue;
                if (visited[s].insert(cands[c].key).second) winner[c] = 1;
            }
        });

        std::vector<std::size_t> order;
        for (std::size_t c = 0; c < cands.size(); ++c) {
            if (winner[c]) order.push_back(c);
        }
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return cands[x].key < cands[y].key; });
        if (orb.keys.size() + order.size() > opts.budget) {
            orb.exhaustive = false;
            break;
        }
        for (std::size_t c : order) {
            orb.keys.push_back(std::move(cands[c].key));
            orb.parent.push_back(cands[c].parent);
            orb.move_index.push_back(cands[c].move);
        }
        level_begin = level_end;
    }
    return orb;
}

// ---------------------------------------------------------------------------

std::size_t OrbitCensus::count_full_monodromy() const {
    return static_cast<std::size_t>(std::count_if(orbits.begin(), orbits.end(), [](const OrbitRecord& r) { return r.full_monodromy; }));
}

std::string OrbitCensus::to_jsonl() const {
    std::string out;
    for (const auto& r : orbits) {
        nlohmann::ordered_json j;
        j["rep"] = r.rep;
        j["size"] = r.size;
        j["full_monodromy"] = r.full_monodromy;
        j["moves"] = catalog_hash;
        j["genus"] = r.genus;
        j["blocks"] = r.blocks;
        j["samples"] = r.samples;
        j["params"] = {{"d", params.d},
                       {"h", params.h},
                       {"w", params.w},
                       {"moves", std::string(to_string(params.moves))},
                       {"filter", params.filter},
                       {"mode", params.mode},
                       {"seed", params.seed},
                       {"budget", params.budget}};
        out += j.dump();
        out += '\n';
    }
    return out;
}

OrbitCensus census(const CensusParams& params, const SystemFilter& filter, int threads, bool keep_logs) {
    OrbitCensus result;
    result.params = params;
    const int d = params.d, h = params.h, w = params.w;

    // Catalog hash describes the move set actually used.
    {
        MoveCatalog cat = catalog_for(h, w);
        if (params.moves == MoveSetKind::Braid) {
            std::string text = "braid-only\n";
            for (const auto& m : cat.moves()) {
                if (m.name[0] == 'B') text += m.name + "\n";
            }
            result.catalog_hash = fnv1a_hex(cat.to_text() + text);
        } else {
            result.catalog_hash = cat.hash();
        }
    }

    std::vector<std::string> keys;
    SystemEnumerator en(d, h, w);
    en.for_each([&](const HurwitzSystem& s) { keys.push_back(s.packed_key()); }, filter);
    std::sort(keys.begin(), keys.end());
    result.total = keys.size();
    if (keys.size() > params.budget) {
        throw BudgetExceeded("census of " + std::to_string(keys.size()) + " systems exceeds the state budget",
                             static_cast<double>(keys.size()));
    }

    std::vector<char> assigned(keys.size(), 0);
    std::vector<std::pair<OrbitRecord, Orbit>> found;
    for (std::size_t idx = 0; idx < keys.size(); ++idx) {
        if (assigned[idx]) continue;
        Orbit orb = orbit_bfs(HurwitzSystem::from_packed(keys[idx], d, h, w), params.moves,
                              BfsOptions{params.budget, threads});
        if (!orb.exhaustive) throw BudgetExceeded("orbit exceeded the state budget", static_cast<double>(params.budget));
        OrbitRecord rec;
        rec.size = orb.size();
        std::vector<std::string> lines;
        lines.reserve(orb.size());
        for (std::size_t n = 0; n < orb.size(); ++n) {
            const auto it = std::lower_bound(keys.begin(), keys.end(), orb.keys[n]);
            if (it == keys.end() || *it != orb.keys[n]) {
                throw std::logic_error("orbit left the filtered set: moves must preserve the filter");
            }
            assigned[it - keys.begin()] = 1;
            lines.push_back(orb.system(n).to_line());
        }
        std::sort(lines.begin(), lines.end());
        rec.rep = lines.front();
        for (std::size_t s = 0; s < std::min(kSamplesPerOrbit, lines.size()); ++s) rec.samples.push_back(lines[s]);
        const HurwitzSystem rep = HurwitzSystem::parse(rec.rep);
        rec.full_monodromy = is_full_monodromy(rep);
        rec.genus = genus(rep);
        rec.blocks = branching_blocks(rep, IndexRange::all(w)).to_string();
        found.emplace_back(std::move(rec), keep_logs ? std::move(orb) : Orbit{});
    }
    std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.first.rep < y.first.rep; });
    for (auto& [rec, orb] : found) {
        result.orbits.push_back(std::move(rec));
        if (keep_logs) result.logs.push_back(std::move(orb));
    }
    return result;
}

// ---------------------------------------------------------------------------

namespace {

struct ConnectSide {
    std::vector<std::string> keys;
    std::vector<std::int64_t> parent;
    std::vector<std::int32_t> move;
    std::unordered_map<std::string, std::int64_t> index;
    std::size_t level_begin = 0;

    explicit ConnectSide(std::string root) {
        index.emplace(root, 0);
        keys.push_back(std::move(root));
        parent.push_back(-1);
        move.push_back(-1);
    }

    std::vector<std::int32_t> path_to(std::int64_t node) const {
        std::vector<std::int32_t> out;
        for (; parent[node] >= 0; node = parent[node]) out.push_back(move[node]);
        std::reverse(out.begin(), out.end());
        return out;
    }
};

}  // namespace

ConnectResult connect(const HurwitzSystem& source, const HurwitzSystem& target, MoveSetKind kind, std::size_t budget) {
    if (source.degree() != target.degree() || source.h() != target.h() || source.w() != target.w()) {
        throw UsageError("connect needs systems with equal (d, h, w)");
    }
    ConnectResult res;
    const int d = source.degree(), h = source.h(), w = source.w();
    if (source == target) {
        res.status = ConnectResult::Status::Connected;
        res.explored = 1;
        return res;
    }
    const std::vector<Move> moves = move_set(h, w, kind);
    ConnectSide fwd(source.packed_key());
    ConnectSide bwd(target.packed_key());

    while (true) {
        const std::size_t fw = fwd.keys.size() - fwd.level_begin;
        const std::size_t bw = bwd.keys.size() - bwd.level_begin;
        if (fw == 0 || bw == 0) {
            res.status = ConnectResult::Status::Disconnected;
            res.explored = fwd.keys.size() + bwd.keys.size();
            return res;
        }
        const bool expand_fwd = fw <= bw;
        ConnectSide& side = expand_fwd ? fwd : bwd;
        const ConnectSide& other = expand_fwd ? bwd : fwd;
        const std::size_t begin = side.level_begin;
        const std::size_t end = side.keys.size();
        side.level_begin = end;
        for (std::size_t n = begin; n < end; ++n) {
            const HurwitzSystem sys = HurwitzSystem::from_packed(side.keys[n], d, h, w);
            for (std::size_t m = 0; m < moves.size(); ++m) {
                std::string k = apply_move(sys, moves[m]).packed_key();
                if (side.index.count(k)) continue;
                const auto id = static_cast<std::int64_t>(side.keys.size());
                side.index.emplace(k, id);
                side.keys.push_back(k);
                side.parent.push_back(static_cast<std::int64_t>(n));
                side.move.push_back(static_cast<std::int32_t>(m));
                if (auto hit = other.index.find(k); hit != other.index.end()) {
                    const std::int64_t f = expand_fwd ? id : hit->second;
                    const std::int64_t b = expand_fwd ? hit->second : id;
                    for (auto c : fwd.path_to(f)) res.word.push_back(moves[c]);
                    const auto back = bwd.path_to(b);
                    for (auto it = back.rbegin(); it != back.rend(); ++it) res.word.push_back(moves[*it].inverted());
                    res.status = ConnectResult::Status::Connected;
                    res.explored = fwd.keys.size() + bwd.keys.size();
                    return res;
                }
                if (fwd.keys.size() + bwd.keys.size() > budget) {
                    res.status = ConnectResult::Status::Inconclusive;
                    res.explored = fwd.keys.size() + bwd.keys.size();
                    return res;
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'H', 'Z', 'P', 'L'};
constexpr std::uint32_t kLogVersion = 1;

template <class T>
void put(std::ostream& out, T v) {
    unsigned char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>(static_cast<std::uint64_t>(v) >> (8 * i));
    out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <class T>
T get(std::istream& in) {
    unsigned char buf[sizeof(T)];
    if (!in.read(reinterpret_cast<char*>(buf), sizeof(T))) throw ParseError("truncated predecessor log", static_cast<std::size_t>(in.gcount()));
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return static_cast<T>(v);
}

}  // namespace

void write_predecessor_log(std::ostream& out, const std::vector<Orbit>& orbits) {
    out.write(kMagic, 4);
    put<std::uint32_t>(out, kLogVersion);
    const Orbit* first = orbits.empty() ? nullptr : &orbits.front();
    put<std::uint32_t>(out, first ? first->d : 0);
    put<std::uint32_t>(out, first ? first->h : 0);
    put<std::uint32_t>(out, first ? first->w : 0);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(orbits.size()));
    for (const auto& orb : orbits) {
        put<std::uint64_t>(out, orb.size());
        for (std::size_t n = 0; n < orb.size(); ++n) {
            put<std::int64_t>(out, orb.parent[n]);
            const std::string token = orb.move_index[n] >= 0 ? orb.moves[orb.move_index[n]].token() : std::string();
            put<std::uint8_t>(out, static_cast<std::uint8_t>(token.size()));
            out.write(token.data(), static_cast<std::streamsize>(token.size()));
            out.write(orb.keys[n].data(), static_cast<std::streamsize>(orb.keys[n].size()));
        }
    }
}

std::vector<Orbit> read_predecessor_log(std::istream& in) {
    char magic[4];
    if (!in.read(magic, 4) || !std::equal(magic, magic + 4, kMagic)) throw ParseError("not a predecessor log", 0);
    if (get<std::uint32_t>(in) != kLogVersion) throw ParseError("unsupported predecessor log version", 4);
    const int d = static_cast<int>(get<std::uint32_t>(in));
    const int h = static_cast<int>(get<std::uint32_t>(in));
    const int w = static_cast<int>(get<std::uint32_t>(in));
    const std::uint32_t count = get<std::uint32_t>(in);
    const std::size_t key_len = static_cast<std::size_t>(d) * (w + 2 * h);
    std::vector<Orbit> out;
    for (std::uint32_t o = 0; o < count; ++o) {
        Orbit orb;
        orb.d = d;
        orb.h = h;
        orb.w = w;
        std::unordered_map<std::string, std::int32_t> token_index;
        const auto nodes = get<std::uint64_t>(in);
        for (std::uint64_t n = 0; n < nodes; ++n) {
            const auto parent = get<std::int64_t>(in);
            if (parent >= static_cast<std::int64_t>(n)) throw ParseError("predecessor log parent is not an earlier node", 0);
            std::string token(get<std::uint8_t>(in), '\0');
            in.read(token.data(), static_cast<std::streamsize>(token.size()));
            std::string key(key_len, '\0');
            if (!in.read(key.data(), static_cast<std::streamsize>(key_len))) throw ParseError("truncated predecessor log", 0);
            std::int32_t mi = -1;
            if (!token.empty()) {
                auto [it, inserted] = token_index.emplace(token, static_cast<std::int32_t>(orb.moves.size()));
                if (inserted) orb.moves.push_back(Move::parse(token));
                mi = it->second;
            }
            orb.keys.push_back(std::move(key));
            orb.parent.push_back(parent);
            orb.move_index.push_back(mi);
        }
        out.push_back(std::move(orb));
    }
    return out;
}

}  // namespace hurwitz
