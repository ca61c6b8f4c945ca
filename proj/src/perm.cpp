#include "hurwitz/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hurwitz/errors.hpp"

namespace hurwitz {

namespace {

void check_degree(int degree) {
    if (degree < 0 || degree > kMaxDegree) {
        throw UsageError("permutation degree " + std::to_string(degree) + " outside 0.." +
                         std::to_string(kMaxDegree));
    }
}

void check_same_degree(const Permutation& p, const Permutation& q) {
    if (p.degree() != q.degree()) {
        throw UsageError("degree mismatch: " + std::to_string(p.degree()) + " vs " +
                         std::to_string(q.degree()));
    }
}

}  // namespace

Permutation::Permutation(int degree) {
    check_degree(degree);
    degree_ = static_cast<std::uint8_t>(degree);
    for (int i = 0; i < degree; ++i) img_[i] = static_cast<std::uint8_t>(i);
}

Permutation Permutation::from_images(std::span<const int> images) {
    const int d = static_cast<int>(images.size());
    check_degree(d);
    Permutation p;
    p.degree_ = static_cast<std::uint8_t>(d);
    std::array<bool, kMaxDegree> seen{};
    for (int i = 0; i < d; ++i) {
        const int x = images[i];
        if (x < 1 || x > d || seen[x - 1]) {
            throw UsageError("images do not form a bijection of {1.." + std::to_string(d) + "}");
        }
        seen[x - 1] = true;
        p.img_[i] = static_cast<std::uint8_t>(x - 1);
    }
    return p;
}

Permutation Permutation::from_images(std::initializer_list<int> images) {
    return from_images(std::span<const int>(images.begin(), images.size()));
}

Permutation Permutation::transposition(int degree, int i, int j) {
    Permutation p(degree);
    if (i < 1 || j < 1 || i > degree || j > degree || i == j) {
        throw UsageError("bad transposition points");
    }
    std::swap(p.img_[i - 1], p.img_[j - 1]);
    return p;
}

Permutation Permutation::cycle(int degree, std::span<const int> points) {
    Permutation p(degree);
    std::array<bool, kMaxDegree> seen{};
    for (int x : points) {
        if (x < 1 || x > degree || seen[x - 1]) throw UsageError("bad cycle points");
        seen[x - 1] = true;
    }
    const std::size_t k = points.size();
    for (std::size_t i = 0; i < k; ++i) {
        p.img_[points[i] - 1] = static_cast<std::uint8_t>(points[(i + 1) % k] - 1);
    }
    return p;
}

Permutation Permutation::cycle(int degree, std::initializer_list<int> points) {
    return cycle(degree, std::span<const int>(points.begin(), points.size()));
}

Permutation Permutation::parse(std::string_view text) {
    std::vector<int> images;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        while (pos < text.size() && text[pos] == ' ') ++pos;
        const std::size_t start = pos;
        int value = 0;
        bool any = false;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            value = value * 10 + (text[pos] - '0');
            any = true;
            ++pos;
            if (value > 1000) throw ParseError("permutation image too large", start);
        }
        if (!any) throw ParseError("expected a point label", start);
        images.push_back(value);
        while (pos < text.size() && text[pos] == ' ') ++pos;
        if (pos == text.size()) break;
        if (text[pos] != ',') throw ParseError("expected ',' in permutation", pos);
        ++pos;
    }
    try {
        return from_images(images);
    } catch (const UsageError& e) {
        throw ParseError(e.what(), 0);
    }
}

bool Permutation::is_identity() const {
    for (int i = 0; i < degree_; ++i) {
        if (img_[i] != i) return false;
    }
    return true;
}

int Permutation::support_size() const {
    int n = 0;
    for (int i = 0; i < degree_; ++i) n += img_[i] != i;
    return n;
}

bool Permutation::is_transposition() const {
    if (support_size() != 2) return false;
    for (int i = 0; i < degree_; ++i) {
        if (img_[i] != i) return img_[img_[i]] == i;
    }
    return false;
}

std::pair<int, int> Permutation::transposed_points() const {
    if (!is_transposition()) throw UsageError("not a transposition: " + to_string());
    int first = -1;
    for (int i = 0; i < degree_; ++i) {
        if (img_[i] != i) {
            first = i;
            break;
        }
    }
    return {first + 1, img_[first] + 1};
}

Permutation Permutation::inverse() const {
    Permutation r;
    r.degree_ = degree_;
    for (int i = 0; i < degree_; ++i) r.img_[img_[i]] = static_cast<std::uint8_t>(i);
    return r;
}

std::string Permutation::to_string() const {
    std::string s;
    for (int i = 0; i < degree_; ++i) {
        if (i) s += ',';
        s += std::to_string(img_[i] + 1);
    }
    return s;
}

std::string Permutation::cycle_string() const {
    std::string s;
    for (const auto& c : cycles(*this)) {
        if (c.size() < 2) continue;
        s += '(';
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i) s += ' ';
            s += std::to_string(c[i]);
        }
        s += ')';
    }
    return s.empty() ? "()" : s;
}

std::uint64_t Permutation::packed() const {
    std::uint64_t v = 0;
    for (int i = 0; i < degree_; ++i) v |= static_cast<std::uint64_t>(img_[i]) << (4 * i);
    return v;
}

Permutation compose(const Permutation& p, const Permutation& q) {
    check_same_degree(p, q);
    Permutation r;
    r.degree_ = p.degree_;
    for (int i = 0; i < p.degree_; ++i) r.img_[i] = q.img_[p.img_[i]];
    return r;
}

Permutation conjugate(const Permutation& t, const Permutation& s) {
    return compose(compose(s.inverse(), t), s);
}

Permutation commutator(const Permutation& a, const Permutation& b) {
    return compose(compose(compose(a, b), a.inverse()), b.inverse());
}

Permutation product(std::span<const Permutation> perms, int degree) {
    Permutation r(degree);
    for (const auto& p : perms) r = compose(r, p);
    return r;
}

int sign(const Permutation& p) {
    return (cycle_type(p).weight() % 2 == 0) ? 1 : -1;
}

int CycleType::degree() const {
    return std::accumulate(parts.begin(), parts.end(), 0);
}

int CycleType::weight() const {
    return degree() - static_cast<int>(parts.size());
}

std::string CycleType::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(parts[i]);
    }
    return s + ")";
}

std::vector<std::vector<int>> cycles(const Permutation& p) {
    std::vector<std::vector<int>> out;
    std::array<bool, kMaxDegree> seen{};
    for (int i = 0; i < p.degree(); ++i) {
        if (seen[i]) continue;
        std::vector<int> c;
        for (int x = i; !seen[x]; x = p.image0(x)) {
            seen[x] = true;
            c.push_back(x + 1);
        }
        out.push_back(std::move(c));
    }
    return out;
}

CycleType cycle_type(const Permutation& p) {
    CycleType ct;
    for (const auto& c : cycles(p)) ct.parts.push_back(static_cast<int>(c.size()));
    std::sort(ct.parts.begin(), ct.parts.end(), std::greater<>());
    return ct;
}

int BlockPartition::degree() const {
    int n = 0;
    for (const auto& b : blocks) n += static_cast<int>(b.size());
    return n;
}

int BlockPartition::block_of(int point) const {
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (std::find(blocks[i].begin(), blocks[i].end(), point) != blocks[i].end()) {
            return static_cast<int>(i);
        }
    }
    throw UsageError("point " + std::to_string(point) + " not in partition");
}

std::string BlockPartition::to_string() const {
    std::string s;
    for (const auto& b : blocks) {
        s += '{';
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(b[i]);
        }
        s += '}';
    }
    return s;
}

BlockPartition make_partition(std::vector<std::vector<int>> blocks, int degree) {
    std::vector<bool> seen(degree, false);
    int covered = 0;
    for (auto& b : blocks) {
        if (b.empty()) throw UsageError("empty block");
        std::sort(b.begin(), b.end());
        for (int x : b) {
            if (x < 1 || x > degree || seen[x - 1]) throw UsageError("blocks not disjoint or out of range");
            seen[x - 1] = true;
            ++covered;
        }
    }
    if (covered != degree) throw UsageError("blocks do not cover {1..d}");
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    return BlockPartition{std::move(blocks)};
}

std::string_view to_string(Transitivity t) {
    switch (t) {
        case Transitivity::Intransitive: return "intransitive";
        case Transitivity::Transitive: return "transitive";
        case Transitivity::DoublyTransitive: return "doubly_transitive";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Schreier-Sims

PermGroup::PermGroup(int degree, std::span<const Permutation> generators) : degree_(degree) {
    check_degree(degree);
    for (const auto& g : generators) {
        if (g.degree() != degree) throw UsageError("generator degree mismatch");
        gens_.push_back(g);
    }
    for (const auto& g : gens_) {
        if (g.is_identity()) continue;
        auto [residue, level] = strip(g, 0);
        if (!residue.is_identity()) extend(0, level, residue);
    }
}

void PermGroup::rebuild_orbit(Level& lv) const {
    lv.transversal.assign(degree_, Permutation(degree_));
    lv.has_rep.assign(degree_, false);
    lv.orbit.clear();
    lv.orbit.push_back(lv.base);
    lv.has_rep[lv.base] = true;
    for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
        const int x = lv.orbit[k];
        for (const auto& s : lv.gens) {
            const int y = s.image0(x);
            if (!lv.has_rep[y]) {
                lv.has_rep[y] = true;
                lv.transversal[y] = compose(lv.transversal[x], s);
                lv.orbit.push_back(y);
            }
        }
    }
}

std::pair<Permutation, std::size_t> PermGroup::strip(Permutation g, std::size_t start) const {
    for (std::size_t i = start; i < levels_.size(); ++i) {
        const Level& lv = levels_[i];
        const int x = g.image0(lv.base);
        if (!lv.has_rep[x]) return {g, i};
        g = compose(g, lv.transversal[x].inverse());
    }
    return {g, levels_.size()};
}

void PermGroup::extend(std::size_t from, std::size_t to, const Permutation& g) {
    // g fixes the base points of levels < to, so it belongs to the point
    // stabilizers of every level from..to.
    if (to == levels_.size()) {
        Level lv;
        for (int i = 0; i < degree_; ++i) {
            if (g.image0(i) != i) {
                lv.base = i;
                break;
            }
        }
        levels_.push_back(std::move(lv));
    }
    for (std::size_t l = from; l <= to; ++l) {
        levels_[l].gens.push_back(g);
        rebuild_orbit(levels_[l]);
    }
    for (std::size_t l = to + 1; l-- > from;) close_level(l);
}

void PermGroup::close_level(std::size_t level) {
    // Every Schreier generator of this level must sift through the deeper
    // levels; anything that does not becomes a new strong generator.
    for (std::size_t k = 0; k < levels_[level].orbit.size(); ++k) {
        for (std::size_t si = 0; si < levels_[level].gens.size(); ++si) {
            const Level& lv = levels_[level];
            const int x = lv.orbit[k];
            const int y = lv.gens[si].image0(x);
            const Permutation schreier = compose(compose(lv.transversal[x], lv.gens[si]), lv.transversal[y].inverse());
            if (schreier.is_identity()) continue;
            auto [residue, stop] = strip(schreier, level + 1);
            if (!residue.is_identity()) extend(level + 1, stop, residue);
        }
    }
}

std::uint64_t PermGroup::order() const {
    std::uint64_t n = 1;
    for (const auto& lv : levels_) n *= lv.orbit.size();
    return n;
}

bool PermGroup::contains(const Permutation& p) const {
    if (p.degree() != degree_) throw UsageError("degree mismatch in membership test");
    return strip(p, 0).first.is_identity();
}

BlockPartition PermGroup::orbits() const {
    std::vector<int> parent(degree_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& g : gens_) {
        for (int i = 0; i < degree_; ++i) parent[find(i)] = find(g.image0(i));
    }
    std::vector<std::vector<int>> blocks(degree_);
    for (int i = 0; i < degree_; ++i) blocks[find(i)].push_back(i + 1);
    std::vector<std::vector<int>> nonempty;
    for (auto& b : blocks) {
        if (!b.empty()) nonempty.push_back(std::move(b));
    }
    return make_partition(std::move(nonempty), degree_);
}

bool PermGroup::is_transitive() const {
    return orbits().size() <= 1;
}

bool PermGroup::is_symmetric() const {
    return order() == factorial(degree_);
}

Transitivity PermGroup::transitivity() const {
    if (!is_transitive()) return Transitivity::Intransitive;
    if (degree_ < 2) return Transitivity::Transitive;
    // Orbit of the ordered pair (0,1) on ordered pairs of distinct points.
    const int d = degree_;
    std::vector<bool> seen(d * d, false);
    std::vector<int> queue{0 * d + 1};
    seen[1] = true;
    for (std::size_t k = 0; k < queue.size(); ++k) {
        const int x = queue[k] / d;
        const int y = queue[k] % d;
        for (const auto& g : gens_) {
            const int id = g.image0(x) * d + g.image0(y);
            if (!seen[id]) {
                seen[id] = true;
                queue.push_back(id);
            }
        }
    }
    return queue.size() == static_cast<std::size_t>(d * (d - 1)) ? Transitivity::DoublyTransitive
                                                                  : Transitivity::Transitive;
}

bool PermGroup::same_subgroup(const PermGroup& other) const {
    if (degree_ != other.degree_ || order() != other.order()) return false;
    for (const auto& g : other.gens_) {
        if (!contains(g)) return false;
    }
    return true;
}

PermGroup generated_group(std::span<const Permutation> gens) {
    if (gens.empty()) throw UsageError("generated_group needs at least one generator");
    return PermGroup(gens.front().degree(), gens);
}

Transitivity transitivity_class(const PermGroup& g) {
    return g.transitivity();
}

BlockPartition transposition_blocks(std::span<const Permutation> ts, int degree) {
    std::vector<int> parent(degree);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& t : ts) {
        if (t.degree() != degree) throw UsageError("transposition degree mismatch");
        if (!t.is_transposition()) throw UsageError("not a transposition: " + t.to_string());
        auto [i, j] = t.transposed_points();
        parent[find(i - 1)] = find(j - 1);
    }
    std::vector<std::vector<int>> blocks(degree);
    for (int i = 0; i < degree; ++i) blocks[find(i)].push_back(i + 1);
    std::vector<std::vector<int>> nonempty;
    for (auto& b : blocks) {
        if (!b.empty()) nonempty.push_back(std::move(b));
    }
    BlockPartition part = make_partition(std::move(nonempty), degree);

    if (!ts.empty()) {
        std::uint64_t expected = 1;
        for (const auto& b : part.blocks) expected *= factorial(static_cast<int>(b.size()));
        if (PermGroup(degree, ts).order() != expected) {
            throw std::logic_error("transposition group is not a product of symmetric groups");
        }
    }
    return part;
}

std::uint64_t factorial(int n) {
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
    return r;
}

std::vector<Permutation> all_transpositions(int degree) {
    std::vector<Permutation> out;
    for (int i = 1; i <= degree; ++i) {
        for (int j = i + 1; j <= degree; ++j) out.push_back(Permutation::transposition(degree, i, j));
    }
    std::sort(out.begin(), out.end(), [](const Permutation& a, const Permutation& b) {
        return a.transposed_points() < b.transposed_points();
    });
    return out;
}

std::vector<Permutation> all_permutations(int degree) {
    std::vector<int> images(degree);
    std::iota(images.begin(), images.end(), 1);
    std::vector<Permutation> out;
    do {
        out.push_back(Permutation::from_images(images));
    } while (std::next_permutation(images.begin(), images.end()));
    return out;
}

}  // namespace hurwitz
