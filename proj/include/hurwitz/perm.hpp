#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hurwitz {

inline constexpr int kMaxDegree = 16;

/**
 * A permutation of {1..d}, d <= 16, stored inline in one-line notation.
 *
 * Products are read left to right: compose(p, q) applies p first and then q.
 * This convention is used everywhere in the library, including the relator
 * t_1 ... t_w [a_1,b_1] ... [a_h,b_h] = 1.
 */
class Permutation {
public:
    Permutation() = default;

    /// Identity of the given degree.
    explicit Permutation(int degree);

    /// Build from 1-based one-line images; throws UsageError if not a bijection.
    static Permutation from_images(std::span<const int> images);
    static Permutation from_images(std::initializer_list<int> images);

    /// The transposition (i j) of S_degree, 1-based.
    static Permutation transposition(int degree, int i, int j);

    /// The cycle (p_1 p_2 ... p_k): p_1 -> p_2 -> ... -> p_k -> p_1.
    static Permutation cycle(int degree, std::initializer_list<int> points);
    static Permutation cycle(int degree, std::span<const int> points);

    /// Parses comma-separated one-line images, e.g. "2,1,3".
    static Permutation parse(std::string_view text);

    int degree() const { return degree_; }

    /// Image of a 1-based point.
    int operator()(int point) const { return img_[point - 1] + 1; }

    /// Image of a 0-based point, 0-based.
    int image0(int i) const { return img_[i]; }

    bool is_identity() const;
    bool is_transposition() const;

    /// For a transposition, its two moved points (1-based, ascending).
    std::pair<int, int> transposed_points() const;

    /// Number of points moved.
    int support_size() const;

    Permutation inverse() const;

    std::string to_string() const;

    /// Cycle notation, e.g. "(1 2 3)(4 5)", "()" for the identity.
    std::string cycle_string() const;

    std::uint64_t packed() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend std::strong_ordering operator<=>(const Permutation&, const Permutation&) = default;

private:
    std::array<std::uint8_t, kMaxDegree> img_{};
    std::uint8_t degree_ = 0;

    friend Permutation compose(const Permutation& p, const Permutation& q);
};

/// Left-to-right product: apply p, then q.
Permutation compose(const Permutation& p, const Permutation& q);

inline Permutation operator*(const Permutation& p, const Permutation& q) { return compose(p, q); }

/// s^-1 t s under the left-to-right convention.
Permutation conjugate(const Permutation& t, const Permutation& s);

/// [a,b] = a b a^-1 b^-1.
Permutation commutator(const Permutation& a, const Permutation& b);

/// Product of a sequence, identity of `degree` when empty.
Permutation product(std::span<const Permutation> perms, int degree);

/// Sign as +1 / -1.
int sign(const Permutation& p);

struct CycleType {
    std::vector<int> parts;  // descending, sums to d

    int degree() const;
    /// |lambda| = sum (lambda_m - 1) = d - (number of parts).
    int weight() const;
    std::string to_string() const;

    friend bool operator==(const CycleType&, const CycleType&) = default;
};

CycleType cycle_type(const Permutation& p);

/// Cycles of p (fixed points included) as 1-based point lists. Each cycle
/// starts at its smallest point and follows p; cycles are ordered by that
/// smallest point.
std::vector<std::vector<int>> cycles(const Permutation& p);

/// Disjoint nonempty blocks covering {1..d}; each block ascending, blocks
/// ordered by their smallest element.
struct BlockPartition {
    std::vector<std::vector<int>> blocks;

    int degree() const;
    std::size_t size() const { return blocks.size(); }
    /// Index of the block containing a 1-based point.
    int block_of(int point) const;
    bool is_single_block() const { return blocks.size() == 1; }
    std::string to_string() const;

    friend bool operator==(const BlockPartition&, const BlockPartition&) = default;
};

/// Normalizes block order/content and checks disjointness and coverage.
BlockPartition make_partition(std::vector<std::vector<int>> blocks, int degree);

enum class Transitivity { Intransitive, Transitive, DoublyTransitive };

std::string_view to_string(Transitivity t);

/**
 * Subgroup of S_d given by generators, backed by a Schreier-Sims base and
 * strong generating set.
 */
class PermGroup {
public:
    PermGroup(int degree, std::span<const Permutation> generators);

    int degree() const { return degree_; }
    const std::vector<Permutation>& generators() const { return gens_; }

    /// Exact order; 16! fits comfortably in 64 bits.
    std::uint64_t order() const;
    bool contains(const Permutation& p) const;

    BlockPartition orbits() const;
    bool is_transitive() const;
    bool is_symmetric() const;
    Transitivity transitivity() const;

    /// Same subgroup of S_d.
    bool same_subgroup(const PermGroup& other) const;

private:
    struct Level {
        int base = 0;  // 0-based base point
        std::vector<Permutation> gens;
        std::vector<int> orbit;
        // transversal[x] maps base to x; valid where has_rep[x].
        std::vector<Permutation> transversal;
        std::vector<bool> has_rep;
    };

    /// Adds g as a strong generator of levels from..to and restores the
    /// Schreier condition below.
    void extend(std::size_t from, std::size_t to, const Permutation& g);
    void close_level(std::size_t level);
    void rebuild_orbit(Level& lv) const;
    /// Sifts g from `start`; returns residue and the level where it stopped.
    std::pair<Permutation, std::size_t> strip(Permutation g, std::size_t start) const;

    int degree_;
    std::vector<Permutation> gens_;
    std::vector<Level> levels_;
};

/// Group generated by a nonempty list of permutations of common degree.
PermGroup generated_group(std::span<const Permutation> gens);

Transitivity transitivity_class(const PermGroup& g);

/// Orbit partition of the group generated by transpositions. The generated
/// group is checked to be the product of the symmetric groups on the blocks.
BlockPartition transposition_blocks(std::span<const Permutation> ts, int degree);

std::uint64_t factorial(int n);

/// All transpositions of S_d in lexicographic order (1 2), (1 3), ..., (d-1 d).
std::vector<Permutation> all_transpositions(int degree);

/// All elements of S_d in lexicographic one-line order.
std::vector<Permutation> all_permutations(int degree);

}  // namespace hurwitz
