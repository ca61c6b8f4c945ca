#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hurwitz/free_group.hpp"
#include "hurwitz/perm.hpp"

namespace hurwitz {

struct HandlePair {
    Permutation a;
    Permutation b;

    friend bool operator==(const HandlePair&, const HandlePair&) = default;
    friend auto operator<=>(const HandlePair&, const HandlePair&) = default;
};

/// Closed 1-based index window [first, last] into the transposition list.
/// Empty when last < first.
struct IndexRange {
    int first = 1;
    int last = 0;

    int size() const { return last >= first ? last - first + 1 : 0; }
    bool contains(int j) const { return j >= first && j <= last; }
    static IndexRange all(int w) { return {1, w}; }
};

/**
 * Monodromy images of a rigidified simply-branched cover of a genus-h
 * surface: handle images (a_i, b_i) and puncture images t_1..t_w.
 *
 * A valid system has every t_j a transposition and satisfies
 *     t_1 ... t_w [a_1,b_1] ... [a_h,b_h] = 1.
 * Tuples are not identified under simultaneous conjugation; the labeling of
 * the fibre over the basepoint is part of the data.
 */
class HurwitzSystem {
public:
    HurwitzSystem() = default;
    HurwitzSystem(int degree, std::vector<HandlePair> handles, std::vector<Permutation> transpositions);

    int degree() const { return d_; }
    int genus_base() const { return static_cast<int>(handles_.size()); }
    int h() const { return genus_base(); }
    int w() const { return static_cast<int>(ts_.size()); }

    const std::vector<HandlePair>& handles() const { return handles_; }
    const std::vector<Permutation>& transpositions() const { return ts_; }
    const Permutation& t(int j) const { return ts_.at(j - 1); }
    const HandlePair& handle(int i) const { return handles_.at(i - 1); }

    HurwitzSystem with_transpositions(std::vector<Permutation> ts) const;
    HurwitzSystem with_handle(int i, HandlePair pair) const;

    /// Image of a free-group generator.
    const Permutation& image(Generator g) const;
    /// Image of a word under the monodromy homomorphism.
    Permutation evaluate(const Word& w) const;
    /// The system rho ∘ e: every generator x is sent to rho(e(x)).
    HurwitzSystem precompose(const EndoMap& e) const;

    /// t_1 ... t_w [a_1,b_1] ... [a_h,b_h].
    Permutation relator_value() const;

    /// Canonical one-line text form, e.g.
    /// "d=3 h=1 w=4 | t: 2,1,3 ; 1,3,2 ; 1,3,2 ; 2,1,3 | ab: 1,2,3 , 1,2,3".
    std::string to_line() const;
    static HurwitzSystem parse(std::string_view line);

    /// Compact byte key (0-based images, transpositions then handles).
    std::string packed_key() const;
    static HurwitzSystem from_packed(std::string_view key, int degree, int h, int w);

    friend bool operator==(const HurwitzSystem&, const HurwitzSystem&) = default;

private:
    int d_ = 0;
    std::vector<HandlePair> handles_;
    std::vector<Permutation> ts_;
};

using SystemKey = std::string;

struct ValidationReport {
    bool ok = true;
    std::string first_violation;
};

ValidationReport validate(const HurwitzSystem& sys);

/// d(h-1) + w/2 + 1, the genus of the covering curve when it is connected.
int genus(const HurwitzSystem& sys);
int genus(int d, int h, int w);

PermGroup monodromy(const HurwitzSystem& sys);
bool is_full_monodromy(const HurwitzSystem& sys);
bool connected_cover(const HurwitzSystem& sys);

/// Blocks of the group generated by the transpositions with indices in range.
BlockPartition branching_blocks(const HurwitzSystem& sys, IndexRange range);

SystemKey serialize(const HurwitzSystem& sys);
HurwitzSystem deserialize(std::string_view key);

using SystemFilter = std::function<bool(const HurwitzSystem&)>;

/// Rough size of the (d, h, w) system set: C(d,2)^w (d!)^(2h-1).
double estimated_system_count(int d, int h, int w);

/**
 * Exhaustive enumeration of valid systems for fixed (d, h, w).
 *
 * Transposition tuples are visited in lexicographic order (position 1 most
 * significant, transpositions ordered (1 2) < (1 3) < ... ). For each tuple
 * with product P the handle tuples with [a_1,b_1]...[a_h,b_h] = P^-1 are
 * produced from a table of commutator solutions.
 */
class SystemEnumerator {
public:
    static constexpr double kDefaultLimit = 1e9;

    /// Throws BudgetExceeded when the estimated count or the tuple space
    /// exceeds `limit`.
    SystemEnumerator(int d, int h, int w, double limit = kDefaultLimit);

    int degree() const { return d_; }
    int h() const { return h_; }
    int w() const { return w_; }

    /// Number of transposition tuples, C(d,2)^w.
    std::uint64_t tuple_space_size() const { return tuple_space_; }

    void for_each(const std::function<void(const HurwitzSystem&)>& emit,
                  const SystemFilter& filter = {}) const;

    /// Enumerates only transposition tuples with index in [lo, hi); disjoint
    /// ranges partition the output deterministically.
    void for_each_in_range(std::uint64_t lo, std::uint64_t hi,
                           const std::function<void(const HurwitzSystem&)>& emit,
                           const SystemFilter& filter = {}) const;

    /// Cardinality of the unfiltered enumeration, counted with the same tuple
    /// iteration but multiplicities from the commutator table.
    std::uint64_t count() const;

    /// Handle tuples with [a_1,b_1]...[a_h,b_h] = target, in enumeration order.
    std::vector<std::vector<HandlePair>> handle_solutions(const Permutation& target) const;

private:
    void handle_recurse(int level, const Permutation& remaining, std::vector<HandlePair>& prefix,
                        const std::function<void(const std::vector<HandlePair>&)>& emit) const;
    std::size_t element_index(const Permutation& p) const;

    int d_, h_, w_;
    std::uint64_t tuple_space_ = 1;
    std::vector<Permutation> transpositions_;
    std::vector<Permutation> elements_;        // S_d, only when h >= 1
    std::unordered_map<std::uint64_t, std::uint32_t> element_rank_;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> commutator_pairs_;
    std::vector<std::uint64_t> count_table_;   // #handle tuples with product = element
};

/// All valid systems for (d, h, w) passing the filter, in enumeration order.
std::vector<HurwitzSystem> enumerate_systems(int d, int h, int w, const SystemFilter& filter = {},
                                             double limit = SystemEnumerator::kDefaultLimit);

/// Random valid system: random transpositions and handles 2..h, then handle 1
/// drawn uniformly among solutions of the remaining relator. With
/// `full_monodromy`, resamples until the monodromy is S_d.
HurwitzSystem sample_system(int d, int h, int w, std::mt19937_64& rng, bool full_monodromy = true);

/// Monodromy group of the system with positions j, j+1 removed.
PermGroup residual_monodromy(const HurwitzSystem& sys, int j);

}  // namespace hurwitz
