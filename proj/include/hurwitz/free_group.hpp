#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hurwitz {

// Free group on handle generators a_1, b_1, ..., a_h, b_h and puncture
// generators g_1, ..., g_w. The surface relator is
//     R = g_1 g_2 ... g_w [a_1,b_1] ... [a_h,b_h],   [x,y] = x y x^-1 y^-1.

enum class GenKind : std::uint8_t { HandleA = 0, HandleB = 1, Puncture = 2 };

struct Generator {
    GenKind kind = GenKind::Puncture;
    int index = 1;  // 1-based

    static Generator a(int i) { return {GenKind::HandleA, i}; }
    static Generator b(int i) { return {GenKind::HandleB, i}; }
    static Generator g(int j) { return {GenKind::Puncture, j}; }

    bool is_handle() const { return kind != GenKind::Puncture; }
    std::string to_string() const;

    friend bool operator==(const Generator&, const Generator&) = default;
    friend std::strong_ordering operator<=>(const Generator&, const Generator&) = default;
};

struct Letter {
    Generator gen;
    int sign = 1;  // +1 or -1

    Letter inverse() const { return {gen, -sign}; }
    std::string to_string() const;

    friend bool operator==(const Letter&, const Letter&) = default;
    friend std::strong_ordering operator<=>(const Letter&, const Letter&) = default;
};

inline Letter pos(Generator g) { return {g, 1}; }
inline Letter neg(Generator g) { return {g, -1}; }

/// A freely reduced word. Reduction is maintained on every append.
class Word {
public:
    Word() = default;
    Word(std::initializer_list<Letter> letters);
    explicit Word(Generator g) { append(pos(g)); }

    /// Parses juxtaposed tokens such as "a1 b1^-1 g3"; "1" is the empty word.
    static Word parse(std::string_view text);

    void append(Letter l);
    Word& operator*=(const Word& rhs);
    friend Word operator*(Word lhs, const Word& rhs) { return lhs *= rhs; }

    Word inverse() const;

    std::span<const Letter> letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    const Letter& operator[](std::size_t i) const { return letters_[i]; }

    /// Drops all letters whose generator satisfies `pred`, then reduces.
    template <class Pred>
    Word erase_if(Pred pred) const {
        Word out;
        for (const auto& l : letters_) {
            if (!pred(l.gen)) out.append(l);
        }
        return out;
    }

    std::string to_string() const;

    friend bool operator==(const Word&, const Word&) = default;
    friend std::strong_ordering operator<=>(const Word&, const Word&);

private:
    std::vector<Letter> letters_;
};

/// Free reduction of an arbitrary letter sequence.
Word reduce(std::span<const Letter> letters);

Word commutator(const Word& x, const Word& y);

/// Conjugate c x c^-1.
Word conjugate_by(const Word& x, const Word& c);

/// Cyclically reduced core of a word.
Word cyclic_reduction(const Word& w);

/// True iff u and v are conjugate in the free group.
bool is_conjugate(const Word& u, const Word& v);

/// R = g_1 ... g_w [a_1,b_1] ... [a_h,b_h].
Word relator(int h, int w);

/// If `w` has the form c x^{sign} c^-1 with x a single generator letter,
/// returns c. Used to recognise images of puncture loops.
std::optional<Word> conjugator_of_letter(const Word& w, Letter x);

/**
 * Endomorphism of the free group of rank 2h + w, given by generator images.
 * An automorphism may carry the images of its inverse.
 */
class EndoMap {
public:
    EndoMap() = default;
    /// Identity map.
    EndoMap(int h, int w);

    int handles() const { return h_; }
    int punctures() const { return w_; }
    std::size_t rank() const { return images_.size(); }

    std::size_t slot(Generator g) const;
    Generator generator_at(std::size_t slot) const;

    const Word& image(Generator g) const { return images_[slot(g)]; }
    void set_image(Generator g, Word w) { images_[slot(g)] = std::move(w); }

    bool has_inverse() const { return inverse_.has_value(); }
    /// The stored inverse as a map (whose own inverse is this map).
    EndoMap inverse() const;
    void set_inverse_images(std::vector<Word> images);
    void set_inverse(const EndoMap& inv);
    void clear_inverse() { inverse_.reset(); }
    const std::optional<std::vector<Word>>& inverse_images() const { return inverse_; }

    Word apply(const Word& w) const;

    /// (this ∘ next)(x) = this(next(x)); inverses are composed when both exist.
    EndoMap after(const EndoMap& next) const;

    bool is_identity() const;

    friend bool operator==(const EndoMap&, const EndoMap&) = default;

private:
    int h_ = 0;
    int w_ = 0;
    std::vector<Word> images_;
    std::optional<std::vector<Word>> inverse_;
};

Word apply_endo(const EndoMap& e, const Word& w);

struct PeripheralReport {
    bool inverse_ok = false;
    bool punctures_ok = false;
    bool relator_ok = false;
    bool relator_exact = false;
    /// After deleting puncture letters, every handle generator maps to itself:
    /// the map induces the identity on the closed-up surface group, so it
    /// moves punctures only.
    bool handles_fixed_mod_punctures = false;
    /// e(g_j) is conjugate to g_{puncture_perm[j-1]}.
    std::vector<int> puncture_perm;
    std::vector<std::string> failures;

    bool ok() const {
        return inverse_ok && punctures_ok && relator_ok && handles_fixed_mod_punctures;
    }
    std::string summary() const;
};

/// Soundness check for a move: throws UsageError if e has no stored inverse.
PeripheralReport validate_peripheral(const EndoMap& e, int h, int w);

}  // namespace hurwitz
