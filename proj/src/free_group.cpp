#include "hurwitz/free_group.hpp"

#include <algorithm>
#include <cctype>

#include "hurwitz/errors.hpp"

namespace hurwitz {

std::string Generator::to_string() const {
    const char c = kind == GenKind::HandleA ? 'a' : kind == GenKind::HandleB ? 'b' : 'g';
    return c + std::to_string(index);
}

std::string Letter::to_string() const {
    return sign > 0 ? gen.to_string() : gen.to_string() + "^-1";
}

Word::Word(std::initializer_list<Letter> letters) {
    for (const auto& l : letters) append(l);
}

void Word::append(Letter l) {
    if (!letters_.empty() && letters_.back() == l.inverse()) {
        letters_.pop_back();
    } else {
        letters_.push_back(l);
    }
}

Word& Word::operator*=(const Word& rhs) {
    for (const auto& l : rhs.letters_) append(l);
    return *this;
}

Word Word::inverse() const {
    Word r;
    r.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) r.letters_.push_back(it->inverse());
    return r;
}

std::string Word::to_string() const {
    if (letters_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) s += ' ';
        s += letters_[i].to_string();
    }
    return s;
}

std::strong_ordering operator<=>(const Word& x, const Word& y) {
    return std::lexicographical_compare_three_way(x.letters_.begin(), x.letters_.end(),
                                                  y.letters_.begin(), y.letters_.end());
}

Word Word::parse(std::string_view text) {
    Word w;
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip();
    if (pos < text.size() && text[pos] == '1') {
        const std::size_t at = pos++;
        skip();
        if (pos != text.size()) throw ParseError("trailing text after empty word", at);
        return w;
    }
    while (pos < text.size()) {
        const std::size_t start = pos;
        GenKind kind;
        switch (text[pos]) {
            case 'a': kind = GenKind::HandleA; break;
            case 'b': kind = GenKind::HandleB; break;
            case 'g': kind = GenKind::Puncture; break;
            default: throw ParseError("expected generator a/b/g", pos);
        }
        ++pos;
        int index = 0;
        bool any = false;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            index = index * 10 + (text[pos] - '0');
            any = true;
            ++pos;
        }
        if (!any || index < 1) throw ParseError("expected positive generator index", start + 1);
        int sign = 1;
        if (pos < text.size() && text[pos] == '^') {
            if (text.substr(pos, 3) == "^-1") {
                sign = -1;
                pos += 3;
            } else if (text.substr(pos, 2) == "^1") {
                pos += 2;
            } else {
                throw ParseError("expected exponent ^-1", pos);
            }
        }
        if (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) {
            throw ParseError("expected whitespace between letters", pos);
        }
        w.append({{kind, index}, sign});
        skip();
    }
    return w;
}

Word reduce(std::span<const Letter> letters) {
    Word w;
    for (const auto& l : letters) w.append(l);
    return w;
}

Word commutator(const Word& x, const Word& y) {
    return x * y * x.inverse() * y.inverse();
}

Word conjugate_by(const Word& x, const Word& c) {
    return c * x * c.inverse();
}

Word cyclic_reduction(const Word& w) {
    auto letters = w.letters();
    std::size_t lo = 0;
    std::size_t hi = letters.size();
    while (hi - lo >= 2 && letters[lo] == letters[hi - 1].inverse()) {
        ++lo;
        --hi;
    }
    return reduce(letters.subspan(lo, hi - lo));
}

bool is_conjugate(const Word& u, const Word& v) {
    const Word cu = cyclic_reduction(u);
    const Word cv = cyclic_reduction(v);
    if (cu.size() != cv.size()) return false;
    if (cu.empty()) return true;
    const auto a = cu.letters();
    const auto b = cv.letters();
    const std::size_t n = a.size();
    for (std::size_t shift = 0; shift < n; ++shift) {
        bool match = true;
        for (std::size_t i = 0; i < n && match; ++i) match = a[(i + shift) % n] == b[i];
        if (match) return true;
    }
    return false;
}

Word relator(int h, int w) {
    if (h < 0 || w < 0) throw UsageError("relator needs h, w >= 0");
    Word r;
    for (int j = 1; j <= w; ++j) r.append(pos(Generator::g(j)));
    for (int i = 1; i <= h; ++i) r *= commutator(Word(Generator::a(i)), Word(Generator::b(i)));
    return r;
}

std::optional<Word> conjugator_of_letter(const Word& w, Letter x) {
    const std::size_t n = w.size();
    if (n % 2 == 0) return std::nullopt;
    const std::size_t k = n / 2;
    if (w[k] != x) return std::nullopt;
    for (std::size_t i = 0; i < k; ++i) {
        if (w[k + 1 + i] != w[k - 1 - i].inverse()) return std::nullopt;
    }
    return reduce(w.letters().subspan(0, k));
}

// ---------------------------------------------------------------------------

EndoMap::EndoMap(int h, int w) : h_(h), w_(w) {
    if (h < 0 || w < 0) throw UsageError("EndoMap needs h, w >= 0");
    images_.reserve(2 * h + w);
    for (std::size_t s = 0; s < static_cast<std::size_t>(2 * h + w); ++s) {
        images_.emplace_back(generator_at(s));
    }
}

std::size_t EndoMap::slot(Generator g) const {
    switch (g.kind) {
        case GenKind::HandleA:
        case GenKind::HandleB:
            if (g.index < 1 || g.index > h_) break;
            return 2 * (g.index - 1) + (g.kind == GenKind::HandleB ? 1 : 0);
        case GenKind::Puncture:
            if (g.index < 1 || g.index > w_) break;
            return 2 * h_ + (g.index - 1);
    }
    throw UsageError("generator " + g.to_string() + " outside the free group of h=" +
                     std::to_string(h_) + " w=" + std::to_string(w_));
}

Generator EndoMap::generator_at(std::size_t s) const {
    const int si = static_cast<int>(s);
    if (si < 2 * h_) return si % 2 == 0 ? Generator::a(si / 2 + 1) : Generator::b(si / 2 + 1);
    return Generator::g(si - 2 * h_ + 1);
}

EndoMap EndoMap::inverse() const {
    if (!inverse_) throw UsageError("map has no stored inverse");
    EndoMap r(h_, w_);
    r.images_ = *inverse_;
    r.inverse_ = images_;
    return r;
}

void EndoMap::set_inverse_images(std::vector<Word> images) {
    if (images.size() != images_.size()) throw UsageError("inverse image count mismatch");
    inverse_ = std::move(images);
}

void EndoMap::set_inverse(const EndoMap& inv) {
    if (inv.h_ != h_ || inv.w_ != w_) throw UsageError("inverse rank mismatch");
    inverse_ = inv.images_;
}

Word EndoMap::apply(const Word& w) const {
    Word out;
    for (const auto& l : w.letters()) {
        const Word& img = images_[slot(l.gen)];
        out *= l.sign > 0 ? img : img.inverse();
    }
    return out;
}

EndoMap EndoMap::after(const EndoMap& next) const {
    if (next.h_ != h_ || next.w_ != w_) throw UsageError("composition rank mismatch");
    EndoMap r(h_, w_);
    for (std::size_t s = 0; s < images_.size(); ++s) r.images_[s] = apply(next.images_[s]);
    if (inverse_ && next.inverse_) {
        const EndoMap inv_this = inverse();
        const EndoMap inv_next = next.inverse();
        std::vector<Word> inv(images_.size());
        for (std::size_t s = 0; s < images_.size(); ++s) inv[s] = inv_next.apply(inv_this.images_[s]);
        r.inverse_ = std::move(inv);
    }
    return r;
}

bool EndoMap::is_identity() const {
    for (std::size_t s = 0; s < images_.size(); ++s) {
        if (images_[s] != Word(generator_at(s))) return false;
    }
    return true;
}

Word apply_endo(const EndoMap& e, const Word& w) {
    return e.apply(w);
}

std::string PeripheralReport::summary() const {
    if (ok()) return "ok";
    std::string s;
    for (const auto& f : failures) {
        if (!s.empty()) s += "; ";
        s += f;
    }
    return s;
}

PeripheralReport validate_peripheral(const EndoMap& e, int h, int w) {
    if (e.handles() != h || e.punctures() != w) throw UsageError("map rank does not match (h, w)");
    if (!e.has_inverse()) throw UsageError("validate_peripheral requires a stored inverse");
    PeripheralReport rep;
    const EndoMap inv = e.inverse();

    rep.inverse_ok = true;
    for (std::size_t s = 0; s < e.rank(); ++s) {
        const Word x(e.generator_at(s));
        if (e.apply(inv.apply(x)) != x || inv.apply(e.apply(x)) != x) {
            rep.inverse_ok = false;
            rep.failures.push_back("inverse does not cancel on " + x.to_string());
        }
    }

    rep.punctures_ok = true;
    std::vector<bool> hit(w, false);
    for (int j = 1; j <= w; ++j) {
        const Word img = e.image(Generator::g(j));
        int found = 0;
        for (int k = 1; k <= w && !found; ++k) {
            if (is_conjugate(img, Word(Generator::g(k)))) found = k;
        }
        if (!found) {
            rep.punctures_ok = false;
            rep.failures.push_back("image of g" + std::to_string(j) + " is not conjugate to a puncture");
            rep.puncture_perm.push_back(0);
            continue;
        }
        if (hit[found - 1]) {
            rep.punctures_ok = false;
            rep.failures.push_back("puncture classes not permuted bijectively");
        }
        hit[found - 1] = true;
        rep.puncture_perm.push_back(found);
    }

    const Word r = relator(h, w);
    const Word er = e.apply(r);
    rep.relator_exact = er == r;
    rep.relator_ok = is_conjugate(er, r);
    if (!rep.relator_ok) {
        rep.failures.push_back(is_conjugate(er, r.inverse()) ? "relator mapped to a conjugate of its inverse"
                                                             : "relator not preserved up to conjugacy");
    }

    rep.handles_fixed_mod_punctures = true;
    auto is_puncture = [](const Generator& g) { return g.kind == GenKind::Puncture; };
    for (int i = 1; i <= h; ++i) {
        for (Generator g : {Generator::a(i), Generator::b(i)}) {
            if (e.image(g).erase_if(is_puncture) != Word(g)) {
                rep.handles_fixed_mod_punctures = false;
                rep.failures.push_back("image of " + g.to_string() + " changes the closed surface class");
            }
        }
    }
    return rep;
}

}  // namespace hurwitz
