#include "hurwitz/catalog.hpp"

#include <cstdio>
#include <sstream>

#include "hurwitz/errors.hpp"
#include "push_frame_data.hpp"

namespace hurwitz {

char side_char(Side s) {
    return s == Side::A ? 'a' : 'b';
}

namespace {

const Generator kA = Generator::a(1);
const Generator kB = Generator::b(1);
const Generator kG = Generator::g(1);

/// Reduced words over a1^{±1}, b1^{±1} of length <= max_len in shortlex order.
std::vector<Word> handle_words(int max_len) {
    const Letter alphabet[] = {pos(kA), neg(kA), pos(kB), neg(kB)};
    std::vector<Word> out{Word()};
    std::vector<Word> layer{Word()};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Word> next;
        for (const auto& w : layer) {
            for (const auto& l : alphabet) {
                if (!w.empty() && w[w.size() - 1] == l.inverse()) continue;
                Word v = w;
                v.append(l);
                next.push_back(std::move(v));
            }
        }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

bool handle_letters_only(const Word& w) {
    for (const auto& l : w.letters()) {
        if (!l.gen.is_handle()) return false;
    }
    return true;
}

struct Candidate {
    EndoMap map;
    bool forward_shape = false;  // g1 conjugator uses handle letters only, short
};

std::vector<Candidate> frame_candidates(Side side, int max_len) {
    const Word peripheral = Word(kG) * commutator(Word(kA), Word(kB));
    std::vector<Candidate> out;
    for (const Word& c_prime : handle_words(max_len)) {
        for (int e : {1, -1}) {
            const Word factor = conjugate_by(Word{{kG, e}}, c_prime);
            Word new_a(kA);
            Word new_b(kB);
            (side == Side::A ? new_b : new_a) *= factor;
            // g1 image forced by g1' [a1', b1'] = g1 [a1, b1].
            const Word new_g = peripheral * commutator(new_a, new_b).inverse();
            auto conj = conjugator_of_letter(new_g, pos(kG));
            if (!conj) continue;
            EndoMap m(1, 1);
            m.set_image(kA, new_a);
            m.set_image(kB, new_b);
            m.set_image(kG, new_g);
            const bool short_handle = handle_letters_only(*conj) && static_cast<int>(conj->size()) <= max_len;
            out.push_back({std::move(m), short_handle});
        }
    }
    return out;
}

bool mutually_inverse(const EndoMap& f, const EndoMap& g) {
    for (std::size_t s = 0; s < f.rank(); ++s) {
        const Word x(f.generator_at(s));
        if (f.apply(g.apply(x)) != x || g.apply(f.apply(x)) != x) return false;
    }
    return true;
}

EndoMap search_side(Side side, int max_len) {
    const auto candidates = frame_candidates(side, max_len);
    for (const auto& fwd : candidates) {
        if (!fwd.forward_shape) continue;
        for (const auto& back : candidates) {
            if (!mutually_inverse(fwd.map, back.map)) continue;
            EndoMap m = fwd.map;
            m.set_inverse(back.map);
            if (validate_peripheral(m, 1, 1).ok()) return m;
        }
    }
    throw std::runtime_error(std::string("no point-push map found for side ") + side_char(side) +
                             " within conjugator length " + std::to_string(max_len));
}

std::string format_map_lines(const std::vector<Word>& images, const EndoMap& shape) {
    std::string s;
    for (std::size_t k = 0; k < images.size(); ++k) {
        const Generator g = shape.generator_at(k);
        if (images[k] == Word(g)) continue;
        s += "  " + g.to_string() + " -> " + images[k].to_string() + "\n";
    }
    return s;
}

std::string format_move(const ElementaryMove& m) {
    std::string s = "move " + m.name + "\n";
    std::vector<Word> images;
    for (std::size_t k = 0; k < m.map.rank(); ++k) images.push_back(m.map.image(m.map.generator_at(k)));
    s += format_map_lines(images, m.map);
    if (m.map.has_inverse()) {
        s += "inverse\n";
        s += format_map_lines(*m.map.inverse_images(), m.map);
    }
    s += "end\n";
    return s;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

struct ParsedCatalog {
    int h = 0;
    int w = 0;
    std::vector<ElementaryMove> moves;
};

ParsedCatalog parse_catalog_text(std::string_view text) {
    ParsedCatalog out;
    bool have_frame = false;
    std::size_t offset = 0;
    enum class State { Top, Forward, Inverse } state = State::Top;
    ElementaryMove current;
    std::vector<Word> inverse;
    bool has_inverse = false;

    while (offset <= text.size()) {
        const std::size_t nl = text.find('\n', offset);
        const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
        const std::string line = trim(text.substr(offset, end - offset));
        const std::size_t line_offset = offset;
        offset = end + 1;

        if (line.empty() || line[0] == '#') {
            if (nl == std::string_view::npos) break;
            continue;
        }
        if (state == State::Top) {
            if (line.rfind("frame", 0) == 0) {
                if (std::sscanf(line.c_str(), "frame h=%d w=%d", &out.h, &out.w) != 2 || out.h < 0 || out.w < 0) {
                    throw ParseError("malformed frame line", line_offset);
                }
                have_frame = true;
            } else if (line.rfind("move ", 0) == 0) {
                if (!have_frame) throw ParseError("move block before frame line", line_offset);
                current = ElementaryMove{trim(line.substr(5)), EndoMap(out.h, out.w)};
                inverse.clear();
                has_inverse = false;
                state = State::Forward;
            } else {
                throw ParseError("expected 'frame' or 'move'", line_offset);
            }
        } else if (line == "inverse") {
            if (state != State::Forward) throw ParseError("duplicate inverse section", line_offset);
            const EndoMap id(out.h, out.w);
            for (std::size_t k = 0; k < id.rank(); ++k) inverse.emplace_back(id.generator_at(k));
            has_inverse = true;
            state = State::Inverse;
        } else if (line == "end") {
            if (has_inverse) current.map.set_inverse_images(inverse);
            out.moves.push_back(std::move(current));
            state = State::Top;
        } else {
            const auto arrow = line.find("->");
            if (arrow == std::string::npos) throw ParseError("expected 'gen -> word'", line_offset);
            Word lhs;
            Word rhs;
            try {
                lhs = Word::parse(trim(line.substr(0, arrow)));
                rhs = Word::parse(trim(line.substr(arrow + 2)));
            } catch (const ParseError& e) {
                throw ParseError(e.what(), line_offset);
            }
            if (lhs.size() != 1 || lhs[0].sign != 1) throw ParseError("left side must be one generator", line_offset);
            try {
                if (state == State::Forward) {
                    current.map.set_image(lhs[0].gen, rhs);
                } else {
                    inverse[current.map.slot(lhs[0].gen)] = rhs;
                }
            } catch (const UsageError& e) {
                throw ParseError(e.what(), line_offset);
            }
        }
        if (nl == std::string_view::npos) break;
    }
    if (state != State::Top) throw ParseError("unterminated move block", text.size());
    if (!have_frame) throw ParseError("missing frame line", 0);
    return out;
}

}  // namespace

PushFrame search_push_frame(int max_len) {
    return PushFrame{search_side(Side::A, max_len), search_side(Side::B, max_len)};
}

std::string format_push_frame(const PushFrame& frame) {
    std::string s = "# point-push maps of the last puncture, reference frame h=1 w=1\n";
    s += "# generated by `hurwitz search-pushes`; do not edit by hand\n";
    s += "frame h=1 w=1\n";
    s += format_move({"Pa1", frame.side_a});
    s += format_move({"Pb1", frame.side_b});
    return s;
}

PushFrame parse_push_frame(std::string_view text) {
    ParsedCatalog cat = parse_catalog_text(text);
    if (cat.h != 1 || cat.w != 1) throw ParseError("push frame must use frame h=1 w=1", 0);
    PushFrame frame;
    bool got_a = false;
    bool got_b = false;
    for (auto& m : cat.moves) {
        if (m.name == "Pa1") {
            frame.side_a = m.map;
            got_a = true;
        } else if (m.name == "Pb1") {
            frame.side_b = m.map;
            got_b = true;
        }
    }
    if (!got_a || !got_b) throw ParseError("push frame needs moves Pa1 and Pb1", 0);
    return frame;
}

const PushFrame& shipped_push_frame() {
    static const PushFrame frame = parse_push_frame(kShippedPushFrame);
    return frame;
}

EndoMap braid_map(int h, int w, int j) {
    if (j < 1 || j >= w) throw UsageError("braid index out of range");
    EndoMap m(h, w);
    const Word gj(Generator::g(j));
    const Word gk(Generator::g(j + 1));
    m.set_image(Generator::g(j), gk);
    m.set_image(Generator::g(j + 1), conjugate_by(gj, gk.inverse()));
    EndoMap inv(h, w);
    inv.set_image(Generator::g(j), conjugate_by(gk, gj));
    inv.set_image(Generator::g(j + 1), gj);
    m.set_inverse(inv);
    return m;
}

EndoMap transport_push(const EndoMap& frame_map, int h, int w, int i) {
    if (i < 1 || i > h || w < 1) throw UsageError("push needs 1 <= i <= h and w >= 1");
    Word c;
    for (int k = 1; k < i; ++k) c *= commutator(Word(Generator::a(k)), Word(Generator::b(k)));
    // Substitution a1 -> a_i, b1 -> b_i, g1 -> C^-1 g_w C.
    EndoMap subst(1, 1);
    subst.set_image(kA, Word(Generator::a(i)));
    subst.set_image(kB, Word(Generator::b(i)));
    subst.set_image(kG, c.inverse() * Word(Generator::g(w)) * c);

    auto instantiate = [&](const EndoMap& f) {
        EndoMap m(h, w);
        m.set_image(Generator::a(i), subst.apply(f.image(kA)));
        m.set_image(Generator::b(i), subst.apply(f.image(kB)));
        m.set_image(Generator::g(w), c * subst.apply(f.image(kG)) * c.inverse());
        return m;
    };
    EndoMap out = instantiate(frame_map);
    if (frame_map.has_inverse()) out.set_inverse(instantiate(frame_map.inverse()));
    return out;
}

MoveCatalog MoveCatalog::build(int h, int w) {
    return build(h, w, shipped_push_frame());
}

MoveCatalog MoveCatalog::build(int h, int w, const PushFrame& frame) {
    if (h < 0 || w < 0) throw UsageError("catalog needs h, w >= 0");
    MoveCatalog cat;
    cat.h_ = h;
    cat.w_ = w;
    for (int j = 1; j < w; ++j) cat.moves_.push_back({"B" + std::to_string(j), braid_map(h, w, j)});
    if (w >= 1) {
        for (int i = 1; i <= h; ++i) {
            cat.moves_.push_back({"Pa" + std::to_string(i), transport_push(frame.side_a, h, w, i)});
            cat.moves_.push_back({"Pb" + std::to_string(i), transport_push(frame.side_b, h, w, i)});
        }
    }
    return cat;
}

MoveCatalog MoveCatalog::parse(std::string_view text) {
    ParsedCatalog parsed = parse_catalog_text(text);
    MoveCatalog cat;
    cat.h_ = parsed.h;
    cat.w_ = parsed.w;
    cat.moves_ = std::move(parsed.moves);
    return cat;
}

std::string MoveCatalog::to_text() const {
    std::string s = "# hurwitz move catalog\n";
    s += "frame h=" + std::to_string(h_) + " w=" + std::to_string(w_) + "\n";
    for (const auto& m : moves_) s += format_move(m);
    return s;
}

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

std::string MoveCatalog::hash() const {
    return fnv1a_hex(to_text());
}

const ElementaryMove* MoveCatalog::find(std::string_view name) const {
    for (const auto& m : moves_) {
        if (m.name == name) return &m;
    }
    return nullptr;
}

const EndoMap& MoveCatalog::braid(int j) const {
    const auto* m = find("B" + std::to_string(j));
    if (!m) throw UsageError("braid B" + std::to_string(j) + " not in catalog");
    return m->map;
}

const EndoMap& MoveCatalog::push(int i, Side side) const {
    const std::string name = std::string("P") + side_char(side) + std::to_string(i);
    const auto* m = find(name);
    if (!m) throw UsageError("push " + name + " not in catalog");
    return m->map;
}

}  // namespace hurwitz
