#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hurwitz/free_group.hpp"

namespace hurwitz {

/// Which handle loop the last puncture is pushed around. Pushing around the
/// a-loop modifies the b-image and vice versa.
enum class Side { A, B };

char side_char(Side s);

struct ElementaryMove {
    std::string name;  // "B3", "Pa1", "Pb2"
    EndoMap map;       // carries its inverse
};

/**
 * Point-push automorphisms in the reference frame h = 1, w = 1 (generators
 * a1, b1, g1). Each fixes the word g1 [a1,b1] exactly. They are produced by
 * search_push_frame() and shipped frozen in data/handle_push.cat.
 */
struct PushFrame {
    EndoMap side_a;  // modifies b1
    EndoMap side_b;  // modifies a1
};

/// Bounded search over ansatz maps
///   x  -> x (C' g1^e C'^-1)       (x = b1 for side a, a1 for side b)
///   g1 -> C g1 C^-1
/// with C' ranging over reduced handle words of length <= max_len and the g1
/// image forced by fixing g1 [a1,b1]. A forward candidate must have a handle
/// word C of length <= max_len; its inverse is located among all candidates.
/// Deterministic: the first acceptable candidate in shortlex order wins.
PushFrame search_push_frame(int max_len = 6);

/// Frame bundled into the library at build time.
const PushFrame& shipped_push_frame();

/// The catalog text format, restricted to the two frame moves.
std::string format_push_frame(const PushFrame& frame);
PushFrame parse_push_frame(std::string_view text);

/**
 * Elementary moves for fixed (h, w): braids B1..B_{w-1} and pushes of the
 * last puncture Pa1, Pb1, ..., Pa_h, Pb_h, each with its inverse.
 *
 * Braid Bj:  g_j -> g_{j+1},  g_{j+1} -> g_{j+1}^-1 g_j g_{j+1}.
 * Push maps for handle i are the frame maps transported by
 * a1 -> a_i, b1 -> b_i, g1 -> C^-1 g_w C with C = [a_1,b_1]...[a_{i-1},b_{i-1}].
 */
class MoveCatalog {
public:
    MoveCatalog() = default;

    static MoveCatalog build(int h, int w);
    static MoveCatalog build(int h, int w, const PushFrame& frame);

    /// Full catalog file: "frame h=.. w=..", then blocks
    ///   move NAME / "  gen -> word" lines / inverse / lines / end
    /// Generators not listed map to themselves.
    static MoveCatalog parse(std::string_view text);
    std::string to_text() const;

    /// FNV-1a 64-bit hash of to_text(), as 16 hex digits.
    std::string hash() const;

    int handles() const { return h_; }
    int punctures() const { return w_; }

    const std::vector<ElementaryMove>& moves() const { return moves_; }
    const ElementaryMove* find(std::string_view name) const;

    const EndoMap& braid(int j) const;
    const EndoMap& push(int i, Side side) const;

private:
    int h_ = 0;
    int w_ = 0;
    std::vector<ElementaryMove> moves_;
};

std::string fnv1a_hex(std::string_view bytes);

/// Braid automorphism Bj in the free group of rank 2h + w.
EndoMap braid_map(int h, int w, int j);

/// Frame push map transported to handle i, puncture w.
EndoMap transport_push(const EndoMap& frame_map, int h, int w, int i);

}  // namespace hurwitz
