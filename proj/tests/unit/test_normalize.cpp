#include <random>

#include "doctest.h"
#include "hurwitz/errors.hpp"
#include "hurwitz/normalize.hpp"
#include "hurwitz/orbit.hpp"

using namespace hurwitz;

namespace {

Permutation tr(int d, int i, int j) { return Permutation::transposition(d, i, j); }

int metric(const HandlePair& hp) { return cycle_type(hp.a).weight() + cycle_type(hp.b).weight(); }

}  // namespace

TEST_CASE("repair on a system that is already one block") {
    // (1 2)^4 (2 3)^2 with trivial handles already branches over all of {1,2,3}.
    const HurwitzSystem s(3, {HandlePair{Permutation(3), Permutation(3)}},
                          {tr(3, 1, 2), tr(3, 1, 2), tr(3, 1, 2), tr(3, 1, 2), tr(3, 2, 3), tr(3, 2, 3)});
    CHECK(branching_blocks(s, IndexRange::all(6)).is_single_block());
    const Rewrite r = repair_branching_monodromy(s, IndexRange::all(6));
    CHECK(r.word.empty());
    CHECK(r.system == s);
}

TEST_CASE("repair merges blocks held together only by the handles") {
    // Transpositions all (1 2); the handle a = (1 2 3) makes the monodromy S_3.
    const HurwitzSystem s(3, {HandlePair{Permutation::cycle(3, {1, 2, 3}), Permutation(3)}},
                          std::vector<Permutation>(6, tr(3, 1, 2)));
    REQUIRE(validate(s).ok);
    REQUIRE(is_full_monodromy(s));
    CHECK_FALSE(branching_blocks(s, IndexRange::all(6)).is_single_block());
    for (Mode mode : {Mode::Fast, Mode::Validate}) {
        const Rewrite r = repair_branching_monodromy(s, IndexRange::all(6), {mode});
        CHECK(branching_blocks(r.system, IndexRange::all(6)).is_single_block());
        CHECK(validate(r.system).ok);
        CHECK(apply_word(s, r.word) == r.system);
        if (mode == Mode::Validate) {
            CHECK(r.word.elementary_count() == r.word.size());
            CHECK(replay(s, r.word) == r.system);
        }
    }
}

TEST_CASE("repair at w = 2d exactly on random systems") {
    std::mt19937_64 rng(14);
    int repaired = 0;
    for (int n = 0; n < 200; ++n) {
        const auto s = sample_system(3, 1, 6, rng);
        const Rewrite r = repair_branching_monodromy(s, IndexRange::all(6));
        REQUIRE(branching_blocks(r.system, IndexRange::all(6)).is_single_block());
        REQUIRE(apply_word(s, r.word) == r.system);
        repaired += !r.word.empty();
    }
    CHECK(repaired > 0);
}

TEST_CASE("repair refuses short ranges") {
    const HurwitzSystem s(3, {HandlePair{Permutation::cycle(3, {1, 2, 3}), Permutation(3)}},
                          std::vector<Permutation>(4, tr(3, 1, 2)));
    CHECK_THROWS_AS(repair_branching_monodromy(s, IndexRange::all(4)), PreconditionError);
}

TEST_CASE("b1_trivialize examples") {
    const auto t = tr(2, 1, 2);
    const HurwitzSystem s(2, {HandlePair{t, t}}, std::vector<Permutation>(4, t));
    const auto res = b1_trivialize(s);
    CHECK(res.system.handle(1).a.is_identity());
    CHECK(res.system.handle(1).b.is_identity());
    CHECK(res.word.size() <= 2);
    CHECK(res.metric_trace == std::vector<int>{2, 1, 0});
    CHECK(replay(s, res.word) == res.system);

    const HurwitzSystem trivial(2, {HandlePair{Permutation(2), Permutation(2)}}, std::vector<Permutation>(4, t));
    CHECK(b1_trivialize(trivial).word.empty());
}

TEST_CASE("the handle metric drops by one per push") {
    std::mt19937_64 rng(41);
    for (int n = 0; n < 60; ++n) {
        const int d = 3 + static_cast<int>(n % 2);
        const auto s = sample_system(d, 2, 2 * d, rng);
        for (int i = 1; i <= 2; ++i) {
            const auto res = trivialize_handle(s, i);
            REQUIRE(res.metric_trace.front() == metric(s.handle(i)));
            REQUIRE(res.metric_trace.back() == 0);
            for (std::size_t k = 1; k < res.metric_trace.size(); ++k) {
                REQUIRE(res.metric_trace[k] == res.metric_trace[k - 1] - 1);
            }
            REQUIRE(apply_word(s, res.word) == res.system);
            REQUIRE(validate(res.system).ok);
        }
    }
}

TEST_CASE("canonicalize on every full-monodromy system of (2,1,4)") {
    const auto systems = enumerate_systems(2, 1, 4, is_full_monodromy);
    REQUIRE(systems.size() == 4);
    const auto canon = canonical_system(2, 1, 4);
    for (const auto& s : systems) {
        const auto res = canonicalize(s);
        CHECK(res.system == canon);
        CHECK(replay(s, res.word) == canon);
    }
    const auto again = canonicalize(canon);
    CHECK(again.word.empty());
    CHECK(again.system == canon);
}

TEST_CASE("canonicalize reaches one form on random (3,1,6) systems") {
    std::mt19937_64 rng(77);
    const auto canon = canonical_system(3, 1, 6);
    for (int n = 0; n < 100; ++n) {
        const auto s = sample_system(3, 1, 6, rng);
        const auto res = canonicalize(s);
        REQUIRE(res.system == canon);
        REQUIRE(apply_word(s, res.word) == canon);
    }
}

TEST_CASE("validate mode certificates use elementary moves only") {
    std::mt19937_64 rng(5);
    for (int n = 0; n < 5; ++n) {
        const auto s = sample_system(3, 1, 6, rng);
        const auto res = canonicalize(s, {Mode::Validate});
        CHECK(res.word.elementary_count() == res.word.size());
        CHECK(replay(s, res.word) == canonical_system(3, 1, 6));
    }
}

TEST_CASE("canonical_system shape") {
    const auto c = canonical_system(4, 1, 8);
    CHECK(validate(c).ok);
    CHECK(is_full_monodromy(c));
    CHECK(c.t(1) == tr(4, 1, 2));
    CHECK(c.t(5) == tr(4, 1, 3));
    CHECK(c.t(8) == tr(4, 1, 4));
    CHECK_THROWS_AS(canonical_system(3, 0, 3), UsageError);
}

TEST_CASE("canonicalize refuses w < 2d") {
    const HurwitzSystem s(3, {HandlePair{Permutation::cycle(3, {1, 2, 3}), Permutation(3)}},
                          std::vector<Permutation>(4, tr(3, 1, 2)));
    CHECK_THROWS_AS(canonicalize(s), PreconditionError);
}
