#include <random>
#include <set>

#include "bridge.hpp"
#include "doctest.h"
#include "hurwitz/errors.hpp"
#include "hurwitz/system.hpp"

using namespace hurwitz;
using testing_bridge::to_oracle;

namespace {

Permutation tr(int d, int i, int j) { return Permutation::transposition(d, i, j); }

HurwitzSystem all_equal_d2(int h, int w) {
    std::vector<HandlePair> hs(h, HandlePair{Permutation(2), Permutation(2)});
    return HurwitzSystem(2, hs, std::vector<Permutation>(w, tr(2, 1, 2)));
}

HurwitzSystem s3_example() {
    return HurwitzSystem(3, {}, {tr(3, 1, 2), tr(3, 2, 3), tr(3, 2, 3), tr(3, 1, 2)});
}

HurwitzSystem s4_split() {
    return HurwitzSystem(4, {}, {tr(4, 1, 2), tr(4, 1, 2), tr(4, 3, 4), tr(4, 3, 4)});
}

std::vector<Permutation> all_images(const HurwitzSystem& s) {
    std::vector<Permutation> g = s.transpositions();
    for (const auto& hp : s.handles()) {
        g.push_back(hp.a);
        g.push_back(hp.b);
    }
    return g;
}

}  // namespace

TEST_CASE("validate examples") {
    CHECK(validate(all_equal_d2(1, 4)).ok);
    CHECK_FALSE(validate(all_equal_d2(1, 3)).ok);
    const HurwitzSystem bad(3, {}, {tr(3, 1, 2), Permutation::cycle(3, {1, 2, 3})});
    CHECK_FALSE(validate(bad).ok);
}

TEST_CASE("genus examples") {
    CHECK(genus(HurwitzSystem(3, {HandlePair{Permutation(3), Permutation(3)}},
                              std::vector<Permutation>(6, tr(3, 1, 2)))) == 4);
    CHECK(genus(all_equal_d2(0, 2)) == 0);
    for (int h = 0; h <= 3; ++h) {
        CHECK(genus(HurwitzSystem(1, std::vector<HandlePair>(h, HandlePair{Permutation(1), Permutation(1)}), {})) == h);
    }
}

TEST_CASE("monodromy examples") {
    CHECK(monodromy(all_equal_d2(1, 4)).is_symmetric());
    CHECK(monodromy(s3_example()).order() == 6);
    const auto g4 = monodromy(s4_split());
    CHECK(g4.order() == 4);
    CHECK_FALSE(g4.is_transitive());

    CHECK(is_full_monodromy(all_equal_d2(0, 4)));
    CHECK_FALSE(is_full_monodromy(s4_split()));
    CHECK(is_full_monodromy(s3_example()));

    CHECK(connected_cover(all_equal_d2(1, 4)));
    CHECK_FALSE(connected_cover(s4_split()));
    CHECK(connected_cover(HurwitzSystem(1, {}, {})));
}

TEST_CASE("branching_blocks examples") {
    CHECK(branching_blocks(s3_example(), IndexRange::all(4)).is_single_block());
    const HurwitzSystem s(3, {}, {tr(3, 1, 2), tr(3, 1, 2), tr(3, 2, 3), tr(3, 2, 3)});
    CHECK(branching_blocks(s, {1, 2}).blocks == std::vector<std::vector<int>>{{1, 2}, {3}});
    CHECK(branching_blocks(s, {1, 0}).blocks == std::vector<std::vector<int>>{{1}, {2}, {3}});
}

TEST_CASE("serialize round trip") {
    const auto a = all_equal_d2(1, 4);
    CHECK(deserialize(serialize(a)) == a);
    CHECK(serialize(deserialize(serialize(a))) == serialize(a));
    const HurwitzSystem b(3, {}, {tr(3, 1, 2), tr(3, 2, 3), tr(3, 2, 3), tr(3, 1, 2)});
    const HurwitzSystem c(3, {}, {tr(3, 1, 2), tr(3, 2, 3), tr(3, 1, 3), tr(3, 1, 2)});
    CHECK(serialize(b) != serialize(c));
    CHECK(HurwitzSystem::from_packed(b.packed_key(), 3, 0, 4) == b);
    CHECK_THROWS_AS(deserialize("d=3 h=0 w=2 | t: 2,1,3 | ab:"), ParseError);
    CHECK_THROWS_AS(deserialize("d=3 h=0 w=1 | t: 2,1,x | ab:"), ParseError);
}

TEST_CASE("enumerate_systems examples") {
    CHECK(enumerate_systems(2, 0, 4).size() == 1);
    const auto all = enumerate_systems(3, 0, 4);
    CHECK(all.size() == 27);
    CHECK(enumerate_systems(3, 0, 4, is_full_monodromy).size() == 24);
    CHECK(enumerate_systems(2, 1, 4).size() == 4);
}

TEST_CASE("enumeration agrees with brute force") {
    struct Case {
        int d, h, w;
    };
    for (const Case c : {Case{2, 0, 2}, Case{2, 1, 0}, Case{2, 2, 2}, Case{3, 0, 2}, Case{3, 0, 6}, Case{3, 1, 0},
                         Case{3, 1, 2}, Case{3, 1, 4}, Case{4, 0, 4}}) {
        CAPTURE(c.d);
        CAPTURE(c.h);
        CAPTURE(c.w);
        const auto systems = enumerate_systems(c.d, c.h, c.w);
        CHECK(systems.size() == oracle::brute_force_count(c.d, c.h, c.w));
        CHECK(SystemEnumerator(c.d, c.h, c.w).count() == systems.size());

        std::set<std::string> keys;
        for (const auto& s : systems) {
            REQUIRE(validate(s).ok);
            keys.insert(serialize(s));
        }
        CHECK(keys.size() == systems.size());

        // Full-monodromy count against naive closure.
        const auto full = oracle::brute_force_count(c.d, c.h, c.w, [&](const auto& ts, const auto& hs) {
            std::vector<oracle::Perm> gens = ts;
            gens.insert(gens.end(), hs.begin(), hs.end());
            std::uint64_t f = 1;
            for (int k = 2; k <= c.d; ++k) f *= k;
            return oracle::closure(gens, c.d).size() == f;
        });
        CHECK(enumerate_systems(c.d, c.h, c.w, is_full_monodromy).size() == full);
    }
}

TEST_CASE("enumeration refuses past the guard") {
    CHECK_THROWS_AS(SystemEnumerator(6, 2, 12, 1e6), BudgetExceeded);
}

TEST_CASE("precompose with the identity and sample_system validity") {
    std::mt19937_64 rng(99);
    for (int n = 0; n < 200; ++n) {
        const int d = 2 + static_cast<int>(rng() % 3);
        const int h = static_cast<int>(rng() % 3);
        const int w = 2 * (1 + static_cast<int>(rng() % 3));
        const bool full = n % 2 == 0 && w >= 2 * d;
        const auto s = sample_system(d, h, w, rng, full);
        REQUIRE(validate(s).ok);
        if (full) REQUIRE(is_full_monodromy(s));
        REQUIRE(s.precompose(EndoMap(h, w)) == s);
        REQUIRE(s.relator_value().is_identity());
        REQUIRE(HurwitzSystem::parse(s.to_line()) == s);
        REQUIRE(monodromy(s).order() == oracle::closure(to_oracle(all_images(s)), d).size());
    }
    CHECK_THROWS_AS(sample_system(3, 1, 3, rng), PreconditionError);
}

TEST_CASE("evaluate follows the monodromy homomorphism") {
    std::mt19937_64 rng(4);
    const auto s = sample_system(4, 1, 4, rng);
    CHECK(s.evaluate(relator(1, 4)).is_identity());
    CHECK(s.evaluate(Word::parse("g1 a1")) == compose(s.t(1), s.handle(1).a));
    CHECK(s.evaluate(Word::parse("b1^-1")) == s.handle(1).b.inverse());
}

TEST_CASE("genus is nonnegative on connected covers") {
    for (int d = 1; d <= 3; ++d) {
        for (int h = 0; h <= 1; ++h) {
            for (int w = 0; w <= 4; w += 2) {
                for (const auto& s : enumerate_systems(d, h, w)) {
                    if (is_full_monodromy(s)) REQUIRE(connected_cover(s));
                    if (connected_cover(s)) REQUIRE(genus(s) >= 0);
                }
            }
        }
    }
    // A disconnected double cover of the sphere: the formula gives -1.
    CHECK(genus(HurwitzSystem(2, {}, {})) == -1);
}
