#include <random>

#include "bridge.hpp"
#include "doctest.h"
#include "hurwitz/errors.hpp"
#include "hurwitz/perm.hpp"

using namespace hurwitz;
using testing_bridge::from_oracle;
using testing_bridge::to_oracle;

namespace {

Permutation random_perm(int d, std::mt19937_64& rng) {
    std::vector<int> img(d);
    for (int i = 0; i < d; ++i) img[i] = i + 1;
    std::shuffle(img.begin(), img.end(), rng);
    return Permutation::from_images(img);
}

}  // namespace

TEST_CASE("compose reads left to right") {
    const auto p = Permutation::transposition(3, 1, 2);
    const auto q = Permutation::transposition(3, 2, 3);
    const auto r = compose(p, q);
    CHECK(r(1) == 3);
    CHECK(r(3) == 2);
    CHECK(r(2) == 1);
    CHECK(compose(p, Permutation(3)) == p);
    CHECK(compose(p, p).is_identity());
    CHECK_THROWS_AS(compose(p, Permutation(4)), UsageError);
}

TEST_CASE("compose agrees with the vector oracle and is associative") {
    std::mt19937_64 rng(11);
    for (int n = 0; n < 10000; ++n) {
        const int d = 1 + static_cast<int>(rng() % 9);
        const auto a = random_perm(d, rng);
        const auto b = random_perm(d, rng);
        const auto c = random_perm(d, rng);
        REQUIRE(compose(compose(a, b), c) == compose(a, compose(b, c)));
        REQUIRE(to_oracle(compose(a, b)) == oracle::mul(to_oracle(a), to_oracle(b)));
        REQUIRE(compose(a, a.inverse()).is_identity());
    }
}

TEST_CASE("conjugate relabels moved points") {
    const auto t12 = Permutation::transposition(4, 1, 2);
    CHECK(conjugate(t12, Permutation::transposition(4, 2, 3)) == Permutation::transposition(4, 1, 3));
    CHECK(conjugate(t12, t12) == t12);
    CHECK(conjugate(t12, Permutation::transposition(4, 3, 4)) == t12);
}

TEST_CASE("conjugation keeps cycle type and sign behaves multiplicatively") {
    std::mt19937_64 rng(5);
    for (int n = 0; n < 2000; ++n) {
        const int d = 2 + static_cast<int>(rng() % 7);
        const auto t = random_perm(d, rng);
        const auto s = random_perm(d, rng);
        REQUIRE(cycle_type(conjugate(t, s)) == cycle_type(t));
        REQUIRE(sign(compose(t, s)) == sign(t) * sign(s));
        REQUIRE(cycle_type(t).weight() == d - oracle::cycle_count(to_oracle(t)));
    }
}

TEST_CASE("cycle_type examples") {
    const auto id = cycle_type(Permutation(4));
    CHECK(id.parts == std::vector<int>{1, 1, 1, 1});
    CHECK(id.weight() == 0);

    const auto p = compose(Permutation::cycle(5, {1, 2, 3}), Permutation::cycle(5, {4, 5}));
    const auto ct = cycle_type(p);
    CHECK(ct.parts == std::vector<int>{3, 2});
    CHECK(ct.weight() == 3);

    for (int d = 2; d <= 7; ++d) {
        for (const auto& t : all_transpositions(d)) {
            const auto c = cycle_type(t);
            CHECK(c.parts.front() == 2);
            CHECK(c.weight() == 1);
        }
    }
}

TEST_CASE("parse and print round trip") {
    const auto p = Permutation::parse("2,3,1,4");
    CHECK(p.to_string() == "2,3,1,4");
    CHECK(p.cycle_string() == "(1 2 3)");
    CHECK(Permutation(3).cycle_string() == "()");
    CHECK_THROWS_AS(Permutation::parse("2,2,1"), ParseError);
    CHECK_THROWS_AS(Permutation::parse("2,,1"), ParseError);
}

TEST_CASE("generated_group examples") {
    const std::vector<Permutation> s2{Permutation::transposition(2, 1, 2)};
    CHECK(generated_group(s2).order() == 2);
    CHECK(generated_group(s2).is_symmetric());

    const std::vector<Permutation> s3{Permutation::transposition(3, 1, 2), Permutation::transposition(3, 2, 3)};
    const auto g3 = generated_group(s3);
    CHECK(g3.order() == oracle::closure(to_oracle(s3), 3).size());
    CHECK(g3.order() == 6);
    CHECK(g3.is_transitive());

    const std::vector<Permutation> v4{Permutation::transposition(4, 1, 2), Permutation::transposition(4, 3, 4)};
    const auto g4 = generated_group(v4);
    CHECK(g4.order() == oracle::closure(to_oracle(v4), 4).size());
    CHECK(g4.order() == 4);
    CHECK(g4.orbits().blocks == oracle::orbits(to_oracle(v4), 4));
    CHECK(g4.orbits().blocks == std::vector<std::vector<int>>{{1, 2}, {3, 4}});
}

TEST_CASE("group order and membership agree with naive closure") {
    std::mt19937_64 rng(23);
    for (int n = 0; n < 600; ++n) {
        const int d = 2 + static_cast<int>(rng() % 5);
        const int k = 1 + static_cast<int>(rng() % 3);
        std::vector<Permutation> gens;
        for (int i = 0; i < k; ++i) gens.push_back(random_perm(d, rng));
        const auto group = generated_group(gens);
        const auto elems = oracle::closure(to_oracle(gens), d);
        REQUIRE(group.order() == elems.size());
        for (int probe = 0; probe < 10; ++probe) {
            const auto x = random_perm(d, rng);
            REQUIRE(group.contains(x) == (elems.count(to_oracle(x)) == 1));
        }
        REQUIRE(group.orbits().blocks == oracle::orbits(to_oracle(gens), d));
    }
}

TEST_CASE("order of a product group is the product of the orders") {
    // <(1 2 3)> x <(4 5), (5 6)> acting on disjoint points.
    const std::vector<Permutation> gens{Permutation::cycle(6, {1, 2, 3}), Permutation::transposition(6, 4, 5),
                                        Permutation::transposition(6, 5, 6)};
    CHECK(generated_group(gens).order() == 3 * 6);
}

TEST_CASE("transitivity_class examples") {
    for (int d = 2; d <= 6; ++d) {
        const auto ts = all_transpositions(d);
        CHECK(transitivity_class(generated_group(ts)) == Transitivity::DoublyTransitive);
    }
    const std::vector<Permutation> klein{compose(Permutation::cycle(4, {1, 2}), Permutation::cycle(4, {3, 4})),
                                         compose(Permutation::cycle(4, {1, 3}), Permutation::cycle(4, {2, 4}))};
    const auto k = generated_group(klein);
    CHECK(k.order() == 4);
    CHECK(oracle::pair_orbit_count(to_oracle(klein), 4) > 1);
    CHECK(transitivity_class(k) == Transitivity::Transitive);

    const std::vector<Permutation> one{Permutation::transposition(3, 1, 2)};
    CHECK(transitivity_class(generated_group(one)) == Transitivity::Intransitive);
}

TEST_CASE("transitivity_class agrees with pair-orbit enumeration") {
    std::mt19937_64 rng(31);
    for (int n = 0; n < 400; ++n) {
        const int d = 2 + static_cast<int>(rng() % 5);
        std::vector<Permutation> gens{random_perm(d, rng), random_perm(d, rng)};
        const auto og = to_oracle(gens);
        Transitivity expect = Transitivity::Intransitive;
        if (oracle::orbits(og, d).size() == 1) {
            expect = oracle::pair_orbit_count(og, d) == 1 ? Transitivity::DoublyTransitive : Transitivity::Transitive;
        }
        REQUIRE(transitivity_class(generated_group(gens)) == expect);
    }
}

TEST_CASE("transposition_blocks examples") {
    const std::vector<Permutation> a{Permutation::transposition(4, 1, 2), Permutation::transposition(4, 2, 3)};
    CHECK(transposition_blocks(a, 4).blocks == std::vector<std::vector<int>>{{1, 2, 3}, {4}});
    const std::vector<Permutation> b{Permutation::transposition(2, 1, 2)};
    CHECK(transposition_blocks(b, 2).is_single_block());
    const std::vector<Permutation> c{Permutation::transposition(5, 1, 2), Permutation::transposition(5, 3, 4)};
    CHECK(transposition_blocks(c, 5).blocks == std::vector<std::vector<int>>{{1, 2}, {3, 4}, {5}});
    const std::vector<Permutation> bad{Permutation::cycle(3, {1, 2, 3})};
    CHECK_THROWS_AS(transposition_blocks(bad, 3), UsageError);
}

TEST_CASE("all_permutations lists S_d in lexicographic order") {
    const auto all = all_permutations(4);
    REQUIRE(all.size() == 24);
    const auto ref = oracle::symmetric_group(4);
    for (std::size_t i = 0; i < all.size(); ++i) CHECK(to_oracle(all[i]) == ref[i]);
    CHECK(from_oracle(ref[5]) == all[5]);
    CHECK(factorial(10) == 3628800);
}

TEST_CASE("transposition groups are products of symmetric groups on their blocks") {
    std::mt19937_64 rng(47);
    for (int n = 0; n < 500; ++n) {
        const int d = 2 + static_cast<int>(rng() % 7);
        const auto pool = all_transpositions(d);
        std::vector<Permutation> ts;
        const int k = 1 + static_cast<int>(rng() % 6);
        for (int i = 0; i < k; ++i) ts.push_back(pool[rng() % pool.size()]);
        std::uint64_t expect = 1;
        for (const auto& b : transposition_blocks(ts, d).blocks) expect *= factorial(static_cast<int>(b.size()));
        REQUIRE(generated_group(ts).order() == expect);
        // Weight of a product of k transpositions has the parity of k.
        REQUIRE(cycle_type(product(ts, d)).weight() % 2 == k % 2);
    }
}
