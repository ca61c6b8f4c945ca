#include <random>

#include "doctest.h"
#include "hurwitz/catalog.hpp"
#include "hurwitz/errors.hpp"
#include "hurwitz/free_group.hpp"

using namespace hurwitz;

namespace {

// The braid automorphism in the form g1 -> g1 g2 g1^-1, g2 -> g1.
EndoMap sigma1(int h, int w) {
    EndoMap e(h, w);
    e.set_image(Generator::g(1), Word::parse("g1 g2 g1^-1"));
    e.set_image(Generator::g(2), Word::parse("g1"));
    EndoMap inv(h, w);
    inv.set_image(Generator::g(1), Word::parse("g2"));
    inv.set_image(Generator::g(2), Word::parse("g2^-1 g1 g2"));
    e.set_inverse(inv);
    return e;
}

Word random_word(int h, int w, std::size_t len, std::mt19937_64& rng) {
    std::vector<Letter> ls;
    const int rank = 2 * h + w;
    for (std::size_t i = 0; i < len; ++i) {
        const int k = static_cast<int>(rng() % rank);
        Generator g = k < w ? Generator::g(k + 1) : ((k - w) % 2 == 0 ? Generator::a((k - w) / 2 + 1) : Generator::b((k - w) / 2 + 1));
        ls.push_back({g, rng() % 2 ? 1 : -1});
    }
    return reduce(ls);
}

}  // namespace

TEST_CASE("reduce examples") {
    CHECK(Word::parse("a1 a1^-1").empty());
    CHECK(Word::parse("g1 g2 g2^-1 g1") == Word::parse("g1 g1"));
    const Word w = Word::parse("a1 b1 g3^-1");
    CHECK(w.size() == 3);
    CHECK(reduce(w.letters()) == w);
    CHECK(Word::parse("1").empty());
    CHECK_THROWS_AS(Word::parse("a1 x2"), ParseError);
}

TEST_CASE("reduce is idempotent and inverse cancels") {
    std::mt19937_64 rng(3);
    for (int n = 0; n < 2000; ++n) {
        const Word w = random_word(2, 3, rng() % 20, rng);
        REQUIRE(reduce(w.letters()) == w);
        REQUIRE((w * w.inverse()).empty());
        REQUIRE(Word::parse(w.empty() ? "1" : w.to_string()) == w);
        for (std::size_t i = 1; i < w.size(); ++i) REQUIRE(w[i] != w[i - 1].inverse());
    }
}

TEST_CASE("is_conjugate examples") {
    CHECK(is_conjugate(Word::parse("a1 b1"), Word::parse("b1 a1")));
    CHECK_FALSE(is_conjugate(Word::parse("g1"), Word::parse("g2")));
    CHECK(is_conjugate(Word::parse("g1"), Word::parse("a1 g1 a1^-1")));
}

TEST_CASE("conjugacy is an equivalence relation on random samples") {
    std::mt19937_64 rng(8);
    for (int n = 0; n < 500; ++n) {
        const Word u = random_word(1, 2, 1 + rng() % 6, rng);
        const Word c1 = random_word(1, 2, rng() % 5, rng);
        const Word c2 = random_word(1, 2, rng() % 5, rng);
        const Word v = conjugate_by(u, c1);
        const Word x = conjugate_by(v, c2);
        REQUIRE(is_conjugate(u, u));
        REQUIRE(is_conjugate(u, v));
        REQUIRE(is_conjugate(v, u));
        REQUIRE(is_conjugate(u, x));
    }
    // A word is not conjugate to its inverse in general.
    CHECK_FALSE(is_conjugate(Word::parse("a1 b1"), Word::parse("a1^-1 b1^-1 a1 a1")));
}

TEST_CASE("apply_endo examples") {
    const EndoMap id(1, 3);
    const Word w = Word::parse("a1 g2 b1^-1 g3");
    CHECK(apply_endo(id, w) == w);
    const EndoMap s = sigma1(0, 2);
    CHECK(apply_endo(s, Word::parse("g1 g2")) == Word::parse("g1 g2"));
    CHECK(apply_endo(s, Word()).empty());
}

TEST_CASE("apply_endo is a homomorphism") {
    std::mt19937_64 rng(17);
    const EndoMap e = braid_map(1, 3, 2);
    for (int n = 0; n < 1000; ++n) {
        const Word u = random_word(1, 3, rng() % 10, rng);
        const Word v = random_word(1, 3, rng() % 10, rng);
        REQUIRE(e.apply(u * v) == e.apply(u) * e.apply(v));
        REQUIRE(e.apply(u.inverse()) == e.apply(u).inverse());
        REQUIRE(e.inverse().apply(e.apply(u)) == u);
    }
}

TEST_CASE("relator examples") {
    CHECK(relator(0, 2) == Word::parse("g1 g2"));
    CHECK(relator(1, 0) == Word::parse("a1 b1 a1^-1 b1^-1"));
    CHECK(relator(1, 2) == Word::parse("g1 g2 a1 b1 a1^-1 b1^-1"));
}

TEST_CASE("validate_peripheral accepts the braid automorphism") {
    const auto rep = validate_peripheral(sigma1(0, 2), 0, 2);
    CHECK(rep.ok());
    CHECK(rep.relator_exact);
    CHECK(rep.puncture_perm == std::vector<int>{2, 1});

    // Same map inside a larger free group.
    const auto big = validate_peripheral(sigma1(1, 3), 1, 3);
    CHECK(big.ok());
    CHECK(big.puncture_perm == std::vector<int>{2, 1, 3});
}

TEST_CASE("validate_peripheral accepts the identity") {
    EndoMap id(1, 2);
    id.set_inverse(EndoMap(1, 2));
    const auto rep = validate_peripheral(id, 1, 2);
    CHECK(rep.ok());
    CHECK(rep.puncture_perm == std::vector<int>{1, 2});
}

TEST_CASE("validate_peripheral rejects a square") {
    EndoMap e(0, 2);
    e.set_image(Generator::g(1), Word::parse("g1 g1"));
    e.set_inverse(EndoMap(0, 2));
    const auto rep = validate_peripheral(e, 0, 2);
    CHECK_FALSE(rep.ok());
    CHECK_FALSE(rep.punctures_ok);
    CHECK_FALSE(rep.inverse_ok);
}

TEST_CASE("validate_peripheral needs a stored inverse") {
    EndoMap e = sigma1(0, 2);
    e.clear_inverse();
    CHECK_THROWS_AS(validate_peripheral(e, 0, 2), UsageError);
}

TEST_CASE("conjugator_of_letter recovers the conjugator") {
    const Word c = Word::parse("a1 b1^-1");
    const Word x = conjugate_by(Word(Generator::g(2)), c);
    const auto got = conjugator_of_letter(x, pos(Generator::g(2)));
    REQUIRE(got.has_value());
    CHECK(conjugate_by(Word(Generator::g(2)), *got) == x);
    CHECK_FALSE(conjugator_of_letter(Word::parse("g2 g2"), pos(Generator::g(2))).has_value());
}
