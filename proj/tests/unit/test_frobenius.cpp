#include "doctest.h"
#include "hurwitz/errors.hpp"
#include "hurwitz/frobenius.hpp"
#include "hurwitz/perm.hpp"
#include "hurwitz/system.hpp"
#include "oracles.hpp"

using namespace hurwitz;

namespace {

// Size of the conjugacy class with cycle type mu in S_n.
long long class_size(const Partition& mu, int n) {
    long long z = 1;
    int run = 1;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        z *= mu[i];
        if (i > 0 && mu[i] == mu[i - 1]) {
            ++run;
            z *= run;
        } else {
            run = 1;
        }
    }
    return static_cast<long long>(factorial(n)) / z;
}

}  // namespace

TEST_CASE("partition counts") {
    const std::vector<std::size_t> p{1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
    for (int n = 0; n <= 10; ++n) CHECK(partitions(n).size() == p[n]);
    CHECK(partitions(4).front() == Partition{4});
    CHECK(partitions(4).back() == Partition{1, 1, 1, 1});
}

TEST_CASE("character tables satisfy both orthogonality relations") {
    for (int n = 1; n <= 8; ++n) {
        CAPTURE(n);
        const auto parts = partitions(n);
        const auto table = character_table(n);
        const long long order = static_cast<long long>(factorial(n));
        for (std::size_t i = 0; i < parts.size(); ++i) {
            for (std::size_t j = 0; j < parts.size(); ++j) {
                long long rows = 0;
                long long cols = 0;
                for (std::size_t c = 0; c < parts.size(); ++c) {
                    rows += class_size(parts[c], n) * table[i][c] * table[j][c];
                    cols += table[c][i] * table[c][j];
                }
                CHECK(rows == (i == j ? order : 0));
                CHECK(cols == (i == j ? order / class_size(parts[i], n) : 0));
            }
        }
    }
}

TEST_CASE("small characters") {
    CHECK(character({3}, {1, 1, 1}) == 1);
    CHECK(character({2, 1}, {1, 1, 1}) == 2);
    CHECK(character({2, 1}, {3}) == -1);
    CHECK(character({1, 1, 1}, {2, 1}) == -1);
}

TEST_CASE("frobenius count examples") {
    CHECK(frobenius_count(3, 0, 4) == 27);
    CHECK(frobenius_count(2, 1, 4) == 4);
    CHECK(frobenius_count(2, 0, 2) == 1);
    CHECK(frobenius_count(1, 2, 0) == 1);
    CHECK(frobenius_count(1, 0, 2) == 0);
    CHECK(frobenius_count(3, 0, 3) == 0);
    CHECK_THROWS_AS(frobenius_count(kMaxFrobeniusDegree + 1, 0, 2), Unsupported);
}

TEST_CASE("frobenius count agrees with brute force and enumeration") {
    for (int d = 2; d <= 3; ++d) {
        for (int h = 0; h <= 1; ++h) {
            for (int w = 0; w <= 4; ++w) {
                const BigInt expect = oracle::brute_force_count(d, h, w);
                CHECK(frobenius_count(d, h, w) == expect);
                CHECK(BigInt(SystemEnumerator(d, h, w).count()) == expect);
            }
        }
    }
}
