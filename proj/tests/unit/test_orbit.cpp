#include <set>
#include <sstream>

#include "doctest.h"
#include "hurwitz/errors.hpp"
#include "hurwitz/orbit.hpp"

using namespace hurwitz;

namespace {

Permutation tr(int d, int i, int j) { return Permutation::transposition(d, i, j); }

HurwitzSystem d2h1(const Permutation& a, const Permutation& b) {
    return HurwitzSystem(2, {HandlePair{a, b}}, std::vector<Permutation>(4, tr(2, 1, 2)));
}

OrbitCensus run_census(int d, int h, int w, MoveSetKind k, const std::string& filter, int threads = 1,
                       bool logs = false) {
    CensusParams p;
    p.d = d;
    p.h = h;
    p.w = w;
    p.moves = k;
    p.filter = filter;
    return census(p, FilterSpec::parse(filter, d).predicate, threads, logs);
}

}  // namespace

TEST_CASE("orbit_bfs examples") {
    const auto seed = d2h1(Permutation(2), Permutation(2));
    CHECK(orbit_bfs(seed, MoveSetKind::Braid).size() == 1);
    const Orbit full = orbit_bfs(seed, MoveSetKind::Full);
    CHECK(full.size() == 4);
    CHECK(full.exhaustive);

    const HurwitzSystem s3(3, {}, {tr(3, 1, 2), tr(3, 2, 3), tr(3, 2, 3), tr(3, 1, 2)});
    CHECK(orbit_bfs(s3, MoveSetKind::Braid).size() == 24);
}

TEST_CASE("orbit paths replay to their nodes") {
    const HurwitzSystem s(3, {HandlePair{Permutation(3), Permutation(3)}},
                          {tr(3, 1, 2), tr(3, 1, 2), tr(3, 1, 2), tr(3, 1, 2), tr(3, 1, 3), tr(3, 1, 3)});
    const Orbit o = orbit_bfs(s, MoveSetKind::Full, {1'000'000, 2});
    CHECK(o.exhaustive);
    for (std::size_t n = 0; n < o.size(); n += 97) {
        CHECK(replay(s, o.path_to(n)) == o.system(n));
    }
}

TEST_CASE("orbit_bfs flags a partial result past the budget") {
    const HurwitzSystem s(3, {HandlePair{Permutation(3), Permutation(3)}},
                          {tr(3, 1, 2), tr(3, 1, 2), tr(3, 1, 2), tr(3, 1, 2), tr(3, 1, 3), tr(3, 1, 3)});
    const Orbit o = orbit_bfs(s, MoveSetKind::Full, {50, 1});
    CHECK_FALSE(o.exhaustive);
}

TEST_CASE("census examples") {
    const auto a = run_census(2, 1, 4, MoveSetKind::Full, "full-monodromy");
    REQUIRE(a.orbits.size() == 1);
    CHECK(a.orbits[0].size == 4);

    const auto b = run_census(3, 0, 4, MoveSetKind::Braid, "full-monodromy");
    REQUIRE(b.orbits.size() == 1);
    CHECK(b.orbits[0].size == 24);

    const auto c = run_census(3, 0, 4, MoveSetKind::Braid, "intransitive");
    CHECK(c.orbits.size() == 3);
    for (const auto& o : c.orbits) CHECK(o.size == 1);

    const auto d = run_census(2, 1, 4, MoveSetKind::Braid, "full-monodromy");
    CHECK(d.orbits.size() == 4);

    const auto one = run_census(1, 1, 0, MoveSetKind::Full, "all");
    CHECK(one.orbits.size() == 1);
}

TEST_CASE("census invariants on (3,1,4)") {
    const auto c = run_census(3, 1, 4, MoveSetKind::Full, "all", 1, true);
    std::size_t sum = 0;
    for (std::size_t k = 0; k < c.orbits.size(); ++k) {
        sum += c.orbits[k].size;
        const Orbit& o = c.logs[k];
        REQUIRE(o.size() == c.orbits[k].size);
        const auto first = o.system(0);
        const auto group = monodromy(first);
        for (std::size_t n = 0; n < o.size(); ++n) {
            const auto s = o.system(n);
            REQUIRE(genus(s) == genus(first));
            REQUIRE(monodromy(s).same_subgroup(group));
        }
    }
    CHECK(sum == c.total);
    CHECK(c.total == enumerate_systems(3, 1, 4).size());
}

TEST_CASE("every move edge has a reverse edge") {
    const auto systems = enumerate_systems(3, 1, 4);
    const auto moves = move_set(1, 4, MoveSetKind::Full);
    for (std::size_t n = 0; n < systems.size(); n += 13) {
        for (const auto& m : moves) {
            const auto y = apply_move(systems[n], m);
            REQUIRE(apply_move(y, m.inverted()) == systems[n]);
        }
    }
}

TEST_CASE("group filter selects a monodromy subgroup") {
    const auto c = run_census(3, 0, 4, MoveSetKind::Braid, "group=2,1,3");
    std::size_t sum = 0;
    for (const auto& o : c.orbits) sum += o.size;
    CHECK(sum == 1);
    CHECK_THROWS_AS(FilterSpec::parse("nonsense", 3), UsageError);
}

TEST_CASE("census output is independent of the thread count") {
    const auto one = run_census(3, 1, 4, MoveSetKind::Full, "all", 1, true);
    for (int threads : {4, 8}) {
        const auto many = run_census(3, 1, 4, MoveSetKind::Full, "all", threads, true);
        CHECK(many.to_jsonl() == one.to_jsonl());
        std::ostringstream a, b;
        write_predecessor_log(a, one.logs);
        write_predecessor_log(b, many.logs);
        CHECK(a.str() == b.str());
    }
}

TEST_CASE("predecessor log round trip") {
    const auto c = run_census(2, 1, 4, MoveSetKind::Braid, "all", 1, true);
    std::stringstream buf;
    write_predecessor_log(buf, c.logs);
    const auto back = read_predecessor_log(buf);
    REQUIRE(back.size() == c.logs.size());
    for (std::size_t k = 0; k < back.size(); ++k) {
        CHECK(back[k].keys == c.logs[k].keys);
        CHECK(back[k].parent == c.logs[k].parent);
        for (std::size_t n = 0; n < back[k].size(); ++n) {
            CHECK(back[k].path_to(n) == c.logs[k].path_to(n));
        }
    }
    std::stringstream junk("HZPX");
    CHECK_THROWS_AS(read_predecessor_log(junk), ParseError);
}

TEST_CASE("connect examples") {
    const auto id = d2h1(Permutation(2), Permutation(2));
    const auto flip = d2h1(tr(2, 1, 2), tr(2, 1, 2));

    const auto same = connect(id, id, MoveSetKind::Full);
    CHECK(same.status == ConnectResult::Status::Connected);
    CHECK(same.word.empty());

    const auto path = connect(id, flip, MoveSetKind::Full);
    REQUIRE(path.status == ConnectResult::Status::Connected);
    CHECK_FALSE(path.word.empty());
    for (const auto& m : path.word.moves()) CHECK(m.kind == MoveKind::Push);
    CHECK(replay(id, path.word) == flip);

    const auto none = connect(id, flip, MoveSetKind::Braid);
    CHECK(none.status == ConnectResult::Status::Disconnected);

    const HurwitzSystem other(3, {}, {tr(3, 1, 2), tr(3, 1, 2)});
    CHECK_THROWS_AS(connect(id, other, MoveSetKind::Full), UsageError);
}
