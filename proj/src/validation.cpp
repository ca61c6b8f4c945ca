#include "hurwitz/validation.hpp"

#include <algorithm>
#include <random>

#include "hurwitz/system.hpp"

namespace hurwitz {

bool CatalogReport::ok() const {
    return failures() == 0;
}

std::size_t CatalogReport::failures() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const CheckLine& c) { return !c.ok; }));
}

namespace {

struct Tally {
    std::string name;
    std::size_t failures = 0;
    std::string first;

    void fail(const std::string& why) {
        if (failures++ == 0) first = why;
    }
    CheckLine line(std::size_t runs) const {
        return {name, failures == 0,
                failures == 0 ? std::to_string(runs) + " systems" : std::to_string(failures) + " failures, first: " + first};
    }
};

bool is_push(const ElementaryMove& m, int& handle, bool& side_a) {
    if (m.name.size() < 3 || m.name[0] != 'P' || (m.name[1] != 'a' && m.name[1] != 'b')) return false;
    side_a = m.name[1] == 'a';
    handle = std::stoi(m.name.substr(2));
    return true;
}

}  // namespace

CatalogReport validate_catalog(const MoveCatalog& cat, int degree, int samples, std::uint64_t seed) {
    CatalogReport rep;
    const int h = cat.handles();
    const int w = cat.punctures();

    std::vector<EndoMap> inverses;
    bool all_inverses = true;
    for (const auto& m : cat.moves()) {
        if (!m.map.has_inverse()) {
            rep.checks.push_back({"peripheral " + m.name, false, "missing inverse"});
            inverses.emplace_back();
            all_inverses = false;
            continue;
        }
        const PeripheralReport pr = validate_peripheral(m.map, h, w);
        rep.checks.push_back({"peripheral " + m.name, pr.ok(), pr.summary()});
        inverses.push_back(m.map.inverse());
    }
    if (!all_inverses) return rep;
    if (w % 2 != 0 || (degree < 2 && w > 0)) {
        rep.checks.push_back({"random systems", true, "skipped: no valid systems for this (h, w)"});
        return rep;
    }

    std::mt19937_64 rng(seed);
    Tally cancel{"move and inverse cancel"};
    Tally keeps{"validity, genus and monodromy kept"};
    Tally relations{"braid relations"};
    Tally contract{"push effect contract"};

    for (int s = 0; s < samples; ++s) {
        const HurwitzSystem sys = sample_system(degree, h, w, rng, false);
        const PermGroup group = monodromy(sys);
        for (std::size_t k = 0; k < cat.moves().size(); ++k) {
            const auto& m = cat.moves()[k];
            const HurwitzSystem y = sys.precompose(m.map);
            if (y.precompose(inverses[k]) != sys || sys.precompose(inverses[k]).precompose(m.map) != sys) {
                cancel.fail(m.name + " on " + sys.to_line());
            }
            const auto v = validate(y);
            if (!v.ok || genus(y) != genus(sys) || !monodromy(y).same_subgroup(group)) {
                keeps.fail(m.name + " on " + sys.to_line() + (v.ok ? "" : ": " + v.first_violation));
            }

            int i = 0;
            bool side_a = false;
            if (!is_push(m, i, side_a)) continue;
            bool ok = cycle_type(y.t(w)) == cycle_type(sys.t(w));
            for (int j = 1; j < w; ++j) ok = ok && y.t(j) == sys.t(j);
            for (int k2 = 1; k2 <= h; ++k2) {
                if (k2 == i) continue;
                ok = ok && y.handle(k2) == sys.handle(k2);
            }
            const HandlePair& before = sys.handle(i);
            const HandlePair& after = y.handle(i);
            const Permutation& fixed_before = side_a ? before.a : before.b;
            const Permutation& fixed_after = side_a ? after.a : after.b;
            const Permutation& moved_before = side_a ? before.b : before.a;
            const Permutation& moved_after = side_a ? after.b : after.a;
            ok = ok && fixed_before == fixed_after && compose(moved_before.inverse(), moved_after).is_transposition();
            if (!ok) contract.fail(m.name + " on " + sys.to_line());
        }
        for (int j = 1; j + 1 < w; ++j) {
            const EndoMap& bj = cat.braid(j);
            const EndoMap& bk = cat.braid(j + 1);
            const HurwitzSystem lhs = sys.precompose(bj).precompose(bk).precompose(bj);
            const HurwitzSystem rhs = sys.precompose(bk).precompose(bj).precompose(bk);
            if (lhs != rhs) relations.fail("B" + std::to_string(j) + " B" + std::to_string(j + 1) + " on " + sys.to_line());
        }
        for (int j = 1; j < w; ++j) {
            for (int k = j + 2; k < w; ++k) {
                const HurwitzSystem lhs = sys.precompose(cat.braid(j)).precompose(cat.braid(k));
                const HurwitzSystem rhs = sys.precompose(cat.braid(k)).precompose(cat.braid(j));
                if (lhs != rhs) relations.fail("distant B" + std::to_string(j) + ", B" + std::to_string(k));
            }
        }
        ++rep.systems_tested;
    }
    rep.checks.push_back(cancel.line(rep.systems_tested));
    rep.checks.push_back(keeps.line(rep.systems_tested));
    rep.checks.push_back(relations.line(rep.systems_tested));
    if (h > 0) rep.checks.push_back(contract.line(rep.systems_tested));
    return rep;
}

}  // namespace hurwitz
