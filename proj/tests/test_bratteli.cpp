#include <doctest.h>

#include <json.hpp>

#include "pwm/bratteli.hpp"
#include "pwm/dimension_group.hpp"
#include "pwm/errors.hpp"
#include "pwm/map_spec.hpp"
#include "pwm/markov.hpp"

using namespace pwm;

namespace {

FieldElement q(long p, long r = 1) { return FieldElement::fraction(p, r); }

std::size_t brute_preimages(const PwmMap& m, const FieldElement& x, std::size_t n) {
    if (n == 0)
        return 1;
    std::size_t total = 0;
    for (const auto& y : m.tau_hat_preimage(x))
        total += brute_preimages(m, y, n - 1);
    return total;
}

void check_tiling(const PwmMap& m, const BratteliDiagram& d) {
    for (std::size_t n = 0; n < d.levels.size(); ++n) {
        const auto& vs = d.levels[n].vertices;
        REQUIRE_FALSE(vs.empty());
        std::vector<Interval> parts;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (i > 0)
                CHECK(vs[i - 1].interval.hi == vs[i].interval.lo);
            parts.push_back(vs[i].interval);
        }
        EventualRange er = eventual_range(m, n);
        CHECK(IntervalUnion(parts) == er.ranges[std::min(n, er.ranges.size() - 1)]);
    }
}

} // namespace

TEST_CASE("point sets") {
    const auto tent = c_n_sets(make_tent(2), 5);
    for (const auto& c : tent)
        CHECK(c == std::vector<FieldElement>{0, 1});
    const auto id = c_n_sets(named_example("identity").map, 3);
    for (const auto& c : id)
        CHECK(c == std::vector<FieldElement>{0, 1});
    const auto s2 = c_n_sets(make_restricted_tent(FieldElement::sqrt(2)), 3);
    const FieldElement p = FieldElement(2) - FieldElement::sqrt(2);
    CHECK(s2[0] == std::vector<FieldElement>{0, 1});
    CHECK(s2[3] == std::vector<FieldElement>{0, p, 1});
}

TEST_CASE("full tent diagram") {
    const BratteliDiagram d = build_diagram(make_tent(2), 6);
    REQUIRE(d.levels.size() == 7);
    for (std::size_t n = 0; n <= 6; ++n) {
        REQUIRE(d.levels[n].vertices.size() == 1);
        CHECK(d.levels[n].vertices[0].interval == Interval{0, 1});
        CHECK(d.levels[n].vertices[0].k == Integer(1) << n);
    }
    const K0Sequence k0 = k0_sequence(d);
    for (const auto& m : k0.connecting)
        CHECK(m == IntMatrix{{2}});
    check_tiling(make_tent(2), d);
}

TEST_CASE("sqrt 2 restricted tent diagram") {
    const PwmMap s2 = make_restricted_tent(FieldElement::sqrt(2));
    const FieldElement p = FieldElement(2) - FieldElement::sqrt(2);
    const BratteliDiagram d = build_diagram(s2, 3);
    const auto& l3 = d.levels[3].vertices;
    REQUIRE(l3.size() == 2);
    CHECK(l3[0].interval == Interval{0, p});
    CHECK(l3[1].interval == Interval{p, 1});
    CHECK(l3[0].k == 2);
    CHECK(l3[1].k == 4);
    const K0Sequence k0 = k0_sequence(d);
    CHECK(k0.ranks == std::vector<std::size_t>{1, 2, 2, 2});
    CHECK(k0.connecting[0] == IntMatrix{{1, 2}});
    CHECK(k0.connecting[1] == IntMatrix{{0, 2}, {1, 0}});
    CHECK(k0.connecting[2] == IntMatrix{{0, 2}, {1, 0}});
    check_tiling(s2, d);
}

TEST_CASE("stabilized connecting matrix matches the group presentation") {
    const PwmMap s2 = make_restricted_tent(FieldElement::sqrt(2));
    const K0Sequence k0 = k0_sequence(build_diagram(s2, 5));
    const IntMatrix& m = k0.connecting.back();
    CHECK(m == k0.connecting[k0.connecting.size() - 2]);
    const GroupPresentation pm = ga_presentation(m);
    const GroupPresentation pa = ga_presentation(incidence_matrix(s2, *detect_markov(s2).partition));
    CHECK(pm.rank == pa.rank);
    CHECK(characteristic_polynomial(pm.action) == characteristic_polynomial(pa.action));
    CHECK(pa.action * pa.action == RatMatrix{{2, 0}, {0, 2}});

    const PwmMap tent = make_tent(2);
    const K0Sequence kt = k0_sequence(build_diagram(tent, 3));
    const GroupPresentation pt = ga_presentation(incidence_matrix(tent, *detect_markov(tent).partition));
    CHECK(characteristic_polynomial(ga_presentation(kt.connecting.back()).action) ==
          characteristic_polynomial(pt.action));
}

TEST_CASE("multiplicities agree with preimage counts") {
    for (const char* n : {"full_tent", "restricted_tent_sqrt2", "triangle", "jump", "four_fold", "identity",
                          "half_rotation", "restricted_tent_3_2"}) {
        const PwmMap m = named_example(n).map;
        const BratteliDiagram d = build_diagram(m, 4);
        INFO(n);
        for (std::size_t lvl = 0; lvl < d.levels.size(); ++lvl)
            for (const auto& v : d.levels[lvl].vertices) {
                CHECK(v.k == preimage_count(m, v.interval.midpoint(), lvl));
                CHECK(v.k == brute_preimages(m, v.interval.midpoint(), lvl));
            }
        const K0Sequence k0 = k0_sequence(d);
        for (std::size_t lvl = 0; lvl + 1 < d.levels.size(); ++lvl) {
            IntVector k;
            for (const auto& v : d.levels[lvl].vertices)
                k.push_back(v.k);
            const IntVector next = row_times(k, k0.connecting[lvl]);
            for (std::size_t j = 0; j < next.size(); ++j)
                CHECK(next[j] == d.levels[lvl + 1].vertices[j].k);
        }
    }
}

TEST_CASE("identity map") {
    const K0Sequence k0 = k0_sequence(build_diagram(named_example("identity").map, 3));
    for (const auto& m : k0.connecting)
        CHECK(m == IntMatrix{{1}});
}

TEST_CASE("width cap") {
    CHECK_THROWS_AS(build_diagram(make_restricted_tent(q(3, 2)), 8, 4), DiagramTooWide);
}

TEST_CASE("export") {
    const BratteliDiagram one = build_diagram(make_tent(2), 1);
    const std::string dot = to_dot(one);
    CHECK(dot.find("L0_0") != std::string::npos);
    CHECK(dot.find("L1_0") != std::string::npos);
    CHECK(dot.find("L0_0 -> L1_0 [label=\"2\"]") != std::string::npos);
    CHECK(dot.find("rank=same") != std::string::npos);

    const BratteliDiagram zero = build_diagram(make_tent(2), 0);
    const auto j0 = nlohmann::json::parse(to_json(zero));
    CHECK(j0["version"] == 1);
    CHECK(j0["levels"].size() == 1);

    const auto j = nlohmann::json::parse(to_json(build_diagram(make_restricted_tent(FieldElement::sqrt(2)), 3)));
    REQUIRE(j["levels"].size() == 4);
    CHECK(j["levels"][3]["vertices"][1]["k"] == 4);
    CHECK(j["levels"][3]["vertices"][1]["lo"] == "2 - sqrt(2)");
    CHECK(j["levels"][1]["edges"].size() == 2);
}
