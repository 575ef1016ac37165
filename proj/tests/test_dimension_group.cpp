#include <doctest.h>

#include "pwm/dimension_group.hpp"
#include "pwm/errors.hpp"
#include "pwm/map_spec.hpp"
#include "pwm/markov.hpp"

using namespace pwm;

namespace {

FieldElement q(long p, long r = 1) { return FieldElement::fraction(p, r); }

RatVector rv(std::initializer_list<long> xs) {
    RatVector v;
    for (long x : xs)
        v.emplace_back(x);
    return v;
}

} // namespace

TEST_CASE("presentation of the doubling matrix") {
    const GroupPresentation p = ga_presentation(IntMatrix{{1, 1}, {1, 1}});
    CHECK(p.rank == 1);
    CHECK(p.action == RatMatrix{{2}});
    CHECK(p.stabilized_at == 1);
    CHECK(ga_equal(p, GAElement{rv({1, 0}), 0}, GAElement{rv({0, 1}), 0}));
    CHECK(ga_equal(p, GAElement{rv({2, 3}), 1}, GAElement{rv({2, 3}), 1}));
    CHECK_FALSE(ga_equal(p, GAElement{rv({1, 1}), 0}, GAElement{rv({1, 1}), 1}));
    CHECK(ga_equal(p, GAElement{rv({2, 2}), 1}, GAElement{rv({1, 1}), 0}));
    CHECK(is_true(ga_positive(p, GAElement{rv({1, -1}), 0}, 5)));
    CHECK(is_true(ga_positive(p, GAElement{rv({1, 0}), 0}, 5)));
    CHECK(is_false(ga_positive(p, GAElement{rv({-1, 0}), 0}, 5)));
}

TEST_CASE("presentation of the swap-and-double matrix") {
    const GroupPresentation p = ga_presentation(IntMatrix{{0, 0, 1}, {0, 0, 1}, {1, 1, 0}});
    CHECK(p.rank == 2);
    CHECK(p.action * p.action == RatMatrix{{2, 0}, {0, 2}});
    CHECK(p.action(0, 0) + p.action(1, 1) == 0);
    CHECK(p.basis * p.matrix.cast<Rational>() == p.action * p.basis);
}

TEST_CASE("identity and nilpotent parts") {
    const GroupPresentation id = ga_presentation(IntMatrix::identity(3));
    CHECK(id.rank == 3);
    CHECK(id.action == RatMatrix::identity(3));
    const GroupPresentation nil = ga_presentation(IntMatrix{{0, 1}, {0, 1}});
    CHECK(nil.rank == 1);
    CHECK(nil.action == RatMatrix{{1}});
    CHECK(ga_equal(nil, GAElement{rv({1, 0}), 0}, GAElement{rv({0, 1}), 0}));
    CHECK_THROWS_AS(ga_presentation(IntMatrix{{1, -1}, {0, 1}}), ValidationError);
}

TEST_CASE("action is invertible on Markov examples") {
    for (const char* n : {"full_tent", "triangle", "restricted_tent_sqrt2", "jump", "half_rotation"}) {
        const PwmMap m = named_example(n).map;
        const MarkovDetection det = detect_markov(m);
        REQUIRE(det.detected());
        const GroupPresentation p = ga_presentation(incidence_matrix(m, *det.partition));
        INFO(n);
        CHECK_NOTHROW(inverse(p.action));
    }
}

TEST_CASE("module vectors") {
    const PwmMap tent = make_tent(2);
    const MarkovPartition mp = *detect_markov(tent).partition;
    const ModuleVector a = markov_module_vector(tent, mp, StepFunction::indicator(0, q(1, 2)), 5);
    CHECK(a.v == IntVector{1, 0});
    CHECK(a.level == 0);
    const ModuleVector b = markov_module_vector(tent, mp, StepFunction::indicator(0, q(1, 4)), 5);
    CHECK(b.v == IntVector{1, 0});
    CHECK(b.level == 1);
    CHECK_THROWS_AS(markov_module_vector(tent, mp, StepFunction::indicator(0, q(1, 3)), 5), BoundExceeded);

    const PwmMap s2 = make_restricted_tent(FieldElement::sqrt(2));
    const MarkovPartition mp2 = *detect_markov(s2).partition;
    const FieldElement c = restricted_tent_critical_point(FieldElement::sqrt(2));
    const ModuleVector v = markov_module_vector(s2, mp2, StepFunction::indicator(0, c), 3);
    CHECK(v.v == IntVector{1, 0, 0});
    CHECK(v.level == 0);
}

TEST_CASE("module vectors are additive and intertwine the transfer operator") {
    const PwmMap tri = named_example("triangle").map;
    const MarkovPartition mp = validate_markov_partition(tri, {0, q(1, 3), q(2, 3), 1});
    const IntMatrix a = incidence_matrix(tri, mp);
    const std::vector<StepFunction> fs{StepFunction::indicator(q(1, 6), q(1, 2)), StepFunction::indicator(0, q(1, 3)),
                                       StepFunction::indicator(q(5, 6), 1), Integer(2) * StepFunction::indicator(q(1, 3), q(1, 2)),
                                       StepFunction::indicator(q(1, 12), q(5, 6))};
    for (const auto& f : fs) {
        const ModuleVector mf = markov_module_vector(tri, mp, f, 10);
        const ModuleVector mlf = markov_module_vector(tri, mp, transfer_apply(tri, f), 10);
        if (mf.level > 0)
            CHECK(mlf.level + 1 == mf.level);
        else
            CHECK(mlf.v == row_times(mf.v, a));
        for (const auto& g : fs) {
            const ModuleVector mg = markov_module_vector(tri, mp, g, 10);
            const ModuleVector ms = markov_module_vector(tri, mp, f + g, 10);
            const std::size_t top = std::max({mf.level, mg.level, ms.level});
            auto lift = [&](ModuleVector m) {
                for (std::size_t k = m.level; k < top; ++k)
                    m.v = row_times(m.v, a);
                return m.v;
            };
            IntVector sum = lift(mf);
            const IntVector gv = lift(mg);
            for (std::size_t i = 0; i < sum.size(); ++i)
                sum[i] += gv[i];
            CHECK(lift(ms) == sum);
        }
    }
}

TEST_CASE("simplicity") {
    CHECK(is_true(is_simple(make_tent(2))));
    CHECK(is_false(is_simple(make_restricted_tent(FieldElement::sqrt(2)))));
    CHECK(is_true(is_simple(make_restricted_tent(q(3, 2)), OrbitBounds::steps(50))));
    CHECK(is_unknown(is_simple(named_example("half_rotation").map)));
}

TEST_CASE("classification") {
    const ModuleClassification tent = classify_module(make_tent(2));
    CHECK(tent.tag == ModuleTag::MarkovTriple);
    CHECK_FALSE(tent.conditional);
    CHECK(tent.summary() == "MarkovTriple, rank 1, action ×2");

    const ModuleClassification t32 = classify_module(make_restricted_tent(q(3, 2)), 50);
    CHECK(t32.tag == ModuleTag::Cyclic);
    CHECK(t32.conditional);
    CHECK(t32.bound == 50);
    CHECK(t32.payload.find("Z[t,t^-1]") != std::string::npos);
    REQUIRE(t32.generators.size() == 1);
    CHECK(t32.generators[0] == ClopenInterval::make(0, 1));

    const ModuleClassification gold = classify_module(named_example("golden_exchange").map, 200);
    CHECK(gold.tag == ModuleTag::ExchangeForm);
    CHECK(gold.free_rank == 1);
    CHECK(gold.conditional);
    CHECK(gold.bound == 200);
    CHECK(gold.payload == "(Z[t,t^-1])^1 ⊕ Z");

    const ModuleClassification multi = classify_module(named_example("multimodal").map, 100);
    CHECK(multi.tag == ModuleTag::FreeRank);
    CHECK(multi.free_rank == 2);
    CHECK(multi.conditional);

    const PwmMap plateau_free(FieldDescriptor{}, {0, q(1, 2), 1}, {{q(1, 2), 0}, {q(1, 2), q(1, 4)}});
    CHECK(classify_module(plateau_free, 20).tag == ModuleTag::Unknown);

    CHECK(is_unimodal(make_tent(2)));
    CHECK_FALSE(is_unimodal(named_example("jump").map));
    CHECK(is_generalized_exchange(named_example("golden_exchange").map));
    CHECK_FALSE(is_generalized_exchange(make_tent(2)));
}
