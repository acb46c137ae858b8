#include <doctest.h>

#include <cmath>

#include "infoflow/errors.hpp"
#include "infoflow/evidence.hpp"
#include "infoflow/rng.hpp"

using namespace infoflow;

namespace {

MassFunction random_mass(Rng& rng, const Frame& frame, bool singletons_only = false) {
    std::uint32_t full = frame.full_mask();
    std::map<std::uint32_t, double> focal;
    // Never ask for more distinct focal sets than the frame offers.
    std::size_t available = singletons_only ? frame.size() : full;
    std::size_t focal_count = 1 + rng.below(std::min<std::size_t>(available, 5));
    while (focal.size() < focal_count) {
        std::uint32_t mask;
        if (singletons_only) {
            mask = 1u << rng.below(frame.size());
        } else {
            mask = 1 + static_cast<std::uint32_t>(rng.below(full));
        }
        focal[mask] = 0.0;
    }
    auto weights = rng.simplex(focal.size());
    std::size_t i = 0;
    for (auto& [mask, mass] : focal) mass = weights[i++];
    return MassFunction(frame, std::move(focal));
}

} // namespace

TEST_CASE("mass function invariants") {
    Frame frame({"a", "b"});
    CHECK_THROWS_AS(MassFunction(frame, {{0u, 1.0}}), InvalidInput);           // empty set
    CHECK_THROWS_AS(MassFunction(frame, {{1u, 0.4}}), InvalidInput);           // sum != 1
    CHECK_THROWS_AS(MassFunction(frame, {{4u, 1.0}}), InvalidInput);           // outside frame
    CHECK_THROWS_AS(Frame(std::vector<std::string>{}), InvalidInput);
    CHECK_THROWS_AS(Frame({"a", "a"}), InvalidInput);
}

TEST_CASE("belief, plausibility, ignorance") {
    Frame frame({"a", "b"});
    // Vacuous mass: total ignorance on every proper non-empty subset.
    auto vacuous = MassFunction::vacuous(frame);
    auto iv = belief_plausibility(vacuous, frame.subset_mask({"a"}));
    CHECK(iv.belief == doctest::Approx(0.0));
    CHECK(iv.plausibility == doctest::Approx(1.0));
    CHECK(iv.ignorance == doctest::Approx(1.0));

    // Direct subset-summation example.
    MassFunction m(frame, {{frame.subset_mask({"a"}), 0.6}, {frame.full_mask(), 0.4}});
    auto a = belief_plausibility(m, frame.subset_mask({"a"}));
    CHECK(a.belief == doctest::Approx(0.6));
    CHECK(a.plausibility == doctest::Approx(1.0));
    CHECK(a.ignorance == doctest::Approx(0.4));
    auto b = belief_plausibility(m, frame.subset_mask({"b"}));
    CHECK(b.belief == doctest::Approx(0.0));
    CHECK(b.plausibility == doctest::Approx(0.4));
    CHECK(b.ignorance == doctest::Approx(0.4));

    CHECK_THROWS_AS(belief_plausibility(m, 0xffu), InvalidInput);
}

TEST_CASE("bayesian masses collapse the interval") {
    Rng rng(11);
    Frame frame({"a", "b", "c", "d"});
    for (int trial = 0; trial < 50; ++trial) {
        auto m = random_mass(rng, frame, true);
        for (std::uint32_t subset = 0; subset <= frame.full_mask(); ++subset) {
            auto iv = belief_plausibility(m, subset);
            CHECK(iv.belief == doctest::Approx(iv.plausibility).epsilon(1e-12));
        }
    }
}

TEST_CASE("interval shape and duality on random masses") {
    Rng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::string> names;
        int n = 2 + static_cast<int>(rng.below(5));
        for (int i = 0; i < n; ++i) names.push_back(std::string(1, char('a' + i)));
        Frame frame(names);
        auto m = random_mass(rng, frame);
        for (std::uint32_t subset = 0; subset <= frame.full_mask(); ++subset) {
            auto iv = belief_plausibility(m, subset);
            CHECK(iv.belief >= -1e-9);
            CHECK(iv.belief <= iv.plausibility + 1e-9);
            CHECK(iv.plausibility <= 1.0 + 1e-9);
            auto co = belief_plausibility(m, frame.full_mask() & ~subset);
            CHECK(iv.plausibility == doctest::Approx(1.0 - co.belief).epsilon(1e-9));
        }
    }
}

TEST_CASE("dempster combination") {
    Frame frame({"a", "b", "c"});
    // Vacuous identity.
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        auto m = random_mass(rng, frame);
        auto combined = dempster_combine(m, MassFunction::vacuous(frame));
        REQUIRE(combined.focal().size() == m.focal().size());
        for (const auto& [mask, mass] : m.focal())
            CHECK(combined.focal().at(mask) == doctest::Approx(mass).epsilon(1e-12));
    }

    // Disjoint focal elements: the orthogonal sum is undefined.
    Frame two({"a", "b"});
    MassFunction ma(two, {{two.subset_mask({"a"}), 1.0}});
    MassFunction mb(two, {{two.subset_mask({"b"}), 1.0}});
    CHECK_THROWS_AS(dempster_combine(ma, mb), UndefinedOperation);

    // Classic high-conflict pair: all mass lands on the shared singleton.
    MassFunction m1(frame, {{frame.subset_mask({"a"}), 0.99}, {frame.subset_mask({"b"}), 0.01}});
    MassFunction m2(frame, {{frame.subset_mask({"c"}), 0.99}, {frame.subset_mask({"b"}), 0.01}});
    auto zadeh = dempster_combine(m1, m2);
    REQUIRE(zadeh.focal().size() == 1);
    CHECK(zadeh.focal().at(frame.subset_mask({"b"})) == doctest::Approx(1.0));

    Frame other({"x", "y"});
    CHECK_THROWS_AS(dempster_combine(m1, MassFunction::vacuous(other)), InvalidInput);
}

TEST_CASE("conflict weight") {
    Frame frame({"a", "b", "c"});
    auto m = MassFunction(frame, {{frame.subset_mask({"a"}), 1.0}});
    // Vacuous second argument: no conflict at all.
    auto none = conflict_weight(m, MassFunction::vacuous(frame));
    CHECK(none.conflict_mass == doctest::Approx(0.0));
    CHECK(none.weight == doctest::Approx(0.0));
    CHECK_FALSE(none.total_conflict);

    // The high-conflict pair: E = 0.9999, natural-log weight ~ 9.21.
    MassFunction m1(frame, {{frame.subset_mask({"a"}), 0.99}, {frame.subset_mask({"b"}), 0.01}});
    MassFunction m2(frame, {{frame.subset_mask({"c"}), 0.99}, {frame.subset_mask({"b"}), 0.01}});
    auto heavy = conflict_weight(m1, m2);
    CHECK(heavy.conflict_mass == doctest::Approx(0.9999).epsilon(1e-12));
    CHECK(heavy.weight == doctest::Approx(-std::log(1.0 - 0.9999)).epsilon(1e-9));

    // Total conflict is a tagged infinity rather than an error.
    MassFunction ma(frame, {{frame.subset_mask({"a"}), 1.0}});
    MassFunction mc(frame, {{frame.subset_mask({"c"}), 1.0}});
    auto total = conflict_weight(ma, mc);
    CHECK(total.total_conflict);
    CHECK(std::isinf(total.weight));

    // Commutativity on random masses.
    Rng rng(19);
    for (int trial = 0; trial < 100; ++trial) {
        auto x = random_mass(rng, frame);
        auto y = random_mass(rng, frame);
        auto xy = conflict_weight(x, y);
        auto yx = conflict_weight(y, x);
        CHECK(xy.conflict_mass == doctest::Approx(yx.conflict_mass).epsilon(1e-12));
    }
}

TEST_CASE("dempster combination is commutative and associative") {
    Rng rng(23);
    Frame frame({"a", "b", "c"});
    int done = 0;
    for (int trial = 0; trial < 200 && done < 100; ++trial) {
        auto x = random_mass(rng, frame);
        auto y = random_mass(rng, frame);
        auto z = random_mass(rng, frame);
        try {
            auto xy_z = dempster_combine(dempster_combine(x, y), z);
            auto x_yz = dempster_combine(x, dempster_combine(y, z));
            auto yx = dempster_combine(y, x);
            auto xy = dempster_combine(x, y);
            for (const auto& [mask, mass] : xy.focal())
                CHECK(yx.focal().at(mask) == doctest::Approx(mass).epsilon(1e-9));
            for (const auto& [mask, mass] : xy_z.focal())
                CHECK(x_yz.focal().at(mask) == doctest::Approx(mass).epsilon(1e-9));
            ++done;
        } catch (const UndefinedOperation&) {
            continue; // conflicting triple; not part of the property
        }
    }
    CHECK(done == 100);
}

TEST_CASE("dubois-prade combination") {
    Frame frame({"a", "b", "c"});
    // Vacuous identity: X intersected with the frame is X.
    Rng rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        auto m = random_mass(rng, frame);
        auto combined = dubois_prade_combine(m, MassFunction::vacuous(frame));
        REQUIRE(combined.focal().size() == m.focal().size());
        for (const auto& [mask, mass] : m.focal())
            CHECK(combined.focal().at(mask) == doctest::Approx(mass).epsilon(1e-12));
    }

    // The high-conflict pair keeps every product, moving conflicts to unions.
    MassFunction m1(frame, {{frame.subset_mask({"a"}), 0.99}, {frame.subset_mask({"b"}), 0.01}});
    MassFunction m2(frame, {{frame.subset_mask({"c"}), 0.99}, {frame.subset_mask({"b"}), 0.01}});
    auto dp = dubois_prade_combine(m1, m2);
    CHECK(dp.focal().at(frame.subset_mask({"a", "c"})) == doctest::Approx(0.9801));
    CHECK(dp.focal().at(frame.subset_mask({"a", "b"})) == doctest::Approx(0.0099));
    CHECK(dp.focal().at(frame.subset_mask({"b", "c"})) == doctest::Approx(0.0099));
    CHECK(dp.focal().at(frame.subset_mask({"b"})) == doctest::Approx(0.0001));

    // Mass conservation and commutativity over many random pairs.
    for (int trial = 0; trial < 1000; ++trial) {
        auto x = random_mass(rng, frame);
        auto y = random_mass(rng, frame);
        auto xy = dubois_prade_combine(x, y);
        double total = 0.0;
        for (const auto& [mask, mass] : xy.focal()) total += mass;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
        auto yx = dubois_prade_combine(y, x);
        for (const auto& [mask, mass] : xy.focal())
            CHECK(yx.focal().at(mask) == doctest::Approx(mass).epsilon(1e-12));
    }

    // Total conflict still yields a valid mass on unions.
    MassFunction ma(frame, {{frame.subset_mask({"a"}), 1.0}});
    MassFunction mc(frame, {{frame.subset_mask({"c"}), 1.0}});
    auto survived = dubois_prade_combine(ma, mc);
    CHECK(survived.focal().at(frame.subset_mask({"a", "c"})) == doctest::Approx(1.0));
}

TEST_CASE("multivalued mapping bounds") {
    Frame frame({"a", "b", "c"});
    // Constant total image: maximal ignorance on proper non-empty subsets.
    DiscreteDistribution p({"t1", "t2"}, {0.5, 0.5});
    MultivaluedMapping constant(p, frame,
                                {frame.full_mask(), frame.full_mask()});
    auto wide = bounds_from_mapping(constant, frame.subset_mask({"a", "b"}));
    CHECK(wide.lower == doctest::Approx(0.0));
    CHECK(wide.upper == doctest::Approx(1.0));

    // Singleton images: both bounds collapse to the pushforward.
    MultivaluedMapping crisp(DiscreteDistribution({"t1", "t2", "t3"}, {0.2, 0.3, 0.5}), frame,
                             {frame.subset_mask({"a"}), frame.subset_mask({"b"}),
                              frame.subset_mask({"a"})});
    auto pa = bounds_from_mapping(crisp, frame.subset_mask({"a"}));
    CHECK(pa.lower == doctest::Approx(0.7));
    CHECK(pa.upper == doctest::Approx(0.7));

    CHECK_THROWS_AS(MultivaluedMapping(p, frame, {0u, 1u}), InvalidInput);
    CHECK_THROWS_AS(bounds_from_mapping(crisp, 0xffu), InvalidInput);
}

TEST_CASE("mapping bounds equal the induced mass interval") {
    Rng rng(31);
    Frame frame({"a", "b", "c"});
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::string> theta = {"t1", "t2", "t3", "t4"};
        auto probs = rng.simplex(4);
        std::vector<std::uint32_t> images;
        for (int i = 0; i < 4; ++i)
            images.push_back(1 + static_cast<std::uint32_t>(rng.below(frame.full_mask())));
        MultivaluedMapping mapping(DiscreteDistribution(theta, probs), frame, images);
        auto induced = induced_mass(mapping);
        for (std::uint32_t subset = 0; subset <= frame.full_mask(); ++subset) {
            auto bounds = bounds_from_mapping(mapping, subset);
            auto iv = belief_plausibility(induced, subset);
            CHECK(bounds.lower == doctest::Approx(iv.belief).epsilon(1e-9));
            CHECK(bounds.upper == doctest::Approx(iv.plausibility).epsilon(1e-9));
        }
    }
}
