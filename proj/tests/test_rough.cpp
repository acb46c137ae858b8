#include <doctest.h>

#include <algorithm>

#include "infoflow/errors.hpp"
#include "infoflow/rng.hpp"
#include "infoflow/rough.hpp"

using namespace infoflow;

namespace {

InformationSystem four_objects() {
    // Single attribute a with values 0,0,1,1.
    return InformationSystem({"1", "2", "3", "4"}, {"a"},
                             {{"0"}, {"0"}, {"1"}, {"1"}});
}

InformationSystem random_system(Rng& rng, int max_objects, int max_attributes) {
    int n_obj = 1 + static_cast<int>(rng.below(max_objects));
    int n_att = 1 + static_cast<int>(rng.below(max_attributes));
    std::vector<std::string> objects, attributes;
    for (int i = 0; i < n_obj; ++i) objects.push_back("o" + std::to_string(i));
    for (int i = 0; i < n_att; ++i) attributes.push_back("a" + std::to_string(i));
    std::vector<std::vector<std::string>> values(n_obj, std::vector<std::string>(n_att));
    for (auto& row : values)
        for (auto& cell : row) cell = "v" + std::to_string(rng.below(3));
    return InformationSystem(objects, attributes, values);
}

std::vector<int> random_subset(Rng& rng, int n) {
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (rng.coin()) out.push_back(i);
    return out;
}

bool contains(const std::vector<int>& sorted, int x) {
    return std::binary_search(sorted.begin(), sorted.end(), x);
}

} // namespace

TEST_CASE("indiscernibility classes") {
    auto s = four_objects();
    auto classes = indiscernibility_classes(s, {0});
    REQUIRE(classes.size() == 2);
    CHECK(classes[0] == std::vector<int>{0, 1});
    CHECK(classes[1] == std::vector<int>{2, 3});
    CHECK_THROWS_AS(indiscernibility_classes(s, {}), InvalidInput);

    // Injective attribute: all singletons.
    InformationSystem crisp({"x", "y", "z"}, {"id"}, {{"1"}, {"2"}, {"3"}});
    CHECK(indiscernibility_classes(crisp, {0}).size() == 3);

    // Constant attribute: one class.
    InformationSystem blur({"x", "y", "z"}, {"c"}, {{"k"}, {"k"}, {"k"}});
    CHECK(indiscernibility_classes(blur, {0}).size() == 1);
}

TEST_CASE("rough approximation on the worked example") {
    auto s = four_objects();
    // X = {1, 3} cuts across both classes.
    auto approx = approximate(s, {0}, {0, 2});
    CHECK(approx.lower.empty());
    CHECK(approx.upper == std::vector<int>{0, 1, 2, 3});
    CHECK(approx.boundary == std::vector<int>{0, 1, 2, 3});
    CHECK_FALSE(is_crisp(s, {0}, {0, 2}));

    // X = U is exact.
    auto full = approximate(s, {0}, {0, 1, 2, 3});
    CHECK(full.lower == std::vector<int>{0, 1, 2, 3});
    CHECK(full.boundary.empty());

    // The empty target is crisp.
    CHECK(is_crisp(s, {0}, {}));

    // Unions of whole classes are crisp.
    CHECK(is_crisp(s, {0}, {0, 1}));
    CHECK(is_crisp(s, {0}, {2, 3}));

    CHECK_THROWS_AS(approximate(s, {0}, {9}), InvalidInput);
}

TEST_CASE("singleton classes make every set crisp") {
    InformationSystem crisp({"x", "y", "z"}, {"id"}, {{"1"}, {"2"}, {"3"}});
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto target = random_subset(rng, 3);
        auto approx = approximate(crisp, {0}, target);
        std::vector<int> sorted = target;
        std::sort(sorted.begin(), sorted.end());
        CHECK(approx.lower == sorted);
        CHECK(approx.upper == sorted);
        CHECK(approx.boundary.empty());
    }
}

TEST_CASE("containment, duality, and attribute monotonicity") {
    Rng rng(47);
    for (int trial = 0; trial < 500; ++trial) {
        auto s = random_system(rng, 12, 4);
        const int n = static_cast<int>(s.object_count());
        const int n_att = static_cast<int>(s.attributes().size());
        auto target = random_subset(rng, n);
        std::vector<int> sorted_target = target;
        std::sort(sorted_target.begin(), sorted_target.end());

        std::vector<int> b = random_subset(rng, n_att);
        if (b.empty()) b.push_back(0);
        auto approx = approximate(s, b, target);

        // lower <= X <= upper.
        for (int x : approx.lower) CHECK(contains(sorted_target, x));
        for (int x : sorted_target) CHECK(contains(approx.upper, x));
        // boundary = upper \ lower exactly.
        std::vector<int> diff;
        std::set_difference(approx.upper.begin(), approx.upper.end(), approx.lower.begin(),
                            approx.lower.end(), std::back_inserter(diff));
        CHECK(approx.boundary == diff);

        // Duality: lower(X) = U \ upper(U \ X).
        std::vector<int> complement;
        for (int i = 0; i < n; ++i)
            if (!contains(sorted_target, i)) complement.push_back(i);
        auto co = approximate(s, b, complement);
        std::vector<int> dual;
        for (int i = 0; i < n; ++i)
            if (!contains(co.upper, i)) dual.push_back(i);
        CHECK(approx.lower == dual);

        // Attribute monotonicity: enlarging B refines the approximation.
        std::vector<int> larger = b;
        for (int a = 0; a < n_att; ++a)
            if (!std::count(larger.begin(), larger.end(), a) && rng.coin())
                larger.push_back(a);
        auto finer = approximate(s, larger, target);
        for (int x : approx.lower) CHECK(contains(finer.lower, x));
        for (int x : finer.upper) CHECK(contains(approx.upper, x));
    }
}
