#include <doctest.h>

#include "infoflow/errors.hpp"
#include "infoflow/formula.hpp"

using namespace infoflow;

TEST_CASE("parser handles precedence and modalities") {
    Formula f = parse_formula("p & q | r");
    CHECK(f.kind() == Formula::Kind::Or);
    CHECK(f.lhs().kind() == Formula::Kind::And);

    Formula g = parse_formula("K{a} p & q");
    CHECK(g.kind() == Formula::Kind::And);
    CHECK(g.lhs().kind() == Formula::Kind::Knows);
    CHECK(g.lhs().agent() == "a");

    Formula h = parse_formula("C{a,b} (p | q)");
    CHECK(h.kind() == Formula::Kind::Common);
    CHECK(h.group() == std::vector<std::string>{"a", "b"});

    Formula neg = parse_formula("!!p");
    CHECK(neg.kind() == Formula::Kind::Not);
    CHECK(neg.child().kind() == Formula::Kind::Not);
}

TEST_CASE("ground atoms keep their argument lists") {
    Formula f = parse_formula("bird(tweety) & !fly(tweety)");
    CHECK(f.lhs().atom_name() == "bird(tweety)");
    CHECK(f.rhs().child().atom_name() == "fly(tweety)");
    Formula g = parse_formula("connected(paris,bonn)");
    CHECK(g.atom_name() == "connected(paris,bonn)");
}

TEST_CASE("linear probability terms parse") {
    Formula f = parse_formula("1*P{a}[p] - 2*P{a}[q] >= 0");
    REQUIRE(f.kind() == Formula::Kind::ProbCmp);
    REQUIRE(f.prob_terms().size() == 2);
    CHECK(f.prob_terms()[0].coefficient == doctest::Approx(1.0));
    CHECK(f.prob_terms()[1].coefficient == doctest::Approx(-2.0));
    CHECK(f.prob_bound() == doctest::Approx(0.0));
    CHECK(f.has_probability_terms());

    Formula nested = parse_formula("P{a}[K{b} p] >= 1");
    CHECK(nested.prob_terms()[0].argument.kind() == Formula::Kind::Knows);

    CHECK_THROWS_AS(parse_formula("P{a}[p] >"), InvalidInput);
    CHECK_THROWS_AS(parse_formula("p &"), InvalidInput);
    CHECK_THROWS_AS(parse_formula("(p"), InvalidInput);
}

TEST_CASE("round trip through to_string") {
    for (const char* text : {"p & (q | r)", "!p | q", "K{a} !p", "bird(t) & !fly(t)"}) {
        Formula once = parse_formula(text);
        Formula twice = parse_formula(once.to_string());
        CHECK(once == twice);
    }
}

TEST_CASE("truth tables over an atom space") {
    AtomSpace space({"p", "q"});
    Formula f = parse_formula("p | q");
    auto models = space.models(f);
    int count = 0;
    for (std::uint32_t v = 0; v < space.valuation_count(); ++v)
        if (models[v >> 6] & (1ULL << (v & 63))) ++count;
    CHECK(count == 3);

    CHECK(space.eval(f, 0b01));
    CHECK_FALSE(space.eval(f, 0b00));
    CHECK_THROWS_AS(space.eval(parse_formula("z"), 0), InvalidInput);
}
