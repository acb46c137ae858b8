#include <doctest.h>

#include <algorithm>

#include "infoflow/defaults.hpp"
#include "infoflow/errors.hpp"
#include "infoflow/rng.hpp"

using namespace infoflow;

namespace {

const std::vector<std::string> kAtoms = {"p", "q", "r", "s"};

PropKB kb_of(std::vector<std::string> texts,
             std::vector<std::string> atoms = kAtoms) {
    std::vector<Formula> formulas;
    for (const auto& t : texts) formulas.push_back(parse_formula(t));
    return PropKB(std::move(atoms), std::move(formulas));
}

// Independent subset filter: consistent subsets to which nothing can be
// added, computed with fresh truth-table checks.
std::vector<std::vector<int>> oracle_mcs(const PropKB& kb) {
    const int n = static_cast<int>(kb.formulas().size());
    auto consistent = [&](std::uint32_t mask) {
        std::vector<Formula> chosen;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) chosen.push_back(kb.formulas()[i]);
        return PropKB(kb.space().atoms(), chosen).consistent();
    };
    std::vector<std::vector<int>> result;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (!consistent(mask)) continue;
        bool maximal = true;
        for (int i = 0; i < n; ++i)
            if (!(mask & (1u << i)) && consistent(mask | (1u << i))) maximal = false;
        if (!maximal) continue;
        std::vector<int> subset;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) subset.push_back(i);
        result.push_back(subset);
    }
    std::sort(result.begin(), result.end());
    return result;
}

Formula random_prop(Rng& rng, int n_atoms, int depth) {
    if (depth == 0 || rng.below(3) == 0)
        return Formula::atom(kAtoms[rng.below(n_atoms)]);
    switch (rng.below(3)) {
    case 0: return Formula::negation(random_prop(rng, n_atoms, depth - 1));
    case 1:
        return Formula::conjunction(random_prop(rng, n_atoms, depth - 1),
                                    random_prop(rng, n_atoms, depth - 1));
    default:
        return Formula::disjunction(random_prop(rng, n_atoms, depth - 1),
                                    random_prop(rng, n_atoms, depth - 1));
    }
}

} // namespace

TEST_CASE("classical entailment") {
    auto kb = kb_of({"p"});
    CHECK(entails(kb, parse_formula("p | q")));
    CHECK_FALSE(entails(kb, parse_formula("q")));
    CHECK(entails(kb, parse_formula("p")));
}

TEST_CASE("classical consequence is monotone on probes") {
    Rng rng(61);
    EntailmentEngine classical = [](const PropKB& kb, const Formula& f) {
        return entails(kb, f);
    };
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Formula> base;
        for (int i = 0; i < 3; ++i) base.push_back(random_prop(rng, 4, 2));
        std::vector<Formula> extended = base;
        extended.push_back(random_prop(rng, 4, 2));
        PropKB smaller(kAtoms, base), larger(kAtoms, extended);
        std::vector<Formula> probes;
        for (int i = 0; i < 6; ++i) probes.push_back(random_prop(rng, 4, 2));
        auto report = cons_diff(classical, smaller, larger, probes);
        CHECK(report.monotone_on_probes());
    }
}

TEST_CASE("ex falso quodlibet") {
    auto boom = kb_of({"p", "!p"});
    auto report = inconsistency_explosion(boom, parse_formula("q"));
    CHECK(report.kb_inconsistent);
    CHECK(report.entailed);
    // Exhaustive sweep: every one of the 16 truth functions over {p, q},
    // written in disjunctive normal form.
    for (int table = 0; table < 16; ++table) {
        Formula f = Formula::negation(Formula::atom("p")); // placeholder
        bool started = false;
        for (int v = 0; v < 4; ++v) {
            if (!(table & (1 << v))) continue;
            Formula minterm = Formula::conjunction(
                (v & 1) ? Formula::atom("p") : Formula::negation(Formula::atom("p")),
                (v & 2) ? Formula::atom("q") : Formula::negation(Formula::atom("q")));
            f = started ? Formula::disjunction(f, minterm) : minterm;
            started = true;
        }
        if (!started) f = Formula::conjunction(Formula::atom("p"),
                                               Formula::negation(Formula::atom("p")));
        CHECK(inconsistency_explosion(boom, f).entailed);
    }
    // A consistent base does not entail unrelated atoms.
    auto fine = kb_of({"p"});
    auto sane = inconsistency_explosion(fine, parse_formula("q"));
    CHECK_FALSE(sane.kb_inconsistent);
    CHECK_FALSE(sane.entailed);
}

TEST_CASE("maximal consistent subsets of the worked base") {
    auto kb = kb_of({"p", "!p", "q", "r", "s"});
    auto subsets = maximal_consistent_subsets(kb);
    REQUIRE(subsets.size() == 2);
    CHECK(subsets[0] == std::vector<int>{0, 2, 3, 4}); // {p, q, r, s}
    CHECK(subsets[1] == std::vector<int>{1, 2, 3, 4}); // {!p, q, r, s}

    CHECK(skeptical_entails(kb, parse_formula("q")));
    CHECK(skeptical_entails(kb, parse_formula("r & s")));
    CHECK_FALSE(skeptical_entails(kb, parse_formula("p")));
    CHECK(credulous_entails(kb, parse_formula("p")));

    // Adding !q cancels the skeptical conclusion q.
    auto kb2 = kb_of({"p", "!p", "q", "r", "s", "!q"});
    CHECK_FALSE(skeptical_entails(kb2, parse_formula("q")));

    // A consistent base is its own single subset.
    auto fine = kb_of({"p", "q"});
    auto single = maximal_consistent_subsets(fine);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == std::vector<int>{0, 1});
}

TEST_CASE("maximal consistent subsets match the brute-force filter") {
    Rng rng(71);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Formula> formulas;
        for (int i = 0; i < 6; ++i) formulas.push_back(random_prop(rng, 4, 2));
        PropKB kb(kAtoms, formulas);
        CHECK(maximal_consistent_subsets(kb) == oracle_mcs(kb));
    }
    // Each subset is consistent and cannot be extended.
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Formula> formulas;
        for (int i = 0; i < 5; ++i) formulas.push_back(random_prop(rng, 4, 2));
        PropKB kb(kAtoms, formulas);
        for (const auto& subset : maximal_consistent_subsets(kb)) {
            auto sub = subset_kb(kb, subset);
            CHECK(sub.consistent());
            for (int i = 0; i < static_cast<int>(formulas.size()); ++i) {
                if (std::count(subset.begin(), subset.end(), i)) continue;
                auto extended = subset;
                extended.push_back(i);
                CHECK_FALSE(subset_kb(kb, extended).consistent());
            }
        }
    }
    // Skeptical entailment implies credulous entailment.
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Formula> formulas;
        for (int i = 0; i < 5; ++i) formulas.push_back(random_prop(rng, 4, 2));
        PropKB kb(kAtoms, formulas);
        Formula probe = random_prop(rng, 4, 2);
        if (skeptical_entails(kb, probe)) CHECK(credulous_entails(kb, probe));
    }
}

TEST_CASE("budgets are enforced") {
    std::vector<Formula> many;
    for (int i = 0; i < 13; ++i) many.push_back(parse_formula("p"));
    PropKB kb(kAtoms, many);
    CHECK_THROWS_AS(maximal_consistent_subsets(kb), BudgetExceeded);

    std::vector<std::string> atoms;
    for (int i = 0; i < 17; ++i) atoms.push_back("a" + std::to_string(i));
    CHECK_THROWS_AS(PropKB(atoms, {}), BudgetExceeded);
}

TEST_CASE("bird default and its cancellation") {
    std::vector<std::string> atoms = {"bird(t)", "penguin(t)", "fly(t)"};
    DefaultRule flies{{parse_formula("bird(t)")},
                      {parse_formula("!fly(t)")},
                      parse_formula("fly(t)")};

    PropKB facts(atoms, {parse_formula("bird(t)")});
    auto extensions = default_extensions(facts, {flies});
    REQUIRE(extensions.size() == 1);
    PropKB theory(atoms, extensions[0].generators);
    CHECK(entails(theory, parse_formula("fly(t)")));
    CHECK(verify_extension(facts, {flies}, extensions[0].applied_rules));

    // Learning penguin(t) (with penguins flightless) cancels the conclusion.
    PropKB more(atoms, {parse_formula("bird(t)"), parse_formula("penguin(t)"),
                        parse_formula("!penguin(t) | !fly(t)")});
    auto blocked = default_extensions(more, {flies});
    REQUIRE(blocked.size() == 1);
    CHECK(blocked[0].applied_rules.empty());
    PropKB blocked_theory(atoms, blocked[0].generators);
    CHECK_FALSE(entails(blocked_theory, parse_formula("fly(t)")));
    CHECK(verify_extension(more, {flies}, blocked[0].applied_rules));

    // The skeptical default engine is non-monotonic on the fly(t) probe.
    EntailmentEngine default_engine = [&](const PropKB& base, const Formula& f) {
        auto exts = default_extensions(base, {flies});
        if (exts.empty()) return false;
        for (const auto& ext : exts) {
            PropKB t(base.space().atoms(), ext.generators);
            if (!entails(t, f)) return false;
        }
        return true;
    };
    auto report = cons_diff(default_engine, facts, more,
                            {parse_formula("fly(t)"), parse_formula("penguin(t)")});
    REQUIRE(report.lost.size() == 1);
    CHECK(report.lost[0] == parse_formula("fly(t)"));
    REQUIRE(report.gained.size() == 1);
    CHECK(report.gained[0] == parse_formula("penguin(t)"));
}

TEST_CASE("mutually blocking rules give two extensions") {
    std::vector<std::string> atoms = {"a", "b"};
    DefaultRule ra{{}, {parse_formula("b")}, parse_formula("a")};
    DefaultRule rb{{}, {parse_formula("a")}, parse_formula("b")};
    PropKB facts(atoms, {});
    auto extensions = default_extensions(facts, {ra, rb});
    REQUIRE(extensions.size() == 2);
    CHECK(extensions[0].applied_rules == std::vector<int>{0});
    CHECK(extensions[1].applied_rules == std::vector<int>{1});
    for (const auto& ext : extensions)
        CHECK(verify_extension(facts, {ra, rb}, ext.applied_rules));
    // The unfired pair is not an extension.
    CHECK_FALSE(verify_extension(facts, {ra, rb}, {}));
    CHECK_FALSE(verify_extension(facts, {ra, rb}, {0, 1}));
}

TEST_CASE("self-justifying rules are rejected by groundedness") {
    std::vector<std::string> atoms = {"p"};
    DefaultRule self{{parse_formula("p")}, {}, parse_formula("p")};
    PropKB facts(atoms, {});
    auto extensions = default_extensions(facts, {self});
    REQUIRE(extensions.size() == 1);
    CHECK(extensions[0].applied_rules.empty());
}

TEST_CASE("closed world assumption") {
    // Unmentioned atoms are negated.
    auto kb = kb_of({"p"}, {"p", "q"});
    auto closed = closed_world(kb);
    CHECK(closed.negated == std::vector<std::string>{"q"});
    PropKB closure(kb.space().atoms(), closed.closure);
    CHECK(entails(closure, parse_formula("!q")));
    CHECK(entails(closure, parse_formula("p")));
    // The closure entails the input base.
    for (const auto& f : kb.formulas()) CHECK(entails(closure, f));

    // Disjunctive information breaks the closure.
    auto dis = kb_of({"p | q"}, {"p", "q"});
    CHECK_THROWS_AS(closed_world(dis), UndefinedOperation);

    // A flight table without the connection entails its absence.
    std::vector<std::string> flights = {"connected(paris,rome)", "connected(paris,bonn)"};
    PropKB table(flights, {parse_formula("connected(paris,rome)")});
    auto closed_table = closed_world(table);
    PropKB closed_kb(flights, closed_table.closure);
    CHECK(entails(closed_kb, parse_formula("!connected(paris,bonn)")));

    CHECK_THROWS_AS(closed_world(kb_of({"p", "!p"})), InvalidInput);
}
