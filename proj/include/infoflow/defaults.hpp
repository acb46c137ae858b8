#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "infoflow/formula.hpp"

namespace infoflow {

// Propositional knowledge base over a fixed atom universe (<= 16 atoms).
class PropKB {
public:
    PropKB(std::vector<std::string> atoms, std::vector<Formula> formulas);

    const AtomSpace& space() const { return space_; }
    const std::vector<Formula>& formulas() const { return formulas_; }

    // Model set of the conjunction of all formulas.
    const std::vector<std::uint64_t>& models() const { return models_; }
    bool consistent() const;

private:
    AtomSpace space_;
    std::vector<Formula> formulas_;
    std::vector<std::uint64_t> models_;
};

// Classical truth-table entailment.
bool entails(const PropKB& kb, const Formula& phi);

struct ExplosionReport {
    bool kb_inconsistent = false;
    bool entailed = false; // of the queried formula
};

// Demonstrates ex falso quodlibet: an inconsistent base entails everything.
ExplosionReport inconsistency_explosion(const PropKB& kb, const Formula& phi);

// Monotonicity probe: formulas from the probe set entailed by the smaller
// base but lost on the larger one, under a caller-supplied entailment
// engine. A non-empty loss set witnesses non-monotonic behaviour.
struct MonotonicityReport {
    std::vector<Formula> gained; // in cons(larger) \ cons(smaller)
    std::vector<Formula> lost;   // in cons(smaller) \ cons(larger)
    bool monotone_on_probes() const { return lost.empty(); }
};

using EntailmentEngine = std::function<bool(const PropKB&, const Formula&)>;

MonotonicityReport cons_diff(const EntailmentEngine& engine, const PropKB& smaller,
                             const PropKB& larger, const std::vector<Formula>& probes);

// All subset-maximal consistent sub-bases, canonically ordered by their
// formula index sets. At most 12 formulas.
std::vector<std::vector<int>> maximal_consistent_subsets(const PropKB& kb);

PropKB subset_kb(const PropKB& kb, const std::vector<int>& formula_indexes);

// Entailed by every / some maximal consistent subset.
bool skeptical_entails(const PropKB& kb, const Formula& phi);
bool credulous_entails(const PropKB& kb, const Formula& phi);

// Default rule: fire when every prerequisite is in the extension and no
// blocker is; the conclusion joins the extension.
struct DefaultRule {
    std::vector<Formula> prerequisites;
    std::vector<Formula> blockers;
    Formula conclusion;
};

struct Extension {
    std::vector<int> applied_rules;   // sorted rule indexes
    std::vector<Formula> generators;  // facts plus applied conclusions
};

// All extensions of (facts, rules), found by guess-and-verify over rule
// subsets: blockers are judged against the candidate extension itself, the
// applied set must be exactly the applicable set, and every applied rule
// must be reachable by iterated prerequisite derivation from the facts.
// At most 10 rules.
std::vector<Extension> default_extensions(const PropKB& facts,
                                          const std::vector<DefaultRule>& rules);

// Independent fixpoint re-verification of a claimed extension.
bool verify_extension(const PropKB& facts, const std::vector<DefaultRule>& rules,
                      const std::vector<int>& applied_rules);

struct ClosedWorldResult {
    std::vector<Formula> closure;        // kb plus negated unknown atoms
    std::vector<std::string> negated;    // the atoms that were negated
};

// Adds the negation of every atom the base does not entail; fails when the
// closure is inconsistent (disjunctive bases), naming the witness atoms.
ClosedWorldResult closed_world(const PropKB& kb);

} // namespace infoflow
