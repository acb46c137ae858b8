#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "infoflow/classification.hpp"

namespace infoflow {

// Half-open interval [lo, hi) so that zero-tolerance regimentations can
// tile the scale with adjacent, still disjoint intervals.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double x) const { return lo <= x && x < hi; }
};

// Tolerance plus disjoint value intervals, one per unary predicate in
// scale order. Consecutive gaps must not exceed the tolerance.
struct Regimentation {
    double epsilon = 0.0;
    std::vector<Interval> intervals;

    void validate() const; // throws InvalidInput
};

// Scale scenario for a vague size predicate: named objects with real
// measurements, variables X1..XN, and the unary predicate names in scale
// order (defaults to SHORT/MEDIUM/TALL semantics).
struct HeightScenario {
    std::vector<std::string> objects;
    std::vector<double> heights;
    int num_variables = 2;
    std::vector<std::string> predicates = {"SHORT", "MEDIUM", "TALL"};

    void validate() const;
    int object_index(const std::string& name) const;
};

// One conjunct of an agent type.
struct HeightAtom {
    enum class Kind { Unary, Taller, SameHeight };
    Kind kind = Kind::Unary;
    int predicate = 0; // interval index for Unary
    int var1 = 0;
    int var2 = 0; // Taller/SameHeight only
};

// Conjunction of atoms; the canonical name joins sorted atom names with &.
struct HeightType {
    std::vector<HeightAtom> atoms;
    std::string name(const HeightScenario& sc) const;
};

HeightType parse_height_type(const HeightScenario& sc, const std::string& text);

// Truth of a type at a variable assignment under a regimentation. Unary
// predicates hold by interval membership (heights in an inter-interval gap
// satisfy none), TALLER by strict comparison, SAMEHT within the tolerance.
bool classify(const HeightScenario& sc, const Regimentation& r,
              const std::vector<int>& assignment, const HeightType& type);
bool classify(const HeightScenario& sc, const Regimentation& r,
              const std::vector<std::string>& assignment_names, const std::string& type);

// Materialized agent classification: tokens are all |B|^N assignments,
// types are the atoms plus conjunctions up to `conjunction_width`.
ClassificationPtr build_agent_classification(const HeightScenario& sc,
                                             const Regimentation& r,
                                             int conjunction_width = 1);

// Event state space shared by a family of regimentations: same tokens, and
// one type per (formula, regimentation) pair named "formula@rk".
ClassificationPtr build_event_state_space(const HeightScenario& sc,
                                          const std::vector<Regimentation>& family,
                                          int conjunction_width = 1);

// Infomorphism from the agent classification under family[index] into the
// shared event state space: formulas map to their @rk copies, tuples map
// back to the same assignment.
Infomorphism build_regimentation_morphism(const HeightScenario& sc,
                                          const std::vector<Regimentation>& family,
                                          std::size_t index,
                                          ClassificationPtr event_space = nullptr,
                                          int conjunction_width = 1);

// Channel through the event state space with one leg per family member.
Channel build_vagueness_channel(const HeightScenario& sc,
                                const std::vector<Regimentation>& family,
                                int conjunction_width = 1);

// Greatest lower bound of the pullback logics over the family: the
// regimentation-independent theory of the scenario.
LocalLogic intensional_logic(const HeightScenario& sc,
                             const std::vector<Regimentation>& family, int max_width);

struct SoritesResult {
    bool derivable = true;
    int chain_length = 0;
    // Witness when non-derivable: a chain from the first predicate's
    // interval into the last one with steps within the tolerance.
    std::vector<std::string> witness_objects;
    std::vector<double> witness_heights;
    std::optional<Regimentation> witness_regimentation;
};

// Tests whether the chain FIRST(X1) & SAMEHT(X1,X2) & ... & SAMEHT(X_{N-1},X_N)
// entails the negation of LAST(X_N) in the intensional logic. Derivability
// fails exactly when some admissible regimentation (family member, or a
// variant with interval endpoints moved on a grid inside the family
// envelope) admits a climbing witness chain.
SoritesResult sorites_check(const HeightScenario& sc,
                            const std::vector<Regimentation>& family, int chain_length,
                            double endpoint_grid_step = 0.5);

} // namespace infoflow
