#include "infoflow/defaults.hpp"

#include <algorithm>

#include "infoflow/errors.hpp"

namespace infoflow {

PropKB::PropKB(std::vector<std::string> atoms, std::vector<Formula> formulas)
    : space_(std::move(atoms)), formulas_(std::move(formulas)) {
    models_.assign(space_.word_count(), ~0ULL);
    for (std::uint32_t v = space_.valuation_count(); v < space_.word_count() * 64; ++v)
        models_[v >> 6] &= ~(1ULL << (v & 63));
    for (const auto& f : formulas_) {
        if (!f.propositional())
            throw InvalidInput("knowledge base formula must be propositional: " + f.to_string());
        bitmap_and(models_, space_.models(f));
    }
}

bool PropKB::consistent() const { return !bitmap_empty(models_); }

bool entails(const PropKB& kb, const Formula& phi) {
    return bitmap_subset(kb.models(), kb.space().models(phi));
}

ExplosionReport inconsistency_explosion(const PropKB& kb, const Formula& phi) {
    ExplosionReport report;
    report.kb_inconsistent = !kb.consistent();
    report.entailed = entails(kb, phi);
    return report;
}

MonotonicityReport cons_diff(const EntailmentEngine& engine, const PropKB& smaller,
                             const PropKB& larger, const std::vector<Formula>& probes) {
    for (const auto& f : smaller.formulas()) {
        bool found = false;
        for (const auto& g : larger.formulas()) found = found || f == g;
        if (!found)
            throw InvalidInput("cons_diff requires the smaller base to be contained "
                               "in the larger one");
    }
    MonotonicityReport report;
    for (const auto& probe : probes) {
        bool before = engine(smaller, probe);
        bool after = engine(larger, probe);
        if (before && !after) report.lost.push_back(probe);
        if (!before && after) report.gained.push_back(probe);
    }
    return report;
}

std::vector<std::vector<int>> maximal_consistent_subsets(const PropKB& kb) {
    const std::size_t n = kb.formulas().size();
    if (n > 12) throw BudgetExceeded("maximal consistent subsets limited to 12 formulas");

    std::vector<std::vector<std::uint64_t>> formula_models;
    formula_models.reserve(n);
    for (const auto& f : kb.formulas()) formula_models.push_back(kb.space().models(f));

    std::vector<std::uint64_t> everything(kb.space().word_count(), ~0ULL);
    for (std::uint32_t v = kb.space().valuation_count(); v < kb.space().word_count() * 64; ++v)
        everything[v >> 6] &= ~(1ULL << (v & 63));

    std::vector<std::uint32_t> consistent_subsets;
    for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
        auto joint = everything;
        for (std::size_t i = 0; i < n; ++i)
            if (subset & (1u << i)) bitmap_and(joint, formula_models[i]);
        if (!bitmap_empty(joint)) consistent_subsets.push_back(subset);
    }
    std::vector<std::vector<int>> result;
    for (std::uint32_t subset : consistent_subsets) {
        bool maximal = true;
        for (std::uint32_t other : consistent_subsets)
            if (other != subset && (subset & ~other) == 0) maximal = false;
        if (!maximal) continue;
        std::vector<int> indexes;
        for (std::size_t i = 0; i < n; ++i)
            if (subset & (1u << i)) indexes.push_back(static_cast<int>(i));
        result.push_back(std::move(indexes));
    }
    std::sort(result.begin(), result.end());
    return result;
}

PropKB subset_kb(const PropKB& kb, const std::vector<int>& formula_indexes) {
    std::vector<Formula> formulas;
    formulas.reserve(formula_indexes.size());
    for (int i : formula_indexes) {
        if (i < 0 || i >= static_cast<int>(kb.formulas().size()))
            throw InvalidInput("formula index out of range");
        formulas.push_back(kb.formulas()[i]);
    }
    return PropKB(kb.space().atoms(), std::move(formulas));
}

bool skeptical_entails(const PropKB& kb, const Formula& phi) {
    for (const auto& subset : maximal_consistent_subsets(kb))
        if (!entails(subset_kb(kb, subset), phi)) return false;
    return true;
}

bool credulous_entails(const PropKB& kb, const Formula& phi) {
    for (const auto& subset : maximal_consistent_subsets(kb))
        if (entails(subset_kb(kb, subset), phi)) return true;
    return false;
}

namespace {

PropKB extension_theory(const PropKB& facts, const std::vector<DefaultRule>& rules,
                        std::uint32_t applied) {
    std::vector<Formula> formulas = facts.formulas();
    for (std::size_t r = 0; r < rules.size(); ++r)
        if (applied & (1u << r)) formulas.push_back(rules[r].conclusion);
    return PropKB(facts.space().atoms(), std::move(formulas));
}

bool rule_applicable(const PropKB& theory, const DefaultRule& rule) {
    for (const auto& q : rule.prerequisites)
        if (!entails(theory, q)) return false;
    for (const auto& b : rule.blockers)
        if (entails(theory, b)) return false;
    return true;
}

// Every applied rule must become prerequisite-derivable by iterating from
// the facts; this rules out self-justifying rule sets.
bool grounded(const PropKB& facts, const std::vector<DefaultRule>& rules,
              std::uint32_t applied) {
    std::uint32_t fired = 0;
    bool progress = true;
    while (progress && fired != applied) {
        progress = false;
        PropKB stage = extension_theory(facts, rules, fired);
        for (std::size_t r = 0; r < rules.size(); ++r) {
            if (!(applied & (1u << r)) || (fired & (1u << r))) continue;
            bool prereqs_ok = true;
            for (const auto& q : rules[r].prerequisites)
                if (!entails(stage, q)) prereqs_ok = false;
            if (prereqs_ok) {
                fired |= (1u << r);
                progress = true;
            }
        }
    }
    return fired == applied;
}

} // namespace

std::vector<Extension> default_extensions(const PropKB& facts,
                                          const std::vector<DefaultRule>& rules) {
    if (rules.size() > 10) throw BudgetExceeded("default extensions limited to 10 rules");
    for (const auto& rule : rules) {
        for (const auto& f : rule.prerequisites)
            if (!f.propositional()) throw InvalidInput("rule prerequisites must be propositional");
        for (const auto& f : rule.blockers)
            if (!f.propositional()) throw InvalidInput("rule blockers must be propositional");
        if (!rule.conclusion.valid() || !rule.conclusion.propositional())
            throw InvalidInput("rule conclusion must be a propositional formula");
    }

    std::vector<Extension> extensions;
    for (std::uint32_t applied = 0; applied < (1u << rules.size()); ++applied) {
        PropKB theory = extension_theory(facts, rules, applied);
        bool fixpoint = true;
        for (std::size_t r = 0; r < rules.size() && fixpoint; ++r) {
            bool in_set = (applied & (1u << r)) != 0;
            if (rule_applicable(theory, rules[r]) != in_set) fixpoint = false;
        }
        if (!fixpoint || !grounded(facts, rules, applied)) continue;
        Extension ext;
        for (std::size_t r = 0; r < rules.size(); ++r)
            if (applied & (1u << r)) ext.applied_rules.push_back(static_cast<int>(r));
        ext.generators = theory.formulas();
        extensions.push_back(std::move(ext));
    }
    return extensions;
}

bool verify_extension(const PropKB& facts, const std::vector<DefaultRule>& rules,
                      const std::vector<int>& applied_rules) {
    std::uint32_t applied = 0;
    for (int r : applied_rules) {
        if (r < 0 || r >= static_cast<int>(rules.size())) return false;
        applied |= (1u << r);
    }
    PropKB theory = extension_theory(facts, rules, applied);
    for (std::size_t r = 0; r < rules.size(); ++r) {
        bool in_set = (applied & (1u << r)) != 0;
        if (rule_applicable(theory, rules[r]) != in_set) return false;
    }
    return grounded(facts, rules, applied);
}

ClosedWorldResult closed_world(const PropKB& kb) {
    if (!kb.consistent())
        throw InvalidInput("closed world assumption requires a consistent base");
    ClosedWorldResult result;
    result.closure = kb.formulas();
    for (const auto& atom : kb.space().atoms()) {
        if (!entails(kb, Formula::atom(atom))) {
            result.closure.push_back(Formula::negation(Formula::atom(atom)));
            result.negated.push_back(atom);
        }
    }
    PropKB closed(kb.space().atoms(), result.closure);
    if (!closed.consistent()) {
        std::string witness;
        for (const auto& a : result.negated) {
            if (!witness.empty()) witness += ", ";
            witness += a;
        }
        throw UndefinedOperation("closed world closure is inconsistent; negated atoms: " +
                                 witness);
    }
    return result;
}

} // namespace infoflow
