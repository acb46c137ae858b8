#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace infoflow {

// Formula language shared by the modal checkers and the propositional
// reasoners. Surface syntax:
//   p          atom (ground atoms like fly(t) are single atoms)
//   !f         negation
//   f & g      conjunction
//   f | g      disjunction
//   K{i} f     agent i knows f
//   C{i,j} f   common knowledge in the group {i, j}
//   1*P{a}[f] - 2*P{a}[g] >= 0.5   linear probability comparison
class Formula {
public:
    enum class Kind { Atom, Not, And, Or, Knows, Common, ProbCmp };

    struct ProbTerm; // defined after the class; holds a Formula by value

    Formula() = default;

    static Formula atom(std::string name);
    static Formula negation(Formula f);
    static Formula conjunction(Formula lhs, Formula rhs);
    static Formula disjunction(Formula lhs, Formula rhs);
    static Formula knows(std::string agent, Formula f);
    static Formula common(std::vector<std::string> group, Formula f);
    static Formula prob_ge(std::vector<ProbTerm> terms, double bound);

    bool valid() const { return node_ != nullptr; }
    Kind kind() const;

    const std::string& atom_name() const;
    const Formula& child() const;            // Not, Knows, Common
    const Formula& lhs() const;              // And, Or
    const Formula& rhs() const;
    const std::string& agent() const;        // Knows
    const std::vector<std::string>& group() const; // Common
    const std::vector<ProbTerm>& prob_terms() const;
    double prob_bound() const;

    // True when the formula contains no K/C/P constructs.
    bool propositional() const;
    bool has_probability_terms() const;

    void collect_atoms(std::set<std::string>& out) const;
    void collect_agents(std::set<std::string>& out) const;

    std::string to_string() const;

    bool operator==(const Formula& other) const;
    bool operator!=(const Formula& other) const { return !(*this == other); }

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

struct Formula::ProbTerm {
    double coefficient;
    std::string agent;
    Formula argument;
};

// Parses the surface syntax above; throws InvalidInput on malformed text.
Formula parse_formula(std::string_view text);

// --- Propositional machinery (truth tables over <= 16 atoms) ---

// Fixed atom universe; valuations are bitmasks, bit i = atoms[i] true.
class AtomSpace {
public:
    explicit AtomSpace(std::vector<std::string> atoms);

    std::size_t size() const { return atoms_.size(); }
    std::uint32_t valuation_count() const { return 1u << atoms_.size(); }
    const std::vector<std::string>& atoms() const { return atoms_; }
    int index_of(const std::string& atom) const; // -1 when absent

    bool eval(const Formula& f, std::uint32_t valuation) const;

    // Model set of f as a bitmap over all valuations (word i holds
    // valuations 64i..64i+63).
    std::vector<std::uint64_t> models(const Formula& f) const;

    std::size_t word_count() const { return (valuation_count() + 63) / 64; }

private:
    std::vector<std::string> atoms_;
    std::map<std::string, int> index_;
};

// Bitmap helpers for model sets.
bool bitmap_empty(const std::vector<std::uint64_t>& bm);
bool bitmap_subset(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b);
void bitmap_and(std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b);

} // namespace infoflow
