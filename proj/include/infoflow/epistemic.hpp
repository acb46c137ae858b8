#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "infoflow/formula.hpp"

namespace infoflow {

// Multi-agent Kripke model. Relations are adjacency matrices per agent;
// with `require_s5` each relation is checked to be an equivalence.
class KripkeModel {
public:
    KripkeModel(std::vector<std::string> worlds, std::vector<std::string> agents,
                std::map<std::string, std::vector<std::pair<std::string, std::string>>> relations,
                std::map<std::string, std::vector<std::string>> valuation,
                std::string designated, bool require_s5 = false);

    const std::vector<std::string>& worlds() const { return worlds_; }
    const std::vector<std::string>& agents() const { return agents_; }
    int world_index(const std::string& name) const;
    int agent_index(const std::string& name) const;
    int designated() const { return designated_; }
    bool related(int agent, int from, int to) const {
        return relations_[agent][static_cast<std::size_t>(from) * worlds_.size() + to];
    }
    bool atom_true(const std::string& atom, int world) const;
    bool has_atom(const std::string& atom) const { return valuation_.count(atom) != 0; }
    const std::map<std::string, std::vector<bool>>& valuation() const { return valuation_; }

    bool is_equivalence(int agent) const;

private:
    std::vector<std::string> worlds_;
    std::vector<std::string> agents_;
    std::vector<std::vector<bool>> relations_; // per agent, row-major
    std::map<std::string, std::vector<bool>> valuation_;
    int designated_ = 0;
};

// Truth of a probability-free formula at a world. Common knowledge is the
// reflexive-transitive closure of the union of the group's relations.
bool model_check(const KripkeModel& m, int world, const Formula& f);
bool model_check(const KripkeModel& m, const std::string& world, const Formula& f);

// Kripke model extended with partial subjective probabilities:
// mu[agent][world] is either absent or a distribution over a subset of
// worlds summing to 1 within 1e-9.
class ProbabilisticKripkeModel {
public:
    using WorldDistribution = std::map<int, double>;
    using MuTable = std::vector<std::vector<std::optional<WorldDistribution>>>;

    ProbabilisticKripkeModel(
        KripkeModel base,
        const std::map<std::string, std::map<std::string, std::map<std::string, double>>>& mu);

    ProbabilisticKripkeModel(KripkeModel base, MuTable mu);

    const KripkeModel& base() const { return base_; }
    const std::optional<WorldDistribution>& mu(int agent, int world) const {
        return mu_[agent][world];
    }

private:
    KripkeModel base_;
    MuTable mu_; // [agent][world]
};

// Truth including linear probability comparisons evaluated against mu.
bool prob_model_check(const ProbabilisticKripkeModel& m, int world, const Formula& f);

// Event model: events with per-agent accessibility, pairwise inconsistent
// propositional preconditions, occurrence probabilities pre(phi) over
// events, and per-event observation probabilities mu_i(e) over events.
class UpdateModel {
public:
    UpdateModel(std::vector<std::string> events, std::vector<std::string> agents,
                std::map<std::string, std::vector<std::pair<std::string, std::string>>> relations,
                std::vector<std::pair<Formula, std::map<std::string, double>>> preconditions,
                std::map<std::string, std::map<std::string, std::map<std::string, double>>> mu,
                std::string designated);

    const std::vector<std::string>& events() const { return events_; }
    const std::vector<std::string>& agents() const { return agents_; }
    int designated() const { return designated_; }
    bool related(int agent, int from, int to) const {
        return relations_[agent][static_cast<std::size_t>(from) * events_.size() + to];
    }
    const std::vector<std::pair<Formula, std::vector<double>>>& preconditions() const {
        return preconditions_;
    }
    double observation(int agent, int at_event, int of_event) const {
        return mu_[agent][at_event][of_event];
    }

private:
    std::vector<std::string> events_;
    std::vector<std::string> agents_;
    std::vector<std::vector<bool>> relations_;
    std::vector<std::pair<Formula, std::vector<double>>> preconditions_;
    std::vector<std::vector<std::vector<double>>> mu_; // [agent][event][event]
    int designated_ = 0;
};

// Cartesian product update: surviving pairs (w,e) have a true precondition
// phi at w and pre(phi)(e) > 0; new probabilities are prior x occurrence x
// observation, renormalized. Product worlds are named "w|e".
ProbabilisticKripkeModel product_update(const ProbabilisticKripkeModel& m,
                                        const UpdateModel& e);

struct ProbabilisticValidityReport {
    bool classically_valid = false;
    bool sampled_valid = false;
    std::size_t samples_run = 0;
    // Distribution over valuations witnessing P(gamma)=1 for all premises
    // while P(phi) < 1.
    std::optional<std::map<std::uint32_t, double>> counterexample;
    double counterexample_phi_probability = 1.0;
    bool verdicts_agree() const { return classically_valid == sampled_valid; }
};

// Classical truth-table entailment side by side with a sampled check over
// probability functions on valuations. The sampled sweep starts with the
// point masses on premise models, so a counterexample is found whenever
// one exists. At most 12 atoms.
ProbabilisticValidityReport probabilistic_validity(const std::vector<Formula>& premises,
                                                   const Formula& conclusion,
                                                   const std::vector<std::string>& atoms,
                                                   std::size_t samples, std::uint64_t seed);

} // namespace infoflow
