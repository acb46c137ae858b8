#pragma once

#include <map>
#include <string>
#include <vector>

namespace infoflow {

inline constexpr double kProbTolerance = 1e-9;

// Finite distribution over named outcomes. Probabilities must sum to 1
// within 1e-9; construction never renormalizes silently.
class DiscreteDistribution {
public:
    DiscreteDistribution(std::vector<std::string> outcomes, std::vector<double> probs);

    // Normalizes explicitly supplied non-negative weights.
    static DiscreteDistribution normalized(std::vector<std::string> outcomes,
                                           std::vector<double> weights);

    std::size_t size() const { return outcomes_.size(); }
    const std::vector<std::string>& outcomes() const { return outcomes_; }
    const std::vector<double>& probs() const { return probs_; }
    double prob(std::size_t i) const { return probs_[i]; }
    int index_of(const std::string& outcome) const; // throws on unknown

private:
    std::vector<std::string> outcomes_;
    std::vector<double> probs_;
};

// Posterior over the partition {E_i} after observing evidence with the
// given per-cell likelihoods. Zero normalizer is undefined conditioning.
DiscreteDistribution bayes_posterior(const DiscreteDistribution& prior,
                                     const std::vector<double>& likelihoods);

// Entropy in bits, with 0 * log 0 = 0.
double entropy_bits(const DiscreteDistribution& d);

struct BayesNode {
    std::string name;
    std::vector<std::string> values;    // k-ary, k <= 8
    std::vector<int> parents;           // indices of earlier nodes
    std::vector<std::vector<double>> cpt; // row per parent assignment, row sums to 1
};

// Directed acyclic by construction: parents must precede their child in
// the node order.
class BayesNet {
public:
    explicit BayesNet(std::vector<BayesNode> nodes);

    const std::vector<BayesNode>& nodes() const { return nodes_; }
    int node_index(const std::string& name) const;

    // P(assignment) as the product of one CPT entry per node.
    double joint(const std::map<std::string, std::string>& assignment) const;

    // Row index into a node's CPT for a full value-index assignment.
    std::size_t cpt_row(int node, const std::vector<int>& value_indexes) const;

private:
    std::vector<BayesNode> nodes_;
    std::map<std::string, int> index_;
};

// Discrete memoryless channel: input alphabet, output alphabet, and a
// row-stochastic transition matrix p(y|x).
class DiscreteChannel {
public:
    DiscreteChannel(std::vector<std::string> inputs, std::vector<std::string> outputs,
                    std::vector<std::vector<double>> matrix);

    const std::vector<std::string>& inputs() const { return inputs_; }
    const std::vector<std::string>& outputs() const { return outputs_; }
    double transition(std::size_t x, std::size_t y) const { return matrix_[x][y]; }

private:
    std::vector<std::string> inputs_;
    std::vector<std::string> outputs_;
    std::vector<std::vector<double>> matrix_;
};

// q(y) = sum_x p(x) p(y|x).
DiscreteDistribution channel_output(const DiscreteChannel& ch,
                                    const DiscreteDistribution& input);

// Bayes posterior over channel inputs given an observed output symbol.
DiscreteDistribution channel_posterior(const DiscreteChannel& ch,
                                       const DiscreteDistribution& input,
                                       const std::string& observed);

} // namespace infoflow
