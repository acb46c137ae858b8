#include "infoflow/probability.hpp"

#include <cmath>

#include "infoflow/errors.hpp"

namespace infoflow {

namespace {

void check_distribution(const std::vector<std::string>& outcomes,
                        const std::vector<double>& probs) {
    if (outcomes.empty()) throw InvalidInput("distribution over an empty outcome set");
    if (outcomes.size() != probs.size())
        throw InvalidInput("distribution outcomes and probabilities differ in length");
    double total = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0 && p <= 1.0 + kProbTolerance))
            throw InvalidInput("probability outside [0,1]");
        total += p;
    }
    if (std::fabs(total - 1.0) > kProbTolerance)
        throw InvalidInput("probabilities sum to " + std::to_string(total) + ", not 1");
}

} // namespace

DiscreteDistribution::DiscreteDistribution(std::vector<std::string> outcomes,
                                           std::vector<double> probs)
    : outcomes_(std::move(outcomes)), probs_(std::move(probs)) {
    check_distribution(outcomes_, probs_);
}

DiscreteDistribution DiscreteDistribution::normalized(std::vector<std::string> outcomes,
                                                      std::vector<double> weights) {
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw InvalidInput("negative weight");
        total += w;
    }
    if (total <= 0.0) throw InvalidInput("weights sum to zero");
    for (double& w : weights) w /= total;
    return DiscreteDistribution(std::move(outcomes), std::move(weights));
}

int DiscreteDistribution::index_of(const std::string& outcome) const {
    for (std::size_t i = 0; i < outcomes_.size(); ++i)
        if (outcomes_[i] == outcome) return static_cast<int>(i);
    throw InvalidInput("unknown outcome: " + outcome);
}

DiscreteDistribution bayes_posterior(const DiscreteDistribution& prior,
                                     const std::vector<double>& likelihoods) {
    if (likelihoods.size() != prior.size())
        throw InvalidInput("likelihood vector length does not match the partition");
    for (double l : likelihoods)
        if (!(l >= 0.0 && l <= 1.0))
            throw InvalidInput("likelihood outside [0,1]");
    double normalizer = 0.0;
    std::vector<double> post(prior.size());
    for (std::size_t i = 0; i < prior.size(); ++i) {
        post[i] = prior.prob(i) * likelihoods[i];
        normalizer += post[i];
    }
    if (normalizer <= 0.0)
        throw UndefinedOperation("conditioning on an event of probability zero");
    for (double& p : post) p /= normalizer;
    return DiscreteDistribution(prior.outcomes(), std::move(post));
}

double entropy_bits(const DiscreteDistribution& d) {
    double h = 0.0;
    for (double p : d.probs())
        if (p > 0.0) h -= p * std::log2(p);
    return h;
}

BayesNet::BayesNet(std::vector<BayesNode> nodes) : nodes_(std::move(nodes)) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const auto& node = nodes_[i];
        if (!index_.emplace(node.name, static_cast<int>(i)).second)
            throw InvalidInput("duplicate node: " + node.name);
        if (node.values.size() < 2 || node.values.size() > 8)
            throw InvalidInput("node " + node.name + " must have 2..8 values");
        std::size_t rows = 1;
        for (int p : node.parents) {
            if (p < 0 || p >= static_cast<int>(i))
                throw InvalidInput("parents must precede node " + node.name);
            rows *= nodes_[p].values.size();
        }
        if (node.cpt.size() != rows)
            throw InvalidInput("node " + node.name + " needs " + std::to_string(rows) +
                               " CPT rows");
        for (const auto& row : node.cpt) {
            if (row.size() != node.values.size())
                throw InvalidInput("CPT row width mismatch for node " + node.name);
            double total = 0.0;
            for (double p : row) {
                if (p < 0.0 || p > 1.0 + kProbTolerance)
                    throw InvalidInput("CPT entry outside [0,1]");
                total += p;
            }
            if (std::fabs(total - 1.0) > kProbTolerance)
                throw InvalidInput("CPT row for node " + node.name + " does not sum to 1");
        }
    }
}

int BayesNet::node_index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw InvalidInput("unknown node: " + name);
    return it->second;
}

std::size_t BayesNet::cpt_row(int node, const std::vector<int>& value_indexes) const {
    std::size_t row = 0;
    for (int p : nodes_[node].parents)
        row = row * nodes_[p].values.size() + value_indexes[p];
    return row;
}

double BayesNet::joint(const std::map<std::string, std::string>& assignment) const {
    std::vector<int> value_of(nodes_.size(), -1);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        auto it = assignment.find(nodes_[i].name);
        if (it == assignment.end())
            throw InvalidInput("assignment missing node " + nodes_[i].name);
        const auto& values = nodes_[i].values;
        for (std::size_t v = 0; v < values.size(); ++v)
            if (values[v] == it->second) value_of[i] = static_cast<int>(v);
        if (value_of[i] < 0)
            throw InvalidInput("node " + nodes_[i].name + " has no value " + it->second);
    }
    double product = 1.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        product *= nodes_[i].cpt[cpt_row(static_cast<int>(i), value_of)][value_of[i]];
    return product;
}

DiscreteChannel::DiscreteChannel(std::vector<std::string> inputs,
                                 std::vector<std::string> outputs,
                                 std::vector<std::vector<double>> matrix)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)), matrix_(std::move(matrix)) {
    if (inputs_.empty() || outputs_.empty())
        throw InvalidInput("channel alphabets must be non-empty");
    if (matrix_.size() != inputs_.size())
        throw InvalidInput("transition matrix needs one row per input symbol");
    for (const auto& row : matrix_) {
        if (row.size() != outputs_.size())
            throw InvalidInput("transition row width does not match the output alphabet");
        double total = 0.0;
        for (double p : row) {
            if (p < 0.0 || p > 1.0 + kProbTolerance)
                throw InvalidInput("transition probability outside [0,1]");
            total += p;
        }
        if (std::fabs(total - 1.0) > kProbTolerance)
            throw InvalidInput("transition row does not sum to 1");
    }
}

DiscreteDistribution channel_output(const DiscreteChannel& ch,
                                    const DiscreteDistribution& input) {
    if (input.outcomes() != ch.inputs())
        throw InvalidInput("input distribution alphabet does not match the channel");
    std::vector<double> q(ch.outputs().size(), 0.0);
    for (std::size_t x = 0; x < ch.inputs().size(); ++x)
        for (std::size_t y = 0; y < ch.outputs().size(); ++y)
            q[y] += input.prob(x) * ch.transition(x, y);
    return DiscreteDistribution::normalized(ch.outputs(), std::move(q));
}

DiscreteDistribution channel_posterior(const DiscreteChannel& ch,
                                       const DiscreteDistribution& input,
                                       const std::string& observed) {
    if (input.outcomes() != ch.inputs())
        throw InvalidInput("input distribution alphabet does not match the channel");
    int y = -1;
    for (std::size_t i = 0; i < ch.outputs().size(); ++i)
        if (ch.outputs()[i] == observed) y = static_cast<int>(i);
    if (y < 0) throw InvalidInput("unknown output symbol: " + observed);
    std::vector<double> likelihoods(ch.inputs().size());
    for (std::size_t x = 0; x < ch.inputs().size(); ++x)
        likelihoods[x] = ch.transition(x, y);
    return bayes_posterior(input, likelihoods);
}

} // namespace infoflow
