#include "infoflow/possibility.hpp"

#include <algorithm>

#include "infoflow/errors.hpp"

namespace infoflow {

namespace {

void check_unit_values(const std::vector<double>& values) {
    for (double v : values)
        if (!(v >= 0.0 && v <= 1.0))
            throw InvalidInput("membership/possibility value outside [0,1]");
}

} // namespace

FuzzySet::FuzzySet(std::vector<std::string> domain, std::vector<double> membership)
    : domain_(std::move(domain)), membership_(std::move(membership)) {
    if (domain_.empty()) throw InvalidInput("fuzzy set over an empty domain");
    if (domain_.size() != membership_.size())
        throw InvalidInput("membership vector length does not match the domain");
    check_unit_values(membership_);
}

FuzzySet fuzzy_combine(const FuzzySet& a, const FuzzySet& b, FuzzyOp op) {
    if (a.domain() != b.domain()) throw InvalidInput("fuzzy sets over different domains");
    std::vector<double> out(a.domain().size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = op == FuzzyOp::MinIntersection ? std::min(a.mu(i), b.mu(i))
                                                : std::max(a.mu(i), b.mu(i));
    return FuzzySet(a.domain(), std::move(out));
}

FuzzySet fuzzy_complement(const FuzzySet& a) {
    std::vector<double> out(a.domain().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = 1.0 - a.mu(i);
    return FuzzySet(a.domain(), std::move(out));
}

PossibilityDistribution::PossibilityDistribution(std::vector<std::string> universe,
                                                 std::vector<double> pi)
    : universe_(std::move(universe)), values_(std::move(pi)) {
    if (universe_.empty()) throw InvalidInput("possibility distribution over an empty universe");
    if (universe_.size() != values_.size())
        throw InvalidInput("possibility vector length does not match the universe");
    check_unit_values(values_);
}

bool PossibilityDistribution::normalized() const {
    return *std::max_element(values_.begin(), values_.end()) == 1.0;
}

PossibilityDistribution discount(const PossibilityDistribution& p, double reliability) {
    if (!(reliability >= 0.0 && reliability <= 1.0))
        throw InvalidInput("reliability must lie in [0,1]");
    std::vector<double> out(p.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = std::max(p.pi(i), 1.0 - reliability);
    return PossibilityDistribution(p.universe(), std::move(out));
}

double possibility_of(const PossibilityDistribution& p, const std::vector<int>& subset) {
    double best = 0.0;
    for (int i : subset) {
        if (i < 0 || i >= static_cast<int>(p.size()))
            throw InvalidInput("subset element outside the universe");
        best = std::max(best, p.pi(i));
    }
    return best;
}

PossibilityDistribution condition(const PossibilityDistribution& p,
                                  const std::vector<int>& subset) {
    double level = possibility_of(p, subset);
    if (level <= 0.0)
        throw UndefinedOperation("conditioning on a subset of possibility zero");
    std::vector<bool> in(p.size(), false);
    for (int i : subset) in[i] = true;
    std::vector<double> out(p.size(), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!in[i]) continue;
        out[i] = p.pi(i) == level ? 1.0 : p.pi(i);
    }
    return PossibilityDistribution(p.universe(), std::move(out));
}

PossibilityDistribution fuse(const std::vector<PossibilityDistribution>& sources,
                             FusionMode mode) {
    if (sources.empty()) throw InvalidInput("fusion needs at least one source");
    std::vector<double> out = sources.front().values();
    for (std::size_t s = 1; s < sources.size(); ++s) {
        if (sources[s].universe() != sources.front().universe())
            throw InvalidInput("fusing distributions over different universes");
        for (std::size_t i = 0; i < out.size(); ++i) {
            switch (mode) {
            case FusionMode::AndMin: out[i] = std::min(out[i], sources[s].pi(i)); break;
            case FusionMode::AndProduct: out[i] *= sources[s].pi(i); break;
            case FusionMode::OrMax: out[i] = std::max(out[i], sources[s].pi(i)); break;
            }
        }
    }
    return PossibilityDistribution(sources.front().universe(), std::move(out));
}

} // namespace infoflow
