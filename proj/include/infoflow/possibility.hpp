#pragma once

#include <string>
#include <vector>

namespace infoflow {

// Fuzzy set over a finite domain: membership values in [0,1].
class FuzzySet {
public:
    FuzzySet(std::vector<std::string> domain, std::vector<double> membership);

    const std::vector<std::string>& domain() const { return domain_; }
    const std::vector<double>& membership() const { return membership_; }
    double mu(std::size_t i) const { return membership_[i]; }

private:
    std::vector<std::string> domain_;
    std::vector<double> membership_;
};

enum class FuzzyOp { MinIntersection, MaxUnion };

FuzzySet fuzzy_combine(const FuzzySet& a, const FuzzySet& b, FuzzyOp op);
FuzzySet fuzzy_complement(const FuzzySet& a);

// Possibility distribution over a finite universe. Sub-normalized
// distributions (max < 1) are representable; fusion of conflicting sources
// produces them.
class PossibilityDistribution {
public:
    PossibilityDistribution(std::vector<std::string> universe, std::vector<double> pi);

    const std::vector<std::string>& universe() const { return universe_; }
    const std::vector<double>& values() const { return values_; }
    double pi(std::size_t i) const { return values_[i]; }
    std::size_t size() const { return universe_.size(); }
    bool normalized() const; // max pi == 1

private:
    std::vector<std::string> universe_;
    std::vector<double> values_;
};

// Source-reliability discounting: pi'(w) = max(pi(w), 1 - reliability).
PossibilityDistribution discount(const PossibilityDistribution& p, double reliability);

// Pi(A) = max over A; Pi(empty) = 0. The subset is given as indexes.
double possibility_of(const PossibilityDistribution& p, const std::vector<int>& subset);

// Conditioning on A: worlds off A drop to 0, the maxima on A saturate to 1,
// the rest keep their value. Undefined when Pi(A) = 0.
PossibilityDistribution condition(const PossibilityDistribution& p,
                                  const std::vector<int>& subset);

enum class FusionMode { AndMin, AndProduct, OrMax };

PossibilityDistribution fuse(const std::vector<PossibilityDistribution>& sources,
                             FusionMode mode);

} // namespace infoflow
