#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "infoflow/probability.hpp"

namespace infoflow {

// Frame of discernment: the finite hypothesis set a mass function
// distributes belief over. Subsets are bitsets, so at most 20 elements.
class Frame {
public:
    explicit Frame(std::vector<std::string> elements);

    std::size_t size() const { return elements_.size(); }
    const std::vector<std::string>& elements() const { return elements_; }
    std::uint32_t full_mask() const { return (1u << elements_.size()) - 1; }

    std::uint32_t subset_mask(const std::vector<std::string>& subset) const;
    std::vector<std::string> subset_names(std::uint32_t mask) const;

    bool operator==(const Frame& other) const { return elements_ == other.elements_; }

private:
    std::vector<std::string> elements_;
};

// Basic probability assignment: positive masses on non-empty focal
// subsets, summing to 1 within 1e-9; the empty set carries no mass.
class MassFunction {
public:
    MassFunction(Frame frame, std::map<std::uint32_t, double> focal);

    static MassFunction vacuous(Frame frame);

    const Frame& frame() const { return frame_; }
    const std::map<std::uint32_t, double>& focal() const { return focal_; }

private:
    Frame frame_;
    std::map<std::uint32_t, double> focal_;
};

struct BeliefInterval {
    double belief = 0.0;
    double plausibility = 0.0;
    double ignorance = 0.0; // plausibility - belief
};

BeliefInterval belief_plausibility(const MassFunction& m, std::uint32_t subset);

// Dempster's orthogonal sum; undefined (throws) under total conflict.
MassFunction dempster_combine(const MassFunction& m1, const MassFunction& m2);

struct ConflictWeight {
    double conflict_mass = 0.0; // E, the mass of the disagreeing pairs
    double weight = 0.0;        // -ln(1 - E); meaningless when total_conflict
    bool total_conflict = false;
};

ConflictWeight conflict_weight(const MassFunction& m1, const MassFunction& m2);

// Keeps every product m1(X)m2(Y): on the intersection when it is
// non-empty, otherwise on the union. Total everywhere, no normalization.
MassFunction dubois_prade_combine(const MassFunction& m1, const MassFunction& m2);

// Multivalued mapping from an evidence space onto the frame: a probability
// on the source plus a total map into non-empty frame subsets.
struct MultivaluedMapping {
    DiscreteDistribution source;          // P over the original space
    Frame frame;                          // target frame
    std::vector<std::uint32_t> image;     // per source outcome, non-empty subset mask

    MultivaluedMapping(DiscreteDistribution source_dist, Frame target,
                       std::vector<std::uint32_t> images);
};

struct ProbabilityBounds {
    double lower = 0.0;
    double upper = 0.0;
};

ProbabilityBounds bounds_from_mapping(const MultivaluedMapping& mm, std::uint32_t subset);

// The mass m(B) = P({theta : image(theta) = B}); its belief/plausibility
// coincide with the mapping bounds.
MassFunction induced_mass(const MultivaluedMapping& mm);

} // namespace infoflow
