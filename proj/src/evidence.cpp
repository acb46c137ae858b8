#include "infoflow/evidence.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "infoflow/errors.hpp"

namespace infoflow {

Frame::Frame(std::vector<std::string> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw InvalidInput("frame must be non-empty");
    if (elements_.size() > 20) throw BudgetExceeded("frame larger than 20 elements");
    std::set<std::string> seen;
    for (const auto& e : elements_)
        if (!seen.insert(e).second) throw InvalidInput("duplicate frame element: " + e);
}

std::uint32_t Frame::subset_mask(const std::vector<std::string>& subset) const {
    std::uint32_t mask = 0;
    for (const auto& name : subset) {
        bool found = false;
        for (std::size_t i = 0; i < elements_.size(); ++i) {
            if (elements_[i] == name) {
                mask |= (1u << i);
                found = true;
            }
        }
        if (!found) throw InvalidInput("element not in frame: " + name);
    }
    return mask;
}

std::vector<std::string> Frame::subset_names(std::uint32_t mask) const {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < elements_.size(); ++i)
        if (mask & (1u << i)) names.push_back(elements_[i]);
    return names;
}

MassFunction::MassFunction(Frame frame, std::map<std::uint32_t, double> focal)
    : frame_(std::move(frame)), focal_(std::move(focal)) {
    double total = 0.0;
    for (const auto& [set, mass] : focal_) {
        if (set == 0) throw InvalidInput("mass on the empty set");
        if (set & ~frame_.full_mask()) throw InvalidInput("focal set outside the frame");
        if (!(mass > 0.0 && mass <= 1.0 + kProbTolerance))
            throw InvalidInput("focal mass must lie in (0,1]");
        total += mass;
    }
    if (std::fabs(total - 1.0) > kProbTolerance)
        throw InvalidInput("masses sum to " + std::to_string(total) + ", not 1");
}

MassFunction MassFunction::vacuous(Frame frame) {
    std::uint32_t all = frame.full_mask();
    return MassFunction(std::move(frame), {{all, 1.0}});
}

BeliefInterval belief_plausibility(const MassFunction& m, std::uint32_t subset) {
    if (subset & ~m.frame().full_mask())
        throw InvalidInput("subset outside the frame");
    BeliefInterval result;
    for (const auto& [focal, mass] : m.focal()) {
        if ((focal & ~subset) == 0) result.belief += mass;
        if ((focal & subset) != 0) result.plausibility += mass;
    }
    result.ignorance = result.plausibility - result.belief;
    return result;
}

MassFunction dempster_combine(const MassFunction& m1, const MassFunction& m2) {
    if (!(m1.frame() == m2.frame()))
        throw InvalidInput("combining masses over different frames");
    std::map<std::uint32_t, double> products;
    double conflict = 0.0; // E; the normalizer is 1 - E
    bool any_agreement = false;
    for (const auto& [x, mx] : m1.focal()) {
        for (const auto& [y, my] : m2.focal()) {
            std::uint32_t meet = x & y;
            if (meet == 0) {
                conflict += mx * my;
            } else {
                any_agreement = true;
                products[meet] += mx * my;
            }
        }
    }
    double normalizer = 1.0 - conflict;
    if (!any_agreement || normalizer <= 0.0)
        throw UndefinedOperation("total conflict: the orthogonal sum is not defined");
    for (auto& [set, mass] : products) mass /= normalizer;
    return MassFunction(m1.frame(), std::move(products));
}

ConflictWeight conflict_weight(const MassFunction& m1, const MassFunction& m2) {
    if (!(m1.frame() == m2.frame()))
        throw InvalidInput("comparing masses over different frames");
    ConflictWeight result;
    bool any_agreement = false;
    for (const auto& [x, mx] : m1.focal()) {
        for (const auto& [y, my] : m2.focal()) {
            if ((x & y) == 0) result.conflict_mass += mx * my;
            else any_agreement = true;
        }
    }
    if (!any_agreement) {
        result.total_conflict = true;
        result.conflict_mass = 1.0;
        result.weight = std::numeric_limits<double>::infinity();
    } else {
        result.weight = -std::log(1.0 - result.conflict_mass);
    }
    return result;
}

MassFunction dubois_prade_combine(const MassFunction& m1, const MassFunction& m2) {
    if (!(m1.frame() == m2.frame()))
        throw InvalidInput("combining masses over different frames");
    std::map<std::uint32_t, double> combined;
    for (const auto& [x, mx] : m1.focal()) {
        for (const auto& [y, my] : m2.focal()) {
            std::uint32_t meet = x & y;
            combined[meet != 0 ? meet : (x | y)] += mx * my;
        }
    }
    return MassFunction(m1.frame(), std::move(combined));
}

MultivaluedMapping::MultivaluedMapping(DiscreteDistribution source_dist, Frame target,
                                       std::vector<std::uint32_t> images)
    : source(std::move(source_dist)), frame(std::move(target)), image(std::move(images)) {
    if (image.size() != source.size())
        throw InvalidInput("mapping must be total on the source space");
    for (std::uint32_t img : image) {
        if (img == 0) throw InvalidInput("mapping image must be non-empty");
        if (img & ~frame.full_mask()) throw InvalidInput("mapping image outside the frame");
    }
}

ProbabilityBounds bounds_from_mapping(const MultivaluedMapping& mm, std::uint32_t subset) {
    if (subset & ~mm.frame.full_mask())
        throw InvalidInput("subset outside the frame");
    ProbabilityBounds bounds;
    for (std::size_t i = 0; i < mm.image.size(); ++i) {
        if ((mm.image[i] & ~subset) == 0) bounds.lower += mm.source.prob(i);
        if ((mm.image[i] & subset) != 0) bounds.upper += mm.source.prob(i);
    }
    return bounds;
}

MassFunction induced_mass(const MultivaluedMapping& mm) {
    std::map<std::uint32_t, double> focal;
    for (std::size_t i = 0; i < mm.image.size(); ++i)
        if (mm.source.prob(i) > 0.0) focal[mm.image[i]] += mm.source.prob(i);
    return MassFunction(mm.frame, std::move(focal));
}

} // namespace infoflow
