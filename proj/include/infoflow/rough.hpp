#pragma once

#include <string>
#include <vector>

namespace infoflow {

// Attribute table: finite universe of objects, finite attribute set, and a
// total value map. Values are opaque symbols.
class InformationSystem {
public:
    InformationSystem(std::vector<std::string> objects,
                      std::vector<std::string> attributes,
                      std::vector<std::vector<std::string>> values); // object-major

    std::size_t object_count() const { return objects_.size(); }
    const std::vector<std::string>& objects() const { return objects_; }
    const std::vector<std::string>& attributes() const { return attributes_; }
    const std::string& value(int object, int attribute) const {
        return values_[object][attribute];
    }
    int object_index(const std::string& name) const;
    int attribute_index(const std::string& name) const;

private:
    std::vector<std::string> objects_;
    std::vector<std::string> attributes_;
    std::vector<std::vector<std::string>> values_;
};

// Equivalence classes of the indiscernibility relation over the attribute
// subset B: objects fall together iff they agree on every attribute in B.
// Classes are ordered by their smallest member; members are sorted.
std::vector<std::vector<int>> indiscernibility_classes(const InformationSystem& s,
                                                       const std::vector<int>& attributes);

struct RoughApproximation {
    std::vector<int> lower;    // classes fully inside the target set
    std::vector<int> upper;    // classes meeting the target set
    std::vector<int> boundary; // upper minus lower
};

RoughApproximation approximate(const InformationSystem& s, const std::vector<int>& attributes,
                               const std::vector<int>& target);

bool is_crisp(const InformationSystem& s, const std::vector<int>& attributes,
              const std::vector<int>& target);

} // namespace infoflow
