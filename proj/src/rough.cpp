#include "infoflow/rough.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "infoflow/errors.hpp"

namespace infoflow {

InformationSystem::InformationSystem(std::vector<std::string> objects,
                                     std::vector<std::string> attributes,
                                     std::vector<std::vector<std::string>> values)
    : objects_(std::move(objects)), attributes_(std::move(attributes)),
      values_(std::move(values)) {
    if (objects_.empty()) throw InvalidInput("universe must be non-empty");
    if (attributes_.empty()) throw InvalidInput("attribute set must be non-empty");
    std::set<std::string> seen;
    for (const auto& o : objects_)
        if (!seen.insert(o).second) throw InvalidInput("duplicate object id: " + o);
    seen.clear();
    for (const auto& a : attributes_)
        if (!seen.insert(a).second) throw InvalidInput("duplicate attribute: " + a);
    if (values_.size() != objects_.size())
        throw InvalidInput("value table needs one row per object");
    for (const auto& row : values_)
        if (row.size() != attributes_.size())
            throw InvalidInput("value row width does not match the attribute set");
}

int InformationSystem::object_index(const std::string& name) const {
    for (std::size_t i = 0; i < objects_.size(); ++i)
        if (objects_[i] == name) return static_cast<int>(i);
    throw InvalidInput("unknown object: " + name);
}

int InformationSystem::attribute_index(const std::string& name) const {
    for (std::size_t i = 0; i < attributes_.size(); ++i)
        if (attributes_[i] == name) return static_cast<int>(i);
    throw InvalidInput("unknown attribute: " + name);
}

namespace {

void check_attributes(const InformationSystem& s, const std::vector<int>& attributes) {
    if (attributes.empty()) throw InvalidInput("attribute subset must be non-empty");
    for (int a : attributes)
        if (a < 0 || a >= static_cast<int>(s.attributes().size()))
            throw InvalidInput("attribute index out of range");
}

std::vector<bool> target_flags(const InformationSystem& s, const std::vector<int>& target) {
    std::vector<bool> in(s.object_count(), false);
    for (int x : target) {
        if (x < 0 || x >= static_cast<int>(s.object_count()))
            throw InvalidInput("target object out of range");
        in[x] = true;
    }
    return in;
}

} // namespace

std::vector<std::vector<int>> indiscernibility_classes(const InformationSystem& s,
                                                       const std::vector<int>& attributes) {
    check_attributes(s, attributes);
    std::map<std::vector<std::string>, std::vector<int>> groups;
    for (int x = 0; x < static_cast<int>(s.object_count()); ++x) {
        std::vector<std::string> key;
        key.reserve(attributes.size());
        for (int a : attributes) key.push_back(s.value(x, a));
        groups[key].push_back(x);
    }
    std::vector<std::vector<int>> classes;
    classes.reserve(groups.size());
    for (auto& [key, members] : groups) classes.push_back(std::move(members));
    std::sort(classes.begin(), classes.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return classes;
}

RoughApproximation approximate(const InformationSystem& s, const std::vector<int>& attributes,
                               const std::vector<int>& target) {
    std::vector<bool> in_target = target_flags(s, target);
    RoughApproximation result;
    for (const auto& cls : indiscernibility_classes(s, attributes)) {
        bool all_in = true, any_in = false;
        for (int x : cls) {
            if (in_target[x]) any_in = true;
            else all_in = false;
        }
        if (all_in)
            result.lower.insert(result.lower.end(), cls.begin(), cls.end());
        if (any_in) {
            result.upper.insert(result.upper.end(), cls.begin(), cls.end());
            if (!all_in)
                result.boundary.insert(result.boundary.end(), cls.begin(), cls.end());
        }
    }
    std::sort(result.lower.begin(), result.lower.end());
    std::sort(result.upper.begin(), result.upper.end());
    std::sort(result.boundary.begin(), result.boundary.end());
    return result;
}

bool is_crisp(const InformationSystem& s, const std::vector<int>& attributes,
              const std::vector<int>& target) {
    return approximate(s, attributes, target).boundary.empty();
}

} // namespace infoflow
