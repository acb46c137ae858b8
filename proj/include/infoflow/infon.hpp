#pragma once

#include <optional>
#include <string>
#include <vector>

namespace infoflow {

// Smallest item of information: a relation over objects with optional
// location and time, and a polarity. Classifications store opaque type
// ids, so infons bridge to them through the canonical string form.
struct Infon {
    std::string relation;
    std::vector<std::string> args; // non-empty
    std::optional<std::string> location;
    std::optional<std::string> time;
    int polarity = 1; // 0 or 1

    // Canonical form "rel(a,b);loc;time;1" with empty loc/time slots kept.
    std::string canonical() const;

    bool operator==(const Infon& other) const = default;
};

// Validates the invariants (non-empty args, polarity in {0,1}, symbols free
// of the delimiter characters); throws InvalidInput.
void validate_infon(const Infon& infon);

Infon parse_infon(const std::string& canonical_form);

} // namespace infoflow
