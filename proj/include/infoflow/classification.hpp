#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace infoflow {

// Finite classification: tokens, types, and the support relation saying
// which tokens are of which types. Immutable after construction.
class Classification {
public:
    Classification(std::vector<std::string> tokens,
                   std::vector<std::string> types,
                   const std::vector<std::pair<std::string, std::string>>& supports);

    // Index-based construction; support is a token-major matrix.
    Classification(std::vector<std::string> tokens,
                   std::vector<std::string> types,
                   std::vector<bool> support_matrix);

    std::size_t token_count() const { return tokens_.size(); }
    std::size_t type_count() const { return types_.size(); }
    const std::vector<std::string>& tokens() const { return tokens_; }
    const std::vector<std::string>& types() const { return types_; }
    const std::string& token_name(int i) const { return tokens_[i]; }
    const std::string& type_name(int i) const { return types_[i]; }

    int token_index(const std::string& name) const; // throws on unknown id
    int type_index(const std::string& name) const;

    bool supports(int token, int type) const {
        return support_[static_cast<std::size_t>(token) * types_.size() + type];
    }

    bool same_vocabulary(const Classification& other) const {
        return tokens_ == other.tokens_ && types_ == other.types_;
    }

    bool operator==(const Classification& other) const {
        return tokens_ == other.tokens_ && types_ == other.types_ &&
               support_ == other.support_;
    }

private:
    std::vector<std::string> tokens_;
    std::vector<std::string> types_;
    std::vector<bool> support_; // token-major
    std::map<std::string, int> token_index_;
    std::map<std::string, int> type_index_;

    void build_indexes();
};

using ClassificationPtr = std::shared_ptr<const Classification>;

// Multi-antecedent, multi-consequent constraint over a classification's
// types. Sides are sorted, duplicate-free type indices; the union must be
// non-empty.
struct Sequent {
    std::vector<int> lhs;
    std::vector<int> rhs;

    Sequent(std::vector<int> antecedents, std::vector<int> consequents);

    std::size_t width() const { return lhs.size() + rhs.size(); }
    auto operator<=>(const Sequent&) const = default;
};

// A token satisfies Gamma |- Delta iff it fails some antecedent or meets
// some consequent.
bool token_satisfies(const Classification& host, int token, const Sequent& s);

// True iff every token in `normal` satisfying all of lhs satisfies at
// least one member of rhs.
bool sequent_holds(const Classification& host, const std::vector<int>& normal,
                   const Sequent& s);
bool sequent_holds(const Classification& host, const std::vector<std::string>& normal,
                   const std::vector<std::string>& lhs, const std::vector<std::string>& rhs);

class LocalLogic {
public:
    // Validates that every normal token satisfies every constraint.
    LocalLogic(ClassificationPtr host, std::set<Sequent> constraints,
               std::vector<int> normal_tokens);

    const ClassificationPtr& host() const { return host_; }
    const std::set<Sequent>& constraints() const { return constraints_; }
    const std::vector<int>& normal_tokens() const { return normal_; }

private:
    ClassificationPtr host_;
    std::set<Sequent> constraints_;
    std::vector<int> normal_; // sorted
};

// All sequents of width <= max_width that hold on the given normal tokens.
LocalLogic derive_local_logic(ClassificationPtr host, std::vector<int> normal_tokens,
                              int max_width);

// Greatest lower bound: intersection of constraint sets, union of normal
// tokens. Hosts must share the token/type vocabulary (their supports may
// differ, as with the same scenario under different regimentations); the
// result is hosted on the first logic's host and its soundness re-checked.
LocalLogic meet_logics(const std::vector<LocalLogic>& logics);

// Contravariant map pair between classifications: types forward, tokens
// backward. The support-preservation biconditional is checked by
// check_infomorphism, never assumed.
class Infomorphism {
public:
    Infomorphism(ClassificationPtr source, ClassificationPtr target,
                 const std::map<std::string, std::string>& type_map,
                 const std::map<std::string, std::string>& token_map);

    // Index-based: type_map[src type] = tgt type, token_map[tgt token] = src token.
    Infomorphism(ClassificationPtr source, ClassificationPtr target,
                 std::vector<int> type_map, std::vector<int> token_map);

    const ClassificationPtr& source() const { return source_; }
    const ClassificationPtr& target() const { return target_; }
    int map_type(int source_type) const { return type_map_[source_type]; }
    int map_token(int target_token) const { return token_map_[target_token]; }

private:
    ClassificationPtr source_;
    ClassificationPtr target_;
    std::vector<int> type_map_;  // total on source types
    std::vector<int> token_map_; // total on target tokens
};

struct InfomorphismReport {
    bool valid = true;
    // (target token, source type) pairs where the biconditional fails.
    std::vector<std::pair<std::string, std::string>> violations;
};

InfomorphismReport check_infomorphism(const Infomorphism& f);

// Pullback of a local logic on f's target along f. A source sequent is
// included iff its image sequent is an L-constraint; normal tokens are the
// token-map image of L's normal tokens. Requires check_infomorphism(f).
LocalLogic pullback_logic(const Infomorphism& f, const LocalLogic& logic);

// Channel: a core classification with >= 2 infomorphism legs from
// component classifications into the core.
struct Channel {
    ClassificationPtr core;
    std::vector<Infomorphism> legs;
};

struct ChannelReport {
    bool valid = true;
    std::vector<std::string> problems;
    std::vector<InfomorphismReport> leg_reports;
};

ChannelReport check_channel(const Channel& ch);

// Classification with "involves" and "precludes" relations on its types.
struct Perspective {
    ClassificationPtr classification;
    std::set<std::pair<int, int>> involves;
    std::set<std::pair<int, int>> precludes;
};

struct PerspectiveReport {
    bool valid = true;
    // Subset of {"facticity", "xerox", "local preclusion", "mutual preclusion"}.
    std::vector<std::string> violated;
};

PerspectiveReport check_perspective(const Perspective& p);

} // namespace infoflow
