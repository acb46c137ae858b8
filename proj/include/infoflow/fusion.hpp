#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "infoflow/evidence.hpp"
#include "infoflow/possibility.hpp"

namespace infoflow {

// Minimal fusion abstraction: which worlds an information source treats as
// possible (support), which as fully plausible (core), and a total
// plausibility ranking (lower rank = more plausible). Worlds off the
// support share the single maximal rank.
class InformationItem {
public:
    InformationItem(std::vector<std::string> worlds, std::uint32_t support,
                    std::uint32_t core, std::vector<int> ranks);

    // Builds the item from a contour function: support = positive contour,
    // core = maximal contour, ranking by descending contour value.
    static InformationItem from_contour(std::vector<std::string> worlds,
                                        const std::vector<double>& contour);

    static InformationItem vacuous(std::vector<std::string> worlds);

    const std::vector<std::string>& worlds() const { return worlds_; }
    std::uint32_t support() const { return support_; }
    std::uint32_t core() const { return core_; }
    const std::vector<int>& ranks() const { return ranks_; }
    bool consistent() const { return support_ != 0; }
    bool is_vacuous() const;

    std::string describe() const;

    bool operator==(const InformationItem& other) const {
        return worlds_ == other.worlds_ && support_ == other.support_ &&
               core_ == other.core_ && ranks_ == other.ranks_;
    }

private:
    std::vector<std::string> worlds_;
    std::uint32_t support_;
    std::uint32_t core_;
    std::vector<int> ranks_; // canonical: dense 0..k-1 on support, k off it
};

// Contour readouts of the concrete models: Pl({w}) for masses, pi(w) for
// possibility distributions. "Fully plausible" is read as maximal contour.
InformationItem item_from_mass(const MassFunction& m);
InformationItem item_from_possibility(const PossibilityDistribution& p);

// An auditable fusion operator: a pool of concrete inputs (viewed as
// items), a designated vacuous pool entry, and an evaluator over pool
// indices. The evaluator may be partial; a gap aborts the audit.
class FusionAdapter {
public:
    virtual ~FusionAdapter() = default;
    virtual const std::string& name() const = 0;
    virtual bool binary_only() const = 0;
    virtual std::size_t pool_size() const = 0;
    virtual const InformationItem& pool_item(std::size_t i) const = 0;
    virtual std::size_t vacuous_index() const = 0;
    virtual std::optional<InformationItem> fuse(const std::vector<std::size_t>& inputs) const = 0;
    virtual std::string pool_description() const = 0;
};

enum class MassRule { Dempster, DuboisPrade };

class MassRuleAdapter : public FusionAdapter {
public:
    MassRuleAdapter(MassRule rule, std::vector<MassFunction> pool);

    const std::string& name() const override { return name_; }
    bool binary_only() const override { return rule_ == MassRule::DuboisPrade; }
    std::size_t pool_size() const override { return pool_.size(); }
    const InformationItem& pool_item(std::size_t i) const override { return items_[i]; }
    std::size_t vacuous_index() const override { return vacuous_; }
    std::optional<InformationItem> fuse(const std::vector<std::size_t>& inputs) const override;
    std::string pool_description() const override;

private:
    MassRule rule_;
    std::string name_;
    std::vector<MassFunction> pool_;
    std::vector<InformationItem> items_;
    std::size_t vacuous_ = 0;
};

class PossibilityRuleAdapter : public FusionAdapter {
public:
    PossibilityRuleAdapter(FusionMode mode, std::vector<PossibilityDistribution> pool);

    const std::string& name() const override { return name_; }
    bool binary_only() const override { return false; }
    std::size_t pool_size() const override { return pool_.size(); }
    const InformationItem& pool_item(std::size_t i) const override { return items_[i]; }
    std::size_t vacuous_index() const override { return vacuous_; }
    std::optional<InformationItem> fuse(const std::vector<std::size_t>& inputs) const override;
    std::string pool_description() const override;

private:
    FusionMode mode_;
    std::string name_;
    std::vector<PossibilityDistribution> pool_;
    std::vector<InformationItem> items_;
    std::size_t vacuous_ = 0;
};

// User-supplied lookup table over an explicit item pool.
class TableAdapter : public FusionAdapter {
public:
    TableAdapter(std::string name, std::vector<InformationItem> pool, std::size_t vacuous_index,
                 std::map<std::vector<std::size_t>, InformationItem> table);

    const std::string& name() const override { return name_; }
    bool binary_only() const override { return binary_only_; }
    std::size_t pool_size() const override { return pool_.size(); }
    const InformationItem& pool_item(std::size_t i) const override { return pool_[i]; }
    std::size_t vacuous_index() const override { return vacuous_; }
    std::optional<InformationItem> fuse(const std::vector<std::size_t>& inputs) const override;
    std::string pool_description() const override;

private:
    std::string name_;
    std::vector<InformationItem> pool_;
    std::size_t vacuous_;
    std::map<std::vector<std::size_t>, InformationItem> table_;
    bool binary_only_ = true;
};

struct PostulateResult {
    std::string name;
    std::string definition; // the exact check performed
    bool pass = true;
    std::string detail;     // counterexample or witness description
    std::size_t failures = 0;
};

struct AuditReport {
    std::string operator_name;
    std::string pool_description;
    bool binary_only = false;
    std::vector<int> arities;
    std::size_t cases_checked = 0;
    std::vector<std::string> conventions;
    std::vector<PostulateResult> postulates;
    bool all_pass = true;
};

struct AuditOptions {
    int max_arity = 2; // capped at 3; binary-only adapters are audited at 2
};

// Exhaustive postulate audit over every ordered input tuple from the
// adapter pool. Deterministic; throws UndefinedOperation when the
// evaluator has a gap on the audited family.
AuditReport audit(const FusionAdapter& op, const AuditOptions& options);

// Pool builders for the audit.
std::vector<MassFunction> mass_grid_pool(const Frame& frame, double step);
std::vector<MassFunction> random_mass_pool(const Frame& frame, std::size_t count,
                                           std::uint64_t seed);
std::vector<PossibilityDistribution> possibility_grid_pool(
    const std::vector<std::string>& universe, double step);

} // namespace infoflow
