#include "infoflow/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "infoflow/errors.hpp"
#include "infoflow/rng.hpp"

namespace infoflow {

namespace {

int popcount(std::uint32_t m) {
    int n = 0;
    while (m) {
        m &= m - 1;
        ++n;
    }
    return n;
}

} // namespace

InformationItem::InformationItem(std::vector<std::string> worlds, std::uint32_t support,
                                 std::uint32_t core, std::vector<int> ranks)
    : worlds_(std::move(worlds)), support_(support), core_(core), ranks_(std::move(ranks)) {
    if (worlds_.empty()) throw InvalidInput("information item over an empty world set");
    if (worlds_.size() > 20) throw BudgetExceeded("world set larger than 20");
    std::uint32_t full = (1u << worlds_.size()) - 1;
    if ((support_ & ~full) || (core_ & ~full))
        throw InvalidInput("support/core outside the declared worlds");
    if (core_ & ~support_) throw InvalidInput("core must be contained in the support");
    if (ranks_.size() != worlds_.size())
        throw InvalidInput("rank map must be total on the worlds");
    for (int r : ranks_)
        if (r < 0) throw InvalidInput("ranks must be non-negative");

    if (support_ == 0) {
        if (core_ != 0) throw InvalidInput("inconsistent item cannot have a core");
        std::fill(ranks_.begin(), ranks_.end(), 0);
        return;
    }
    // Canonicalize: support ranks densified to 0..k-1, off-support worlds
    // share rank k, and the core must be exactly the top rank class.
    std::vector<int> levels;
    for (std::size_t w = 0; w < worlds_.size(); ++w)
        if (support_ & (1u << w)) levels.push_back(ranks_[w]);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    int off_rank = static_cast<int>(levels.size());
    for (std::size_t w = 0; w < worlds_.size(); ++w) {
        if (support_ & (1u << w)) {
            int dense = static_cast<int>(
                std::lower_bound(levels.begin(), levels.end(), ranks_[w]) - levels.begin());
            ranks_[w] = dense;
        } else {
            ranks_[w] = off_rank;
        }
    }
    std::uint32_t top = 0;
    for (std::size_t w = 0; w < worlds_.size(); ++w)
        if ((support_ & (1u << w)) && ranks_[w] == 0) top |= (1u << w);
    if (core_ != top)
        throw InvalidInput("core must be the maximal-plausibility rank class");
}

InformationItem InformationItem::from_contour(std::vector<std::string> worlds,
                                              const std::vector<double>& contour) {
    if (contour.size() != worlds.size())
        throw InvalidInput("contour length does not match the worlds");
    for (double c : contour)
        if (!(c >= 0.0)) throw InvalidInput("negative contour value");
    double top = 0.0;
    for (double c : contour) top = std::max(top, c);
    std::uint32_t support = 0, core = 0;
    std::vector<double> positive;
    for (std::size_t w = 0; w < worlds.size(); ++w) {
        if (contour[w] > 0.0) {
            support |= (1u << w);
            positive.push_back(contour[w]);
            if (contour[w] == top) core |= (1u << w);
        }
    }
    if (support == 0) core = 0;
    std::sort(positive.begin(), positive.end(), std::greater<double>());
    positive.erase(std::unique(positive.begin(), positive.end()), positive.end());
    std::vector<int> ranks(worlds.size(), static_cast<int>(positive.size()));
    for (std::size_t w = 0; w < worlds.size(); ++w) {
        if (contour[w] > 0.0) {
            ranks[w] = static_cast<int>(
                std::lower_bound(positive.begin(), positive.end(), contour[w],
                                 std::greater<double>()) -
                positive.begin());
        }
    }
    return InformationItem(std::move(worlds), support, core, std::move(ranks));
}

InformationItem InformationItem::vacuous(std::vector<std::string> worlds) {
    return from_contour(std::move(worlds), std::vector<double>(worlds.size(), 1.0));
}

bool InformationItem::is_vacuous() const {
    std::uint32_t full = (1u << worlds_.size()) - 1;
    return support_ == full && core_ == full;
}

std::string InformationItem::describe() const {
    std::ostringstream os;
    os << "support={";
    bool first = true;
    for (std::size_t w = 0; w < worlds_.size(); ++w) {
        if (support_ & (1u << w)) {
            if (!first) os << ',';
            first = false;
            os << worlds_[w];
        }
    }
    os << "} core={";
    first = true;
    for (std::size_t w = 0; w < worlds_.size(); ++w) {
        if (core_ & (1u << w)) {
            if (!first) os << ',';
            first = false;
            os << worlds_[w];
        }
    }
    os << "} ranks=[";
    for (std::size_t w = 0; w < worlds_.size(); ++w) {
        if (w) os << ',';
        if (support_ & (1u << w)) os << ranks_[w];
        else os << '-';
    }
    os << ']';
    return os.str();
}

InformationItem item_from_mass(const MassFunction& m) {
    const auto& worlds = m.frame().elements();
    std::vector<double> contour(worlds.size(), 0.0);
    for (std::size_t w = 0; w < worlds.size(); ++w)
        contour[w] = belief_plausibility(m, 1u << w).plausibility;
    return InformationItem::from_contour(worlds, contour);
}

InformationItem item_from_possibility(const PossibilityDistribution& p) {
    return InformationItem::from_contour(p.universe(), p.values());
}

// --- Adapters ---

MassRuleAdapter::MassRuleAdapter(MassRule rule, std::vector<MassFunction> pool)
    : rule_(rule),
      name_(rule == MassRule::Dempster ? "dempster" : "dubois-prade"),
      pool_(std::move(pool)) {
    if (pool_.empty()) throw InvalidInput("empty mass pool");
    items_.reserve(pool_.size());
    bool found_vacuous = false;
    for (std::size_t i = 0; i < pool_.size(); ++i) {
        if (!(pool_[i].frame() == pool_.front().frame()))
            throw InvalidInput("mass pool mixes frames");
        items_.push_back(item_from_mass(pool_[i]));
        if (!found_vacuous && pool_[i].focal().size() == 1 &&
            pool_[i].focal().begin()->first == pool_[i].frame().full_mask()) {
            vacuous_ = i;
            found_vacuous = true;
        }
    }
    if (!found_vacuous) {
        pool_.push_back(MassFunction::vacuous(pool_.front().frame()));
        items_.push_back(item_from_mass(pool_.back()));
        vacuous_ = pool_.size() - 1;
    }
}

std::optional<InformationItem> MassRuleAdapter::fuse(
    const std::vector<std::size_t>& inputs) const {
    if (inputs.empty()) return std::nullopt;
    MassFunction acc = pool_[inputs[0]];
    for (std::size_t i = 1; i < inputs.size(); ++i) {
        try {
            acc = rule_ == MassRule::Dempster ? dempster_combine(acc, pool_[inputs[i]])
                                              : dubois_prade_combine(acc, pool_[inputs[i]]);
        } catch (const UndefinedOperation&) {
            return std::nullopt; // total conflict: the rule has a gap here
        }
    }
    return item_from_mass(acc);
}

std::string MassRuleAdapter::pool_description() const {
    std::ostringstream os;
    os << pool_.size() << " mass functions over a frame of "
       << pool_.front().frame().size() << " elements";
    return os.str();
}

PossibilityRuleAdapter::PossibilityRuleAdapter(FusionMode mode,
                                               std::vector<PossibilityDistribution> pool)
    : mode_(mode), pool_(std::move(pool)) {
    switch (mode_) {
    case FusionMode::AndMin: name_ = "and-min"; break;
    case FusionMode::AndProduct: name_ = "and-product"; break;
    case FusionMode::OrMax: name_ = "or-max"; break;
    }
    if (pool_.empty()) throw InvalidInput("empty possibility pool");
    items_.reserve(pool_.size());
    bool found_vacuous = false;
    for (std::size_t i = 0; i < pool_.size(); ++i) {
        if (pool_[i].universe() != pool_.front().universe())
            throw InvalidInput("possibility pool mixes universes");
        items_.push_back(item_from_possibility(pool_[i]));
        if (!found_vacuous && items_.back().is_vacuous() &&
            *std::min_element(pool_[i].values().begin(), pool_[i].values().end()) == 1.0) {
            vacuous_ = i;
            found_vacuous = true;
        }
    }
    if (!found_vacuous) {
        pool_.emplace_back(pool_.front().universe(),
                           std::vector<double>(pool_.front().size(), 1.0));
        items_.push_back(item_from_possibility(pool_.back()));
        vacuous_ = pool_.size() - 1;
    }
}

std::optional<InformationItem> PossibilityRuleAdapter::fuse(
    const std::vector<std::size_t>& inputs) const {
    if (inputs.empty()) return std::nullopt;
    std::vector<PossibilityDistribution> sources;
    sources.reserve(inputs.size());
    for (std::size_t i : inputs) sources.push_back(pool_[i]);
    return item_from_possibility(infoflow::fuse(sources, mode_));
}

std::string PossibilityRuleAdapter::pool_description() const {
    std::ostringstream os;
    os << pool_.size() << " possibility distributions over " << pool_.front().size()
       << " worlds";
    return os.str();
}

TableAdapter::TableAdapter(std::string name, std::vector<InformationItem> pool,
                           std::size_t vacuous_index,
                           std::map<std::vector<std::size_t>, InformationItem> table)
    : name_(std::move(name)), pool_(std::move(pool)), vacuous_(vacuous_index),
      table_(std::move(table)) {
    if (pool_.empty()) throw InvalidInput("empty item pool");
    if (vacuous_ >= pool_.size()) throw InvalidInput("vacuous index out of range");
    if (!pool_[vacuous_].is_vacuous())
        throw InvalidInput("designated vacuous item is not vacuous");
    for (const auto& [key, value] : table_) {
        for (std::size_t i : key)
            if (i >= pool_.size()) throw InvalidInput("table input index out of range");
        if (value.worlds() != pool_.front().worlds())
            throw InvalidInput("table output over different worlds");
        if (key.size() > 2) binary_only_ = false;
    }
}

std::optional<InformationItem> TableAdapter::fuse(
    const std::vector<std::size_t>& inputs) const {
    auto it = table_.find(inputs);
    if (it == table_.end()) return std::nullopt;
    return it->second;
}

std::string TableAdapter::pool_description() const {
    std::ostringstream os;
    os << pool_.size() << " tabulated items, " << table_.size() << " table rows";
    return os.str();
}

// --- Audit ---

namespace {

std::string tuple_text(const FusionAdapter& op, const std::vector<std::size_t>& tuple) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i) os << "; ";
        os << '#' << tuple[i] << ' ' << op.pool_item(tuple[i]).describe();
    }
    os << ')';
    return os.str();
}

struct Check {
    PostulateResult result;
    void fail(const std::string& detail) {
        if (result.pass) {
            result.pass = false;
            result.detail = detail;
        }
        ++result.failures;
    }
};

} // namespace

AuditReport audit(const FusionAdapter& op, const AuditOptions& options) {
    AuditReport report;
    report.operator_name = op.name();
    report.pool_description = op.pool_description();
    report.binary_only = op.binary_only();

    int max_arity = std::min(options.max_arity, 3);
    if (max_arity < 2) throw InvalidInput("audit arity must be at least 2");
    if (op.binary_only()) max_arity = 2;
    for (int n = 2; n <= max_arity; ++n) report.arities.push_back(n);

    if (op.pool_size() == 0) throw InvalidInput("audit over an empty pool");
    if (op.pool_item(0).worlds().size() > 5)
        throw BudgetExceeded("audit families are limited to 5 worlds");

    const std::size_t pool = op.pool_size();
    double total_cases = 0.0;
    for (int n : report.arities) {
        double c = 1.0;
        for (int i = 0; i < n; ++i) c *= static_cast<double>(pool);
        total_cases += c;
    }
    if (total_cases > 2e6)
        throw BudgetExceeded("audit family too large: " + std::to_string(total_cases) +
                             " tuples");

    report.conventions = {
        "core convention: the core of a concrete model is its set of maximal-contour "
        "worlds (Pl({w}) for masses, pi(w) for possibility distributions)",
        "unanimity: what is unanimously possible stays possible (the intersection of "
        "the input supports is contained in the output support) and what is "
        "unanimously impossible stays impossible (the output support is contained in "
        "the union of the input supports)",
        "information monotonicity: for every pair of inputs the output support "
        "contains the intersection of their supports (at arity 2 this coincides with "
        "optimism)",
        "consistency enforcement: when every input is consistent (non-empty support) "
        "the output is consistent",
        "optimism: the output support contains the intersection of all input supports",
        "fairness: for every argument position there is an audited family whose output "
        "changes when that input is deleted",
        "insensitivity to vacuous information: merging with the vacuous item equals "
        "merging without it (at arity 2: f(T, vacuous) = f(vacuous, T) = T)",
        "commutativity: permuting the inputs never changes the output",
        "minimal commitment: when the input supports are pairwise disjoint the output "
        "support equals the union of the input supports, and merging only vacuous "
        "items yields the vacuous item",
    };

    Check unanimity{{"unanimity", report.conventions[1], true, "", 0}};
    Check monotonicity{{"information-monotonicity", report.conventions[2], true, "", 0}};
    Check consistency{{"consistency-enforcement", report.conventions[3], true, "", 0}};
    Check optimism{{"optimism", report.conventions[4], true, "", 0}};
    Check fairness{{"fairness", report.conventions[5], true, "", 0}};
    Check vacuous{{"vacuous-insensitivity", report.conventions[6], true, "", 0}};
    Check commutativity{{"commutativity", report.conventions[7], true, "", 0}};
    Check commitment{{"minimal-commitment", report.conventions[8], true, "", 0}};

    const std::size_t vac = op.vacuous_index();
    auto evaluate = [&](const std::vector<std::size_t>& tuple) {
        auto out = op.fuse(tuple);
        if (!out)
            throw UndefinedOperation("audit incomplete: the evaluator is undefined on " +
                                     tuple_text(op, tuple));
        return *out;
    };

    std::vector<bool> fairness_witness;
    std::map<std::vector<std::size_t>, InformationItem> canonical_out;

    for (int n : report.arities) {
        fairness_witness.assign(static_cast<std::size_t>(n), false);
        std::vector<std::size_t> tuple(static_cast<std::size_t>(n), 0);
        bool done = false;
        while (!done) {
            ++report.cases_checked;
            InformationItem out = evaluate(tuple);

            std::uint32_t support_union = 0, support_inter = 0xffffffffu;
            bool all_consistent = true;
            for (std::size_t i : tuple) {
                const auto& item = op.pool_item(i);
                support_union |= item.support();
                support_inter &= item.support();
                all_consistent = all_consistent && item.consistent();
            }

            if (out.support() & ~support_union)
                unanimity.fail("output leaves the union of supports on " +
                               tuple_text(op, tuple) + " -> " + out.describe());
            if (support_inter & ~out.support())
                unanimity.fail("unanimously possible world rejected on " +
                               tuple_text(op, tuple) + " -> " + out.describe());

            bool pairwise_ok = true;
            bool pairwise_disjoint = true;
            for (std::size_t a = 0; a + 1 < tuple.size() && (pairwise_ok || pairwise_disjoint); ++a) {
                for (std::size_t b = a + 1; b < tuple.size(); ++b) {
                    std::uint32_t inter =
                        op.pool_item(tuple[a]).support() & op.pool_item(tuple[b]).support();
                    if (inter & ~out.support()) pairwise_ok = false;
                    if (inter != 0) pairwise_disjoint = false;
                }
            }
            if (!pairwise_ok)
                monotonicity.fail("pairwise support intersection dropped on " +
                                  tuple_text(op, tuple) + " -> " + out.describe());

            if (all_consistent && !out.consistent())
                consistency.fail("consistent inputs produced an inconsistent result on " +
                                 tuple_text(op, tuple));

            if (support_inter & ~out.support())
                optimism.fail("output misses jointly supported worlds on " +
                              tuple_text(op, tuple) + " -> " + out.describe());

            if (all_consistent && pairwise_disjoint && out.support() != support_union)
                commitment.fail("conflicting inputs over-committed on " +
                                tuple_text(op, tuple) + " -> " + out.describe());

            // Commutativity against the sorted representative.
            std::vector<std::size_t> sorted_tuple = tuple;
            std::sort(sorted_tuple.begin(), sorted_tuple.end());
            auto it = canonical_out.find(sorted_tuple);
            if (it == canonical_out.end()) {
                canonical_out.emplace(sorted_tuple, out);
            } else if (!(it->second == out)) {
                commutativity.fail("permuted inputs disagree: " + tuple_text(op, tuple) +
                                   " -> " + out.describe() + " vs " + it->second.describe());
            }

            // Fairness: deleting one input and re-merging (a single remaining
            // input is its own merge).
            for (std::size_t p = 0; p < tuple.size(); ++p) {
                if (fairness_witness[p]) continue;
                std::vector<std::size_t> rest;
                for (std::size_t q = 0; q < tuple.size(); ++q)
                    if (q != p) rest.push_back(tuple[q]);
                InformationItem reduced =
                    rest.size() == 1 ? op.pool_item(rest[0]) : evaluate(rest);
                if (!(reduced == out)) fairness_witness[p] = true;
            }

            // Advance the tuple odometer.
            std::size_t pos = tuple.size();
            while (pos > 0) {
                if (++tuple[pos - 1] < pool) break;
                tuple[pos - 1] = 0;
                --pos;
            }
            done = (pos == 0);
        }

        for (std::size_t p = 0; p < fairness_witness.size(); ++p) {
            if (!fairness_witness[p])
                fairness.fail("no arity-" + std::to_string(n) + " family is changed by "
                              "deleting input position " + std::to_string(p));
        }

        // Vacuous insensitivity across the pool at this arity.
        if (n == 2) {
            for (std::size_t i = 0; i < pool; ++i) {
                InformationItem left = evaluate({i, vac});
                InformationItem right = evaluate({vac, i});
                if (!(left == op.pool_item(i)))
                    vacuous.fail("f(#" + std::to_string(i) + ", vacuous) = " +
                                 left.describe() + " differs from " +
                                 op.pool_item(i).describe());
                if (!(right == op.pool_item(i)))
                    vacuous.fail("f(vacuous, #" + std::to_string(i) + ") = " +
                                 right.describe() + " differs from " +
                                 op.pool_item(i).describe());
            }
            InformationItem vac_only = evaluate({vac, vac});
            if (!vac_only.is_vacuous())
                commitment.fail("merging vacuous items is not vacuous: " +
                                vac_only.describe());
        } else if (n == 3) {
            for (std::size_t i = 0; i < pool && i < 64; ++i) {
                for (std::size_t j = 0; j < pool && j < 64; ++j) {
                    InformationItem with_vac = evaluate({i, j, vac});
                    InformationItem without = evaluate({i, j});
                    if (!(with_vac == without))
                        vacuous.fail("appending the vacuous item changes f(#" +
                                     std::to_string(i) + ", #" + std::to_string(j) + ")");
                }
            }
        }
    }

    for (Check* c : {&unanimity, &monotonicity, &consistency, &optimism, &fairness,
                     &vacuous, &commutativity, &commitment}) {
        report.all_pass = report.all_pass && c->result.pass;
        report.postulates.push_back(std::move(c->result));
    }
    return report;
}

// --- Pool builders ---

std::vector<MassFunction> mass_grid_pool(const Frame& frame, double step) {
    if (!(step > 0.0 && step <= 1.0)) throw InvalidInput("grid step must lie in (0,1]");
    int units = static_cast<int>(1.0 / step + 0.5);
    if (std::fabs(units * step - 1.0) > 1e-9)
        throw InvalidInput("grid step must divide 1");
    const std::uint32_t cells = frame.full_mask(); // non-empty subsets = 1..cells
    if (frame.size() > 4) throw BudgetExceeded("mass grid over frames larger than 4");

    std::vector<MassFunction> pool;
    std::map<std::uint32_t, double> current;
    std::function<void(std::uint32_t, int)> place = [&](std::uint32_t cell, int left) {
        if (cell > cells) {
            if (left == 0) pool.emplace_back(frame, current);
            return;
        }
        for (int take = 0; take <= left; ++take) {
            if (take > 0) current[cell] = take * step;
            place(cell + 1, left - take);
            current.erase(cell);
        }
    };
    place(1, units);
    return pool;
}

std::vector<MassFunction> random_mass_pool(const Frame& frame, std::size_t count,
                                           std::uint64_t seed) {
    Rng rng(seed);
    std::vector<MassFunction> pool;
    pool.reserve(count + 1);
    const std::uint32_t full = frame.full_mask();
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t focal_count = 1 + rng.below(std::min<std::uint64_t>(4, full));
        std::map<std::uint32_t, double> focal;
        while (focal.size() < focal_count)
            focal[1 + static_cast<std::uint32_t>(rng.below(full))] = 0.0;
        auto weights = rng.simplex(focal.size());
        std::size_t k = 0;
        for (auto& [set, mass] : focal) mass = weights[k++];
        pool.emplace_back(frame, std::move(focal));
    }
    pool.push_back(MassFunction::vacuous(frame));
    return pool;
}

std::vector<PossibilityDistribution> possibility_grid_pool(
    const std::vector<std::string>& universe, double step) {
    if (!(step > 0.0 && step <= 1.0)) throw InvalidInput("grid step must lie in (0,1]");
    int levels = static_cast<int>(1.0 / step + 0.5);
    if (std::fabs(levels * step - 1.0) > 1e-9)
        throw InvalidInput("grid step must divide 1");
    if (universe.size() > 3) throw BudgetExceeded("possibility grid over more than 3 worlds");
    std::vector<PossibilityDistribution> pool;
    std::vector<double> values(universe.size(), 0.0);
    std::function<void(std::size_t)> fill = [&](std::size_t w) {
        if (w == universe.size()) {
            bool all_zero = true;
            for (double v : values) all_zero = all_zero && v == 0.0;
            if (!all_zero) pool.emplace_back(universe, values);
            return;
        }
        for (int level = 0; level <= levels; ++level) {
            values[w] = std::min(1.0, level * step);
            fill(w + 1);
        }
        values[w] = 0.0;
    };
    fill(0);
    return pool;
}

} // namespace infoflow
