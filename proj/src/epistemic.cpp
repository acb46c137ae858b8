#include "infoflow/epistemic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "infoflow/errors.hpp"
#include "infoflow/probability.hpp"
#include "infoflow/rng.hpp"

namespace infoflow {

namespace {

std::vector<std::vector<bool>> build_relations(
    const std::vector<std::string>& points,
    const std::vector<std::string>& agents,
    const std::map<std::string, std::vector<std::pair<std::string, std::string>>>& relations,
    const std::map<std::string, int>& point_index) {
    std::map<std::string, int> agent_index;
    for (std::size_t i = 0; i < agents.size(); ++i)
        agent_index[agents[i]] = static_cast<int>(i);
    std::vector<std::vector<bool>> out(agents.size(),
                                       std::vector<bool>(points.size() * points.size(), false));
    for (const auto& [agent, pairs] : relations) {
        auto a = agent_index.find(agent);
        if (a == agent_index.end()) throw InvalidInput("undeclared agent: " + agent);
        for (const auto& [from, to] : pairs) {
            auto f = point_index.find(from);
            auto t = point_index.find(to);
            if (f == point_index.end()) throw InvalidInput("undeclared point: " + from);
            if (t == point_index.end()) throw InvalidInput("undeclared point: " + to);
            out[a->second][static_cast<std::size_t>(f->second) * points.size() + t->second] = true;
        }
    }
    return out;
}

} // namespace

KripkeModel::KripkeModel(
    std::vector<std::string> worlds, std::vector<std::string> agents,
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> relations,
    std::map<std::string, std::vector<std::string>> valuation, std::string designated,
    bool require_s5)
    : worlds_(std::move(worlds)), agents_(std::move(agents)) {
    if (worlds_.empty()) throw InvalidInput("model needs at least one world");
    std::map<std::string, int> widx;
    for (std::size_t i = 0; i < worlds_.size(); ++i)
        if (!widx.emplace(worlds_[i], static_cast<int>(i)).second)
            throw InvalidInput("duplicate world: " + worlds_[i]);
    relations_ = build_relations(worlds_, agents_, relations, widx);
    for (const auto& [atom, where] : valuation) {
        std::vector<bool> flags(worlds_.size(), false);
        for (const auto& w : where) {
            auto it = widx.find(w);
            if (it == widx.end()) throw InvalidInput("undeclared world in valuation: " + w);
            flags[it->second] = true;
        }
        valuation_[atom] = std::move(flags);
    }
    auto d = widx.find(designated);
    if (d == widx.end()) throw InvalidInput("undeclared designated world: " + designated);
    designated_ = d->second;
    if (require_s5)
        for (std::size_t a = 0; a < agents_.size(); ++a)
            if (!is_equivalence(static_cast<int>(a)))
                throw InvalidInput("relation for agent " + agents_[a] +
                                   " is not an equivalence relation");
}

int KripkeModel::world_index(const std::string& name) const {
    for (std::size_t i = 0; i < worlds_.size(); ++i)
        if (worlds_[i] == name) return static_cast<int>(i);
    throw InvalidInput("undeclared world: " + name);
}

int KripkeModel::agent_index(const std::string& name) const {
    for (std::size_t i = 0; i < agents_.size(); ++i)
        if (agents_[i] == name) return static_cast<int>(i);
    throw InvalidInput("undeclared agent: " + name);
}

bool KripkeModel::atom_true(const std::string& atom, int world) const {
    auto it = valuation_.find(atom);
    if (it == valuation_.end()) throw InvalidInput("undeclared atom: " + atom);
    return it->second[world];
}

bool KripkeModel::is_equivalence(int agent) const {
    const int n = static_cast<int>(worlds_.size());
    for (int w = 0; w < n; ++w)
        if (!related(agent, w, w)) return false;
    for (int w = 0; w < n; ++w)
        for (int v = 0; v < n; ++v)
            if (related(agent, w, v) != related(agent, v, w)) return false;
    for (int w = 0; w < n; ++w)
        for (int v = 0; v < n; ++v)
            if (related(agent, w, v))
                for (int u = 0; u < n; ++u)
                    if (related(agent, v, u) && !related(agent, w, u)) return false;
    return true;
}

namespace {

// Worlds reachable by >= 0 steps of the union of the group relations.
std::vector<bool> group_reachable(const KripkeModel& m, int start,
                                  const std::vector<int>& group) {
    std::vector<bool> seen(m.worlds().size(), false);
    std::deque<int> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
        int w = queue.front();
        queue.pop_front();
        for (int v = 0; v < static_cast<int>(m.worlds().size()); ++v) {
            if (seen[v]) continue;
            for (int agent : group) {
                if (m.related(agent, w, v)) {
                    seen[v] = true;
                    queue.push_back(v);
                    break;
                }
            }
        }
    }
    return seen;
}

} // namespace

bool model_check(const KripkeModel& m, int world, const Formula& f) {
    switch (f.kind()) {
    case Formula::Kind::Atom:
        return m.atom_true(f.atom_name(), world);
    case Formula::Kind::Not:
        return !model_check(m, world, f.child());
    case Formula::Kind::And:
        return model_check(m, world, f.lhs()) && model_check(m, world, f.rhs());
    case Formula::Kind::Or:
        return model_check(m, world, f.lhs()) || model_check(m, world, f.rhs());
    case Formula::Kind::Knows: {
        int agent = m.agent_index(f.agent());
        for (int v = 0; v < static_cast<int>(m.worlds().size()); ++v)
            if (m.related(agent, world, v) && !model_check(m, v, f.child())) return false;
        return true;
    }
    case Formula::Kind::Common: {
        std::vector<int> group;
        for (const auto& name : f.group()) group.push_back(m.agent_index(name));
        std::vector<bool> reach = group_reachable(m, world, group);
        for (int v = 0; v < static_cast<int>(m.worlds().size()); ++v)
            if (reach[v] && !model_check(m, v, f.child())) return false;
        return true;
    }
    case Formula::Kind::ProbCmp:
        throw InvalidInput("probability term in a plain model check: " + f.to_string());
    }
    return false;
}

bool model_check(const KripkeModel& m, const std::string& world, const Formula& f) {
    return model_check(m, m.world_index(world), f);
}

ProbabilisticKripkeModel::ProbabilisticKripkeModel(KripkeModel base, MuTable mu)
    : base_(std::move(base)), mu_(std::move(mu)) {
    if (mu_.size() != base_.agents().size())
        throw InvalidInput("mu table needs one row per agent");
    for (auto& per_agent : mu_) {
        if (per_agent.size() != base_.worlds().size())
            throw InvalidInput("mu table needs one entry per world");
        for (auto& dist : per_agent) {
            if (!dist) continue;
            double total = 0.0;
            for (const auto& [w, p] : *dist) {
                if (w < 0 || w >= static_cast<int>(base_.worlds().size()))
                    throw InvalidInput("mu assigns probability to an undeclared world");
                if (p < 0.0 || p > 1.0 + kProbTolerance)
                    throw InvalidInput("mu probability outside [0,1]");
                total += p;
            }
            if (std::fabs(total - 1.0) > kProbTolerance)
                throw InvalidInput("mu distribution sums to " + std::to_string(total) +
                                   ", not 1");
        }
    }
}

ProbabilisticKripkeModel::ProbabilisticKripkeModel(
    KripkeModel base,
    const std::map<std::string, std::map<std::string, std::map<std::string, double>>>& mu)
    : ProbabilisticKripkeModel(
          [&]() -> KripkeModel { return base; }(),
          [&]() -> MuTable {
              MuTable table(base.agents().size(),
                            std::vector<std::optional<WorldDistribution>>(base.worlds().size()));
              for (const auto& [agent, per_world] : mu) {
                  int a = base.agent_index(agent);
                  for (const auto& [world, dist] : per_world) {
                      int w = base.world_index(world);
                      WorldDistribution d;
                      for (const auto& [target, p] : dist)
                          d[base.world_index(target)] = p;
                      table[a][w] = std::move(d);
                  }
              }
              return table;
          }()) {}

namespace {

double probability_of(const ProbabilisticKripkeModel& m, int world, int agent,
                      const Formula& f) {
    const auto& dist = m.mu(agent, world);
    if (!dist)
        throw UndefinedOperation("missing probability: mu is undefined for agent " +
                                 m.base().agents()[agent] + " at world " +
                                 m.base().worlds()[world]);
    double total = 0.0;
    for (const auto& [v, p] : *dist)
        if (prob_model_check(m, v, f)) total += p;
    return total;
}

} // namespace

bool prob_model_check(const ProbabilisticKripkeModel& m, int world, const Formula& f) {
    switch (f.kind()) {
    case Formula::Kind::Atom:
        return m.base().atom_true(f.atom_name(), world);
    case Formula::Kind::Not:
        return !prob_model_check(m, world, f.child());
    case Formula::Kind::And:
        return prob_model_check(m, world, f.lhs()) && prob_model_check(m, world, f.rhs());
    case Formula::Kind::Or:
        return prob_model_check(m, world, f.lhs()) || prob_model_check(m, world, f.rhs());
    case Formula::Kind::Knows: {
        int agent = m.base().agent_index(f.agent());
        for (int v = 0; v < static_cast<int>(m.base().worlds().size()); ++v)
            if (m.base().related(agent, world, v) && !prob_model_check(m, v, f.child()))
                return false;
        return true;
    }
    case Formula::Kind::Common:
        // Probability terms cannot occur under C in a well-formed input; fall
        // back to the plain checker for the closure semantics.
        return model_check(m.base(), world, f);
    case Formula::Kind::ProbCmp: {
        double value = 0.0;
        for (const auto& term : f.prob_terms()) {
            int agent = m.base().agent_index(term.agent);
            value += term.coefficient * probability_of(m, world, agent, term.argument);
        }
        return value >= f.prob_bound() - kProbTolerance;
    }
    }
    return false;
}

UpdateModel::UpdateModel(
    std::vector<std::string> events, std::vector<std::string> agents,
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> relations,
    std::vector<std::pair<Formula, std::map<std::string, double>>> preconditions,
    std::map<std::string, std::map<std::string, std::map<std::string, double>>> mu,
    std::string designated)
    : events_(std::move(events)), agents_(std::move(agents)) {
    if (events_.empty()) throw InvalidInput("update model needs at least one event");
    std::map<std::string, int> eidx;
    for (std::size_t i = 0; i < events_.size(); ++i)
        if (!eidx.emplace(events_[i], static_cast<int>(i)).second)
            throw InvalidInput("duplicate event: " + events_[i]);
    relations_ = build_relations(events_, agents_, relations, eidx);

    if (preconditions.empty()) throw InvalidInput("update model needs a precondition");
    std::set<std::string> atom_set;
    for (const auto& [phi, pre] : preconditions) {
        if (!phi.propositional())
            throw InvalidInput("preconditions must be propositional: " + phi.to_string());
        phi.collect_atoms(atom_set);
    }
    AtomSpace atoms(std::vector<std::string>(atom_set.begin(), atom_set.end()));
    for (std::size_t i = 0; i < preconditions.size(); ++i) {
        for (std::size_t j = i + 1; j < preconditions.size(); ++j) {
            auto both = atoms.models(Formula::conjunction(preconditions[i].first,
                                                          preconditions[j].first));
            if (!bitmap_empty(both))
                throw InvalidInput("preconditions are not pairwise inconsistent: " +
                                   preconditions[i].first.to_string() + " and " +
                                   preconditions[j].first.to_string());
        }
    }
    for (auto& [phi, pre] : preconditions) {
        std::vector<double> row(events_.size(), 0.0);
        double total = 0.0;
        for (const auto& [event, p] : pre) {
            auto it = eidx.find(event);
            if (it == eidx.end()) throw InvalidInput("undeclared event: " + event);
            if (p < 0.0 || p > 1.0 + kProbTolerance)
                throw InvalidInput("occurrence probability outside [0,1]");
            row[it->second] = p;
            total += p;
        }
        if (std::fabs(total - 1.0) > kProbTolerance)
            throw InvalidInput("occurrence probabilities for " + phi.to_string() +
                               " sum to " + std::to_string(total) + ", not 1");
        preconditions_.emplace_back(phi, std::move(row));
    }

    mu_.assign(agents_.size(),
               std::vector<std::vector<double>>(events_.size(),
                                                std::vector<double>(events_.size(), 0.0)));
    for (const auto& [agent, per_event] : mu) {
        int a = -1;
        for (std::size_t i = 0; i < agents_.size(); ++i)
            if (agents_[i] == agent) a = static_cast<int>(i);
        if (a < 0) throw InvalidInput("undeclared agent: " + agent);
        for (const auto& [event, dist] : per_event) {
            auto e = eidx.find(event);
            if (e == eidx.end()) throw InvalidInput("undeclared event: " + event);
            double total = 0.0;
            for (const auto& [target, p] : dist) {
                auto t = eidx.find(target);
                if (t == eidx.end()) throw InvalidInput("undeclared event: " + target);
                if (p < 0.0 || p > 1.0 + kProbTolerance)
                    throw InvalidInput("observation probability outside [0,1]");
                mu_[a][e->second][t->second] = p;
                total += p;
            }
            if (std::fabs(total - 1.0) > kProbTolerance)
                throw InvalidInput("observation probabilities at event " + event +
                                   " sum to " + std::to_string(total) + ", not 1");
        }
    }
    auto d = eidx.find(designated);
    if (d == eidx.end()) throw InvalidInput("undeclared designated event: " + designated);
    designated_ = d->second;
}

ProbabilisticKripkeModel product_update(const ProbabilisticKripkeModel& m,
                                        const UpdateModel& e) {
    const KripkeModel& base = m.base();
    if (base.agents() != e.agents())
        throw InvalidInput("model and update model declare different agents");

    const int n_worlds = static_cast<int>(base.worlds().size());
    const int n_events = static_cast<int>(e.events().size());

    // The precondition true at each world, if any; pairwise inconsistency
    // makes it unique.
    std::vector<int> phi_at(n_worlds, -1);
    for (int w = 0; w < n_worlds; ++w)
        for (std::size_t p = 0; p < e.preconditions().size(); ++p)
            if (model_check(base, w, e.preconditions()[p].first)) {
                phi_at[w] = static_cast<int>(p);
                break;
            }

    std::vector<std::pair<int, int>> survivors;
    std::vector<std::vector<int>> pair_index(n_worlds, std::vector<int>(n_events, -1));
    for (int w = 0; w < n_worlds; ++w) {
        if (phi_at[w] < 0) continue;
        const auto& occurrence = e.preconditions()[phi_at[w]].second;
        for (int ev = 0; ev < n_events; ++ev) {
            if (occurrence[ev] > 0.0) {
                pair_index[w][ev] = static_cast<int>(survivors.size());
                survivors.emplace_back(w, ev);
            }
        }
    }
    if (survivors.empty())
        throw UndefinedOperation("product update eliminates every world");
    if (pair_index[base.designated()][e.designated()] < 0)
        throw UndefinedOperation("the designated pair does not survive the update");

    std::vector<std::string> new_worlds;
    new_worlds.reserve(survivors.size());
    for (const auto& [w, ev] : survivors)
        new_worlds.push_back(base.worlds()[w] + "|" + e.events()[ev]);

    std::map<std::string, std::vector<std::pair<std::string, std::string>>> new_relations;
    for (std::size_t a = 0; a < base.agents().size(); ++a) {
        auto& pairs = new_relations[base.agents()[a]];
        for (std::size_t i = 0; i < survivors.size(); ++i)
            for (std::size_t j = 0; j < survivors.size(); ++j)
                if (base.related(static_cast<int>(a), survivors[i].first, survivors[j].first) &&
                    e.related(static_cast<int>(a), survivors[i].second, survivors[j].second))
                    pairs.emplace_back(new_worlds[i], new_worlds[j]);
    }

    std::map<std::string, std::vector<std::string>> new_valuation;
    for (const auto& [atom, flags] : base.valuation()) {
        auto& where = new_valuation[atom];
        for (std::size_t i = 0; i < survivors.size(); ++i)
            if (flags[survivors[i].first]) where.push_back(new_worlds[i]);
    }

    KripkeModel new_base(new_worlds, base.agents(), std::move(new_relations),
                         std::move(new_valuation),
                         new_worlds[pair_index[base.designated()][e.designated()]]);

    ProbabilisticKripkeModel::MuTable new_mu(
        base.agents().size(),
        std::vector<std::optional<ProbabilisticKripkeModel::WorldDistribution>>(
            survivors.size()));
    for (std::size_t a = 0; a < base.agents().size(); ++a) {
        for (std::size_t i = 0; i < survivors.size(); ++i) {
            const auto& [w, ev] = survivors[i];
            const auto& prior = m.mu(static_cast<int>(a), w);
            if (!prior) continue; // mu stays partial where it was undefined
            ProbabilisticKripkeModel::WorldDistribution dist;
            double denominator = 0.0;
            for (const auto& [w2, prior_p] : *prior) {
                if (phi_at[w2] < 0) continue;
                const auto& occurrence = e.preconditions()[phi_at[w2]].second;
                for (int e2 = 0; e2 < n_events; ++e2) {
                    if (pair_index[w2][e2] < 0) continue;
                    double value = prior_p * occurrence[e2] *
                                   e.observation(static_cast<int>(a), ev, e2);
                    if (value > 0.0) dist[pair_index[w2][e2]] += value;
                    denominator += value;
                }
            }
            if (denominator <= 0.0)
                throw UndefinedOperation("product update normalizer is zero at (" +
                                         base.worlds()[w] + ", " + e.events()[ev] + ")");
            for (auto& [idx, p] : dist) p /= denominator;
            new_mu[a][i] = std::move(dist);
        }
    }
    return ProbabilisticKripkeModel(std::move(new_base), std::move(new_mu));
}

ProbabilisticValidityReport probabilistic_validity(const std::vector<Formula>& premises,
                                                   const Formula& conclusion,
                                                   const std::vector<std::string>& atoms,
                                                   std::size_t samples, std::uint64_t seed) {
    if (atoms.size() > 12)
        throw InvalidInput("probabilistic validity limited to 12 atoms");
    for (const auto& f : premises)
        if (!f.propositional())
            throw InvalidInput("premises must be propositional: " + f.to_string());
    if (!conclusion.propositional())
        throw InvalidInput("conclusion must be propositional: " + conclusion.to_string());

    AtomSpace space(atoms);
    std::vector<std::uint64_t> premise_models(space.word_count(), ~0ULL);
    // Mask off the valuations beyond 2^n.
    std::uint32_t count = space.valuation_count();
    for (std::uint32_t v = count; v < space.word_count() * 64; ++v)
        premise_models[v >> 6] &= ~(1ULL << (v & 63));
    for (const auto& f : premises) bitmap_and(premise_models, space.models(f));
    auto conclusion_models = space.models(conclusion);

    ProbabilisticValidityReport report;
    report.classically_valid = bitmap_subset(premise_models, conclusion_models);

    std::vector<std::uint32_t> gamma_worlds;
    for (std::uint32_t v = 0; v < count; ++v)
        if (premise_models[v >> 6] & (1ULL << (v & 63))) gamma_worlds.push_back(v);

    auto conclusion_true = [&](std::uint32_t v) {
        return (conclusion_models[v >> 6] & (1ULL << (v & 63))) != 0;
    };

    // A probability function with P(gamma)=1 for every premise is exactly a
    // distribution supported on the joint premise models. The sweep covers
    // every point mass first, then seeded random mixtures.
    report.sampled_valid = true;
    Rng rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        ++report.samples_run;
        if (gamma_worlds.empty()) break; // inconsistent premises: nothing to sample
        std::map<std::uint32_t, double> dist;
        if (s < gamma_worlds.size()) {
            dist[gamma_worlds[s]] = 1.0;
        } else {
            std::size_t k = 1 + rng.below(gamma_worlds.size());
            std::vector<std::uint32_t> chosen;
            for (std::size_t i = 0; i < k; ++i)
                chosen.push_back(gamma_worlds[rng.below(gamma_worlds.size())]);
            std::sort(chosen.begin(), chosen.end());
            chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
            auto weights = rng.simplex(chosen.size());
            for (std::size_t i = 0; i < chosen.size(); ++i) dist[chosen[i]] = weights[i];
        }
        double p_phi = 0.0;
        for (const auto& [v, p] : dist)
            if (conclusion_true(v)) p_phi += p;
        if (p_phi < 1.0 - kProbTolerance) {
            report.sampled_valid = false;
            if (!report.counterexample) {
                report.counterexample = dist;
                report.counterexample_phi_probability = p_phi;
            }
        }
    }
    return report;
}

} // namespace infoflow
