#include "infoflow/vagueness.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "infoflow/errors.hpp"

namespace infoflow {

void Regimentation::validate() const {
    if (!(epsilon >= 0.0)) throw InvalidInput("tolerance must be non-negative");
    if (intervals.empty()) throw InvalidInput("regimentation needs at least one interval");
    for (const auto& iv : intervals)
        if (!(iv.lo < iv.hi)) throw InvalidInput("regimentation interval is empty");
    for (std::size_t i = 0; i + 1 < intervals.size(); ++i) {
        double gap = intervals[i + 1].lo - intervals[i].hi;
        if (gap < 0.0) throw InvalidInput("regimentation intervals overlap or are unordered");
        if (gap > epsilon)
            throw InvalidInput("gap between consecutive intervals exceeds the tolerance");
    }
}

void HeightScenario::validate() const {
    if (objects.empty()) throw InvalidInput("scenario needs at least one object");
    if (objects.size() != heights.size())
        throw InvalidInput("each object needs exactly one height");
    for (double h : heights)
        if (!(h > 0.0) || !std::isfinite(h))
            throw InvalidInput("heights must be finite positive reals");
    if (num_variables < 1) throw InvalidInput("scenario needs at least one variable");
    if (predicates.empty()) throw InvalidInput("scenario needs at least one unary predicate");
    std::set<std::string> seen(objects.begin(), objects.end());
    if (seen.size() != objects.size()) throw InvalidInput("duplicate object names");
}

int HeightScenario::object_index(const std::string& name) const {
    for (std::size_t i = 0; i < objects.size(); ++i)
        if (objects[i] == name) return static_cast<int>(i);
    throw InvalidInput("unknown object: " + name);
}

namespace {

std::string atom_name(const HeightScenario& sc, const HeightAtom& a) {
    std::ostringstream os;
    switch (a.kind) {
    case HeightAtom::Kind::Unary:
        os << sc.predicates[a.predicate] << "(X" << a.var1 + 1 << ")";
        break;
    case HeightAtom::Kind::Taller:
        os << "TALLER(X" << a.var1 + 1 << ",X" << a.var2 + 1 << ")";
        break;
    case HeightAtom::Kind::SameHeight:
        os << "SAMEHT(X" << a.var1 + 1 << ",X" << a.var2 + 1 << ")";
        break;
    }
    return os.str();
}

int parse_variable(const HeightScenario& sc, const std::string& text) {
    if (text.size() < 2 || text[0] != 'X') throw InvalidInput("bad variable: " + text);
    int n = std::stoi(text.substr(1));
    if (n < 1 || n > sc.num_variables)
        throw InvalidInput("variable out of range: " + text);
    return n - 1;
}

HeightAtom parse_atom(const HeightScenario& sc, const std::string& text) {
    auto open = text.find('(');
    auto close = text.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw InvalidInput("bad atom: " + text);
    std::string head = text.substr(0, open);
    std::string args = text.substr(open + 1, close - open - 1);
    HeightAtom atom;
    auto comma = args.find(',');
    if (head == "TALLER" || head == "SAMEHT") {
        if (comma == std::string::npos) throw InvalidInput("binary atom needs two variables");
        atom.kind = head == "TALLER" ? HeightAtom::Kind::Taller : HeightAtom::Kind::SameHeight;
        atom.var1 = parse_variable(sc, args.substr(0, comma));
        atom.var2 = parse_variable(sc, args.substr(comma + 1));
        return atom;
    }
    for (std::size_t p = 0; p < sc.predicates.size(); ++p) {
        if (sc.predicates[p] == head) {
            atom.kind = HeightAtom::Kind::Unary;
            atom.predicate = static_cast<int>(p);
            atom.var1 = parse_variable(sc, args);
            return atom;
        }
    }
    throw InvalidInput("unknown predicate: " + head);
}

bool atom_true(const HeightScenario& sc, const Regimentation& r,
               const std::vector<int>& assignment, const HeightAtom& a) {
    double h1 = sc.heights[assignment[a.var1]];
    switch (a.kind) {
    case HeightAtom::Kind::Unary:
        return a.predicate < static_cast<int>(r.intervals.size()) &&
               r.intervals[a.predicate].contains(h1);
    case HeightAtom::Kind::Taller:
        return h1 > sc.heights[assignment[a.var2]];
    case HeightAtom::Kind::SameHeight:
        return std::fabs(h1 - sc.heights[assignment[a.var2]]) <= r.epsilon;
    }
    return false;
}

std::string assignment_token_name(const HeightScenario& sc, const std::vector<int>& assignment) {
    std::string name;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        if (i) name += ',';
        name += sc.objects[assignment[i]];
    }
    return name;
}

std::vector<HeightType> enumerate_types(const HeightScenario& sc, int conjunction_width) {
    std::vector<HeightAtom> atoms;
    for (int v = 0; v < sc.num_variables; ++v)
        for (std::size_t p = 0; p < sc.predicates.size(); ++p)
            atoms.push_back({HeightAtom::Kind::Unary, static_cast<int>(p), v, 0});
    for (int v = 0; v < sc.num_variables; ++v)
        for (int w = 0; w < sc.num_variables; ++w)
            if (v != w) atoms.push_back({HeightAtom::Kind::Taller, 0, v, w});
    for (int v = 0; v < sc.num_variables; ++v)
        for (int w = v + 1; w < sc.num_variables; ++w)
            atoms.push_back({HeightAtom::Kind::SameHeight, 0, v, w});

    std::vector<HeightType> types;
    for (const auto& a : atoms) types.push_back({{a}});
    if (conjunction_width >= 2) {
        // Width-2 conjunctions; wider ones explode at desk scale.
        for (std::size_t i = 0; i < atoms.size(); ++i)
            for (std::size_t j = i + 1; j < atoms.size(); ++j)
                types.push_back({{atoms[i], atoms[j]}});
    }
    if (conjunction_width > 2)
        throw BudgetExceeded("conjunction width above 2 is not materialized");
    return types;
}

std::vector<std::vector<int>> enumerate_assignments(const HeightScenario& sc) {
    double count = 1;
    for (int v = 0; v < sc.num_variables; ++v) count *= static_cast<double>(sc.objects.size());
    if (count > 20000)
        throw BudgetExceeded("too many variable assignments to materialize");
    std::vector<std::vector<int>> result;
    std::vector<int> current(sc.num_variables, 0);
    for (;;) {
        result.push_back(current);
        int pos = sc.num_variables - 1;
        while (pos >= 0) {
            if (++current[pos] < static_cast<int>(sc.objects.size())) break;
            current[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return result;
}

} // namespace

std::string HeightType::name(const HeightScenario& sc) const {
    std::vector<std::string> names;
    for (const auto& a : atoms) names.push_back(atom_name(sc, a));
    std::sort(names.begin(), names.end());
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += '&';
        out += names[i];
    }
    return out;
}

HeightType parse_height_type(const HeightScenario& sc, const std::string& text) {
    HeightType type;
    std::size_t start = 0;
    while (start < text.size()) {
        auto amp = text.find('&', start);
        std::string piece =
            amp == std::string::npos ? text.substr(start) : text.substr(start, amp - start);
        type.atoms.push_back(parse_atom(sc, piece));
        if (amp == std::string::npos) break;
        start = amp + 1;
    }
    if (type.atoms.empty()) throw InvalidInput("empty type expression");
    return type;
}

bool classify(const HeightScenario& sc, const Regimentation& r,
              const std::vector<int>& assignment, const HeightType& type) {
    sc.validate();
    r.validate();
    if (assignment.size() != static_cast<std::size_t>(sc.num_variables))
        throw InvalidInput("assignment must cover every variable");
    for (int obj : assignment)
        if (obj < 0 || obj >= static_cast<int>(sc.objects.size()))
            throw InvalidInput("assignment references an undeclared object");
    for (const auto& a : type.atoms)
        if (!atom_true(sc, r, assignment, a)) return false;
    return true;
}

bool classify(const HeightScenario& sc, const Regimentation& r,
              const std::vector<std::string>& assignment_names, const std::string& type) {
    std::vector<int> assignment;
    assignment.reserve(assignment_names.size());
    for (const auto& name : assignment_names) assignment.push_back(sc.object_index(name));
    return classify(sc, r, assignment, parse_height_type(sc, type));
}

ClassificationPtr build_agent_classification(const HeightScenario& sc,
                                             const Regimentation& r,
                                             int conjunction_width) {
    sc.validate();
    r.validate();
    if (r.intervals.size() != sc.predicates.size())
        throw InvalidInput("regimentation needs one interval per unary predicate");
    auto assignments = enumerate_assignments(sc);
    auto types = enumerate_types(sc, conjunction_width);

    std::vector<std::string> token_names;
    token_names.reserve(assignments.size());
    for (const auto& a : assignments) token_names.push_back(assignment_token_name(sc, a));
    std::vector<std::string> type_names;
    type_names.reserve(types.size());
    for (const auto& t : types) type_names.push_back(t.name(sc));

    std::vector<bool> support(assignments.size() * types.size(), false);
    for (std::size_t tok = 0; tok < assignments.size(); ++tok)
        for (std::size_t ty = 0; ty < types.size(); ++ty)
            support[tok * types.size() + ty] = classify(sc, r, assignments[tok], types[ty]);
    return std::make_shared<Classification>(std::move(token_names), std::move(type_names),
                                            std::move(support));
}

ClassificationPtr build_event_state_space(const HeightScenario& sc,
                                          const std::vector<Regimentation>& family,
                                          int conjunction_width) {
    sc.validate();
    if (family.empty()) throw InvalidInput("empty regimentation family");
    for (const auto& r : family) {
        r.validate();
        if (r.intervals.size() != sc.predicates.size())
            throw InvalidInput("regimentation needs one interval per unary predicate");
    }
    auto assignments = enumerate_assignments(sc);
    auto types = enumerate_types(sc, conjunction_width);

    std::vector<std::string> token_names;
    token_names.reserve(assignments.size());
    for (const auto& a : assignments) token_names.push_back(assignment_token_name(sc, a));

    std::vector<std::string> type_names;
    std::vector<bool> support(assignments.size() * types.size() * family.size(), false);
    for (std::size_t r = 0; r < family.size(); ++r)
        for (const auto& t : types)
            type_names.push_back(t.name(sc) + "@r" + std::to_string(r));
    const std::size_t n_types = type_names.size();
    for (std::size_t tok = 0; tok < assignments.size(); ++tok)
        for (std::size_t r = 0; r < family.size(); ++r)
            for (std::size_t ty = 0; ty < types.size(); ++ty)
                support[tok * n_types + r * types.size() + ty] =
                    classify(sc, family[r], assignments[tok], types[ty]);
    return std::make_shared<Classification>(std::move(token_names), std::move(type_names),
                                            std::move(support));
}

Infomorphism build_regimentation_morphism(const HeightScenario& sc,
                                          const std::vector<Regimentation>& family,
                                          std::size_t index, ClassificationPtr event_space,
                                          int conjunction_width) {
    if (index >= family.size()) throw InvalidInput("regimentation index out of range");
    if (!event_space) event_space = build_event_state_space(sc, family, conjunction_width);
    auto agent = build_agent_classification(sc, family[index], conjunction_width);

    std::vector<int> type_map(agent->type_count());
    for (std::size_t t = 0; t < agent->type_count(); ++t)
        type_map[t] = event_space->type_index(agent->type_name(static_cast<int>(t)) + "@r" +
                                              std::to_string(index));
    std::vector<int> token_map(event_space->token_count());
    for (std::size_t b = 0; b < event_space->token_count(); ++b)
        token_map[b] = agent->token_index(event_space->token_name(static_cast<int>(b)));
    return Infomorphism(std::move(agent), std::move(event_space), std::move(type_map),
                        std::move(token_map));
}

Channel build_vagueness_channel(const HeightScenario& sc,
                                const std::vector<Regimentation>& family,
                                int conjunction_width) {
    if (family.size() < 2)
        throw InvalidInput("a channel needs at least two regimentations");
    Channel ch;
    ch.core = build_event_state_space(sc, family, conjunction_width);
    for (std::size_t i = 0; i < family.size(); ++i)
        ch.legs.push_back(
            build_regimentation_morphism(sc, family, i, ch.core, conjunction_width));
    return ch;
}

LocalLogic intensional_logic(const HeightScenario& sc,
                             const std::vector<Regimentation>& family, int max_width) {
    if (family.empty()) throw InvalidInput("empty regimentation family");
    auto event_space = build_event_state_space(sc, family);
    std::vector<int> all_tokens(event_space->token_count());
    for (std::size_t i = 0; i < all_tokens.size(); ++i) all_tokens[i] = static_cast<int>(i);
    LocalLogic event_logic = derive_local_logic(event_space, all_tokens, max_width);

    std::vector<LocalLogic> pullbacks;
    pullbacks.reserve(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
        Infomorphism leg = build_regimentation_morphism(sc, family, i, event_space);
        pullbacks.push_back(pullback_logic(leg, event_logic));
    }
    return meet_logics(pullbacks);
}

namespace {

struct ChainSearch {
    bool found = false;
    std::vector<int> chain; // object indexes, length N
};

// Greedy maximal climb: start from the highest first-interval object and
// repeatedly step to the highest object within epsilon above the current
// one. Once the last interval is reached the chain is padded in place.
ChainSearch find_chain(const HeightScenario& sc, const Regimentation& r, int chain_length) {
    const Interval& first = r.intervals.front();
    const Interval& last = r.intervals.back();
    std::vector<int> order(sc.objects.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return sc.heights[a] < sc.heights[b]; });

    int start = -1;
    for (int obj : order)
        if (first.contains(sc.heights[obj])) start = obj; // keeps the highest
    ChainSearch search;
    if (start < 0) return search;

    search.chain.push_back(start);
    int current = start;
    for (int step = 1; step < chain_length; ++step) {
        if (last.contains(sc.heights[current])) {
            search.chain.push_back(current); // pad: SAMEHT holds at distance zero
            continue;
        }
        int next = current;
        for (int obj : order) {
            double h = sc.heights[obj];
            if (h > sc.heights[current] && h <= sc.heights[current] + r.epsilon) next = obj;
        }
        search.chain.push_back(next);
        current = next;
    }
    search.found = last.contains(sc.heights[current]);
    return search;
}

} // namespace

SoritesResult sorites_check(const HeightScenario& sc,
                            const std::vector<Regimentation>& family, int chain_length,
                            double endpoint_grid_step) {
    sc.validate();
    if (family.empty()) throw InvalidInput("empty regimentation family");
    if (chain_length < 2) throw InvalidInput("chain length must be at least 2");
    if (chain_length > sc.num_variables)
        throw InvalidInput("chain length exceeds the declared variables");
    for (const auto& r : family) {
        r.validate();
        if (r.intervals.size() != sc.predicates.size())
            throw InvalidInput("regimentation needs one interval per unary predicate");
    }
    if (!(endpoint_grid_step > 0.0)) throw InvalidInput("grid step must be positive");

    SoritesResult result;
    result.chain_length = chain_length;

    auto record_witness = [&](const ChainSearch& search, const Regimentation& r) {
        result.derivable = false;
        result.witness_regimentation = r;
        result.witness_objects.clear();
        result.witness_heights.clear();
        for (int obj : search.chain) {
            result.witness_objects.push_back(sc.objects[obj]);
            result.witness_heights.push_back(sc.heights[obj]);
        }
    };

    for (const auto& r : family) {
        ChainSearch search = find_chain(sc, r, chain_length);
        if (search.found) {
            record_witness(search, r);
            return result;
        }
    }

    // Grid search over interval endpoints inside the family envelope: the
    // quantification over "all regimentations" is approximated by moving
    // the first interval's upper end and the last interval's lower end on a
    // grid, keeping each family member's tolerance.
    const std::size_t n = sc.predicates.size();
    Interval first_env = family.front().intervals.front();
    Interval last_env = family.front().intervals.back();
    for (const auto& r : family) {
        first_env.lo = std::min(first_env.lo, r.intervals.front().lo);
        first_env.hi = std::max(first_env.hi, r.intervals.front().hi);
        last_env.lo = std::min(last_env.lo, r.intervals.back().lo);
        last_env.hi = std::max(last_env.hi, r.intervals.back().hi);
    }
    double min_h = *std::min_element(sc.heights.begin(), sc.heights.end());
    double max_h = *std::max_element(sc.heights.begin(), sc.heights.end());
    double s_lo = std::max(first_env.lo, min_h);
    double s_hi = std::min(first_env.hi, max_h + endpoint_grid_step);
    double t_lo = std::max(last_env.lo, min_h);
    double t_hi = std::min(last_env.hi, max_h + endpoint_grid_step);

    for (const auto& base : family) {
        for (double s = s_lo; s <= s_hi; s += endpoint_grid_step) {
            for (double t = std::max(t_lo, s); t <= t_hi; t += endpoint_grid_step) {
                Regimentation candidate;
                candidate.epsilon = base.epsilon;
                if (n == 1) {
                    if (s != t) continue;
                    candidate.intervals = {{first_env.lo, last_env.hi}};
                } else if (n == 2) {
                    if (t - s > base.epsilon) continue; // gap bound
                    if (!(first_env.lo < s) || !(t < last_env.hi)) continue;
                    candidate.intervals = {{first_env.lo, s}, {t, last_env.hi}};
                } else {
                    if (!(first_env.lo < s) || !(t < last_env.hi) || !(s < t)) continue;
                    candidate.intervals.push_back({first_env.lo, s});
                    double width = (t - s) / static_cast<double>(n - 2);
                    for (std::size_t k = 0; k + 2 < n; ++k)
                        candidate.intervals.push_back(
                            {s + width * static_cast<double>(k),
                             s + width * static_cast<double>(k + 1)});
                    candidate.intervals.push_back({t, last_env.hi});
                }
                candidate.validate();
                ChainSearch search = find_chain(sc, candidate, chain_length);
                if (search.found) {
                    record_witness(search, candidate);
                    return result;
                }
            }
        }
    }
    return result;
}

} // namespace infoflow
