#include "infoflow/classification.hpp"

#include <algorithm>

#include "infoflow/errors.hpp"

namespace infoflow {

namespace {

std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// Advances a size-k index combination over [0, n); returns false when done.
bool next_combination(std::vector<int>& c, int n) {
    int k = static_cast<int>(c.size());
    for (int i = k - 1; i >= 0; --i) {
        if (c[i] < n - (k - i)) {
            ++c[i];
            for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<int> first_combination(int k) {
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i) c[i] = i;
    return c;
}

} // namespace

void Classification::build_indexes() {
    if (tokens_.empty())
        throw InvalidInput("classification needs at least one token");
    for (std::size_t i = 0; i < tokens_.size(); ++i)
        if (!token_index_.emplace(tokens_[i], static_cast<int>(i)).second)
            throw InvalidInput("duplicate token id: " + tokens_[i]);
    for (std::size_t i = 0; i < types_.size(); ++i)
        if (!type_index_.emplace(types_[i], static_cast<int>(i)).second)
            throw InvalidInput("duplicate type id: " + types_[i]);
}

Classification::Classification(std::vector<std::string> tokens,
                               std::vector<std::string> types,
                               const std::vector<std::pair<std::string, std::string>>& supports)
    : tokens_(std::move(tokens)), types_(std::move(types)) {
    build_indexes();
    support_.assign(tokens_.size() * types_.size(), false);
    for (const auto& [tok, typ] : supports) {
        auto t = token_index_.find(tok);
        if (t == token_index_.end()) throw InvalidInput("undeclared token in support: " + tok);
        auto y = type_index_.find(typ);
        if (y == type_index_.end()) throw InvalidInput("undeclared type in support: " + typ);
        support_[static_cast<std::size_t>(t->second) * types_.size() + y->second] = true;
    }
}

Classification::Classification(std::vector<std::string> tokens,
                               std::vector<std::string> types,
                               std::vector<bool> support_matrix)
    : tokens_(std::move(tokens)), types_(std::move(types)), support_(std::move(support_matrix)) {
    build_indexes();
    if (support_.size() != tokens_.size() * types_.size())
        throw InvalidInput("support matrix size mismatch");
}

int Classification::token_index(const std::string& name) const {
    auto it = token_index_.find(name);
    if (it == token_index_.end()) throw InvalidInput("undeclared token: " + name);
    return it->second;
}

int Classification::type_index(const std::string& name) const {
    auto it = type_index_.find(name);
    if (it == type_index_.end()) throw InvalidInput("undeclared type: " + name);
    return it->second;
}

Sequent::Sequent(std::vector<int> antecedents, std::vector<int> consequents)
    : lhs(sorted_unique(std::move(antecedents))), rhs(sorted_unique(std::move(consequents))) {
    if (lhs.empty() && rhs.empty())
        throw InvalidInput("constraint with empty antecedent and consequent");
}

bool token_satisfies(const Classification& host, int token, const Sequent& s) {
    for (int t : s.lhs)
        if (!host.supports(token, t)) return true;
    for (int t : s.rhs)
        if (host.supports(token, t)) return true;
    return false;
}

bool sequent_holds(const Classification& host, const std::vector<int>& normal,
                   const Sequent& s) {
    for (int tok : normal)
        if (!token_satisfies(host, tok, s)) return false;
    return true;
}

bool sequent_holds(const Classification& host, const std::vector<std::string>& normal,
                   const std::vector<std::string>& lhs, const std::vector<std::string>& rhs) {
    std::vector<int> n;
    n.reserve(normal.size());
    for (const auto& name : normal) n.push_back(host.token_index(name));
    std::vector<int> l, r;
    for (const auto& name : lhs) l.push_back(host.type_index(name));
    for (const auto& name : rhs) r.push_back(host.type_index(name));
    return sequent_holds(host, n, Sequent(std::move(l), std::move(r)));
}

LocalLogic::LocalLogic(ClassificationPtr host, std::set<Sequent> constraints,
                       std::vector<int> normal_tokens)
    : host_(std::move(host)), constraints_(std::move(constraints)),
      normal_(sorted_unique(std::move(normal_tokens))) {
    if (!host_) throw InvalidInput("local logic without host classification");
    int n_tokens = static_cast<int>(host_->token_count());
    int n_types = static_cast<int>(host_->type_count());
    for (int tok : normal_)
        if (tok < 0 || tok >= n_tokens)
            throw InvalidInput("normal token out of range");
    for (const Sequent& s : constraints_) {
        for (int t : s.lhs)
            if (t < 0 || t >= n_types) throw InvalidInput("constraint type out of range");
        for (int t : s.rhs)
            if (t < 0 || t >= n_types) throw InvalidInput("constraint type out of range");
        for (int tok : normal_)
            if (!token_satisfies(*host_, tok, s))
                throw InvalidInput("normal token " + host_->token_name(tok) +
                                   " violates a constraint");
    }
}

LocalLogic derive_local_logic(ClassificationPtr host, std::vector<int> normal_tokens,
                              int max_width) {
    if (!host) throw InvalidInput("derive_local_logic: null host");
    if (max_width < 1) throw InvalidInput("sequent width bound must be >= 1");
    const int n_types = static_cast<int>(host->type_count());
    normal_tokens = sorted_unique(std::move(normal_tokens));
    for (int tok : normal_tokens)
        if (tok < 0 || tok >= static_cast<int>(host->token_count()))
            throw InvalidInput("normal token out of range");

    // Rough cost guard: sides are chosen independently, so the sequent count
    // is sum over (a, b) of C(n, a) * C(n, b).
    double est = 0.0;
    for (int a = 0; a <= max_width; ++a) {
        for (int b = 0; a + b <= max_width; ++b) {
            if (a + b == 0) continue;
            double ca = 1.0, cb = 1.0;
            for (int i = 0; i < a; ++i) ca = ca * (n_types - i) / (i + 1);
            for (int i = 0; i < b; ++i) cb = cb * (n_types - i) / (i + 1);
            est += ca * cb;
        }
    }
    if (est * static_cast<double>(normal_tokens.size() + 1) > 5e7)
        throw BudgetExceeded("sequent enumeration too large; lower the width bound");

    std::set<Sequent> found;
    for (int a = 0; a <= max_width && a <= n_types; ++a) {
        for (int b = 0; a + b <= max_width && b <= n_types; ++b) {
            if (a + b == 0) continue;
            std::vector<int> left = first_combination(a);
            do {
                std::vector<int> right = first_combination(b);
                do {
                    Sequent s(left, right);
                    if (sequent_holds(*host, normal_tokens, s)) found.insert(std::move(s));
                } while (next_combination(right, n_types));
            } while (next_combination(left, n_types));
        }
    }
    return LocalLogic(std::move(host), std::move(found), std::move(normal_tokens));
}

LocalLogic meet_logics(const std::vector<LocalLogic>& logics) {
    if (logics.empty()) throw InvalidInput("meet of an empty logic list");
    const auto& first = logics.front();
    std::set<Sequent> constraints = first.constraints();
    std::vector<int> normal = first.normal_tokens();
    for (std::size_t i = 1; i < logics.size(); ++i) {
        if (!logics[i].host()->same_vocabulary(*first.host()))
            throw InvalidInput("meet over logics with mismatched hosts");
        std::set<Sequent> kept;
        for (const Sequent& s : constraints)
            if (logics[i].constraints().count(s)) kept.insert(s);
        constraints = std::move(kept);
        const auto& n = logics[i].normal_tokens();
        normal.insert(normal.end(), n.begin(), n.end());
    }
    return LocalLogic(first.host(), std::move(constraints), std::move(normal));
}

Infomorphism::Infomorphism(ClassificationPtr source, ClassificationPtr target,
                           std::vector<int> type_map, std::vector<int> token_map)
    : source_(std::move(source)), target_(std::move(target)),
      type_map_(std::move(type_map)), token_map_(std::move(token_map)) {
    if (!source_ || !target_) throw InvalidInput("infomorphism with null classification");
    if (type_map_.size() != source_->type_count())
        throw InvalidInput("type map must be total on source types");
    if (token_map_.size() != target_->token_count())
        throw InvalidInput("token map must be total on target tokens");
    for (int t : type_map_)
        if (t < 0 || t >= static_cast<int>(target_->type_count()))
            throw InvalidInput("type map hits an undeclared target type");
    for (int t : token_map_)
        if (t < 0 || t >= static_cast<int>(source_->token_count()))
            throw InvalidInput("token map hits an undeclared source token");
}

Infomorphism::Infomorphism(ClassificationPtr source, ClassificationPtr target,
                           const std::map<std::string, std::string>& type_map,
                           const std::map<std::string, std::string>& token_map)
    : source_(std::move(source)), target_(std::move(target)) {
    if (!source_ || !target_) throw InvalidInput("infomorphism with null classification");
    type_map_.assign(source_->type_count(), -1);
    for (const auto& [from, to] : type_map)
        type_map_[source_->type_index(from)] = target_->type_index(to);
    for (std::size_t i = 0; i < type_map_.size(); ++i)
        if (type_map_[i] < 0)
            throw InvalidInput("type map missing source type " + source_->type_name(static_cast<int>(i)));
    token_map_.assign(target_->token_count(), -1);
    for (const auto& [from, to] : token_map)
        token_map_[target_->token_index(from)] = source_->token_index(to);
    for (std::size_t i = 0; i < token_map_.size(); ++i)
        if (token_map_[i] < 0)
            throw InvalidInput("token map missing target token " + target_->token_name(static_cast<int>(i)));
}

InfomorphismReport check_infomorphism(const Infomorphism& f) {
    InfomorphismReport report;
    const auto& src = *f.source();
    const auto& tgt = *f.target();
    for (int b = 0; b < static_cast<int>(tgt.token_count()); ++b) {
        int a = f.map_token(b);
        for (int alpha = 0; alpha < static_cast<int>(src.type_count()); ++alpha) {
            if (src.supports(a, alpha) != tgt.supports(b, f.map_type(alpha))) {
                report.valid = false;
                report.violations.emplace_back(tgt.token_name(b), src.type_name(alpha));
            }
        }
    }
    return report;
}

LocalLogic pullback_logic(const Infomorphism& f, const LocalLogic& logic) {
    if (logic.host().get() != f.target().get() && !(*logic.host() == *f.target()))
        throw InvalidInput("pullback: logic is not hosted on the infomorphism target");
    if (!check_infomorphism(f).valid)
        throw InvalidInput("pullback along an invalid infomorphism");

    const auto& src = *f.source();
    // Preimage of each target type under the type map. Preimages of distinct
    // target types are disjoint, so sequents mapping onto a constraint are
    // exactly the unions of one non-empty preimage subset per constraint type.
    std::vector<std::vector<int>> preimage(f.target()->type_count());
    for (int t = 0; t < static_cast<int>(src.type_count()); ++t)
        preimage[f.map_type(t)].push_back(t);

    std::set<Sequent> pulled;
    std::size_t generated = 0;

    // Enumerates every union of non-empty subsets, one per preimage group.
    auto expand = [&](const std::vector<int>& image_types,
                      auto&& emit) -> bool {
        std::vector<std::vector<int>> groups;
        for (int t : image_types) {
            if (preimage[t].empty()) return false;
            if (preimage[t].size() > 20)
                throw BudgetExceeded("pullback preimage group too large");
            groups.push_back(preimage[t]);
        }
        std::vector<std::uint32_t> pick(groups.size(), 1); // non-empty subset masks
        for (;;) {
            std::vector<int> chosen;
            for (std::size_t g = 0; g < groups.size(); ++g)
                for (std::size_t i = 0; i < groups[g].size(); ++i)
                    if (pick[g] & (1u << i)) chosen.push_back(groups[g][i]);
            emit(std::move(chosen));
            if (++generated > 200000)
                throw BudgetExceeded("pullback generates too many source constraints");
            std::size_t g = 0;
            for (; g < groups.size(); ++g) {
                std::uint32_t full = (groups[g].size() >= 32)
                                         ? 0xffffffffu
                                         : ((1u << groups[g].size()) - 1);
                if (pick[g] < full) {
                    ++pick[g];
                    for (std::size_t j = 0; j < g; ++j) pick[j] = 1;
                    break;
                }
            }
            if (g == groups.size()) break;
        }
        return true;
    };

    for (const Sequent& c : logic.constraints()) {
        std::vector<std::vector<int>> left_candidates;
        bool feasible = expand(c.lhs, [&](std::vector<int> chosen) {
            left_candidates.push_back(std::move(chosen));
        });
        if (!feasible) continue;
        std::vector<std::vector<int>> right_candidates;
        feasible = expand(c.rhs, [&](std::vector<int> chosen) {
            right_candidates.push_back(std::move(chosen));
        });
        if (!feasible) continue;
        for (const auto& l : left_candidates)
            for (const auto& r : right_candidates)
                if (!(l.empty() && r.empty())) pulled.insert(Sequent(l, r));
    }

    std::vector<int> normal;
    normal.reserve(logic.normal_tokens().size());
    for (int b : logic.normal_tokens()) normal.push_back(f.map_token(b));
    return LocalLogic(f.source(), std::move(pulled), std::move(normal));
}

ChannelReport check_channel(const Channel& ch) {
    ChannelReport report;
    if (!ch.core) {
        report.valid = false;
        report.problems.push_back("channel without core");
        return report;
    }
    if (ch.legs.size() < 2) {
        report.valid = false;
        report.problems.push_back("channel needs at least two legs");
    }
    for (std::size_t i = 0; i < ch.legs.size(); ++i) {
        const auto& leg = ch.legs[i];
        if (!(leg.target().get() == ch.core.get() || *leg.target() == *ch.core)) {
            report.valid = false;
            report.problems.push_back("leg " + std::to_string(i) +
                                      " does not land in the channel core");
        }
        report.leg_reports.push_back(check_infomorphism(leg));
        if (!report.leg_reports.back().valid) {
            report.valid = false;
            report.problems.push_back("leg " + std::to_string(i) +
                                      " is not a valid infomorphism");
        }
    }
    return report;
}

PerspectiveReport check_perspective(const Perspective& p) {
    PerspectiveReport report;
    if (!p.classification) throw InvalidInput("perspective without classification");
    const auto& cls = *p.classification;
    const int n_types = static_cast<int>(cls.type_count());
    auto check_type = [&](int t) {
        if (t < 0 || t >= n_types) throw InvalidInput("perspective relation over undeclared type");
    };
    for (const auto& [a, b] : p.involves) { check_type(a); check_type(b); }
    for (const auto& [a, b] : p.precludes) { check_type(a); check_type(b); }

    auto some_token_supports = [&](int type) {
        for (int tok = 0; tok < static_cast<int>(cls.token_count()); ++tok)
            if (cls.supports(tok, type)) return true;
        return false;
    };

    bool facticity = true;
    for (const auto& [t, t2] : p.involves)
        if (some_token_supports(t) && !some_token_supports(t2)) facticity = false;

    bool xerox = true;
    for (const auto& [a, b] : p.involves)
        for (const auto& [c, d] : p.involves)
            if (b == c && !p.involves.count({a, d})) xerox = false;

    bool local_preclusion = true;
    for (const auto& [t, t2] : p.precludes)
        for (int tok = 0; tok < static_cast<int>(cls.token_count()); ++tok)
            if (cls.supports(tok, t) && cls.supports(tok, t2)) local_preclusion = false;

    bool mutual_preclusion = true;
    for (const auto& [t, t2] : p.precludes)
        if (!p.precludes.count({t2, t})) mutual_preclusion = false;

    if (!facticity) report.violated.push_back("facticity");
    if (!xerox) report.violated.push_back("xerox");
    if (!local_preclusion) report.violated.push_back("local preclusion");
    if (!mutual_preclusion) report.violated.push_back("mutual preclusion");
    report.valid = report.violated.empty();
    return report;
}

} // namespace infoflow
