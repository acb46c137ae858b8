#include "infoflow/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include "infoflow/classification.hpp"
#include "infoflow/defaults.hpp"
#include "infoflow/epistemic.hpp"
#include "infoflow/errors.hpp"
#include "infoflow/evidence.hpp"
#include "infoflow/fusion.hpp"
#include "infoflow/infon.hpp"
#include "infoflow/possibility.hpp"
#include "infoflow/probability.hpp"
#include "infoflow/retrieval.hpp"
#include "infoflow/rough.hpp"
#include "infoflow/vagueness.hpp"

namespace infoflow {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

double round12(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return std::strtod(buffer, nullptr);
}

const std::vector<TaskInfo>& task_registry() {
    static const std::vector<TaskInfo> registry = {
        {"bayes", "probability", "posterior over a partition from prior and likelihoods"},
        {"bn-joint", "probability", "joint probability of a full assignment in a Bayesian network"},
        {"entropy", "probability", "entropy of a discrete distribution in bits"},
        {"channel", "probability", "discrete channel output, entropies, and input posterior"},
        {"ds-combine", "evidence", "Dempster or Dubois-Prade combination with conflict weight"},
        {"ds-bounds", "evidence", "belief/plausibility intervals or multivalued-mapping bounds"},
        {"rough", "rough", "indiscernibility classes and lower/upper approximations"},
        {"possibility", "possibility", "fuzzy operators, discounting, conditioning, possibility"},
        {"fuse", "possibility", "multi-source possibility fusion (min, product, max)"},
        {"audit", "fusion_audit", "postulate audit of a fusion operator over an input family"},
        {"kripke-check", "epistemic", "model checking with knowledge, common knowledge, probability"},
        {"kripke-update", "epistemic", "probabilistic product update of a Kripke model"},
        {"prob-validity", "epistemic", "probabilistic vs classical validity of an argument"},
        {"defaults", "defaults", "default-rule extensions with fixpoint verification"},
        {"mcs", "defaults", "maximal consistent subsets with skeptical/credulous queries"},
        {"cwa", "defaults", "closed-world closure of a consistent base"},
        {"sorites", "vagueness", "chain-argument derivability in the intensional logic"},
        {"ir", "retrieval", "constraint-based relevance ranking of documents"},
        {"infomorphism-check", "core_model", "infomorphism/channel validation, classification tools"},
    };
    return registry;
}

namespace {

[[noreturn]] void bad(const std::string& message) { throw InvalidInput(message); }

const json& need(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        bad(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::vector<std::string> string_list(const json& j, const char* what) {
    if (!j.is_array()) bad(std::string(what) + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& item : j) {
        if (!item.is_string()) bad(std::string(what) + " must contain strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

std::vector<double> number_list(const json& j, const char* what) {
    if (!j.is_array()) bad(std::string(what) + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& item : j) {
        if (!item.is_number()) bad(std::string(what) + " must contain numbers");
        out.push_back(item.get<double>());
    }
    return out;
}

DiscreteDistribution to_distribution(const json& j) {
    return DiscreteDistribution(string_list(need(j, "outcomes"), "outcomes"),
                                number_list(need(j, "probs"), "probs"));
}

ojson from_distribution(const DiscreteDistribution& d) {
    ojson out;
    out["outcomes"] = d.outcomes();
    ojson probs = ojson::array();
    for (double p : d.probs()) probs.push_back(round12(p));
    out["probs"] = std::move(probs);
    return out;
}

MassFunction to_mass(const Frame& frame, const json& j) {
    if (!j.is_array()) bad("mass function must be an array of {set, mass} entries");
    std::map<std::uint32_t, double> focal;
    for (const auto& entry : j) {
        auto mask = frame.subset_mask(string_list(need(entry, "set"), "focal set"));
        focal[mask] += need(entry, "mass").get<double>();
    }
    return MassFunction(frame, std::move(focal));
}

ojson from_mass(const MassFunction& m) {
    ojson out = ojson::array();
    for (const auto& [mask, mass] : m.focal()) {
        auto names = m.frame().subset_names(mask);
        std::sort(names.begin(), names.end());
        ojson entry;
        entry["set"] = names;
        entry["mass"] = round12(mass);
        out.push_back(std::move(entry));
    }
    return out;
}

std::string to_infon_string(const json& j) {
    if (j.is_string()) return parse_infon(j.get<std::string>()).canonical();
    Infon infon;
    infon.relation = need(j, "rel").get<std::string>();
    infon.args = string_list(need(j, "args"), "infon args");
    if (j.contains("loc")) infon.location = j.at("loc").get<std::string>();
    if (j.contains("time")) infon.time = j.at("time").get<std::string>();
    if (j.contains("pol")) infon.polarity = j.at("pol").get<int>();
    return infon.canonical();
}

std::uint64_t required_seed(const json& scenario, const RunOptions& options,
                            const char* why) {
    if (options.seed) return *options.seed;
    if (scenario.contains("seed")) return scenario.at("seed").get<std::uint64_t>();
    bad(std::string("a seed is required for ") + why +
        " (scenario \"seed\" field or --seed flag)");
}

std::uint64_t optional_seed(const json& scenario, const RunOptions& options) {
    if (options.seed) return *options.seed;
    if (scenario.contains("seed")) return scenario.at("seed").get<std::uint64_t>();
    return 0;
}

// --- task handlers ---

ojson run_bayes(const json& s, const RunOptions&) {
    auto prior = to_distribution(need(s, "prior"));
    auto likelihoods = number_list(need(s, "likelihoods"), "likelihoods");
    ojson out;
    out["posterior"] = from_distribution(bayes_posterior(prior, likelihoods));
    return out;
}

ojson run_bn_joint(const json& s, const RunOptions&) {
    std::vector<BayesNode> nodes;
    std::vector<std::string> order;
    for (const auto& nj : need(s, "nodes")) {
        BayesNode node;
        node.name = need(nj, "name").get<std::string>();
        node.values = nj.contains("values")
                          ? string_list(nj.at("values"), "values")
                          : std::vector<std::string>{"0", "1"};
        if (nj.contains("parents")) {
            for (const auto& p : string_list(nj.at("parents"), "parents")) {
                auto it = std::find(order.begin(), order.end(), p);
                if (it == order.end()) bad("parent " + p + " must precede node " + node.name);
                node.parents.push_back(static_cast<int>(it - order.begin()));
            }
        }
        for (const auto& row : need(nj, "cpt"))
            node.cpt.push_back(number_list(row, "cpt row"));
        order.push_back(node.name);
        nodes.push_back(std::move(node));
    }
    BayesNet net(std::move(nodes));
    std::map<std::string, std::string> assignment;
    for (const auto& [k, v] : need(s, "assignment").items())
        assignment[k] = v.get<std::string>();
    ojson out;
    out["joint"] = round12(net.joint(assignment));
    return out;
}

ojson run_entropy(const json& s, const RunOptions&) {
    ojson out;
    out["bits"] = round12(entropy_bits(to_distribution(need(s, "distribution"))));
    return out;
}

ojson run_channel(const json& s, const RunOptions&) {
    DiscreteChannel channel(string_list(need(s, "inputs"), "inputs"),
                            string_list(need(s, "outputs"), "outputs"),
                            [&] {
                                std::vector<std::vector<double>> m;
                                for (const auto& row : need(s, "matrix"))
                                    m.push_back(number_list(row, "matrix row"));
                                return m;
                            }());
    auto input = to_distribution(need(s, "input"));
    auto output = channel_output(channel, input);
    ojson out;
    out["output"] = from_distribution(output);
    out["input_entropy_bits"] = round12(entropy_bits(input));
    out["output_entropy_bits"] = round12(entropy_bits(output));
    if (s.contains("observe")) {
        out["observed"] = s.at("observe").get<std::string>();
        out["posterior"] = from_distribution(
            channel_posterior(channel, input, s.at("observe").get<std::string>()));
    }
    return out;
}

ojson run_ds_combine(const json& s, const RunOptions&) {
    Frame frame(string_list(need(s, "frame"), "frame"));
    auto m1 = to_mass(frame, need(s, "m1"));
    auto m2 = to_mass(frame, need(s, "m2"));
    std::string rule = s.contains("rule") ? s.at("rule").get<std::string>() : "dempster";
    auto conflict = conflict_weight(m1, m2);
    ojson out;
    ojson cj;
    cj["e"] = round12(conflict.conflict_mass);
    cj["weight"] = conflict.total_conflict ? ojson("infinity")
                                           : ojson(round12(conflict.weight));
    cj["total_conflict"] = conflict.total_conflict;
    out["conflict"] = std::move(cj);
    if (rule == "dempster") {
        out["combined"] = from_mass(dempster_combine(m1, m2));
    } else if (rule == "dubois-prade") {
        out["combined"] = from_mass(dubois_prade_combine(m1, m2));
    } else {
        bad("unknown combination rule: " + rule);
    }
    return out;
}

ojson run_ds_bounds(const json& s, const RunOptions&) {
    Frame frame(string_list(need(s, "frame"), "frame"));
    std::vector<std::uint32_t> subsets;
    if (s.contains("subsets")) {
        for (const auto& sub : s.at("subsets"))
            subsets.push_back(frame.subset_mask(string_list(sub, "subset")));
    } else {
        for (std::uint32_t m = 0; m <= frame.full_mask(); ++m) subsets.push_back(m);
    }
    ojson rows = ojson::array();
    if (s.contains("mass")) {
        auto mass = to_mass(frame, s.at("mass"));
        for (auto mask : subsets) {
            auto interval = belief_plausibility(mass, mask);
            ojson row;
            auto names = frame.subset_names(mask);
            std::sort(names.begin(), names.end());
            row["subset"] = names;
            row["belief"] = round12(interval.belief);
            row["plausibility"] = round12(interval.plausibility);
            row["ignorance"] = round12(interval.ignorance);
            rows.push_back(std::move(row));
        }
    } else if (s.contains("mapping")) {
        const auto& mj = s.at("mapping");
        auto space = string_list(need(mj, "space"), "mapping space");
        auto probs = number_list(need(mj, "probs"), "mapping probs");
        DiscreteDistribution source(space, probs);
        std::vector<std::uint32_t> images;
        const auto& imj = need(mj, "images");
        for (const auto& theta : space)
            images.push_back(frame.subset_mask(string_list(need(imj, theta.c_str()),
                                                           "image")));
        MultivaluedMapping mapping(std::move(source), frame, std::move(images));
        for (auto mask : subsets) {
            auto bounds = bounds_from_mapping(mapping, mask);
            ojson row;
            auto names = frame.subset_names(mask);
            std::sort(names.begin(), names.end());
            row["subset"] = names;
            row["lower"] = round12(bounds.lower);
            row["upper"] = round12(bounds.upper);
            rows.push_back(std::move(row));
        }
    } else {
        bad("ds-bounds needs either \"mass\" or \"mapping\"");
    }
    ojson out;
    out["bounds"] = std::move(rows);
    return out;
}

InformationSystem load_information_system(const json& s, const RunOptions& options) {
    if (s.contains("csv")) {
        std::string path = s.at("csv").get<std::string>();
        if (!path.empty() && path[0] != '/') path = options.base_dir + "/" + path;
        std::ifstream in(path);
        if (!in) bad("cannot open csv file: " + path);
        auto split = [](const std::string& line) {
            std::vector<std::string> cells;
            std::string cell;
            std::istringstream ss(line);
            while (std::getline(ss, cell, ',')) {
                std::size_t a = cell.find_first_not_of(" \t\r");
                std::size_t b = cell.find_last_not_of(" \t\r");
                cells.push_back(a == std::string::npos ? "" : cell.substr(a, b - a + 1));
            }
            return cells;
        };
        std::string line;
        if (!std::getline(in, line)) bad("empty csv file: " + path);
        auto header = split(line);
        if (header.size() < 2) bad("csv needs an id column plus attributes");
        std::vector<std::string> attributes(header.begin() + 1, header.end());
        std::vector<std::string> objects;
        std::vector<std::vector<std::string>> values;
        while (std::getline(in, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            auto cells = split(line);
            if (cells.size() != header.size()) bad("csv row width mismatch");
            objects.push_back(cells[0]);
            values.emplace_back(cells.begin() + 1, cells.end());
        }
        return InformationSystem(std::move(objects), std::move(attributes), std::move(values));
    }
    const auto& tj = need(s, "table");
    std::vector<std::vector<std::string>> values;
    for (const auto& row : need(tj, "rows")) values.push_back(string_list(row, "table row"));
    return InformationSystem(string_list(need(tj, "objects"), "objects"),
                             string_list(need(tj, "attributes"), "attributes"),
                             std::move(values));
}

ojson run_rough(const json& s, const RunOptions& options) {
    InformationSystem system = load_information_system(s, options);
    std::vector<int> attributes;
    for (const auto& name : string_list(need(s, "attributes"), "attributes"))
        attributes.push_back(system.attribute_index(name));
    std::vector<int> target;
    for (const auto& name : string_list(need(s, "target"), "target"))
        target.push_back(system.object_index(name));

    auto names_of = [&](const std::vector<int>& objs) {
        std::vector<std::string> names;
        for (int o : objs) names.push_back(system.objects()[o]);
        return names;
    };
    ojson out;
    ojson classes = ojson::array();
    for (const auto& cls : indiscernibility_classes(system, attributes))
        classes.push_back(names_of(cls));
    out["classes"] = std::move(classes);
    auto approx = approximate(system, attributes, target);
    out["lower"] = names_of(approx.lower);
    out["upper"] = names_of(approx.upper);
    out["boundary"] = names_of(approx.boundary);
    out["crisp"] = approx.boundary.empty();
    return out;
}

ojson run_possibility(const json& s, const RunOptions&) {
    std::string action = need(s, "action").get<std::string>();
    ojson out;
    if (action == "fuzzy") {
        auto domain = string_list(need(s, "domain"), "domain");
        FuzzySet a(domain, number_list(need(s, "a"), "a"));
        std::string op = need(s, "op").get<std::string>();
        if (op == "complement") {
            FuzzySet complement = fuzzy_complement(a);
            ojson r = ojson::array();
            for (double v : complement.membership()) r.push_back(round12(v));
            out["result"] = std::move(r);
            return out;
        }
        FuzzySet b(domain, number_list(need(s, "b"), "b"));
        FuzzyOp fop;
        if (op == "min-intersection") fop = FuzzyOp::MinIntersection;
        else if (op == "max-union") fop = FuzzyOp::MaxUnion;
        else bad("unknown fuzzy op: " + op);
        FuzzySet combined = fuzzy_combine(a, b, fop);
        ojson r = ojson::array();
        for (double v : combined.membership()) r.push_back(round12(v));
        out["result"] = std::move(r);
        return out;
    }

    auto universe = string_list(need(s, "universe"), "universe");
    PossibilityDistribution pi(universe, number_list(need(s, "pi"), "pi"));
    auto subset_indexes = [&](const json& j) {
        std::vector<int> idx;
        for (const auto& name : string_list(j, "subset")) {
            bool found = false;
            for (std::size_t i = 0; i < universe.size(); ++i)
                if (universe[i] == name) {
                    idx.push_back(static_cast<int>(i));
                    found = true;
                }
            if (!found) bad("subset element outside the universe: " + name);
        }
        return idx;
    };
    if (action == "discount") {
        auto result = discount(pi, need(s, "lambda").get<double>());
        ojson r = ojson::array();
        for (double v : result.values()) r.push_back(round12(v));
        out["result"] = std::move(r);
        out["normalized"] = result.normalized();
    } else if (action == "condition") {
        auto result = condition(pi, subset_indexes(need(s, "subset")));
        ojson r = ojson::array();
        for (double v : result.values()) r.push_back(round12(v));
        out["result"] = std::move(r);
        out["normalized"] = result.normalized();
    } else if (action == "possibility-of") {
        out["possibility"] = round12(possibility_of(pi, subset_indexes(need(s, "subset"))));
    } else {
        bad("unknown possibility action: " + action);
    }
    return out;
}

ojson run_fuse(const json& s, const RunOptions&) {
    auto universe = string_list(need(s, "universe"), "universe");
    std::vector<PossibilityDistribution> sources;
    for (const auto& src : need(s, "sources"))
        sources.emplace_back(universe, number_list(src, "source"));
    std::string mode_name = need(s, "mode").get<std::string>();
    FusionMode mode;
    if (mode_name == "and-min") mode = FusionMode::AndMin;
    else if (mode_name == "and-product") mode = FusionMode::AndProduct;
    else if (mode_name == "or-max") mode = FusionMode::OrMax;
    else bad("unknown fusion mode: " + mode_name);
    auto fused = fuse(sources, mode);
    ojson out;
    ojson r = ojson::array();
    for (double v : fused.values()) r.push_back(round12(v));
    out["fused"] = std::move(r);
    out["normalized"] = fused.normalized();
    return out;
}

InformationItem to_item(const std::vector<std::string>& worlds, const json& j) {
    std::uint32_t support = 0, core = 0;
    auto mask_of = [&](const json& names) {
        std::uint32_t mask = 0;
        for (const auto& name : string_list(names, "world list")) {
            bool found = false;
            for (std::size_t w = 0; w < worlds.size(); ++w)
                if (worlds[w] == name) {
                    mask |= (1u << w);
                    found = true;
                }
            if (!found) bad("unknown world: " + name);
        }
        return mask;
    };
    support = mask_of(need(j, "support"));
    core = mask_of(need(j, "core"));
    std::vector<int> ranks(worlds.size(), 0);
    if (j.contains("ranks")) {
        for (std::size_t w = 0; w < worlds.size(); ++w)
            if (j.at("ranks").contains(worlds[w]))
                ranks[w] = j.at("ranks").at(worlds[w]).get<int>();
    }
    // Off-support worlds get a rank above every supplied one.
    int top = 0;
    for (int r : ranks) top = std::max(top, r);
    for (std::size_t w = 0; w < worlds.size(); ++w)
        if (!(support & (1u << w))) ranks[w] = top + 1;
    return InformationItem(worlds, support, core, std::move(ranks));
}

ojson from_item(const InformationItem& item) {
    ojson out;
    std::vector<std::string> support, core;
    for (std::size_t w = 0; w < item.worlds().size(); ++w) {
        if (item.support() & (1u << w)) support.push_back(item.worlds()[w]);
        if (item.core() & (1u << w)) core.push_back(item.worlds()[w]);
    }
    out["support"] = support;
    out["core"] = core;
    ojson ranks;
    for (std::size_t w = 0; w < item.worlds().size(); ++w)
        if (item.support() & (1u << w)) ranks[item.worlds()[w]] = item.ranks()[w];
    out["ranks"] = std::move(ranks);
    return out;
}

ojson run_audit(const json& s, const RunOptions& options) {
    std::string op_name = need(s, "operator").get<std::string>();
    const auto& pool_spec = need(s, "pool");
    std::string kind = need(pool_spec, "kind").get<std::string>();

    std::unique_ptr<FusionAdapter> adapter;
    if (kind == "mass-grid" || kind == "random-mass") {
        Frame frame(string_list(need(pool_spec, "frame"), "frame"));
        std::vector<MassFunction> pool;
        if (kind == "mass-grid") {
            pool = mass_grid_pool(frame, need(pool_spec, "step").get<double>());
        } else {
            auto seed = required_seed(s, options, "random mass pools");
            pool = random_mass_pool(frame, need(pool_spec, "count").get<std::size_t>(), seed);
        }
        MassRule rule;
        if (op_name == "dempster") rule = MassRule::Dempster;
        else if (op_name == "dubois-prade") rule = MassRule::DuboisPrade;
        else bad("operator " + op_name + " does not apply to mass pools");
        adapter = std::make_unique<MassRuleAdapter>(rule, std::move(pool));
    } else if (kind == "possibility-grid" || kind == "possibility-list") {
        auto universe = string_list(need(pool_spec, "universe"), "universe");
        std::vector<PossibilityDistribution> pool;
        if (kind == "possibility-grid") {
            pool = possibility_grid_pool(universe, need(pool_spec, "step").get<double>());
        } else {
            for (const auto& src : need(pool_spec, "items"))
                pool.emplace_back(universe, number_list(src, "pool item"));
        }
        FusionMode mode;
        if (op_name == "and-min") mode = FusionMode::AndMin;
        else if (op_name == "and-product") mode = FusionMode::AndProduct;
        else if (op_name == "or-max") mode = FusionMode::OrMax;
        else bad("operator " + op_name + " does not apply to possibility pools");
        adapter = std::make_unique<PossibilityRuleAdapter>(mode, std::move(pool));
    } else if (kind == "items") {
        auto worlds = string_list(need(pool_spec, "worlds"), "worlds");
        std::vector<InformationItem> pool;
        for (const auto& item : need(pool_spec, "items")) pool.push_back(to_item(worlds, item));
        std::size_t vacuous = need(pool_spec, "vacuous").get<std::size_t>();
        std::map<std::vector<std::size_t>, InformationItem> table;
        for (const auto& row : need(pool_spec, "table")) {
            std::vector<std::size_t> inputs;
            for (const auto& i : need(row, "inputs")) inputs.push_back(i.get<std::size_t>());
            table.emplace(std::move(inputs), to_item(worlds, need(row, "output")));
        }
        adapter = std::make_unique<TableAdapter>(op_name, std::move(pool), vacuous,
                                                 std::move(table));
    } else {
        bad("unknown pool kind: " + kind);
    }

    AuditOptions audit_options;
    if (s.contains("max_arity")) audit_options.max_arity = s.at("max_arity").get<int>();
    AuditReport report = audit(*adapter, audit_options);

    ojson out;
    out["operator"] = report.operator_name;
    out["pool"] = report.pool_description;
    out["binary_only"] = report.binary_only;
    out["arities"] = report.arities;
    out["cases_checked"] = report.cases_checked;
    out["conventions"] = report.conventions;
    ojson postulates = ojson::array();
    for (const auto& p : report.postulates) {
        ojson pj;
        pj["name"] = p.name;
        pj["pass"] = p.pass;
        pj["failures"] = p.failures;
        if (!p.pass) pj["counterexample"] = p.detail;
        postulates.push_back(std::move(pj));
    }
    out["postulates"] = std::move(postulates);
    out["all_pass"] = report.all_pass;
    return out;
}

KripkeModel to_kripke(const json& s) {
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> relations;
    if (s.contains("relations")) {
        for (const auto& [agent, pairs] : s.at("relations").items()) {
            for (const auto& pair : pairs) {
                if (!pair.is_array() || pair.size() != 2) bad("relation pairs must be [from,to]");
                relations[agent].emplace_back(pair[0].get<std::string>(),
                                              pair[1].get<std::string>());
            }
        }
    }
    std::map<std::string, std::vector<std::string>> valuation;
    for (const auto& [atom, worlds] : need(s, "valuation").items())
        valuation[atom] = string_list(worlds, "valuation worlds");
    return KripkeModel(string_list(need(s, "worlds"), "worlds"),
                       string_list(need(s, "agents"), "agents"), std::move(relations),
                       std::move(valuation), need(s, "designated").get<std::string>(),
                       s.contains("s5") && s.at("s5").get<bool>());
}

std::map<std::string, std::map<std::string, std::map<std::string, double>>> to_mu(const json& j) {
    std::map<std::string, std::map<std::string, std::map<std::string, double>>> mu;
    for (const auto& [agent, per_world] : j.items())
        for (const auto& [world, dist] : per_world.items())
            for (const auto& [target, p] : dist.items())
                mu[agent][world][target] = p.get<double>();
    return mu;
}

ojson run_kripke_check(const json& s, const RunOptions&) {
    KripkeModel model = to_kripke(s);
    Formula formula = parse_formula(need(s, "formula").get<std::string>());
    ojson out;
    out["formula"] = formula.to_string();
    out["world"] = model.worlds()[model.designated()];
    if (s.contains("mu")) {
        ProbabilisticKripkeModel pmodel(model, to_mu(s.at("mu")));
        out["holds"] = prob_model_check(pmodel, model.designated(), formula);
    } else {
        out["holds"] = model_check(model, model.designated(), formula);
    }
    return out;
}

ojson serialize_prob_model(const ProbabilisticKripkeModel& m) {
    const auto& base = m.base();
    ojson out;
    out["worlds"] = base.worlds();
    out["designated"] = base.worlds()[base.designated()];
    ojson relations;
    for (std::size_t a = 0; a < base.agents().size(); ++a) {
        ojson pairs = ojson::array();
        for (std::size_t w = 0; w < base.worlds().size(); ++w)
            for (std::size_t v = 0; v < base.worlds().size(); ++v)
                if (base.related(static_cast<int>(a), static_cast<int>(w), static_cast<int>(v)))
                    pairs.push_back(ojson::array({base.worlds()[w], base.worlds()[v]}));
        relations[base.agents()[a]] = std::move(pairs);
    }
    out["relations"] = std::move(relations);
    ojson valuation;
    for (const auto& [atom, flags] : base.valuation()) {
        ojson where = ojson::array();
        for (std::size_t w = 0; w < flags.size(); ++w)
            if (flags[w]) where.push_back(base.worlds()[w]);
        valuation[atom] = std::move(where);
    }
    out["valuation"] = std::move(valuation);
    ojson mu;
    for (std::size_t a = 0; a < base.agents().size(); ++a) {
        ojson per_world;
        for (std::size_t w = 0; w < base.worlds().size(); ++w) {
            const auto& dist = m.mu(static_cast<int>(a), static_cast<int>(w));
            if (!dist) continue;
            ojson dj;
            for (const auto& [target, p] : *dist) dj[base.worlds()[target]] = round12(p);
            per_world[base.worlds()[w]] = std::move(dj);
        }
        mu[base.agents()[a]] = std::move(per_world);
    }
    out["mu"] = std::move(mu);
    return out;
}

ojson run_kripke_update(const json& s, const RunOptions&) {
    KripkeModel base = to_kripke(s);
    ProbabilisticKripkeModel model(base, to_mu(need(s, "mu")));
    const auto& uj = need(s, "update");
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> relations;
    if (uj.contains("relations")) {
        for (const auto& [agent, pairs] : uj.at("relations").items())
            for (const auto& pair : pairs)
                relations[agent].emplace_back(pair[0].get<std::string>(),
                                              pair[1].get<std::string>());
    }
    std::vector<std::pair<Formula, std::map<std::string, double>>> preconditions;
    for (const auto& pj : need(uj, "preconditions")) {
        std::map<std::string, double> pre;
        for (const auto& [event, p] : need(pj, "pre").items()) pre[event] = p.get<double>();
        preconditions.emplace_back(parse_formula(need(pj, "formula").get<std::string>()),
                                   std::move(pre));
    }
    UpdateModel update(string_list(need(uj, "events"), "events"), base.agents(),
                       std::move(relations), std::move(preconditions),
                       to_mu(need(uj, "mu")), need(uj, "designated").get<std::string>());
    ProbabilisticKripkeModel updated = product_update(model, update);
    ojson out;
    out["model"] = serialize_prob_model(updated);
    if (s.contains("formula")) {
        Formula formula = parse_formula(s.at("formula").get<std::string>());
        out["formula"] = formula.to_string();
        out["holds"] = prob_model_check(updated, updated.base().designated(), formula);
    }
    return out;
}

ojson run_prob_validity(const json& s, const RunOptions& options) {
    auto atoms = string_list(need(s, "atoms"), "atoms");
    std::vector<Formula> premises;
    for (const auto& p : need(s, "premises"))
        premises.push_back(parse_formula(p.get<std::string>()));
    Formula conclusion = parse_formula(need(s, "conclusion").get<std::string>());
    std::size_t samples = need(s, "samples").get<std::size_t>();
    auto seed = required_seed(s, options, "probabilistic validity sampling");
    auto report = probabilistic_validity(premises, conclusion, atoms, samples, seed);
    ojson out;
    out["classically_valid"] = report.classically_valid;
    out["sampled_valid"] = report.sampled_valid;
    out["verdicts_agree"] = report.verdicts_agree();
    out["samples"] = report.samples_run;
    if (report.counterexample) {
        ojson ce;
        ojson dist;
        AtomSpace space(atoms);
        for (const auto& [valuation, p] : *report.counterexample) {
            std::string name;
            for (std::size_t i = 0; i < atoms.size(); ++i) {
                if (i) name += ',';
                name += ((valuation >> i) & 1u) ? atoms[i] : "!" + atoms[i];
            }
            dist[name] = round12(p);
        }
        ce["distribution"] = std::move(dist);
        ce["conclusion_probability"] = round12(report.counterexample_phi_probability);
        out["counterexample"] = std::move(ce);
    }
    return out;
}

std::vector<Formula> parse_formula_list(const json& j, const char* what) {
    if (!j.is_array()) bad(std::string(what) + " must be an array");
    std::vector<Formula> out;
    for (const auto& f : j) out.push_back(parse_formula(f.get<std::string>()));
    return out;
}

ojson formula_names(const std::vector<Formula>& formulas) {
    ojson out = ojson::array();
    for (const auto& f : formulas) out.push_back(f.to_string());
    return out;
}

ojson run_defaults(const json& s, const RunOptions&) {
    auto atoms = string_list(need(s, "atoms"), "atoms");
    PropKB facts(atoms, parse_formula_list(need(s, "facts"), "facts"));
    std::vector<DefaultRule> rules;
    for (const auto& rj : need(s, "rules")) {
        DefaultRule rule;
        if (rj.contains("prerequisites"))
            rule.prerequisites = parse_formula_list(rj.at("prerequisites"), "prerequisites");
        if (rj.contains("blockers"))
            rule.blockers = parse_formula_list(rj.at("blockers"), "blockers");
        rule.conclusion = parse_formula(need(rj, "conclusion").get<std::string>());
        rules.push_back(std::move(rule));
    }
    auto extensions = default_extensions(facts, rules);
    ojson out;
    ojson ext_list = ojson::array();
    for (const auto& ext : extensions) {
        ojson ej;
        ej["applied_rules"] = ext.applied_rules;
        ej["generators"] = formula_names(ext.generators);
        ej["verified"] = verify_extension(facts, rules, ext.applied_rules);
        ext_list.push_back(std::move(ej));
    }
    out["extensions"] = std::move(ext_list);
    if (s.contains("probes")) {
        ojson probes = ojson::array();
        for (const auto& probe : parse_formula_list(s.at("probes"), "probes")) {
            bool in_all = !extensions.empty();
            bool in_some = false;
            for (const auto& ext : extensions) {
                PropKB theory(atoms, ext.generators);
                bool held = entails(theory, probe);
                in_all = in_all && held;
                in_some = in_some || held;
            }
            ojson pj;
            pj["formula"] = probe.to_string();
            pj["skeptical"] = in_all;
            pj["credulous"] = in_some;
            probes.push_back(std::move(pj));
        }
        out["probes"] = std::move(probes);
    }
    return out;
}

ojson run_mcs(const json& s, const RunOptions&) {
    auto atoms = string_list(need(s, "atoms"), "atoms");
    PropKB kb(atoms, parse_formula_list(need(s, "formulas"), "formulas"));
    auto subsets = maximal_consistent_subsets(kb);
    ojson out;
    ojson subset_list = ojson::array();
    for (const auto& subset : subsets) {
        ojson sj;
        sj["indexes"] = subset;
        sj["formulas"] = formula_names(subset_kb(kb, subset).formulas());
        subset_list.push_back(std::move(sj));
    }
    out["subsets"] = std::move(subset_list);
    if (s.contains("probes")) {
        ojson probes = ojson::array();
        for (const auto& probe : parse_formula_list(s.at("probes"), "probes")) {
            ojson pj;
            pj["formula"] = probe.to_string();
            pj["skeptical"] = skeptical_entails(kb, probe);
            pj["credulous"] = credulous_entails(kb, probe);
            probes.push_back(std::move(pj));
        }
        out["probes"] = std::move(probes);
    }
    return out;
}

ojson run_cwa(const json& s, const RunOptions&) {
    auto atoms = string_list(need(s, "atoms"), "atoms");
    PropKB kb(atoms, parse_formula_list(need(s, "formulas"), "formulas"));
    auto result = closed_world(kb);
    ojson out;
    out["closure"] = formula_names(result.closure);
    out["negated"] = result.negated;
    return out;
}

HeightScenario to_height_scenario(const json& s) {
    HeightScenario sc;
    for (const auto& oj : need(s, "objects")) {
        sc.objects.push_back(need(oj, "name").get<std::string>());
        sc.heights.push_back(need(oj, "height").get<double>());
    }
    sc.num_variables = need(s, "variables").get<int>();
    if (s.contains("predicates")) sc.predicates = string_list(s.at("predicates"), "predicates");
    sc.validate();
    return sc;
}

std::vector<Regimentation> to_family(const json& j) {
    std::vector<Regimentation> family;
    for (const auto& rj : j) {
        Regimentation r;
        r.epsilon = need(rj, "epsilon").get<double>();
        for (const auto& ij : need(rj, "intervals")) {
            Interval iv;
            if (ij.contains("lo")) iv.lo = ij.at("lo").get<double>();
            if (ij.contains("hi")) iv.hi = ij.at("hi").get<double>();
            r.intervals.push_back(iv);
        }
        r.validate();
        family.push_back(std::move(r));
    }
    return family;
}

ojson from_regimentation(const Regimentation& r) {
    ojson out;
    out["epsilon"] = round12(r.epsilon);
    ojson intervals = ojson::array();
    for (const auto& iv : r.intervals) {
        ojson ij;
        if (std::isfinite(iv.lo)) ij["lo"] = round12(iv.lo);
        if (std::isfinite(iv.hi)) ij["hi"] = round12(iv.hi);
        intervals.push_back(std::move(ij));
    }
    out["intervals"] = std::move(intervals);
    return out;
}

ojson run_sorites(const json& s, const RunOptions&) {
    HeightScenario sc = to_height_scenario(s);
    auto family = to_family(need(s, "family"));
    int chain = need(s, "chain").get<int>();
    double grid = s.contains("grid_step") ? s.at("grid_step").get<double>() : 0.5;
    auto result = sorites_check(sc, family, chain, grid);
    ojson out;
    out["derivable"] = result.derivable;
    out["chain_length"] = result.chain_length;
    if (!result.derivable) {
        ojson witness;
        witness["objects"] = result.witness_objects;
        ojson heights = ojson::array();
        for (double h : result.witness_heights) heights.push_back(round12(h));
        witness["heights"] = std::move(heights);
        witness["regimentation"] = from_regimentation(*result.witness_regimentation);
        out["witness"] = std::move(witness);
    }
    if (s.contains("scan_max")) {
        // Empirical threshold: the first chain length that stops deriving.
        int scan_max = s.at("scan_max").get<int>();
        int threshold = -1;
        for (int n = 2; n <= scan_max; ++n) {
            if (!sorites_check(sc, family, n, grid).derivable) {
                threshold = n;
                break;
            }
        }
        out["first_non_derivable_chain"] = threshold;
    }
    return out;
}

ojson run_ir(const json& s, const RunOptions&) {
    ConstraintGraph graph(string_list(need(s, "types"), "types"));
    if (s.contains("edges")) {
        for (const auto& ej : s.at("edges")) {
            std::string kind = need(ej, "kind").get<std::string>();
            if (kind == "unconditional") {
                graph.add_unconditional(need(ej, "from").get<std::string>(),
                                        need(ej, "to").get<std::string>());
            } else if (kind == "conditional") {
                graph.add_conditional(need(ej, "from").get<std::string>(),
                                      need(ej, "to").get<std::string>(),
                                      need(ej, "strength").get<double>(),
                                      ej.contains("condition")
                                          ? ej.at("condition").get<std::string>()
                                          : "");
            } else {
                bad("unknown edge kind: " + kind);
            }
        }
    }
    std::vector<Document> documents;
    for (const auto& dj : need(s, "documents")) {
        Document d;
        d.id = need(dj, "id").get<std::string>();
        d.type = need(dj, "type").get<std::string>();
        for (const auto& ij : need(dj, "infons")) d.infons.insert(to_infon_string(ij));
        documents.push_back(std::move(d));
    }
    std::vector<Query> queries;
    for (const auto& qj : need(s, "queries")) {
        Query q;
        q.id = need(qj, "id").get<std::string>();
        for (const auto& ij : need(qj, "infons")) q.infons.insert(to_infon_string(ij));
        queries.push_back(std::move(q));
    }
    Corpus corpus(graph, std::move(documents), std::move(queries));
    ojson out;
    ojson rankings = ojson::array();
    for (const auto& q : corpus.queries()) {
        ojson rj;
        rj["query"] = q.id;
        ojson ranked = ojson::array();
        for (const auto& r : rank(graph, corpus, q.id)) {
            ojson doc;
            doc["id"] = r.id;
            doc["score"] = round12(r.score);
            ranked.push_back(std::move(doc));
        }
        rj["ranked"] = std::move(ranked);
        rankings.push_back(std::move(rj));
    }
    out["rankings"] = std::move(rankings);
    return out;
}

ClassificationPtr to_classification(const json& j) {
    std::vector<std::pair<std::string, std::string>> supports;
    if (j.contains("support")) {
        for (const auto& pair : j.at("support")) {
            if (!pair.is_array() || pair.size() != 2) bad("support pairs must be [token,type]");
            supports.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
        }
    }
    return std::make_shared<Classification>(string_list(need(j, "tokens"), "tokens"),
                                            string_list(need(j, "types"), "types"),
                                            supports);
}

ojson run_infomorphism_check(const json& s, const RunOptions& options) {
    ojson out;
    if (s.contains("scenario")) {
        // Vagueness flavor: build the channel through the event state space
        // and validate every leg.
        HeightScenario sc = to_height_scenario(need(s, "scenario"));
        auto family = to_family(need(s, "family"));
        Channel channel = build_vagueness_channel(sc, family);
        auto report = check_channel(channel);
        out["kind"] = "vagueness-channel";
        out["legs"] = family.size();
        out["core_tokens"] = channel.core->token_count();
        out["core_types"] = channel.core->type_count();
        out["valid"] = report.valid;
        ojson legs = ojson::array();
        for (std::size_t i = 0; i < report.leg_reports.size(); ++i) {
            ojson lj;
            lj["leg"] = i;
            lj["valid"] = report.leg_reports[i].valid;
            lj["violations"] = report.leg_reports[i].violations.size();
            legs.push_back(std::move(lj));
        }
        out["leg_reports"] = std::move(legs);
        if (!report.problems.empty()) out["problems"] = report.problems;
        if (s.contains("intensional_width") || options.max_width) {
            int width = options.max_width
                            ? *options.max_width
                            : s.at("intensional_width").get<int>();
            LocalLogic logic = intensional_logic(sc, family, width);
            ojson constraints = ojson::array();
            for (const auto& c : logic.constraints()) {
                ojson cj;
                ojson lhs = ojson::array(), rhs = ojson::array();
                for (int t : c.lhs) lhs.push_back(logic.host()->type_name(t));
                for (int t : c.rhs) rhs.push_back(logic.host()->type_name(t));
                cj["lhs"] = std::move(lhs);
                cj["rhs"] = std::move(rhs);
                constraints.push_back(std::move(cj));
            }
            out["intensional_width"] = width;
            out["intensional_constraints"] = logic.constraints().size();
            out["constraints"] = std::move(constraints);
        }
        return out;
    }

    auto source = to_classification(need(s, "source"));
    auto target = to_classification(need(s, "target"));
    std::map<std::string, std::string> type_map, token_map;
    for (const auto& [k, v] : need(s, "type_map").items()) type_map[k] = v.get<std::string>();
    for (const auto& [k, v] : need(s, "token_map").items()) token_map[k] = v.get<std::string>();
    Infomorphism f(source, target, type_map, token_map);
    auto report = check_infomorphism(f);
    out["kind"] = "infomorphism";
    out["valid"] = report.valid;
    ojson violations = ojson::array();
    for (const auto& [token, type] : report.violations)
        violations.push_back(ojson::array({token, type}));
    out["violations"] = std::move(violations);
    return out;
}

} // namespace

ScenarioResult run_scenario(const json& scenario, const RunOptions& options) {
    ScenarioResult result;
    std::string task;
    try {
        if (!scenario.is_object()) bad("scenario must be a JSON object");
        if (!scenario.contains("schema") || scenario.at("schema").get<int>() != 1)
            bad("scenario must declare \"schema\": 1");
        task = need(scenario, "task").get<std::string>();

        ojson report;
        report["schema"] = 1;
        report["task"] = task;
        if (scenario.contains("seed") || options.seed)
            report["seed"] = optional_seed(scenario, options);

        ojson body;
        if (task == "bayes") body = run_bayes(scenario, options);
        else if (task == "bn-joint") body = run_bn_joint(scenario, options);
        else if (task == "entropy") body = run_entropy(scenario, options);
        else if (task == "channel") body = run_channel(scenario, options);
        else if (task == "ds-combine") body = run_ds_combine(scenario, options);
        else if (task == "ds-bounds") body = run_ds_bounds(scenario, options);
        else if (task == "rough") body = run_rough(scenario, options);
        else if (task == "possibility") body = run_possibility(scenario, options);
        else if (task == "fuse") body = run_fuse(scenario, options);
        else if (task == "audit") body = run_audit(scenario, options);
        else if (task == "kripke-check") body = run_kripke_check(scenario, options);
        else if (task == "kripke-update") body = run_kripke_update(scenario, options);
        else if (task == "prob-validity") body = run_prob_validity(scenario, options);
        else if (task == "defaults") body = run_defaults(scenario, options);
        else if (task == "mcs") body = run_mcs(scenario, options);
        else if (task == "cwa") body = run_cwa(scenario, options);
        else if (task == "sorites") body = run_sorites(scenario, options);
        else if (task == "ir") body = run_ir(scenario, options);
        else if (task == "infomorphism-check") body = run_infomorphism_check(scenario, options);
        else bad("unknown task: " + task);

        for (auto& [key, value] : body.items()) report[key] = std::move(value);
        result.report = std::move(report);
        result.exit_code = 0;
    } catch (const Error& e) {
        ojson report;
        report["schema"] = 1;
        if (!task.empty()) report["task"] = task;
        ojson error;
        error["kind"] = e.kind_name();
        error["message"] = e.what();
        report["error"] = std::move(error);
        result.report = std::move(report);
        switch (e.kind()) {
        case ErrorKind::InvalidInput: result.exit_code = 2; break;
        case ErrorKind::UndefinedOperation: result.exit_code = 3; break;
        case ErrorKind::BudgetExceeded: result.exit_code = 4; break;
        }
    } catch (const json::exception& e) {
        ojson report;
        report["schema"] = 1;
        if (!task.empty()) report["task"] = task;
        ojson error;
        error["kind"] = "invalid-input";
        error["message"] = std::string("malformed scenario: ") + e.what();
        report["error"] = std::move(error);
        result.report = std::move(report);
        result.exit_code = 2;
    }
    return result;
}

namespace {

void render(const ojson& value, const std::string& prefix, std::ostringstream& os) {
    if (value.is_object()) {
        for (const auto& [key, item] : value.items()) {
            if (item.is_object() || item.is_array()) {
                os << prefix << key << ":\n";
                render(item, prefix + "  ", os);
            } else {
                os << prefix << key << ": " << item.dump() << "\n";
            }
        }
    } else if (value.is_array()) {
        std::size_t index = 0;
        for (const auto& item : value) {
            if (item.is_object() || item.is_array()) {
                os << prefix << "- [" << index << "]\n";
                render(item, prefix + "  ", os);
            } else {
                os << prefix << "- " << item.dump() << "\n";
            }
            ++index;
        }
    } else {
        os << prefix << value.dump() << "\n";
    }
}

} // namespace

std::string render_pretty(const ojson& report) {
    std::ostringstream os;
    render(report, "", os);
    return os.str();
}

} // namespace infoflow
