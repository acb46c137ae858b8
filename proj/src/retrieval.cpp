#include "infoflow/retrieval.hpp"

#include <algorithm>

#include "infoflow/errors.hpp"

namespace infoflow {

ConstraintGraph::ConstraintGraph(std::vector<std::string> types) : types_(std::move(types)) {
    if (types_.empty()) throw InvalidInput("constraint graph needs at least one type");
    std::set<std::string> seen;
    for (const auto& t : types_)
        if (!seen.insert(t).second) throw InvalidInput("duplicate situation type: " + t);
}

int ConstraintGraph::type_index(const std::string& name) const {
    for (std::size_t i = 0; i < types_.size(); ++i)
        if (types_[i] == name) return static_cast<int>(i);
    throw InvalidInput("undeclared situation type: " + name);
}

void ConstraintGraph::add_unconditional(const std::string& from, const std::string& to) {
    edges_[{type_index(from), type_index(to)}] = Edge{false, 1.0, ""};
}

void ConstraintGraph::add_conditional(const std::string& from, const std::string& to,
                                      double strength, std::string condition) {
    if (!(strength > 0.0 && strength < 1.0))
        throw InvalidInput("conditional constraint strength must lie strictly in (0,1)");
    edges_[{type_index(from), type_index(to)}] = Edge{true, strength, std::move(condition)};
}

double ConstraintGraph::delta(int from, int to) const {
    if (from < 0 || from >= static_cast<int>(types_.size()) || to < 0 ||
        to >= static_cast<int>(types_.size()))
        throw InvalidInput("situation type index out of range");
    auto it = edges_.find({from, to});
    if (it == edges_.end()) return 0.0;
    return it->second.conditional ? it->second.strength : 1.0;
}

double ConstraintGraph::delta(const std::string& from, const std::string& to) const {
    return delta(type_index(from), type_index(to));
}

Corpus::Corpus(const ConstraintGraph& graph, std::vector<Document> documents,
               std::vector<Query> queries)
    : documents_(std::move(documents)), queries_(std::move(queries)) {
    std::set<std::string> ids;
    for (const auto& d : documents_) {
        if (!ids.insert(d.id).second) throw InvalidInput("duplicate document id: " + d.id);
        graph.type_index(d.type); // must be declared
    }
    ids.clear();
    for (const auto& q : queries_)
        if (!ids.insert(q.id).second) throw InvalidInput("duplicate query id: " + q.id);
}

const Document& Corpus::document(const std::string& id) const {
    for (const auto& d : documents_)
        if (d.id == id) return d;
    throw InvalidInput("unknown document: " + id);
}

const Query& Corpus::query(const std::string& id) const {
    for (const auto& q : queries_)
        if (q.id == id) return q;
    throw InvalidInput("unknown query: " + id);
}

namespace {

bool supports_query(const Document& d, const Query& q) {
    return std::includes(d.infons.begin(), d.infons.end(), q.infons.begin(), q.infons.end());
}

} // namespace

double relevance(const ConstraintGraph& g, const Corpus& corpus, const std::string& doc_id,
                 const std::string& query_id) {
    const Document& d = corpus.document(doc_id);
    const Query& q = corpus.query(query_id);
    if (supports_query(d, q)) return 1.0;

    int from = g.type_index(d.type);
    double best = 0.0;
    for (const auto& [key, edge] : g.edges()) {
        if (key.first != from) continue;
        bool holder = false;
        for (const auto& other : corpus.documents())
            if (g.type_index(other.type) == key.second && supports_query(other, q))
                holder = true;
        if (holder) best = std::max(best, g.delta(key.first, key.second));
    }
    return best;
}

std::vector<RankedDocument> rank(const ConstraintGraph& g, const Corpus& corpus,
                                 const std::string& query_id) {
    std::vector<RankedDocument> out;
    out.reserve(corpus.documents().size());
    for (const auto& d : corpus.documents())
        out.push_back({d.id, relevance(g, corpus, d.id, query_id)});
    std::sort(out.begin(), out.end(), [](const RankedDocument& a, const RankedDocument& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.id < b.id;
    });
    return out;
}

} // namespace infoflow
