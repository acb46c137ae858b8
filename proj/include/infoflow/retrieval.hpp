#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace infoflow {

// Constraint graph over situation types: unconditional edges score 1,
// conditional ones carry a strength in (0,1) and an opaque condition label.
class ConstraintGraph {
public:
    struct Edge {
        bool conditional = false;
        double strength = 1.0;      // in (0,1) when conditional
        std::string condition;      // opaque label, conditional only
    };

    explicit ConstraintGraph(std::vector<std::string> types);

    void add_unconditional(const std::string& from, const std::string& to);
    void add_conditional(const std::string& from, const std::string& to, double strength,
                         std::string condition);

    const std::vector<std::string>& types() const { return types_; }
    int type_index(const std::string& name) const;
    const std::map<std::pair<int, int>, Edge>& edges() const { return edges_; }

    // 1 for an unconditional edge, the strength for a conditional one, 0
    // otherwise.
    double delta(const std::string& from, const std::string& to) const;
    double delta(int from, int to) const;

private:
    std::vector<std::string> types_;
    std::map<std::pair<int, int>, Edge> edges_;
};

// Documents are situations with a type and a supported infon set; queries
// are infon sets. Infons are stored in canonical string form.
struct Document {
    std::string id;
    std::string type;
    std::set<std::string> infons;
};

struct Query {
    std::string id;
    std::set<std::string> infons;
};

class Corpus {
public:
    Corpus(const ConstraintGraph& graph, std::vector<Document> documents,
           std::vector<Query> queries);

    const std::vector<Document>& documents() const { return documents_; }
    const std::vector<Query>& queries() const { return queries_; }
    const Document& document(const std::string& id) const;
    const Query& query(const std::string& id) const;

private:
    std::vector<Document> documents_;
    std::vector<Query> queries_;
};

// Relevance of document d to query q: 1 when d supports every query infon;
// otherwise the best single-hop constraint edge from d's type to a type
// holding some document that supports q; 0 when no such type exists.
double relevance(const ConstraintGraph& g, const Corpus& corpus, const std::string& doc_id,
                 const std::string& query_id);

struct RankedDocument {
    std::string id;
    double score;
};

// All documents scored against one query, sorted by descending score with
// document id as the tie-breaker.
std::vector<RankedDocument> rank(const ConstraintGraph& g, const Corpus& corpus,
                                 const std::string& query_id);

} // namespace infoflow
