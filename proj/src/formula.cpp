#include "infoflow/formula.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "infoflow/errors.hpp"

namespace infoflow {

struct Formula::Node {
    Kind kind;
    std::string name;                 // Atom, Knows (agent)
    std::vector<std::string> group;   // Common
    Formula a, b;
    std::vector<ProbTerm> terms;      // ProbCmp
    double bound = 0.0;
};

Formula Formula::atom(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Atom;
    n->name = std::move(name);
    return Formula(std::move(n));
}

Formula Formula::negation(Formula f) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Not;
    n->a = std::move(f);
    return Formula(std::move(n));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::And;
    n->a = std::move(lhs);
    n->b = std::move(rhs);
    return Formula(std::move(n));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Or;
    n->a = std::move(lhs);
    n->b = std::move(rhs);
    return Formula(std::move(n));
}

Formula Formula::knows(std::string agent, Formula f) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Knows;
    n->name = std::move(agent);
    n->a = std::move(f);
    return Formula(std::move(n));
}

Formula Formula::common(std::vector<std::string> group, Formula f) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Common;
    n->group = std::move(group);
    n->a = std::move(f);
    return Formula(std::move(n));
}

Formula Formula::prob_ge(std::vector<ProbTerm> terms, double bound) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::ProbCmp;
    n->terms = std::move(terms);
    n->bound = bound;
    return Formula(std::move(n));
}

Formula::Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::atom_name() const { return node_->name; }
const Formula& Formula::child() const { return node_->a; }
const Formula& Formula::lhs() const { return node_->a; }
const Formula& Formula::rhs() const { return node_->b; }
const std::string& Formula::agent() const { return node_->name; }
const std::vector<std::string>& Formula::group() const { return node_->group; }
const std::vector<Formula::ProbTerm>& Formula::prob_terms() const { return node_->terms; }
double Formula::prob_bound() const { return node_->bound; }

bool Formula::propositional() const {
    switch (kind()) {
    case Kind::Atom: return true;
    case Kind::Not: return child().propositional();
    case Kind::And:
    case Kind::Or: return lhs().propositional() && rhs().propositional();
    default: return false;
    }
}

bool Formula::has_probability_terms() const {
    switch (kind()) {
    case Kind::Atom: return false;
    case Kind::Not:
    case Kind::Knows:
    case Kind::Common: return child().has_probability_terms();
    case Kind::And:
    case Kind::Or: return lhs().has_probability_terms() || rhs().has_probability_terms();
    case Kind::ProbCmp: return true;
    }
    return false;
}

void Formula::collect_atoms(std::set<std::string>& out) const {
    switch (kind()) {
    case Kind::Atom:
        out.insert(atom_name());
        break;
    case Kind::Not:
    case Kind::Knows:
    case Kind::Common:
        child().collect_atoms(out);
        break;
    case Kind::And:
    case Kind::Or:
        lhs().collect_atoms(out);
        rhs().collect_atoms(out);
        break;
    case Kind::ProbCmp:
        for (const auto& t : prob_terms()) t.argument.collect_atoms(out);
        break;
    }
}

void Formula::collect_agents(std::set<std::string>& out) const {
    switch (kind()) {
    case Kind::Atom:
        break;
    case Kind::Not:
        child().collect_agents(out);
        break;
    case Kind::Knows:
        out.insert(agent());
        child().collect_agents(out);
        break;
    case Kind::Common:
        out.insert(group().begin(), group().end());
        child().collect_agents(out);
        break;
    case Kind::And:
    case Kind::Or:
        lhs().collect_agents(out);
        rhs().collect_agents(out);
        break;
    case Kind::ProbCmp:
        for (const auto& t : prob_terms()) {
            out.insert(t.agent);
            t.argument.collect_agents(out);
        }
        break;
    }
}

namespace {

void append(std::ostringstream& os, const Formula& f, int parent_prec);

int precedence(Formula::Kind k) {
    switch (k) {
    case Formula::Kind::Or: return 1;
    case Formula::Kind::And: return 2;
    default: return 3;
    }
}

void append(std::ostringstream& os, const Formula& f, int parent_prec) {
    const int prec = precedence(f.kind());
    const bool parens = prec < parent_prec;
    if (parens) os << '(';
    switch (f.kind()) {
    case Formula::Kind::Atom:
        os << f.atom_name();
        break;
    case Formula::Kind::Not:
        os << '!';
        append(os, f.child(), 3);
        break;
    case Formula::Kind::And:
        append(os, f.lhs(), 2);
        os << " & ";
        append(os, f.rhs(), 2);
        break;
    case Formula::Kind::Or:
        append(os, f.lhs(), 1);
        os << " | ";
        append(os, f.rhs(), 1);
        break;
    case Formula::Kind::Knows:
        os << "K{" << f.agent() << "} ";
        append(os, f.child(), 3);
        break;
    case Formula::Kind::Common: {
        os << "C{";
        bool first = true;
        for (const auto& g : f.group()) {
            if (!first) os << ',';
            first = false;
            os << g;
        }
        os << "} ";
        append(os, f.child(), 3);
        break;
    }
    case Formula::Kind::ProbCmp: {
        bool first = true;
        for (const auto& t : f.prob_terms()) {
            double c = t.coefficient;
            if (first) {
                if (c < 0) { os << "- "; c = -c; }
            } else {
                os << (c < 0 ? " - " : " + ");
                c = std::fabs(t.coefficient);
            }
            first = false;
            os << c << "*P{" << t.agent << "}[" << t.argument.to_string() << "]";
        }
        os << " >= " << f.prob_bound();
        break;
    }
    }
    if (parens) os << ')';
}

} // namespace

std::string Formula::to_string() const {
    std::ostringstream os;
    append(os, *this, 0);
    return os.str();
}

bool Formula::operator==(const Formula& other) const {
    if (node_ == other.node_) return true;
    if (!node_ || !other.node_) return false;
    if (kind() != other.kind()) return false;
    switch (kind()) {
    case Kind::Atom: return atom_name() == other.atom_name();
    case Kind::Not: return child() == other.child();
    case Kind::And:
    case Kind::Or: return lhs() == other.lhs() && rhs() == other.rhs();
    case Kind::Knows: return agent() == other.agent() && child() == other.child();
    case Kind::Common: return group() == other.group() && child() == other.child();
    case Kind::ProbCmp: {
        if (prob_bound() != other.prob_bound()) return false;
        const auto& a = prob_terms();
        const auto& b = other.prob_terms();
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].coefficient != b[i].coefficient || a[i].agent != b[i].agent ||
                a[i].argument != b[i].argument)
                return false;
        }
        return true;
    }
    }
    return false;
}

// --- Parser ---

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Formula parse() {
        Formula f = parse_or();
        skip_space();
        if (pos_ != text_.size())
            fail("unexpected trailing input");
        return f;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) {
        throw InvalidInput("formula parse error at offset " + std::to_string(pos_) +
                           ": " + what + " in \"" + std::string(text_) + "\"");
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_space();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool consume(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }

    void expect(char c) {
        if (!consume(c)) fail(std::string("expected '") + c + "'");
    }

    static bool ident_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    }

    std::string parse_ident() {
        skip_space();
        if (pos_ >= text_.size() || !ident_start(text_[pos_])) fail("expected identifier");
        std::size_t start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        // Ground atoms like connected(paris,bonn): fold the argument list
        // into the atom name.
        if (pos_ < text_.size() && text_[pos_] == '(') {
            std::size_t depth = 0;
            std::size_t scan = pos_;
            do {
                if (scan >= text_.size()) fail("unterminated '(' in atom");
                if (text_[scan] == '(') ++depth;
                if (text_[scan] == ')') --depth;
                ++scan;
            } while (depth > 0);
            name += std::string(text_.substr(pos_, scan - pos_));
            pos_ = scan;
        }
        return name;
    }

    double parse_number() {
        skip_space();
        std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
        bool digits = false;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
            digits = true;
            ++pos_;
        }
        if (!digits) fail("expected number");
        return std::stod(std::string(text_.substr(start, pos_ - start)));
    }

    Formula parse_or() {
        Formula f = parse_and();
        while (consume('|')) f = Formula::disjunction(std::move(f), parse_and());
        return f;
    }

    Formula parse_and() {
        Formula f = parse_unary();
        while (consume('&')) f = Formula::conjunction(std::move(f), parse_unary());
        return f;
    }

    bool at_modal(char letter) {
        skip_space();
        return pos_ + 1 < text_.size() && text_[pos_] == letter && text_[pos_ + 1] == '{';
    }

    bool at_prob_expr() {
        skip_space();
        if (pos_ >= text_.size()) return false;
        char c = text_[pos_];
        return at_modal('P') || std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '-' && pos_ + 1 < text_.size() &&
                (std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) || text_[pos_ + 1] == 'P'));
    }

    Formula parse_unary() {
        skip_space();
        if (consume('!')) return Formula::negation(parse_unary());
        if (at_modal('K')) {
            pos_ += 2;
            std::string agent = parse_ident();
            expect('}');
            return Formula::knows(std::move(agent), parse_unary());
        }
        if (at_modal('C')) {
            pos_ += 2;
            std::vector<std::string> group;
            group.push_back(parse_ident());
            while (consume(',')) group.push_back(parse_ident());
            expect('}');
            return Formula::common(std::move(group), parse_unary());
        }
        if (at_prob_expr()) return parse_prob_cmp();
        if (peek('(')) {
            ++pos_;
            Formula f = parse_or();
            expect(')');
            return f;
        }
        return Formula::atom(parse_ident());
    }

    Formula::ProbTerm parse_prob_term(double sign) {
        skip_space();
        double coef = 1.0;
        if (pos_ < text_.size() &&
            (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
            coef = parse_number();
            expect('*');
        }
        if (!at_modal('P')) fail("expected P{agent}[...] term");
        pos_ += 2;
        std::string agent = parse_ident();
        expect('}');
        expect('[');
        // Scan for the matching ']' so nested formulas parse recursively.
        std::size_t depth = 1;
        std::size_t start = pos_;
        while (depth > 0) {
            if (pos_ >= text_.size()) fail("unterminated '[' in probability term");
            if (text_[pos_] == '[') ++depth;
            if (text_[pos_] == ']') --depth;
            ++pos_;
        }
        Parser inner(text_.substr(start, pos_ - 1 - start));
        return Formula::ProbTerm{sign * coef, std::move(agent), inner.parse()};
    }

    Formula parse_prob_cmp() {
        std::vector<Formula::ProbTerm> terms;
        double sign = 1.0;
        if (consume('-')) sign = -1.0;
        terms.push_back(parse_prob_term(sign));
        for (;;) {
            if (consume('+')) {
                terms.push_back(parse_prob_term(1.0));
            } else if (peek('-')) {
                ++pos_;
                terms.push_back(parse_prob_term(-1.0));
            } else {
                break;
            }
        }
        skip_space();
        if (pos_ + 1 >= text_.size() || text_[pos_] != '>' || text_[pos_ + 1] != '=')
            fail("expected '>='");
        pos_ += 2;
        double bound = parse_number();
        return Formula::prob_ge(std::move(terms), bound);
    }
};

} // namespace

Formula parse_formula(std::string_view text) {
    return Parser(text).parse();
}

// --- AtomSpace ---

AtomSpace::AtomSpace(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.size() > 16)
        throw BudgetExceeded("atom budget exceeded: " + std::to_string(atoms_.size()) +
                             " atoms (limit 16)");
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (!index_.emplace(atoms_[i], static_cast<int>(i)).second)
            throw InvalidInput("duplicate atom: " + atoms_[i]);
    }
}

int AtomSpace::index_of(const std::string& atom) const {
    auto it = index_.find(atom);
    return it == index_.end() ? -1 : it->second;
}

bool AtomSpace::eval(const Formula& f, std::uint32_t valuation) const {
    switch (f.kind()) {
    case Formula::Kind::Atom: {
        int i = index_of(f.atom_name());
        if (i < 0) throw InvalidInput("undeclared atom: " + f.atom_name());
        return (valuation >> i) & 1u;
    }
    case Formula::Kind::Not:
        return !eval(f.child(), valuation);
    case Formula::Kind::And:
        return eval(f.lhs(), valuation) && eval(f.rhs(), valuation);
    case Formula::Kind::Or:
        return eval(f.lhs(), valuation) || eval(f.rhs(), valuation);
    default:
        throw InvalidInput("formula is not propositional: " + f.to_string());
    }
}

std::vector<std::uint64_t> AtomSpace::models(const Formula& f) const {
    std::vector<std::uint64_t> bm(word_count(), 0);
    for (std::uint32_t v = 0; v < valuation_count(); ++v) {
        if (eval(f, v)) bm[v >> 6] |= (1ULL << (v & 63));
    }
    return bm;
}

bool bitmap_empty(const std::vector<std::uint64_t>& bm) {
    for (auto w : bm)
        if (w) return false;
    return true;
}

bool bitmap_subset(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

void bitmap_and(std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] &= b[i];
}

} // namespace infoflow
