#include "infoflow/infon.hpp"

#include <sstream>

#include "infoflow/errors.hpp"

namespace infoflow {

namespace {

void check_symbol(const std::string& s, const char* slot) {
    if (s.empty()) throw InvalidInput(std::string("empty symbol in infon ") + slot);
    for (char c : s)
        if (c == '(' || c == ')' || c == ',' || c == ';')
            throw InvalidInput(std::string("infon ") + slot + " contains a delimiter: " + s);
}

} // namespace

void validate_infon(const Infon& infon) {
    check_symbol(infon.relation, "relation");
    if (infon.args.empty()) throw InvalidInput("infon needs at least one argument");
    for (const auto& a : infon.args) check_symbol(a, "argument");
    if (infon.location) check_symbol(*infon.location, "location");
    if (infon.time) check_symbol(*infon.time, "time");
    if (infon.polarity != 0 && infon.polarity != 1)
        throw InvalidInput("infon polarity must be 0 or 1");
}

std::string Infon::canonical() const {
    validate_infon(*this);
    std::ostringstream os;
    os << relation << '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) os << ',';
        os << args[i];
    }
    os << ");" << location.value_or("") << ';' << time.value_or("") << ';' << polarity;
    return os.str();
}

Infon parse_infon(const std::string& text) {
    Infon infon;
    auto open = text.find('(');
    auto close = text.find(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw InvalidInput("malformed infon: " + text);
    infon.relation = text.substr(0, open);
    std::string args = text.substr(open + 1, close - open - 1);
    std::size_t start = 0;
    while (start <= args.size() && !args.empty()) {
        auto comma = args.find(',', start);
        if (comma == std::string::npos) {
            infon.args.push_back(args.substr(start));
            break;
        }
        infon.args.push_back(args.substr(start, comma - start));
        start = comma + 1;
    }
    std::string rest = text.substr(close + 1);
    std::vector<std::string> parts;
    start = 0;
    for (int i = 0; i < 3; ++i) {
        if (start >= rest.size() || rest[start] != ';')
            throw InvalidInput("malformed infon tail: " + text);
        auto next = rest.find(';', start + 1);
        if (i < 2) {
            if (next == std::string::npos) throw InvalidInput("malformed infon tail: " + text);
            parts.push_back(rest.substr(start + 1, next - start - 1));
            start = next;
        } else {
            parts.push_back(rest.substr(start + 1));
        }
    }
    if (!parts[0].empty()) infon.location = parts[0];
    if (!parts[1].empty()) infon.time = parts[1];
    if (parts[2] == "0") infon.polarity = 0;
    else if (parts[2] == "1") infon.polarity = 1;
    else throw InvalidInput("malformed infon polarity: " + text);
    validate_infon(infon);
    return infon;
}

} // namespace infoflow
