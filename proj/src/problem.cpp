#include "cartan/problem.hpp"

#include <regex>
#include <sstream>
#include <stdexcept>

#include "cartan/parser.hpp"

namespace cartan {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> splitWords(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string w;
    while (in >> w)
        out.push_back(w);
    return out;
}

// Problem files allow the brace-free derivative spelling u_tt; the
// expression grammar wants u_{tt}.
std::string braceSubscripts(const std::string& s) {
    static const std::regex plain("_([A-Za-z]+)");
    return std::regex_replace(s, plain, "_{$1}");
}

}  // namespace

EqSystem ProblemFile::system() const {
    if (equations.empty())
        throw std::invalid_argument("problem file has no [equations] section");
    return EqSystem(ctx, equations, maxOrder);
}

const DForm* ProblemFile::form(const std::string& name) const {
    for (const auto& [n, f] : forms)
        if (n == name)
            return &f;
    return nullptr;
}

ProblemFile parseProblemFile(const std::string& text) {
    struct RawSection {
        std::string header;  // "vars", "equations", "lagrangian", "form NAME", "options"
        std::vector<std::pair<int, std::string>> lines;  // (line number, text)
    };
    std::vector<RawSection> sections;
    std::istringstream in(text);
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        size_t hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError(lineNo, 1, "unterminated section header");
            sections.push_back({trim(line.substr(1, line.size() - 2)), {}});
            continue;
        }
        if (sections.empty())
            throw ParseError(lineNo, 1, "content before the first section header");
        sections.back().lines.emplace_back(lineNo, line);
    }

    ProblemFile pf;
    bool sawVars = false;
    // [vars] and [options] first: everything else needs the context
    for (const RawSection& s : sections) {
        if (s.header == "vars") {
            sawVars = true;
            for (const auto& [no, l] : s.lines) {
                size_t eq = l.find('=');
                if (eq == std::string::npos)
                    throw ParseError(no, 1, "expected `indep = ...` or `dep = ...`");
                std::string key = trim(l.substr(0, eq));
                std::vector<std::string> names = splitWords(l.substr(eq + 1));
                if (key == "indep")
                    pf.ctx.indep = names;
                else if (key == "dep")
                    pf.ctx.dep = names;
                else
                    throw ParseError(no, 1, "unknown [vars] key: " + key);
            }
        } else if (s.header == "options") {
            for (const auto& [no, l] : s.lines) {
                size_t eq = l.find('=');
                if (eq == std::string::npos)
                    throw ParseError(no, 1, "expected `key = value`");
                std::string key = trim(l.substr(0, eq));
                std::string val = trim(l.substr(eq + 1));
                if (key == "max-order") {
                    try {
                        pf.maxOrder = std::stoi(val);
                    } catch (const std::exception&) {
                        throw ParseError(no, 1, "max-order: not an integer");
                    }
                    if (pf.maxOrder < 1)
                        throw ParseError(no, 1, "max-order must be positive");
                } else if (key == "output") {
                    if (val == "json")
                        pf.jsonOutput = true;
                    else if (val == "text")
                        pf.jsonOutput = false;
                    else
                        throw ParseError(no, 1, "output must be `json` or `text`");
                } else {
                    throw ParseError(no, 1, "unknown option: " + key);
                }
            }
        }
    }
    if (!sawVars)
        throw std::invalid_argument("problem file has no [vars] section");
    if (pf.ctx.indep.empty() || pf.ctx.dep.empty())
        throw std::invalid_argument("[vars] must declare indep and dep names");
    pf.ctx.validate();

    for (const RawSection& s : sections) {
        if (s.header == "vars" || s.header == "options")
            continue;
        if (s.header == "equations") {
            for (const auto& [no, l] : s.lines) {
                size_t eq = l.find('=');
                if (eq == std::string::npos)
                    throw ParseError(no, 1, "equation line needs `lhs = rhs`");
                Expr lhs = parseExpr(braceSubscripts(trim(l.substr(0, eq))), pf.ctx);
                Expr rhs = parseExpr(braceSubscripts(trim(l.substr(eq + 1))), pf.ctx);
                // lhs must be a single jet coordinate with coefficient 1
                if (lhs.terms().size() != 1)
                    throw ParseError(no, 1, "left-hand side must be one jet coordinate");
                const auto& [mono, coeff] = *lhs.terms().begin();
                if (coeff != 1 || mono.size() != 1 || mono[0].second != 1 ||
                    mono[0].first.kind != VarKind::Fiber)
                    throw ParseError(no, 1, "left-hand side must be one jet coordinate");
                pf.equations.push_back({mono[0].first.index, mono[0].first.alpha, rhs});
            }
        } else if (s.header == "lagrangian") {
            std::string body;
            for (const auto& [no, l] : s.lines)
                body += (body.empty() ? "" : " ") + l;
            if (body.empty())
                throw std::invalid_argument("[lagrangian] section is empty");
            pf.lagrangian = parseExpr(body, pf.ctx);
        } else if (s.header.rfind("form ", 0) == 0) {
            std::string name = trim(s.header.substr(5));
            if (name.empty() || splitWords(name).size() != 1)
                throw std::invalid_argument("[form] needs exactly one name");
            if (pf.form(name))
                throw std::invalid_argument("duplicate [form " + name + "]");
            std::string body;
            for (const auto& [no, l] : s.lines)
                body += (body.empty() ? "" : " ") + l;
            pf.forms.emplace_back(name, parseForm(body, pf.ctx));
        } else {
            throw std::invalid_argument("unknown section [" + s.header + "]");
        }
    }
    // surface rewrite-system problems at parse time
    if (!pf.equations.empty())
        pf.system();
    return pf;
}

}  // namespace cartan
