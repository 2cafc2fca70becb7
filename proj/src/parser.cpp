#include "cartan/parser.hpp"

#include <cctype>
#include <sstream>

namespace cartan {

int Context::indepIndex(const std::string& name) const {
    for (size_t i = 0; i < indep.size(); ++i)
        if (indep[i] == name)
            return static_cast<int>(i);
    return -1;
}

int Context::depIndex(const std::string& name) const {
    for (size_t i = 0; i < dep.size(); ++i)
        if (dep[i] == name)
            return static_cast<int>(i);
    return -1;
}

void Context::validate() const {
    auto bad = [](const std::string& s) {
        return s.empty() || s == "th" || s == "ph" || s == "g" || s == "thp" ||
               s == "thg" || s == "d";
    };
    std::vector<std::string> all = indep;
    all.insert(all.end(), dep.begin(), dep.end());
    for (size_t i = 0; i < all.size(); ++i) {
        if (bad(all[i]))
            throw std::invalid_argument("reserved or empty variable name: '" + all[i] + "'");
        for (size_t j = i + 1; j < all.size(); ++j)
            if (all[i] == all[j])
                throw std::invalid_argument("duplicate variable name: '" + all[i] + "'");
    }
    for (const std::string& x : indep)
        for (const std::string& v : all)
            if (v == "d" + x)
                throw std::invalid_argument("name '" + v + "' collides with covector token");
}

namespace {

enum class Tok { End, Int, Name, Sym };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    char sym = 0;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }

    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            bump();
        tok_ = Token{};
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= s_.size()) {
            tok_.kind = Tok::End;
            return;
        }
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            tok_.kind = Tok::Int;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                tok_.text += s_[pos_];
                bump();
            }
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            tok_.kind = Tok::Name;
            while (pos_ < s_.size() &&
                   std::isalnum(static_cast<unsigned char>(s_[pos_]))) {
                tok_.text += s_[pos_];
                bump();
            }
            return;
        }
        tok_.kind = Tok::Sym;
        tok_.sym = c;
        bump();
    }

    void bump() {
        if (s_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& s_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

class FormParser {
public:
    FormParser(const std::string& text, const Context& ctx) : lex_(text), ctx_(ctx) {}

    DForm parse() {
        DForm f = parseSum();
        if (lex_.peek().kind != Tok::End)
            fail(lex_.peek(), "unexpected trailing input");
        return f;
    }

private:
    [[noreturn]] void fail(const Token& t, const std::string& msg) {
        throw ParseError(t.line, t.col, msg);
    }

    bool peekSym(char c) {
        return lex_.peek().kind == Tok::Sym && lex_.peek().sym == c;
    }

    Token expectSym(char c, const std::string& what) {
        if (!peekSym(c))
            fail(lex_.peek(), "expected '" + std::string(1, c) + "' " + what);
        return lex_.next();
    }

    DForm parseSum() {
        DForm f = parseUnary();
        while (peekSym('+') || peekSym('-')) {
            char op = lex_.next().sym;
            DForm rhs = parseUnary();
            f = (op == '+') ? f + rhs : f - rhs;
        }
        return f;
    }

    DForm parseUnary() {
        if (peekSym('-')) {
            lex_.next();
            return -parseUnary();
        }
        return parseProduct();
    }

    DForm parseProduct() {
        DForm f = parsePower();
        while (peekSym('*') || peekSym('/')) {
            Token op = lex_.next();
            DForm rhs = (op.sym == '*') ? parsePower() : parsePower();
            if (op.sym == '*') {
                f = f.wedge(rhs);
            } else {
                Expr e = asScalar(rhs, op);
                auto c = e.asConstant();
                if (!c || *c == 0)
                    fail(op, "divisor must be a nonzero rational constant");
                f = f.mapCoeffs([&](const Expr& x) { return x.divideBy(*c); });
            }
        }
        return f;
    }

    DForm parsePower() {
        DForm f = parseAtom();
        while (peekSym('^')) {
            Token op = lex_.next();
            if (lex_.peek().kind == Tok::Int && f.isHomogeneous(0)) {
                Token e = lex_.next();
                long k = std::stol(e.text);
                if (k > 64)
                    fail(e, "exponent too large");
                f = DForm::scalar(asScalar(f, op).pow(static_cast<int>(k)));
            } else {
                f = f.wedge(parseAtom());
            }
        }
        return f;
    }

    Expr asScalar(const DForm& f, const Token& at) {
        if (!f.isHomogeneous(0))
            fail(at, "expected a scalar expression");
        Expr e;
        for (const auto& [w, c] : f.terms())
            e += c;
        return e;
    }

    DForm parseAtom() {
        Token t = lex_.peek();
        if (t.kind == Tok::Int) {
            lex_.next();
            return DForm::scalar(Expr(Rational(t.text)));
        }
        if (t.kind == Tok::Sym && t.sym == '(') {
            lex_.next();
            DForm f = parseSum();
            expectSym(')', "to close parenthesis");
            return f;
        }
        if (t.kind == Tok::Name)
            return parseNameAtom(lex_.next());
        fail(t, "expected expression");
    }

    DForm parseNameAtom(const Token& t) {
        const std::string& name = t.text;
        if (name == "th" || name == "ph" || name == "g" || name == "thp" ||
            name == "thg")
            return parseBracketed(t);
        int bi = ctx_.indepIndex(name);
        if (bi >= 0) {
            if (peekSym('_'))
                fail(t, "base variable '" + name + "' takes no jet index");
            return DForm::scalar(Expr::var(JetVar::base(bi)));
        }
        int di = ctx_.depIndex(name);
        if (di >= 0) {
            MultiIndex a = ctx_.zero();
            if (peekSym('_')) {
                lex_.next();
                expectSym('{', "to open jet index");
                Token sub = lex_.next();
                if (sub.kind != Tok::Name)
                    fail(sub, "malformed jet index");
                a = parseSubscript(sub);
                expectSym('}', "to close jet index");
            }
            return DForm::scalar(Expr::var(JetVar::fiber(di, a)));
        }
        if (name.size() > 1 && name[0] == 'd') {
            int xi = ctx_.indepIndex(name.substr(1));
            if (xi >= 0)
                return DForm::covector(Covector::dx(xi));
        }
        fail(t, "unknown variable name '" + name + "'");
    }

    // th[u;xxt] and friends.
    DForm parseBracketed(const Token& head) {
        expectSym('[', "after '" + head.text + "'");
        Token dn = lex_.next();
        if (dn.kind != Tok::Name || ctx_.depIndex(dn.text) < 0)
            fail(dn, "expected a dependent variable name");
        int di = ctx_.depIndex(dn.text);
        MultiIndex a = ctx_.zero();
        if (peekSym(';')) {
            lex_.next();
            Token sub = lex_.next();
            if (sub.kind != Tok::Name)
                fail(sub, "malformed jet index");
            a = parseSubscript(sub);
        }
        expectSym(']', "to close '" + head.text + "'");
        if (head.text == "ph")
            return DForm::scalar(Expr::var(JetVar::phi(di, a)));
        if (head.text == "g")
            return DForm::scalar(Expr::var(JetVar::aux(di, a)));
        VarKind k = head.text == "th"    ? VarKind::Fiber
                    : head.text == "thp" ? VarKind::Phi
                                         : VarKind::Aux;
        return DForm::covector(Covector::contact(JetVar{k, di, a}));
    }

    // Greedy longest-match split of a subscript like "xxt" or "x1x1t".
    MultiIndex parseSubscript(const Token& sub) {
        std::vector<int> counts(static_cast<size_t>(ctx_.n()), 0);
        const std::string& s = sub.text;
        size_t pos = 0;
        while (pos < s.size()) {
            int best = -1;
            size_t bestLen = 0;
            for (int i = 0; i < ctx_.n(); ++i) {
                const std::string& xn = ctx_.indep[static_cast<size_t>(i)];
                if (xn.size() > bestLen && s.compare(pos, xn.size(), xn) == 0) {
                    best = i;
                    bestLen = xn.size();
                }
            }
            if (best < 0)
                fail(sub, "malformed jet index '" + s + "'");
            if (++counts[static_cast<size_t>(best)] > 9)
                fail(sub, "jet index order exceeds 9 per direction");
            pos += bestLen;
        }
        return MultiIndex(counts);
    }

    Lexer lex_;
    const Context& ctx_;
};

}  // namespace

DForm parseForm(const std::string& text, const Context& ctx) {
    return FormParser(text, ctx).parse();
}

Expr parseExpr(const std::string& text, const Context& ctx) {
    DForm f = parseForm(text, ctx);
    if (!f.isHomogeneous(0))
        throw ParseError(1, 1, "expected a scalar expression, found a form");
    Expr e;
    for (const auto& [w, c] : f.terms())
        e += c;
    return e;
}

std::string toString(const Rational& c) {
    std::ostringstream os;
    os << c;
    return os.str();
}

namespace {

std::string subscriptString(const MultiIndex& a, const Context& ctx) {
    std::string s;
    for (int i = 0; i < a.size(); ++i)
        for (int k = 0; k < a[i]; ++k)
            s += ctx.indep[static_cast<size_t>(i)];
    return s;
}

std::string bracketName(const char* head, int dep, const MultiIndex& a,
                        const Context& ctx) {
    std::string s = std::string(head) + "[" + ctx.dep[static_cast<size_t>(dep)];
    if (!a.isZero())
        s += ";" + subscriptString(a, ctx);
    return s + "]";
}

// Sign and body of one monomial term.
std::pair<bool, std::string> monomialString(const Monomial& m, const Rational& c,
                                            const Context& ctx) {
    std::vector<std::string> parts;
    Rational a = c < 0 ? Rational(-c) : c;
    if (a != 1 || m.empty())
        parts.push_back(toString(a));
    for (const auto& [v, e] : m) {
        std::string p = toString(v, ctx);
        if (e > 1)
            p += "^" + std::to_string(e);
        parts.push_back(p);
    }
    std::string body;
    for (size_t i = 0; i < parts.size(); ++i)
        body += (i ? "*" : "") + parts[i];
    return {c < 0, body};
}

std::string joinTerms(const std::vector<std::pair<bool, std::string>>& terms) {
    if (terms.empty())
        return "0";
    std::string out;
    for (size_t i = 0; i < terms.size(); ++i) {
        if (i == 0)
            out += terms[i].first ? "-" : "";
        else
            out += terms[i].first ? " - " : " + ";
        out += terms[i].second;
    }
    return out;
}

}  // namespace

std::string toString(const JetVar& v, const Context& ctx) {
    switch (v.kind) {
        case VarKind::Base:
            return ctx.indep.at(static_cast<size_t>(v.index));
        case VarKind::Fiber: {
            std::string s = ctx.dep.at(static_cast<size_t>(v.index));
            if (!v.alpha.isZero())
                s += "_{" + subscriptString(v.alpha, ctx) + "}";
            return s;
        }
        case VarKind::Phi:
            return bracketName("ph", v.index, v.alpha, ctx);
        case VarKind::Aux:
            return bracketName("g", v.index, v.alpha, ctx);
    }
    return "?";
}

std::string toString(const Covector& c, const Context& ctx) {
    if (c.horizontal)
        return "d" + ctx.indep.at(static_cast<size_t>(c.dir));
    switch (c.theta.kind) {
        case VarKind::Fiber:
            return bracketName("th", c.theta.index, c.theta.alpha, ctx);
        case VarKind::Phi:
            return bracketName("thp", c.theta.index, c.theta.alpha, ctx);
        default:
            return bracketName("thg", c.theta.index, c.theta.alpha, ctx);
    }
}

std::string toString(const Expr& e, const Context& ctx) {
    std::vector<std::pair<bool, std::string>> terms;
    for (const auto& [m, c] : e.terms())
        terms.push_back(monomialString(m, c, ctx));
    return joinTerms(terms);
}

std::string toString(const DForm& f, const Context& ctx) {
    std::vector<std::pair<bool, std::string>> terms;
    for (const auto& [w, c] : f.terms()) {
        std::string word;
        for (size_t i = 0; i < w.size(); ++i)
            word += (i ? "^" : "") + toString(w[i], ctx);
        if (w.empty()) {
            for (const auto& [m, cc] : c.terms())
                terms.push_back(monomialString(m, cc, ctx));
            continue;
        }
        if (c.terms().size() == 1) {
            auto [neg, body] = monomialString(c.terms().begin()->first,
                                              c.terms().begin()->second, ctx);
            if (body == "1")
                terms.emplace_back(neg, word);
            else
                terms.emplace_back(neg, body + "*" + word);
        } else {
            terms.emplace_back(false, "(" + toString(c, ctx) + ")*" + word);
        }
    }
    return joinTerms(terms);
}

}  // namespace cartan
