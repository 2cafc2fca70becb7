#include "cartan/expr.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cartan {

namespace {

Monomial mulMonomials(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first == b[j].first) {
            r.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i, ++j;
        } else if (a[i].first < b[j].first) {
            r.push_back(a[i++]);
        } else {
            r.push_back(b[j++]);
        }
    }
    for (; i < a.size(); ++i) r.push_back(a[i]);
    for (; j < b.size(); ++j) r.push_back(b[j]);
    return r;
}

void addTerm(std::map<Monomial, Rational>& acc, const Monomial& m, const Rational& c) {
    if (c == 0)
        return;
    auto it = acc.find(m);
    if (it == acc.end()) {
        acc.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0)
            acc.erase(it);
    }
}

}  // namespace

std::optional<Rational> Expr::asConstant() const {
    if (terms_.empty())
        return Rational(0);
    if (terms_.size() == 1 && terms_.begin()->first.empty())
        return terms_.begin()->second;
    return std::nullopt;
}

Expr Expr::operator-() const {
    std::map<Monomial, Rational> t;
    for (const auto& [m, c] : terms_)
        t.emplace(m, -c);
    return fromTerms(std::move(t));
}

Expr Expr::operator+(const Expr& o) const {
    std::map<Monomial, Rational> t = terms_;
    for (const auto& [m, c] : o.terms_)
        addTerm(t, m, c);
    return fromTerms(std::move(t));
}

Expr Expr::operator-(const Expr& o) const {
    std::map<Monomial, Rational> t = terms_;
    for (const auto& [m, c] : o.terms_)
        addTerm(t, m, -c);
    return fromTerms(std::move(t));
}

Expr Expr::operator*(const Expr& o) const {
    std::map<Monomial, Rational> t;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_)
            addTerm(t, mulMonomials(ma, mb), ca * cb);
    return fromTerms(std::move(t));
}

Expr Expr::pow(int k) const {
    if (k < 0)
        throw std::invalid_argument("Expr::pow: negative exponent");
    Expr r(1);
    Expr b = *this;
    while (k > 0) {
        if (k & 1)
            r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

Expr Expr::divideBy(const Rational& c) const {
    if (c == 0)
        throw std::invalid_argument("Expr: division by zero");
    std::map<Monomial, Rational> t;
    for (const auto& [m, coef] : terms_)
        t.emplace(m, coef / c);
    return fromTerms(std::move(t));
}

Expr Expr::partial(const JetVar& v) const {
    std::map<Monomial, Rational> t;
    for (const auto& [m, c] : terms_) {
        for (size_t k = 0; k < m.size(); ++k) {
            if (!(m[k].first == v))
                continue;
            Monomial rest = m;
            if (rest[k].second == 1)
                rest.erase(rest.begin() + static_cast<long>(k));
            else
                rest[k].second -= 1;
            addTerm(t, rest, c * m[k].second);
            break;
        }
    }
    return fromTerms(std::move(t));
}

Expr Expr::totalDerivative(int dir, int n) const {
    Expr out;
    for (const auto& [m, c] : terms_) {
        // Leibniz over the factors of the monomial.
        for (size_t k = 0; k < m.size(); ++k) {
            const JetVar& v = m[k].first;
            Expr dv;  // derivative of the bare generator
            if (v.kind == VarKind::Base) {
                dv = (v.index == dir) ? Expr(1) : Expr(0);
            } else {
                MultiIndex a = v.alpha.size() == n ? v.alpha : MultiIndex(n);
                dv = Expr::var(JetVar{v.kind, v.index, a.plus(dir)});
            }
            if (dv.isZero())
                continue;
            Monomial rest = m;
            if (rest[k].second == 1)
                rest.erase(rest.begin() + static_cast<long>(k));
            else
                rest[k].second -= 1;
            Expr factor = Rational(c * m[k].second) * Expr::fromTerms({{rest, Rational(1)}});
            out += factor * dv;
        }
    }
    return out;
}

Expr Expr::totalDerivative(const MultiIndex& alpha) const {
    Expr e = *this;
    const int n = alpha.size();
    for (int dir = 0; dir < n; ++dir)
        for (int k = 0; k < alpha[dir]; ++k)
            e = e.totalDerivative(dir, n);
    return e;
}

Expr Expr::substitute(const std::map<JetVar, Expr>& repl) const {
    Expr out;
    for (const auto& [m, c] : terms_) {
        Expr term(c);
        for (const auto& [v, e] : m) {
            auto it = repl.find(v);
            if (it == repl.end())
                term *= Expr::var(v).pow(e);
            else
                term *= it->second.pow(e);
        }
        out += term;
    }
    return out;
}

Rational Expr::eval(const std::map<JetVar, Rational>& point) const {
    Rational out = 0;
    for (const auto& [m, c] : terms_) {
        Rational term = c;
        for (const auto& [v, e] : m) {
            auto it = point.find(v);
            if (it == point.end())
                throw std::invalid_argument("Expr::eval: unbound variable");
            Rational p = 1;
            for (int k = 0; k < e; ++k)
                p *= it->second;
            term *= p;
        }
        out += term;
    }
    return out;
}

std::vector<JetVar> Expr::vars() const {
    std::set<JetVar> s;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m)
            s.insert(v);
    return {s.begin(), s.end()};
}

int Expr::maxOrder(VarKind kind) const {
    int best = 0;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m)
            if (v.kind == kind)
                best = std::max(best, v.alpha.order());
    return best;
}

bool Expr::containsKind(VarKind kind) const {
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m)
            if (v.kind == kind)
                return true;
    return false;
}

std::map<std::pair<int, MultiIndex>, Expr> Expr::collectLinear(VarKind kind) const {
    std::map<std::pair<int, MultiIndex>, Expr> out;
    for (const auto& [m, c] : terms_) {
        int count = 0;
        const JetVar* hit = nullptr;
        for (const auto& [v, e] : m) {
            if (v.kind == kind) {
                count += e;
                hit = &v;
            }
        }
        if (count != 1)
            throw std::invalid_argument("Expr::collectLinear: not linear-homogeneous");
        Monomial rest;
        for (const auto& ve : m)
            if (!(ve.first == *hit))
                rest.push_back(ve);
        auto key = std::make_pair(hit->index, hit->alpha);
        out[key] += Rational(c) * Expr::fromTerms({{rest, Rational(1)}});
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second.isZero())
            it = out.erase(it);
        else
            ++it;
    }
    return out;
}

}  // namespace cartan
