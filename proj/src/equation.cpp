#include "cartan/equation.hpp"

#include <stdexcept>

#include "cartan/parser.hpp"

namespace cartan {

namespace {

constexpr int kIterationCap = 500000;

[[noreturn]] void nonTerminating() {
    throw std::runtime_error(
        "reduce: rewrite did not terminate (non-orthonomic system?)");
}

}  // namespace

Expr IdealWitness::expand(const EqSystem& sys) const {
    Expr out;
    for (const auto& [key, c] : coeffs)
        out += c * sys.relationExpr(key.first).totalDerivative(key.second);
    return out;
}

IdealWitness& IdealWitness::operator+=(const IdealWitness& o) {
    for (const auto& [key, c] : o.coeffs) {
        Expr& slot = coeffs[key];
        slot += c;
        if (slot.isZero())
            coeffs.erase(key);
    }
    return *this;
}

EqSystem::EqSystem(Context ctx, std::vector<Relation> relations, int maxOrder)
    : ctx_(std::move(ctx)), relations_(std::move(relations)), maxOrder_(maxOrder) {
    ctx_.validate();
    if (maxOrder_ < 1)
        throw std::invalid_argument("EqSystem: max derivative order must be >= 1");
    for (const Relation& rel : relations_) {
        if (rel.dep < 0 || rel.dep >= m())
            throw std::invalid_argument("EqSystem: relation for unknown dependent variable");
        if (rel.beta.size() != n())
            throw std::invalid_argument("EqSystem: multi-index dimension mismatch");
        if (rel.beta.order() > maxOrder_)
            throw std::invalid_argument("EqSystem: leading derivative beyond order bound");
    }
    // solved form: no right-hand side may contain a leading derivative or any
    // of its prolongations, and no leading derivative may prolong another
    for (size_t a = 0; a < relations_.size(); ++a) {
        for (size_t b = 0; b < relations_.size(); ++b) {
            if (a == b)
                continue;
            if (relations_[a].dep == relations_[b].dep &&
                relations_[a].beta.dominates(relations_[b].beta))
                throw std::invalid_argument(
                    "EqSystem: a leading derivative prolongs another relation");
        }
        for (const JetVar& v : relations_[a].rhs.vars()) {
            if (v.kind != VarKind::Fiber)
                continue;
            if (rule(v))
                throw std::invalid_argument(
                    "EqSystem: right-hand side contains a prolonged leading derivative");
        }
    }
}

std::optional<std::pair<int, MultiIndex>> EqSystem::rule(const JetVar& v) const {
    if (v.kind != VarKind::Fiber)
        return std::nullopt;
    for (size_t r = 0; r < relations_.size(); ++r) {
        const Relation& rel = relations_[r];
        if (rel.dep == v.index && v.alpha.dominates(rel.beta))
            return std::make_pair(static_cast<int>(r), v.alpha - rel.beta);
    }
    return std::nullopt;
}

Expr EqSystem::relationExpr(int r) const {
    const Relation& rel = relations_.at(static_cast<size_t>(r));
    return Expr::var(JetVar::fiber(rel.dep, rel.beta)) - rel.rhs;
}

ReduceResult reduce(const Expr& e, const EqSystem& sys) {
    Expr cur = e;
    IdealWitness w;
    for (int iter = 0;; ++iter) {
        if (iter > kIterationCap)
            nonTerminating();
        // largest reducible jet variable first
        const JetVar* pick = nullptr;
        std::pair<int, MultiIndex> ru;
        std::vector<JetVar> vars = cur.vars();
        for (const JetVar& v : vars) {
            auto q = sys.rule(v);
            if (!q)
                continue;
            if (!pick || pick->alpha < v.alpha ||
                (pick->alpha == v.alpha && pick->index < v.index)) {
                pick = &v;
                ru = *q;
            }
        }
        if (!pick)
            break;
        if (pick->alpha.order() > sys.maxOrder())
            throw std::runtime_error("reduce: derivative order bound exceeded");
        const JetVar v = *pick;
        Expr rhs = sys.relations()[static_cast<size_t>(ru.first)].rhs.totalDerivative(
            ru.second);
        // synthetic division: cur(v) - cur(rhs) = (v - rhs) * quotient
        Expr quotient;
        Expr vE = Expr::var(v);
        for (const auto& [mono, c] : cur.terms()) {
            int k = 0;
            Expr rest{Rational(c)};
            for (const auto& [var, exp] : mono) {
                if (var == v)
                    k = exp;
                else
                    rest *= Expr::var(var).pow(exp);
            }
            if (k == 0)
                continue;
            Expr geom;
            for (int j = 0; j < k; ++j)
                geom += vE.pow(j) * rhs.pow(k - 1 - j);
            quotient += rest * geom;
        }
        cur = cur.substitute({{v, rhs}});
        Expr& slot = w.coeffs[ru];
        slot += quotient;
        if (slot.isZero())
            w.coeffs.erase(ru);
    }
    return {cur, w};
}

DForm reduceForm(const DForm& w, const EqSystem& sys, FormTrace* trace) {
    const int n = sys.n();
    DForm out;
    std::vector<std::pair<WedgeWord, Expr>> work(w.terms().begin(), w.terms().end());
    int iter = 0;
    while (!work.empty()) {
        if (++iter > kIterationCap)
            nonTerminating();
        auto [word, coeff] = std::move(work.back());
        work.pop_back();
        if (coeff.isZero())
            continue;
        int p = -1;
        std::pair<int, MultiIndex> ru;
        for (size_t i = 0; i < word.size(); ++i) {
            const Covector& c = word[i];
            if (c.horizontal)
                continue;
            auto q = sys.rule(c.theta);
            if (q) {
                p = static_cast<int>(i);
                ru = *q;
                break;
            }
        }
        if (p < 0) {
            ReduceResult rr = reduce(coeff, sys);
            if (trace && !rr.witness.empty()) {
                DForm tau;
                tau.add(word, Expr(1));
                trace->ideal.push_back({coeff - rr.normal, tau, rr.witness});
            }
            out.add(std::move(word), std::move(rr.normal));
            continue;
        }
        const JetVar v = word[static_cast<size_t>(p)].theta;
        if (v.alpha.order() > sys.maxOrder())
            throw std::runtime_error("reduce_form: derivative order bound exceeded");
        Expr rhs = sys.relations()[static_cast<size_t>(ru.first)].rhs.totalDerivative(
            ru.second);
        if (trace) {
            // theta_v = theta[rhs] + dg - Sum_k D_k(g) dx^k with g = v - rhs
            Expr g = Expr::var(v) - rhs;
            WedgeWord pp = word;
            pp.erase(pp.begin() + p);
            DForm rho;
            rho.add(std::move(pp), p % 2 == 0 ? coeff : -coeff);
            IdealWitness gw;
            gw.coeffs[ru] = Expr(1);
            trace->exact.push_back({g, rho, gw});
            for (int k = 0; k < n; ++k) {
                WedgeWord wk = word;
                wk[static_cast<size_t>(p)] = Covector::dx(k);
                DForm tau;
                tau.add(std::move(wk), -coeff);
                if (tau.isZero())
                    continue;
                IdealWitness dw;
                dw.coeffs[{ru.first, ru.second.plus(k)}] = Expr(1);
                trace->ideal.push_back({g.totalDerivative(k, n), tau, dw});
            }
        }
        for (const JetVar& u : rhs.vars()) {
            if (u.kind != VarKind::Fiber)
                continue;
            Expr pd = rhs.partial(u);
            if (pd.isZero())
                continue;
            WedgeWord wu = word;
            wu[static_cast<size_t>(p)] = Covector::contact(u);
            DForm t;
            t.add(std::move(wu), coeff * pd);
            for (const auto& [w2, c2] : t.terms())
                work.emplace_back(w2, c2);
        }
    }
    return out;
}

ExtendResult extendForm(const DForm& l, const EqSystem& sys) {
    const int n = sys.n();
    DForm lred = reduceForm(l, sys);
    FormTrace tr;
    DForm b = reduceForm(lred.deRham(n), sys, &tr);
    DForm low = b.contactPart(0) + b.contactPart(1);
    if (!low.isZero())
        throw std::invalid_argument(
            "extend_form: dl is not in C^2 on the equation; residue " +
            toString(low, sys.context()));
    ExtendResult res;
    res.full = lred;
    res.contactB = b;
    res.ideal = tr.ideal;
    for (const auto& ex : tr.exact) {
        res.full -= ex.rho.scaled(ex.g);
        DForm tau = -ex.rho.deRham(n);
        if (tau.isZero())
            continue;
        res.ideal.push_back({ex.g, tau, ex.witness});
    }
    return res;
}

}  // namespace cartan
