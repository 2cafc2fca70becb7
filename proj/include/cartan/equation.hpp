#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cartan/context.hpp"
#include "cartan/dform.hpp"

namespace cartan {

// One solved relation u^i_beta = R^i of an orthonomic system.
struct Relation {
    int dep = 0;
    MultiIndex beta;
    Expr rhs;
};

class EqSystem;

// Certificate f = Delta(F): f equals Sum coeff_{r,delta} D_delta(F^r) where
// F^r = u^{dep_r}_{beta_r} - R^r are the relation components.
struct IdealWitness {
    std::map<std::pair<int, MultiIndex>, Expr> coeffs;

    bool empty() const { return coeffs.empty(); }
    Expr expand(const EqSystem& sys) const;
    IdealWitness& operator+=(const IdealWitness& o);
};

// PDE system in solved orthonomic form together with its infinite
// prolongation, used as a rewrite system. Immutable after construction.
class EqSystem {
public:
    EqSystem(Context ctx, std::vector<Relation> relations, int maxOrder = 12);

    const Context& context() const { return ctx_; }
    int n() const { return ctx_.n(); }
    int m() const { return ctx_.m(); }
    int maxOrder() const { return maxOrder_; }
    const std::vector<Relation>& relations() const { return relations_; }

    // If v is a prolonged leading derivative, the matching relation index and
    // the prolongation multi-index delta (first declared relation wins).
    std::optional<std::pair<int, MultiIndex>> rule(const JetVar& v) const;

    // F^r = u^i_beta - R^r as an expression.
    Expr relationExpr(int r) const;

private:
    Context ctx_;
    std::vector<Relation> relations_;
    int maxOrder_;
};

struct ReduceResult {
    Expr normal;
    IdealWitness witness;
};

// Normal form of e modulo the prolonged relations, with the exact membership
// certificate e - normal = witness(F).
ReduceResult reduce(const Expr& e, const EqSystem& sys);

// Reduction trace of a form: the input equals
//   reduced + Sum_a dg_a ^ rho_a + Sum_b f_b * tau_b
// with every g_a, f_b in the ideal I (witnessed).
struct FormTrace {
    struct ExactTerm {
        Expr g;
        DForm rho;
        IdealWitness witness;
    };
    struct IdealTerm {
        Expr f;
        DForm tau;
        IdealWitness witness;
    };
    std::vector<ExactTerm> exact;
    std::vector<IdealTerm> ideal;
};

// Restriction of a form to the equation: coefficients are reduced, contact
// covectors of prolonged leading derivatives are rewritten through the
// theta-prolongation of the relations.
DForm reduceForm(const DForm& w, const EqSystem& sys, FormTrace* trace = nullptr);

// Extension lift: L with reduceForm(L) = reduceForm(l) and
// dL = contactB + Sum ideal.f * ideal.tau exactly, contactB of contact
// degree >= 2 and every ideal.f in I with witness.
struct ExtendResult {
    DForm full;
    DForm contactB;
    std::vector<FormTrace::IdealTerm> ideal;
};
ExtendResult extendForm(const DForm& l, const EqSystem& sys);

}  // namespace cartan
