#pragma once

#include <map>
#include <vector>

#include "cartan/dform.hpp"

namespace cartan {

// Element of the adjoint module kappa-hat: mu = mu_i theta^i_0 ^ vol.
struct SourceForm {
    std::vector<Expr> components;  // one per dependent variable

    bool isZero() const {
        for (const auto& c : components)
            if (!c.isZero())
                return false;
        return true;
    }
    bool operator==(const SourceForm& o) const { return components == o.components; }

    // mu_i theta^i_0 ^ dx^1 ^ ... ^ dx^n (normalized to the canonical basis
    // order internally; the component convention is the displayed one).
    DForm asForm(int n) const;

    // <mu, phi> with the generic parameter: Sum mu_i phi^i_0, the
    // coefficient of the volume form.
    Expr pairGeneric(int n) const;
};

// Euler operator E: horizontal n-forms -> source forms,
// E_i = Sum_alpha (-1)^{|alpha|} D_alpha(dL/du^i_alpha).
SourceForm euler(const DForm& L, int n, int m);

// Integration by parts of an operator Delta: kappa -> horizontal n-forms.
// The operator is carried as the expression Delta(phi) (coefficient of the
// volume form), linear-homogeneous in the generic family `slot`; other
// generic families in the coefficients ride along untouched, which is what
// the operator-valued decomposition needs.
struct ScalarIBP {
    std::vector<Expr> boundary;   // B_k: Delta_1(phi) = Sum_k B_k i_{d/dx^k}(vol)
    std::vector<Expr> mu;         // constant part per component; free of `slot`
                                  // variables of positive order

    // The Cartan n-form omega with [i_{E_phi} omega]_h = Delta_1(phi)
    // (boundary theta-coefficients wedged with the contracted volume).
    DForm boundaryCartan(int n, int m) const;
    // d_h(Delta_1(phi)) + mu(phi): must reproduce the input operator.
    Expr reassemble(int n) const;
};
ScalarIBP ibpScalar(const Expr& opExpr, VarKind slot, int n, int m,
                    bool reverseOrder = false);

// Formal adjoint of a scalar operator in total derivatives. The operator is
// given as Delta(arg) linear in the `slot` family (component 0); the result
// is Delta^*(arg) in the same representation.
Expr adjointScalar(const Expr& opExpr, VarKind slot, int n);

struct NoetherResult {
    DForm omegaL;     // Cartan n-form of the Noether formula / Lemma-type map
    SourceForm mu;    // the source form produced by the decomposition
};

// Builds omega_L for an arbitrary n-form L: split off the horizontal part,
// integrate the operator phi -> Lie_{E_phi}[L]_h by parts, and absorb the
// contact remainder of L.
NoetherResult noetherForm(const DForm& L, int n, int m);

// Residual of Lie_{E_phi}[L]_h = <E[L]_h, phi> + d_h [i_{E_phi} omega_L]_h
// with the generic phi; zero iff the identity holds exactly.
DForm noetherResidual(const DForm& L, const DForm& omegaL, int n, int m);

// Residual of <E[L]_h, phi> = [i_{E_phi} d(L + omega_L)]_h.
DForm lemmaMapResidual(const DForm& L, const DForm& omegaL, int n, int m);

// Linearization of a tuple of source components:
// T_i(phi) = Sum_{j,alpha} dE_i/du^j_alpha phi^j_alpha.
std::vector<Expr> linearize(const std::vector<Expr>& components, int n);

// Self-adjointness of a linear operator tuple (entries linear in Phi):
// <T(phi), psi> - <phi, T(psi)> must be d_h-exact.
bool isSelfAdjoint(const std::vector<Expr>& op, int n, int m);

}  // namespace cartan
