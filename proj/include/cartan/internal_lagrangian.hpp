#pragma once

#include "cartan/equation.hpp"
#include "cartan/variational.hpp"

namespace cartan {

struct Membership {
    bool ok = false;
    DForm residue;  // contact-degree < 2 part of d l restricted to the equation
};

// dl restricted to the equation must have contact degree >= 2.
Membership isInternalLagrangian(const DForm& l, const EqSystem& sys);

// The Lemma-2 style map L -> [L + omega_L] restricted to the equation.
// Requires the Euler components of L to vanish on the equation; throws
// listing the nonvanishing components otherwise.
DForm internalOfLagrangian(const DForm& L, const EqSystem& sys);

// Stationary-action reconstruction from an internal Lagrangian, with exact
// certificates:
//   (a) euler(action) equals the emitted operator applied to the relation
//       components,
//   (b) euler(action) vanishes on the equation,
//   (c) reduceForm(action + omegaTotal) reproduces l.
struct ActionResult {
    DForm action;      // horizontal part of the extension
    DForm full;        // the extension itself
    DForm omegaTotal;  // (full - action) + the ideal-supported Cartan correction
    std::vector<Expr> aOperator;  // A(G): linear in the Aux family, Aux index =
                                  // relation index
    std::vector<Expr> eulerComponents;
    bool certIdentity = false;
    bool certEulerVanishes = false;
    bool certGauge = false;

    bool allCertified() const { return certIdentity && certEulerVanishes && certGauge; }
};
ActionResult actionFromInternal(const DForm& l, const EqSystem& sys);

// Presymplectic representative Omega = reduceForm(d l).
DForm presymplecticOf(const DForm& l, const EqSystem& sys);

struct CocycleCheck {
    bool ok = false;
    DForm residue;  // contact-degree < 3 part of d Omega on the equation
};
CocycleCheck presymplecticCocycleCheck(const DForm& omega, const EqSystem& sys);

// Witnesses for the quotient C^2 Lambda^n + d(C Lambda^{n-1}) (+ d-exact
// shifts of the bicomplex denominator via sigma).
struct GaugeWitness {
    DForm c;      // contact degree >= 2
    DForm rho;    // contact degree >= 1, degree n-1
    DForm sigma;  // unrestricted degree n-1
};
struct GaugeResult {
    bool ok = false;
    DForm residual;
};
GaugeResult gaugeCompare(const DForm& l1, const DForm& l2, const GaugeWitness& w,
                         const EqSystem& sys);

// Witnesses exhibiting internalOfLagrangian(L + d_h eta) - internalOfLagrangian(L)
// inside the quotient denominator, independent of L.
GaugeWitness exactShiftWitness(const DForm& eta, const EqSystem& sys);

// Solves d_h zeta = j for a horizontal form j with coefficients linear in the
// generic parameter; throws if the peeling strategy fails.
DForm invertHorizontalDiff(const DForm& j, int n);

}  // namespace cartan
