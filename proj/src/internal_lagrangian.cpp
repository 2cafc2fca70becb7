#include "cartan/internal_lagrangian.hpp"

#include <stdexcept>

#include "cartan/parser.hpp"

namespace cartan {

namespace {

Expr volumeCoefficient(const DForm& f, int n) {
    WedgeWord vol;
    for (int i = 0; i < n; ++i)
        vol.push_back(Covector::dx(i));
    auto it = f.terms().find(vol);
    return it == f.terms().end() ? Expr(0) : it->second;
}

DForm lowContactPart(const DForm& f, int below) {
    DForm out;
    for (int p = 0; p < below; ++p)
        out += f.contactPart(p);
    return out;
}

}  // namespace

Membership isInternalLagrangian(const DForm& l, const EqSystem& sys) {
    DForm d = reduceForm(l.deRham(sys.n()), sys);
    Membership out;
    out.residue = lowContactPart(d, 2);
    out.ok = out.residue.isZero();
    return out;
}

DForm internalOfLagrangian(const DForm& L, const EqSystem& sys) {
    const int n = sys.n(), m = sys.m();
    SourceForm eu = euler(L, n, m);
    std::string bad;
    for (const Expr& c : eu.components)
        if (!reduce(c, sys).normal.isZero())
            bad += (bad.empty() ? "" : ", ") + toString(c, sys.context());
    if (!bad.empty())
        throw std::invalid_argument(
            "internal_of_lagrangian: Euler components do not vanish on the "
            "equation: " + bad);
    return reduceForm(L + noetherForm(L, n, m).omegaL, sys);
}

ActionResult actionFromInternal(const DForm& l, const EqSystem& sys) {
    const int n = sys.n(), m = sys.m();
    Membership mem = isInternalLagrangian(l, sys);
    if (!mem.ok)
        throw std::invalid_argument(
            "action_from_internal: not an internal Lagrangian; residue " +
            toString(mem.residue, sys.context()));
    ExtendResult ext = extendForm(l, sys);
    ActionResult res;
    res.full = ext.full;
    res.action = ext.full.contactPart(0);

    // nabla(G, phi) = Sum_a f_a(G) * [i_phi tau_a]_h, the ideal part of
    // [i_phi d full]_h with the relation components replaced by the generic
    // family G
    Expr nabla;
    for (const auto& id : ext.ideal) {
        Expr fG;
        for (const auto& [key, c] : id.witness.coeffs)
            fG += c * Expr::var(JetVar::aux(key.first, key.second));
        DForm ic = id.tau.interiorGenericPhi().contactPart(0);
        if (ic.isZero())
            continue;
        nabla += fG * volumeCoefficient(ic, n);
    }
    ScalarIBP ibp = ibpScalar(nabla, VarKind::Phi, n, m);
    res.aOperator = ibp.mu;

    // G -> F substitution
    std::map<JetVar, Expr> gsub;
    auto collect = [&](const Expr& e) {
        for (const JetVar& v : e.vars())
            if (v.kind == VarKind::Aux)
                gsub[v] = sys.relationExpr(v.index).totalDerivative(v.alpha);
    };
    for (const Expr& e : ibp.mu)
        collect(e);
    for (const Expr& e : ibp.boundary)
        collect(e);

    SourceForm eu = euler(res.action, n, m);
    res.eulerComponents = eu.components;
    res.certIdentity = true;
    for (size_t i = 0; i < eu.components.size(); ++i)
        if (ibp.mu[i].substitute(gsub) != eu.components[i])
            res.certIdentity = false;
    res.certEulerVanishes = true;
    for (const Expr& c : eu.components)
        if (!reduce(c, sys).normal.isZero())
            res.certEulerVanishes = false;

    DForm omegaI = ibp.boundaryCartan(n, m).substituteCoeffs(gsub);
    res.omegaTotal = (ext.full - res.action) + omegaI;
    res.certGauge =
        reduceForm(res.action + res.omegaTotal, sys) == reduceForm(l, sys);
    return res;
}

DForm presymplecticOf(const DForm& l, const EqSystem& sys) {
    return reduceForm(l.deRham(sys.n()), sys);
}

CocycleCheck presymplecticCocycleCheck(const DForm& omega, const EqSystem& sys) {
    DForm d = reduceForm(omega.deRham(sys.n()), sys);
    CocycleCheck out;
    out.residue = lowContactPart(d, 3);
    out.ok = out.residue.isZero();
    return out;
}

GaugeResult gaugeCompare(const DForm& l1, const DForm& l2, const GaugeWitness& w,
                         const EqSystem& sys) {
    const int n = sys.n();
    GaugeResult out;
    if (!w.c.inCp(2) || !w.rho.inCp(1)) {
        out.residual = l1 - l2;
        return out;
    }
    DForm diff = l1 - l2 - w.c - w.rho.deRham(n) - w.sigma.deRham(n);
    out.residual = reduceForm(diff, sys);
    out.ok = out.residual.isZero();
    return out;
}

DForm invertHorizontalDiff(const DForm& j, int n) {
    DForm zeta;
    DForm rem = j;
    for (int iter = 0; iter < 20000 && !rem.isZero(); ++iter) {
        // pick the entry with the graded-lex largest parameter index that
        // admits stripping a direction present in its word
        bool found = false;
        WedgeWord bestWord;
        std::pair<int, MultiIndex> bestKey{0, MultiIndex(n)};
        Expr bestCoeff;
        int bestDir = -1;
        for (const auto& [word, coeff] : rem.terms()) {
            for (const auto& [key, c] : coeff.collectLinear(VarKind::Phi)) {
                int missing = -1;
                std::vector<bool> present(static_cast<size_t>(n), false);
                for (const Covector& cv : word)
                    present[static_cast<size_t>(cv.dir)] = true;
                for (int k = 0; k < n; ++k)
                    if (!present[static_cast<size_t>(k)])
                        missing = k;
                int dir = -1;
                for (int ldir = 0; ldir < n; ++ldir)
                    if (ldir != missing && present[static_cast<size_t>(ldir)] &&
                        key.second[ldir] > 0) {
                        dir = ldir;
                        // directions below the missing one keep the peeling
                        // measure decreasing; take the first such if any
                        if (ldir < missing)
                            break;
                    }
                if (dir < 0)
                    continue;
                if (!found || bestKey.second < key.second) {
                    found = true;
                    bestWord = word;
                    bestKey = key;
                    bestCoeff = c;
                    bestDir = dir;
                }
            }
        }
        if (!found)
            throw std::runtime_error("invertHorizontalDiff: no strippable term");
        // remove dx^dir from the word, tracking the sign
        WedgeWord v = bestWord;
        int pos = 0;
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i] == Covector::dx(bestDir)) {
                pos = static_cast<int>(i);
                break;
            }
        v.erase(v.begin() + pos);
        Expr s = (pos % 2 == 0 ? bestCoeff : -bestCoeff) *
                 Expr::var(JetVar::phi(bestKey.first,
                                       bestKey.second - MultiIndex(n).plus(bestDir)));
        DForm piece;
        piece.add(v, s);
        zeta += piece;
        rem -= piece.horizontalDiff(n);
    }
    if (!rem.isZero())
        throw std::runtime_error("invertHorizontalDiff: peeling did not terminate");
    return zeta;
}

GaugeWitness exactShiftWitness(const DForm& eta, const EqSystem& sys) {
    const int n = sys.n(), m = sys.m();
    DForm dhEta = eta.horizontalDiff(n);
    NoetherResult nf = noetherForm(dhEta, n, m);
    // difference between the construction's boundary form and the Lie-type
    // one carried by d eta
    DForm domega = nf.omegaL - eta.deRham(n).contactPart(1);
    DForm zeta = invertHorizontalDiff(domega.interiorGenericPhi().contactPart(0), n);
    DForm rho;
    for (const auto& [word, coeff] : zeta.terms()) {
        for (const auto& [key, c] : coeff.collectLinear(VarKind::Phi)) {
            // [i_phi d rho]_h = -d_h(i_phi rho) for contact rho, hence the sign
            WedgeWord w{Covector::contact(JetVar::fiber(key.first, key.second))};
            w.insert(w.end(), word.begin(), word.end());
            rho.add(std::move(w), -c);
        }
    }
    DForm c = domega - rho.deRham(n);
    if (!c.inCp(2))
        throw std::logic_error("exactShiftWitness: correction not 2-contact");
    return {c, rho, eta};
}

}  // namespace cartan
