#include "cartan/corpus.hpp"

#include <random>
#include <stdexcept>

#include "cartan/internal_lagrangian.hpp"
#include "cartan/parser.hpp"

namespace cartan {

namespace {

struct BuiltIn {
    const char* name;
    const char* text;
};

const BuiltIn kCorpus[] = {
    {"wave2d", R"([vars]
indep = x t
dep = u
[equations]
u_tt = u_xx
[lagrangian]
1/2*(u_{t}^2 - u_{x}^2)
)"},
    {"pkdv", R"([vars]
indep = x t
dep = v
[equations]
v_t = 1/2*v_{x}^2 + v_{xxx}
[lagrangian]
1/2*v_{x}*v_{t} - 1/6*v_{x}^3 + 1/2*v_{xx}^2
)"},
    {"maxwell3d", R"([vars]
indep = x y t
dep = ax ay at
[equations]
ax_tt = ax_yy - ay_xy + at_xt
ay_tt = ay_xx - ax_xy + at_yt
ax_xt = at_xx + at_yy - ay_yt
[lagrangian]
1/2*((at_{x} - ax_{t})^2 + (at_{y} - ay_{t})^2) - 1/2*(ay_{x} - ax_{y})^2
)"},
    {"maxwell4d", R"([vars]
indep = x y z t
dep = ax ay az at
[equations]
ax_tt = ax_yy + ax_zz - ay_xy - az_xz + at_xt
ay_tt = ay_xx + ay_zz - ax_xy - az_yz + at_yt
az_tt = az_xx + az_yy - ax_xz - ay_yz + at_zt
ax_xt = at_xx + at_yy + at_zz - ay_yt - az_zt
[lagrangian]
1/2*((at_{x} - ax_{t})^2 + (at_{y} - ay_{t})^2 + (at_{z} - az_{t})^2)
 - 1/2*((ay_{x} - ax_{y})^2 + (az_{x} - ax_{z})^2 + (az_{y} - ay_{z})^2)
)"},
    {"scalar_field_nd", R"([vars]
indep = x y t
dep = u
[equations]
u_tt = u_xx + u_yy
[lagrangian]
1/2*(u_{t}^2 - u_{x}^2 - u_{y}^2)
)"},
};

DForm lagrangianForm(const ProblemFile& pf) {
    if (!pf.lagrangian)
        throw std::invalid_argument("problem file has no [lagrangian] section");
    return DForm::scalar(*pf.lagrangian).wedge(volumeForm(pf.ctx.n()));
}

// Smallest-first elimination, used to sample confluence against the
// library's largest-first strategy.
Expr reduceSmallestFirst(Expr e, const EqSystem& sys) {
    for (;;) {
        const JetVar* pick = nullptr;
        std::pair<int, MultiIndex> ru;
        std::vector<JetVar> vars = e.vars();
        for (const JetVar& v : vars) {
            auto q = sys.rule(v);
            if (!q)
                continue;
            if (!pick || v.alpha < pick->alpha) {
                pick = &v;
                ru = *q;
            }
        }
        if (!pick)
            return e;
        Expr rhs = sys.relations()[static_cast<size_t>(ru.first)].rhs.totalDerivative(
            ru.second);
        e = e.substitute({{*pick, rhs}});
    }
}

Expr sampleExpr(std::mt19937_64& rng, const Context& ctx) {
    std::uniform_int_distribution<int> coef(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    std::uniform_int_distribution<int> dir(0, ctx.n() - 1);
    std::uniform_int_distribution<int> dep(0, ctx.m() - 1);
    std::uniform_int_distribution<int> ord(0, 3);
    Expr e;
    for (int t = 0; t < 3; ++t) {
        Expr mono(Rational(coef(rng), den(rng)));
        for (int f = 0; f < 2; ++f) {
            std::vector<int> a(static_cast<size_t>(ctx.n()), 0);
            int total = ord(rng);
            for (int k = 0; k < total; ++k)
                a[static_cast<size_t>(dir(rng))] += 1;
            mono *= Expr::var(JetVar::fiber(dep(rng), MultiIndex(a)));
        }
        e += mono;
    }
    return e;
}

void echoInputs(Report& rep, const ProblemFile& pf) {
    std::string indep, dep;
    for (const std::string& s : pf.ctx.indep)
        indep += (indep.empty() ? "" : " ") + s;
    for (const std::string& s : pf.ctx.dep)
        dep += (dep.empty() ? "" : " ") + s;
    rep.inputs.emplace_back("indep", indep);
    rep.inputs.emplace_back("dep", dep);
    for (const Relation& r : pf.equations)
        rep.inputs.emplace_back(
            "equation",
            toString(Expr::var(JetVar::fiber(r.dep, r.beta)), pf.ctx) + " = " +
                toString(r.rhs, pf.ctx));
    if (pf.lagrangian)
        rep.inputs.emplace_back("lagrangian", toString(*pf.lagrangian, pf.ctx));
    for (const auto& [name, f] : pf.forms)
        rep.inputs.emplace_back("form " + name, toString(f, pf.ctx));
    rep.inputs.emplace_back("max-order", std::to_string(pf.maxOrder));
}

// The internal Lagrangian the commands operate on: an explicit [form l]
// wins, otherwise it is derived from the Lagrangian.
DForm internalInput(const ProblemFile& pf, const EqSystem& sys) {
    if (const DForm* f = pf.form("l"))
        return reduceForm(*f, sys);
    if (!pf.lagrangian)
        throw std::invalid_argument("need a [form l] or a [lagrangian] section");
    return internalOfLagrangian(lagrangianForm(pf), sys);
}

Report runEuler(const ProblemFile& pf) {
    Report rep;
    rep.command = "euler";
    echoInputs(rep, pf);
    DForm L = lagrangianForm(pf);
    SourceForm eu = euler(L, pf.ctx.n(), pf.ctx.m());
    for (int i = 0; i < pf.ctx.m(); ++i)
        rep.info("E[" + pf.ctx.dep[static_cast<size_t>(i)] + "]",
                 toString(eu.components[static_cast<size_t>(i)], pf.ctx));
    return rep;
}

Report runInternal(const ProblemFile& pf) {
    Report rep;
    rep.command = "internal";
    echoInputs(rep, pf);
    EqSystem sys = pf.system();
    DForm L = lagrangianForm(pf);
    SourceForm eu = euler(L, sys.n(), sys.m());
    bool onShell = true;
    std::string comps;
    for (const Expr& c : eu.components) {
        Expr r = reduce(c, sys).normal;
        if (!r.isZero())
            onShell = false;
        comps += (comps.empty() ? "" : ", ") + toString(r, pf.ctx);
    }
    rep.check("euler_on_shell", onShell, comps);
    if (!onShell)
        return rep;
    DForm l = internalOfLagrangian(L, sys);
    rep.info("l", toString(l, pf.ctx));
    Membership mem = isInternalLagrangian(l, sys);
    rep.check("internal_lagrangian", mem.ok,
              mem.ok ? "" : toString(mem.residue, pf.ctx));
    DForm omega = presymplecticOf(l, sys);
    rep.info("presymplectic", toString(omega, pf.ctx));
    CocycleCheck cc = presymplecticCocycleCheck(omega, sys);
    rep.check("cocycle", cc.ok, cc.ok ? "" : toString(cc.residue, pf.ctx));
    return rep;
}

Report runRoundtrip(const ProblemFile& pf) {
    Report rep;
    rep.command = "roundtrip";
    echoInputs(rep, pf);
    EqSystem sys = pf.system();
    DForm l = internalInput(pf, sys);
    Membership mem = isInternalLagrangian(l, sys);
    rep.check("internal_lagrangian", mem.ok,
              mem.ok ? "" : toString(mem.residue, pf.ctx));
    if (!mem.ok)
        return rep;
    ActionResult act = actionFromInternal(l, sys);
    rep.info("action", toString(act.action, pf.ctx));
    rep.check("cert_operator_identity", act.certIdentity);
    rep.check("cert_euler_on_shell", act.certEulerVanishes);
    rep.check("cert_gauge_equality", act.certGauge);
    return rep;
}

Report runReduce(const ProblemFile& pf) {
    Report rep;
    rep.command = "reduce";
    echoInputs(rep, pf);
    EqSystem sys = pf.system();
    if (!pf.lagrangian && pf.forms.empty())
        throw std::invalid_argument("reduce: nothing to reduce (no lagrangian or forms)");
    if (pf.lagrangian)
        rep.info("lagrangian_reduced",
                 toString(reduce(*pf.lagrangian, sys).normal, pf.ctx));
    for (const auto& [name, f] : pf.forms)
        rep.info(name + "_reduced", toString(reduceForm(f, sys), pf.ctx));
    return rep;
}

Report runPresymplectic(const ProblemFile& pf) {
    Report rep;
    rep.command = "presymplectic";
    echoInputs(rep, pf);
    EqSystem sys = pf.system();
    DForm l = internalInput(pf, sys);
    Membership mem = isInternalLagrangian(l, sys);
    rep.check("internal_lagrangian", mem.ok,
              mem.ok ? "" : toString(mem.residue, pf.ctx));
    if (!mem.ok)
        return rep;
    DForm omega = presymplecticOf(l, sys);
    rep.info("presymplectic", toString(omega, pf.ctx));
    rep.check("two_contact", omega.inCp(2));
    CocycleCheck cc = presymplecticCocycleCheck(omega, sys);
    rep.check("cocycle", cc.ok, cc.ok ? "" : toString(cc.residue, pf.ctx));
    rep.info("hidden_probe", omega.isZero() ? "representative is zero"
                                            : "representative is nonzero");
    return rep;
}

void appendRun(Report& rep, const CorpusRun& run, const std::string& prefix) {
    rep.check(prefix + "helmholtz", run.helmholtz);
    rep.check(prefix + "noether_identity", run.noetherIdentity);
    rep.check(prefix + "lemma1_map", run.lemma1Map);
    rep.check(prefix + "euler_on_shell", run.eulerOnShell);
    rep.check(prefix + "confluence", run.confluence);
    rep.check(prefix + "ideal_witnesses", run.witnesses);
    rep.check(prefix + "internal_lagrangian", run.membership);
    rep.check(prefix + "cert_operator_identity", run.certIdentity);
    rep.check(prefix + "cert_euler_on_shell", run.certEuler);
    rep.check(prefix + "cert_gauge_equality", run.certGauge);
    rep.check(prefix + "cocycle", run.cocycle);
    rep.check(prefix + "presymplectic_nonzero", run.representativeNonzero);
}

}  // namespace

std::vector<std::string> corpusNames() {
    std::vector<std::string> out;
    for (const BuiltIn& b : kCorpus)
        out.emplace_back(b.name);
    return out;
}

std::string corpusProblemText(const std::string& name) {
    for (const BuiltIn& b : kCorpus)
        if (name == b.name)
            return b.text;
    std::string avail;
    for (const BuiltIn& b : kCorpus)
        avail += std::string(avail.empty() ? "" : ", ") + b.name;
    throw std::invalid_argument("unknown corpus entry `" + name +
                                "`; available: " + avail);
}

ProblemFile corpusProblem(const std::string& name, int maxOrder) {
    ProblemFile pf = parseProblemFile(corpusProblemText(name));
    if (maxOrder > 0)
        pf.maxOrder = maxOrder;
    return pf;
}

bool CorpusRun::allPass() const {
    return helmholtz && noetherIdentity && lemma1Map && eulerOnShell && confluence &&
           witnesses && membership && certIdentity && certEuler && certGauge &&
           cocycle && representativeNonzero;
}

CorpusRun runCorpusEntry(const std::string& name, int maxOrder) {
    ProblemFile pf = corpusProblem(name, maxOrder);
    EqSystem sys = pf.system();
    const int n = sys.n(), m = sys.m();
    CorpusRun run;
    run.name = name;

    DForm L = lagrangianForm(pf);
    SourceForm eu = euler(L, n, m);
    run.helmholtz = isSelfAdjoint(linearize(eu.components, n), n, m);
    NoetherResult nf = noetherForm(L, n, m);
    run.noetherIdentity = noetherResidual(L, nf.omegaL, n, m).isZero();
    run.lemma1Map = lemmaMapResidual(L, nf.omegaL, n, m).isZero();

    run.eulerOnShell = true;
    for (const Expr& c : eu.components)
        if (!reduce(c, sys).normal.isZero())
            run.eulerOnShell = false;

    std::mt19937_64 rng(101);
    run.confluence = true;
    run.witnesses = true;
    for (int t = 0; t < 20; ++t) {
        Expr e = sampleExpr(rng, pf.ctx);
        ReduceResult rr = reduce(e, sys);
        if (rr.normal != reduceSmallestFirst(e, sys))
            run.confluence = false;
        if (e - rr.normal != rr.witness.expand(sys))
            run.witnesses = false;
    }

    if (!run.eulerOnShell)
        return run;
    DForm l = internalOfLagrangian(L, sys);
    run.membership = isInternalLagrangian(l, sys).ok;
    ActionResult act = actionFromInternal(l, sys);
    run.certIdentity = act.certIdentity;
    run.certEuler = act.certEulerVanishes;
    run.certGauge = act.certGauge;
    DForm omega = presymplecticOf(l, sys);
    run.cocycle = presymplecticCocycleCheck(omega, sys).ok;
    run.representativeNonzero = !omega.isZero();
    return run;
}

Report corpusReport(const std::string& nameOrAll, int maxOrder) {
    Report rep;
    rep.command = "corpus";
    rep.inputs.emplace_back("entry", nameOrAll);
    if (nameOrAll == "all") {
        for (const std::string& name : corpusNames())
            appendRun(rep, runCorpusEntry(name, maxOrder), name + ".");
    } else {
        appendRun(rep, runCorpusEntry(nameOrAll, maxOrder), "");
    }
    return rep;
}

Report runCommand(const std::string& command, const ProblemFile& pf) {
    if (command == "euler")
        return runEuler(pf);
    if (command == "internal")
        return runInternal(pf);
    if (command == "roundtrip")
        return runRoundtrip(pf);
    if (command == "reduce")
        return runReduce(pf);
    if (command == "presymplectic")
        return runPresymplectic(pf);
    throw std::invalid_argument("unknown command `" + command + "`");
}

}  // namespace cartan
