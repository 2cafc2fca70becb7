#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cartan/parser.hpp"
#include "cartan/variational.hpp"

using namespace cartan;

namespace {

const Context kCtx1{{"x"}, {"u"}};
const Context kCtx2{{"x", "t"}, {"u"}};

DForm F1(const std::string& s) { return parseForm(s, kCtx1); }
Expr E1(const std::string& s) { return parseExpr(s, kCtx1); }
DForm F2(const std::string& s) { return parseForm(s, kCtx2); }
Expr E2(const std::string& s) { return parseExpr(s, kCtx2); }

// Independent oracle for the constant part of an IBP decomposition:
// mu_i = Sum_alpha (-1)^{|alpha|} D_alpha(Delta^alpha_i), coded directly
// from the adjoint formula, bypassing the elimination algorithm.
std::vector<Expr> muByAdjointFormula(const Expr& opExpr, int n, int m) {
    std::vector<Expr> mu(static_cast<size_t>(m), Expr(0));
    for (const auto& [key, c] : opExpr.collectLinear(VarKind::Phi)) {
        Expr term = c.totalDerivative(key.second);
        if (key.second.order() % 2 != 0)
            term = -term;
        mu[static_cast<size_t>(key.first)] += term;
    }
    return mu;
}

Expr randomLagrangianDensity(std::mt19937_64& rng, const Context& ctx, int maxOrder) {
    std::uniform_int_distribution<int> coef(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    Expr e;
    for (int t = 0; t < 3; ++t) {
        Expr mono(Rational(coef(rng), den(rng)));
        int nf = 1 + (coef(rng) & 1);
        for (int f = 0; f < nf; ++f) {
            std::vector<int> a(static_cast<size_t>(ctx.n()), 0);
            int total = std::uniform_int_distribution<int>(0, maxOrder)(rng);
            for (int k = 0; k < total; ++k)
                a[static_cast<size_t>(
                    std::uniform_int_distribution<int>(0, ctx.n() - 1)(rng))] += 1;
            mono *= Expr::var(ctx.u(coef(rng) & 0, MultiIndex(a)))
                        .pow(1 + (coef(rng) & 1));
        }
        if (coef(rng) > 2)
            mono *= Expr::var(JetVar::base(0));
        e += mono;
    }
    return e;
}

}  // namespace

TEST_CASE("euler operator on reference Lagrangians") {
    // L = 1/2 u_x^2 dx  ->  E = -u_xx
    SourceForm e1 = euler(F1("1/2*u_{x}^2*dx"), 1, 1);
    CHECK(e1.components[0] == E1("-u_{xx}"));
    // wave Lagrangian
    SourceForm e2 = euler(F2("1/2*(u_{t}^2 - u_{x}^2)*dx^dt"), 2, 1);
    CHECK(e2.components[0] == E2("-u_{tt} + u_{xx}"));
    // E kills d_h-exact forms
    SourceForm e3 = euler(F2("u^2*dx").horizontalDiff(2), 2, 1);
    CHECK(e3.isZero());
    CHECK_THROWS(euler(F2("u*th[u]^dx"), 2, 1));
    CHECK_THROWS(euler(F2("u*dx"), 2, 1));
}

TEST_CASE("euler depends only on the horizontal class") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 100; ++t) {
        DForm eta = DForm::scalar(randomLagrangianDensity(rng, kCtx2, 3))
                        .wedge(F2("dx"));
        CHECK(euler(eta.horizontalDiff(2), 2, 1).isZero());
    }
}

TEST_CASE("ibp_scalar reference decompositions") {
    // Delta(phi) = u D_x(phi) dx
    ScalarIBP d1 = ibpScalar(E1("u*ph[u;x]"), VarKind::Phi, 1, 1);
    CHECK(d1.mu[0] == E1("-u_{x}"));
    CHECK(d1.boundary[0] == E1("u*ph[u]"));
    // zero order
    ScalarIBP d2 = ibpScalar(E1("ph[u]"), VarKind::Phi, 1, 1);
    CHECK(d2.mu[0] == Expr(1));
    CHECK(d2.boundary[0].isZero());
    // Delta(phi) = D_xx(phi) dx
    ScalarIBP d3 = ibpScalar(E1("ph[u;xx]"), VarKind::Phi, 1, 1);
    CHECK(d3.mu[0].isZero());
    CHECK(d3.boundary[0] == E1("ph[u;x]"));
}

TEST_CASE("ibp_scalar: exact decomposition identity and mu uniqueness") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 80; ++t) {
        // random operator: Sum a^alpha phi_alpha with polynomial coefficients
        Expr op;
        for (int k = 0; k < 3; ++k) {
            std::vector<int> a{std::uniform_int_distribution<int>(0, 2)(rng),
                               std::uniform_int_distribution<int>(0, 2)(rng)};
            op += randomLagrangianDensity(rng, kCtx2, 2) *
                  Expr::var(JetVar::phi(0, MultiIndex(a)));
        }
        if (op.isZero())
            continue;
        ScalarIBP fwd = ibpScalar(op, VarKind::Phi, 2, 1);
        ScalarIBP rev = ibpScalar(op, VarKind::Phi, 2, 1, /*reverseOrder=*/true);
        CHECK(fwd.reassemble(2) == op);
        CHECK(rev.reassemble(2) == op);
        CHECK(fwd.mu == rev.mu);
        CHECK(fwd.mu == muByAdjointFormula(op, 2, 1));
        // the two boundary families differ by a d_h-closed remainder
        Expr diff;
        for (int k = 0; k < 2; ++k)
            diff += (fwd.boundary[static_cast<size_t>(k)] -
                     rev.boundary[static_cast<size_t>(k)])
                        .totalDerivative(k, 2);
        CHECK(diff.isZero());
    }
}

TEST_CASE("operator-valued decomposition (second generic slot)") {
    // nabla(G, phi) = G phi dx  ->  A(G) = G
    ScalarIBP a1 = ibpScalar(E1("g[u]*ph[u]"), VarKind::Phi, 1, 1);
    CHECK(a1.mu[0] == E1("g[u]"));
    // nabla(G, phi) = G D_x(phi) dx  ->  A(G) = -D_x(G), nabla_1 = G phi
    ScalarIBP a2 = ibpScalar(E1("g[u]*ph[u;x]"), VarKind::Phi, 1, 1);
    CHECK(a2.mu[0] == E1("-g[u;x]"));
    CHECK(a2.boundary[0] == E1("g[u]*ph[u]"));
    // nabla(G, phi) = D_x(G) phi dx  ->  already decomposed
    ScalarIBP a3 = ibpScalar(E1("g[u;x]*ph[u]"), VarKind::Phi, 1, 1);
    CHECK(a3.mu[0] == E1("g[u;x]"));
    CHECK(a3.boundary[0].isZero());
}

TEST_CASE("adjoint of scalar operators") {
    // (D_x)^* = -D_x
    CHECK(adjointScalar(E1("g[u;x]"), VarKind::Aux, 1) == E1("-g[u;x]"));
    // (u D_x)^*(psi) = -D_x(u psi) = -u_x psi - u psi_x
    CHECK(adjointScalar(E1("u*g[u;x]"), VarKind::Aux, 1) ==
          E1("-u_{x}*g[u] - u*g[u;x]"));
    // (D_xx)^* = D_xx
    CHECK(adjointScalar(E1("g[u;xx]"), VarKind::Aux, 1) == E1("g[u;xx]"));
}

TEST_CASE("adjoint is an involution and has a d_h-exactness witness") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 60; ++t) {
        Expr op;
        for (int k = 0; k < 2; ++k) {
            std::vector<int> a{std::uniform_int_distribution<int>(0, 3)(rng)};
            op += randomLagrangianDensity(rng, kCtx1, 2) *
                  Expr::var(JetVar::aux(0, MultiIndex(a)));
        }
        Expr adj = adjointScalar(op, VarKind::Aux, 1);
        CHECK(adjointScalar(adj, VarKind::Aux, 1) == op);
        // <Delta^*(psi), phi> - <psi, Delta(phi)> is d_h-exact: the constant
        // part of its phi-slot decomposition vanishes. Delta(phi) is op with
        // its argument slot renamed Aux -> Phi; psi stays in the Aux family.
        std::map<JetVar, Expr> rename;
        for (const JetVar& v : op.vars())
            if (v.kind == VarKind::Aux)
                rename[v] = Expr::var(JetVar::phi(0, v.alpha));
        Expr phi0 = Expr::var(JetVar::phi(0, MultiIndex(1)));
        Expr psi0 = Expr::var(JetVar::aux(0, MultiIndex(1)));
        Expr w = adj * phi0 - psi0 * op.substitute(rename);
        ScalarIBP ibp = ibpScalar(w, VarKind::Phi, 1, 1);
        CHECK(ibp.mu[0].isZero());
    }
}

TEST_CASE("noether form: reference constructions") {
    // L = 1/2 u_x^2 dx -> omega_L = u_x th[u]
    NoetherResult n1 = noetherForm(F1("1/2*u_{x}^2*dx"), 1, 1);
    CHECK(n1.omegaL == F1("u_{x}*th[u]"));
    CHECK(n1.mu.components[0] == E1("-u_{xx}"));
    CHECK(n1.omegaL.inCp(1));
    CHECK(lemmaMapResidual(F1("1/2*u_{x}^2*dx"), n1.omegaL, 1, 1).isZero());

    // wave Lagrangian; value frozen from the hand expansion of the
    // one-step integration by parts in each direction
    DForm wave = F2("1/2*(u_{t}^2 - u_{x}^2)*dx^dt");
    NoetherResult n2 = noetherForm(wave, 2, 2 - 1);
    CHECK(n2.omegaL == F2("-u_{x}*th[u]^dt - u_{t}*th[u]^dx"));
    CHECK(n2.omegaL.inCp(1));
    CHECK(lemmaMapResidual(wave, n2.omegaL, 2, 1).isZero());
    CHECK(noetherResidual(wave, n2.omegaL, 2, 1).isZero());

    // d_h-exact horizontal L with E[L] = 0: identity holds with both sides 0
    DForm dh = F2("u^2*dx").horizontalDiff(2);
    NoetherResult n3 = noetherForm(dh, 2, 1);
    CHECK(euler(dh, 2, 1).isZero());
    CHECK(lemmaMapResidual(dh, n3.omegaL, 2, 1).isZero());
    CHECK_THROWS(noetherForm(F2("u*dx"), 2, 1));
}

TEST_CASE("noether identity check on reference pairs") {
    CHECK(noetherResidual(F1("1/2*u_{x}^2*dx"), F1("u_{x}*th[u]"), 1, 1).isZero());
    CHECK(noetherResidual(F1("x*dx"), DForm(), 1, 1).isZero());
    // L = u dx, omega_L = 0: both routes give phi dx
    CHECK(noetherResidual(F1("u*dx"), DForm(), 1, 1).isZero());
}

TEST_CASE("noether form satisfies both identities on random Lagrangians") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 60; ++t) {
        DForm L = DForm::scalar(randomLagrangianDensity(rng, kCtx2, 2))
                      .wedge(F2("dx^dt"));
        NoetherResult nr = noetherForm(L, 2, 1);
        CHECK(nr.omegaL.inCp(1));
        CHECK(nr.mu.components == euler(L, 2, 1).components);
        CHECK(noetherResidual(L, nr.omegaL, 2, 1).isZero());
        CHECK(lemmaMapResidual(L, nr.omegaL, 2, 1).isZero());
    }
}

TEST_CASE("noether form absorbs contact parts of L") {
    // L with a contact term: omega_L must compensate it exactly
    DForm L = F2("1/2*u_{t}^2*dx^dt + u*th[u]^dx");
    NoetherResult nr = noetherForm(L, 2, 1);
    CHECK(nr.omegaL.inCp(1));
    CHECK(lemmaMapResidual(L, nr.omegaL, 2, 1).isZero());
}

TEST_CASE("Helmholtz cross-check: linearization of Euler output is self-adjoint") {
    for (const char* s : {"1/2*u_{t}^2 - 1/2*u_{x}^2", "1/2*u_{x}*u_{t} - 1/6*u_{x}^3 - 1/2*u_{xx}^2",
                          "u_{x}^2*u + u_{xt}*u_{t}*u"}) {
        SourceForm e = euler(DForm::scalar(E2(s)).wedge(F2("dx^dt")), 2, 1);
        CHECK(isSelfAdjoint(linearize(e.components, 2), 2, 1));
    }
    // and a non-variational operator is rejected
    std::vector<Expr> notSym{E2("ph[u;x]")};
    CHECK_FALSE(isSelfAdjoint(notSym, 2, 1));
}
