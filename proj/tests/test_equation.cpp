#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cartan/equation.hpp"
#include "cartan/parser.hpp"

using namespace cartan;

namespace {

const Context kCtx{{"x", "t"}, {"u"}};

Expr E(const std::string& s) { return parseExpr(s, kCtx); }
DForm F(const std::string& s) { return parseForm(s, kCtx); }

EqSystem waveSystem(int maxOrder = 12) {
    return EqSystem(kCtx, {{0, MultiIndex({0, 2}), E("u_{xx}")}}, maxOrder);
}

EqSystem pkdvSystem() {
    Context c{{"x", "t"}, {"v"}};
    return EqSystem(c, {{0, MultiIndex({0, 1}),
                         parseExpr("1/2*v_{x}^2 + v_{xxx}", c)}});
}

// Alternative elimination order: always substitute the smallest reducible
// variable. Used to test confluence against the library's largest-first pick.
Expr reduceNaive(Expr e, const EqSystem& sys) {
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

Expr randomExpr(std::mt19937_64& rng, const Context& ctx, int maxOrder) {
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
            mono *= Expr::var(JetVar::fiber(0, MultiIndex(a)));
        }
        if (coef(rng) > 2)
            mono *= Expr::var(JetVar::base(coef(rng) & 1));
        e += mono;
    }
    return e;
}

DForm randomForm(std::mt19937_64& rng, const Context& ctx, int deg) {
    std::uniform_int_distribution<int> pick(0, 3);
    DForm f;
    for (int t = 0; t < 2; ++t) {
        WedgeWord w;
        for (int k = 0; k < deg; ++k) {
            if (pick(rng) < 2) {
                w.push_back(Covector::dx(pick(rng) & 1));
            } else {
                std::vector<int> a{pick(rng), pick(rng)};
                w.push_back(Covector::contact(JetVar::fiber(0, MultiIndex(a))));
            }
        }
        f.add(std::move(w), randomExpr(rng, ctx, 2));
    }
    return f;
}

}  // namespace

TEST_CASE("system validation") {
    CHECK_THROWS(EqSystem(kCtx, {{0, MultiIndex({0, 1}), E("u_{tt}")}}));
    CHECK_THROWS(EqSystem(kCtx, {{0, MultiIndex({0, 2}), E("u_{xx}")},
                                 {0, MultiIndex({1, 2}), E("u")}}));
    CHECK_THROWS(EqSystem(kCtx, {{0, MultiIndex({0, 2}), E("u_{xx}")}}, 0));
    CHECK_NOTHROW(waveSystem());
    CHECK_NOTHROW(pkdvSystem());
}

TEST_CASE("reduce: wave reference values") {
    EqSystem wave = waveSystem();
    CHECK(reduce(E("u_{ttx}"), wave).normal == E("u_{xxx}"));
    CHECK(reduce(E("u_{x}"), wave).normal == E("u_{x}"));
    CHECK(reduce(E("u_{x}"), wave).witness.empty());
    CHECK(reduce(E("u_{tttt}"), wave).normal == E("u_{xxxx}"));
    CHECK(reduce(E("u_{tt}*u_{t} - u_{xx}*u_{t}"), wave).normal.isZero());
}

TEST_CASE("reduce: witness soundness, idempotence, algebra map") {
    EqSystem wave = waveSystem();
    EqSystem pkdv = pkdvSystem();
    std::mt19937_64 rng(5);
    for (const EqSystem* sys : {&wave, &pkdv}) {
        for (int t = 0; t < 60; ++t) {
            Expr e1 = randomExpr(rng, sys->context(), 4);
            Expr e2 = randomExpr(rng, sys->context(), 3);
            ReduceResult r1 = reduce(e1, *sys);
            CHECK(e1 - r1.normal == r1.witness.expand(*sys));
            CHECK(reduce(r1.normal, *sys).normal == r1.normal);
            Expr r2 = reduce(e2, *sys).normal;
            CHECK(reduce(e1 * e2, *sys).normal ==
                  reduce(r1.normal * r2, *sys).normal);
        }
    }
}

TEST_CASE("reduce: confluence under a different elimination order") {
    EqSystem wave = waveSystem();
    EqSystem pkdv = pkdvSystem();
    std::mt19937_64 rng(9);
    for (const EqSystem* sys : {&wave, &pkdv})
        for (int t = 0; t < 40; ++t) {
            Expr e = randomExpr(rng, sys->context(), 4);
            CHECK(reduce(e, *sys).normal == reduceNaive(e, *sys));
        }
}

TEST_CASE("reduce: compatibility with restricted total derivatives") {
    EqSystem wave = waveSystem();
    std::mt19937_64 rng(13);
    for (int t = 0; t < 40; ++t) {
        Expr e = randomExpr(rng, kCtx, 3);
        Expr lhs = reduce(e.totalDerivative(1, 2), wave).normal;
        Expr rhs = reduce(reduce(e, wave).normal.totalDerivative(1, 2), wave).normal;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("reduce: order bound guard") {
    EqSystem growth(kCtx, {{0, MultiIndex({1, 0}), E("u_{tt}")}}, 3);
    CHECK_THROWS_AS(reduce(E("u_{xxx}"), growth), std::runtime_error);
}

TEST_CASE("reduce_form: reference values on the wave system") {
    EqSystem wave = waveSystem();
    CHECK(reduceForm(F("th[u;tt]"), wave) == F("th[u;xx]"));
    CHECK(reduceForm(F("dx^dt"), wave) == F("dx^dt"));
    CHECK(reduceForm(F("u_{tt}*th[u]^dx"), wave) == F("u_{xx}*th[u]^dx"));
    // mixed prolongation
    CHECK(reduceForm(F("th[u;xtt]"), wave) == F("th[u;xxx]"));
}

TEST_CASE("reduce_form: trace reconstructs the input exactly") {
    EqSystem wave = waveSystem();
    std::mt19937_64 rng(21);
    for (int t = 0; t < 30; ++t) {
        DForm w = randomForm(rng, kCtx, std::uniform_int_distribution<int>(0, 3)(rng));
        FormTrace tr;
        DForm red = reduceForm(w, wave, &tr);
        DForm rebuilt = red;
        for (const auto& ex : tr.exact) {
            rebuilt += DForm::scalar(ex.g).deRham(2).wedge(ex.rho);
            CHECK(ex.witness.expand(wave) == ex.g);
        }
        for (const auto& id : tr.ideal) {
            rebuilt += id.tau.scaled(id.f);
            CHECK(id.witness.expand(wave) == id.f);
        }
        CHECK(rebuilt == w);
        CHECK(reduceForm(red, wave) == red);
    }
}

TEST_CASE("reduce_form commutes with d up to reduction") {
    EqSystem wave = waveSystem();
    std::mt19937_64 rng(31);
    for (int t = 0; t < 30; ++t) {
        DForm w = randomForm(rng, kCtx, std::uniform_int_distribution<int>(0, 2)(rng));
        CHECK(reduceForm(w.deRham(2), wave) ==
              reduceForm(reduceForm(w, wave).deRham(2), wave));
    }
}

TEST_CASE("extend_form: wave internal Lagrangian") {
    EqSystem wave = waveSystem();
    // l from the Lemma-2 map of the wave Lagrangian (computed by hand)
    DForm l = F("1/2*(u_{t}^2 - u_{x}^2)*dx^dt - u_{t}*th[u]^dx - u_{x}*th[u]^dt");
    ExtendResult ext = extendForm(l, wave);
    CHECK(reduceForm(ext.full, wave) == reduceForm(l, wave));
    CHECK(ext.contactB.inCp(2));
    // certified decomposition dL = b + Sum f*tau with each f in the ideal
    DForm d = ext.full.deRham(2);
    DForm rhs = ext.contactB;
    for (const auto& id : ext.ideal) {
        rhs += id.tau.scaled(id.f);
        CHECK(id.witness.expand(wave) == id.f);
        CHECK(reduce(id.f, wave).normal.isZero());
    }
    CHECK(d == rhs);
}

TEST_CASE("extend_form: trivial cases and hypothesis failure") {
    EqSystem wave = waveSystem();
    CHECK(extendForm(DForm(), wave).full.isZero());
    // already-internal l with dl in C^2 identically: a pure 2-contact form
    DForm l2 = F("th[u]^th[u;x]");
    ExtendResult e2 = extendForm(l2, wave);
    CHECK(reduceForm(e2.full, wave) == reduceForm(l2, wave));
    CHECK_THROWS_AS(extendForm(F("u*dx^dt"), wave), std::invalid_argument);
}
