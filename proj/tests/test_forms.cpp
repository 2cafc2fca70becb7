#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cartan/parser.hpp"

using namespace cartan;

namespace {

const Context kCtx{{"x", "t"}, {"u"}};

DForm F(const std::string& s) { return parseForm(s, kCtx); }
Expr E(const std::string& s) { return parseExpr(s, kCtx); }

// Random differential-polynomial form generator shared with the property
// suites. Orders <= 4, small coefficients.
struct RandomForms {
    std::mt19937_64 rng;
    Context ctx;
    explicit RandomForms(unsigned seed, Context c = kCtx) : rng(seed), ctx(std::move(c)) {}

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

    MultiIndex randAlpha(int maxOrder = 4) {
        std::vector<int> v(static_cast<size_t>(ctx.n()), 0);
        int total = pick(0, maxOrder);
        for (int k = 0; k < total; ++k)
            v[static_cast<size_t>(pick(0, ctx.n() - 1))] += 1;
        return MultiIndex(v);
    }

    Expr randExpr(int nTerms = 2) {
        Expr e;
        for (int t = 0; t < nTerms; ++t) {
            Expr m(Rational(pick(-5, 5), pick(1, 3)));
            int nf = pick(0, 2);
            for (int f = 0; f < nf; ++f)
                m *= Expr::var(ctx.u(pick(0, ctx.m() - 1), randAlpha())).pow(pick(1, 2));
            if (pick(0, 2) == 0)
                m *= Expr::var(JetVar::base(pick(0, ctx.n() - 1)));
            e += m;
        }
        return e;
    }

    Covector randCovector() {
        if (pick(0, 1) == 0)
            return Covector::dx(pick(0, ctx.n() - 1));
        return Covector::contact(ctx.u(pick(0, ctx.m() - 1), randAlpha()));
    }

    DForm randForm(int deg, int nTerms = 2) {
        DForm f;
        for (int t = 0; t < nTerms; ++t) {
            WedgeWord w;
            for (int k = 0; k < deg; ++k)
                w.push_back(randCovector());
            f.add(std::move(w), randExpr());
        }
        return f;
    }

    // A form with every term of contact degree >= p.
    DForm randFormInCp(int deg, int p, int nTerms = 2) {
        DForm f;
        for (int t = 0; t < nTerms; ++t) {
            WedgeWord w;
            for (int k = 0; k < p; ++k)
                w.push_back(Covector::contact(ctx.u(pick(0, ctx.m() - 1), randAlpha())));
            for (int k = p; k < deg; ++k)
                w.push_back(randCovector());
            f.add(std::move(w), randExpr());
        }
        return f;
    }
};

}  // namespace

TEST_CASE("wedge: antisymmetry normalization") {
    CHECK(F("dx").wedge(F("dx")).isZero());
    DForm a = F("th[u]").wedge(F("dx"));
    CHECK(a == -(F("dx").wedge(F("th[u]"))));
    CHECK(a.terms().size() == 1);
    CHECK(F("u*dx").wedge(F("u_{x}*th[u]")) == F("u*u_{x}*dx^th[u]"));
}

TEST_CASE("wedge: graded commutativity and associativity") {
    RandomForms gen(11);
    for (int t = 0; t < 40; ++t) {
        int da = gen.pick(0, 2), db = gen.pick(0, 2);
        DForm a = gen.randForm(da), b = gen.randForm(db), c = gen.randForm(1);
        DForm ab = a.wedge(b), ba = b.wedge(a);
        if ((da * db) % 2 == 0)
            CHECK(ab == ba);
        else
            CHECK(ab == -ba);
        CHECK(a.wedge(b.wedge(c)) == ab.wedge(c));
    }
}

TEST_CASE("de Rham of a coordinate function splits") {
    // d(u) = u_x dx + u_t dt + th[u]
    CHECK(F("u").deRham(2) == F("u_{x}*dx + u_{t}*dt + th[u]"));
}

TEST_CASE("structure equation for contact covectors") {
    // d(th[u]) = dx^th[u;x] + dt^th[u;t], frozen from the hand expansion of
    // d(du - u_x dx - u_t dt) re-expressed in the theta basis.
    CHECK(F("th[u]").deRham(2) == F("dx^th[u;x] + dt^th[u;t]"));
}

TEST_CASE("d squared vanishes on examples") {
    CHECK(F("u_{xx}*u").deRham(2).deRham(2).isZero());
    CHECK(F("u*th[u;x]^dx").deRham(2).deRham(2).isZero());
}

TEST_CASE("horizontal differential") {
    // d_h(u dx) = -u_t dx^dt
    CHECK(F("u*dx").horizontalDiff(2) == F("-u_{t}*dx^dt"));
    CHECK(F("u_{x}^3*dx^dt").horizontalDiff(2).isZero());
    CHECK(F("u^2*dx").horizontalDiff(2).horizontalDiff(2).isZero());
    CHECK_THROWS(F("u*th[u]").horizontalDiff(2));
}

TEST_CASE("contact grading") {
    DForm w = F("u*dx + u_{x}*th[u]");
    CHECK(w.contactPart(1) == F("u_{x}*th[u]"));
    CHECK(w.contactPart(0) == F("u*dx"));
    CHECK(F("th[u]^th[u;x]^dx").inCp(2));
    CHECK_FALSE(F("dx^dt").inCp(1));
    CHECK(DForm().inCp(5));
}

TEST_CASE("interior product with the generic evolutionary field") {
    CHECK(F("th[u]^dx").interiorGenericPhi() == F("ph[u]*dx"));
    CHECK(F("dx^dt").interiorGenericPhi().isZero());
    CHECK(F("u_{x}*th[u;x]^dx^dt").interiorGenericPhi() == F("u_{x}*ph[u;x]*dx^dt"));
}

TEST_CASE("interior product with a concrete evolutionary field") {
    // phi = u_x (the x-translation symmetry component)
    std::vector<Expr> phi{E("u_{x}")};
    CHECK(F("th[u]^dx").interiorEvolutionary(phi, 2) == F("u_{x}*dx"));
    CHECK(F("th[u;t]^dx").interiorEvolutionary(phi, 2) == F("u_{xt}*dx"));
}

TEST_CASE("Lie derivative along evolutionary fields") {
    CHECK(F("u*dx").lieGenericPhi(2) == F("ph[u]*dx"));
    CHECK(F("dx").lieGenericPhi(2).isZero());
    CHECK(F("th[u]").lieGenericPhi(2).inCp(1));
    // concrete field: L_{E_phi}(u dx) = phi dx
    std::vector<Expr> phi{E("u_{x}^2")};
    CHECK(F("u*dx").lieEvolutionary(phi, 2) == F("u_{x}^2*dx"));
}

TEST_CASE("property: d o d = 0 and contact stability") {
    RandomForms gen(2024);
    for (int t = 0; t < 200; ++t) {
        DForm w = gen.randForm(gen.pick(0, 3), 3);
        DForm dw = w.deRham(2);
        CHECK(dw.deRham(2).isZero());
        // d shifts contact degree by 0 or +1 per term
        if (!w.isZero()) {
            int p = w.minContactDegree();
            CHECK(dw.inCp(p));
        }
    }
    for (int t = 0; t < 100; ++t) {
        int p = gen.pick(1, 2);
        DForm w = gen.randFormInCp(p + gen.pick(0, 1), p, 2);
        CHECK(w.inCp(p));
        CHECK(w.deRham(2).inCp(p));
    }
}

TEST_CASE("property: horizontal diff agrees with contact-zero projection") {
    RandomForms gen(5);
    for (int t = 0; t < 60; ++t) {
        DForm w = gen.randFormInCp(gen.pick(0, 1), 0, 2).contactPart(0);
        CHECK(w.horizontalDiff(2) == w.deRham(2).contactPart(0));
    }
}

TEST_CASE("property: interior product is a nilpotent graded derivation") {
    RandomForms gen(77);
    for (int t = 0; t < 60; ++t) {
        int da = gen.pick(0, 2);
        DForm a = gen.randForm(da), b = gen.randForm(gen.pick(0, 2));
        CHECK(a.interiorGenericPhi().interiorGenericPhi().isZero());
        DForm lhs = a.wedge(b).interiorGenericPhi();
        DForm rhs = a.interiorGenericPhi().wedge(b) +
                    ((da % 2 == 0) ? a.wedge(b.interiorGenericPhi())
                                   : -(a.wedge(b.interiorGenericPhi())));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("property: Lie derivative commutes with d") {
    RandomForms gen(99);
    for (int t = 0; t < 40; ++t) {
        DForm w = gen.randForm(gen.pick(0, 2), 2);
        CHECK(w.deRham(2).lieGenericPhi(2) == w.lieGenericPhi(2).deRham(2));
    }
    std::vector<Expr> phi{E("u*u_{x}")};
    for (int t = 0; t < 20; ++t) {
        DForm w = gen.randForm(gen.pick(0, 2), 2);
        CHECK(w.deRham(2).lieEvolutionary(phi, 2) ==
              w.lieEvolutionary(phi, 2).deRham(2));
    }
}

TEST_CASE("form print-parse round trip") {
    for (const char* s :
         {"u*dx + u_{x}*th[u]", "dx^dt", "-3/2*th[u]^th[u;xx]",
          "(u + x)*dx^th[u;t]", "ph[u;x]*thp[u]^dx", "0"}) {
        DForm f = F(s);
        std::string printed = toString(f, kCtx);
        CHECK(parseForm(printed, kCtx) == f);
        CHECK(toString(parseForm(printed, kCtx), kCtx) == printed);
    }
}
