#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cartan/multi_index.hpp"

namespace cartan {

using Rational = boost::multiprecision::cpp_rational;

// Kinds of polynomial generators.
//   Base: independent variable x^i (no multi-index).
//   Fiber: jet coordinate u^i_alpha.
//   Phi:  generic evolutionary parameter phi^i_alpha (components of a
//         symbolic element of kappa and their total derivatives).
//   Aux:  second generic jet family g^i_alpha, used for operator slots
//         (the P-argument of bilinear operators, adjoint test functions).
enum class VarKind : std::uint8_t { Base = 0, Fiber = 1, Phi = 2, Aux = 3 };

struct JetVar {
    VarKind kind = VarKind::Base;
    int index = 0;        // which x / which dependent component
    MultiIndex alpha;     // empty for Base

    static JetVar base(int i) { return JetVar{VarKind::Base, i, MultiIndex{}}; }
    static JetVar fiber(int i, MultiIndex a) { return JetVar{VarKind::Fiber, i, std::move(a)}; }
    static JetVar phi(int i, MultiIndex a) { return JetVar{VarKind::Phi, i, std::move(a)}; }
    static JetVar aux(int i, MultiIndex a) { return JetVar{VarKind::Aux, i, std::move(a)}; }

    bool isJet() const { return kind != VarKind::Base; }

    // Canonical variable order: base variables by index, then fiber
    // variables by (component, graded-lex alpha), then the auxiliary
    // families in the same pattern.
    friend bool operator<(const JetVar& a, const JetVar& b) {
        return std::tie(a.kind, a.index, a.alpha) <
               std::forward_as_tuple(b.kind, b.index, b.alpha);
    }
    friend bool operator==(const JetVar& a, const JetVar& b) {
        return a.kind == b.kind && a.index == b.index && a.alpha == b.alpha;
    }
    friend bool operator!=(const JetVar& a, const JetVar& b) { return !(a == b); }
    friend bool operator>(const JetVar& a, const JetVar& b) { return b < a; }
};

// Product of variable powers, sorted by the canonical variable order.
// Exponents are strictly positive; the empty monomial is 1.
using Monomial = std::vector<std::pair<JetVar, int>>;

// Differential polynomial with exact rational coefficients in canonical
// form: a sorted term map with no zero coefficients. Two expressions are
// equal as functions iff their representations coincide.
class Expr {
public:
    Expr() = default;
    Expr(int v) { *this = Expr(Rational(v)); }  // NOLINT(google-explicit-constructor)
    Expr(const Rational& c) {                   // NOLINT(google-explicit-constructor)
        if (c != 0)
            terms_[Monomial{}] = c;
    }
    static Expr var(const JetVar& v) {
        Expr e;
        e.terms_[Monomial{{v, 1}}] = 1;
        return e;
    }

    bool isZero() const { return terms_.empty(); }
    // Rational constant value if the expression has no variables.
    std::optional<Rational> asConstant() const;

    Expr operator-() const;
    Expr operator+(const Expr& o) const;
    Expr operator-(const Expr& o) const;
    Expr operator*(const Expr& o) const;
    Expr& operator+=(const Expr& o) { return *this = *this + o; }
    Expr& operator-=(const Expr& o) { return *this = *this - o; }
    Expr& operator*=(const Expr& o) { return *this = *this * o; }
    Expr pow(int k) const;
    Expr divideBy(const Rational& c) const;

    bool operator==(const Expr& o) const { return terms_ == o.terms_; }
    bool operator!=(const Expr& o) const { return !(*this == o); }
    bool operator<(const Expr& o) const { return terms_ < o.terms_; }

    // Formal partial derivative treating every generator as independent.
    Expr partial(const JetVar& v) const;

    // Total derivative D_{x^dir}; n is the number of independent variables
    // (needed to shift variables that do not yet occur). Every jet family
    // shifts by alpha -> alpha + 1_dir.
    Expr totalDerivative(int dir, int n) const;
    Expr totalDerivative(const MultiIndex& alpha) const;

    // Simultaneous substitution of generators by expressions.
    Expr substitute(const std::map<JetVar, Expr>& repl) const;

    // Exact evaluation; every variable occurring must be bound.
    Rational eval(const std::map<JetVar, Rational>& point) const;

    std::vector<JetVar> vars() const;
    // Maximum |alpha| over jet variables of the given kind (0 if none).
    int maxOrder(VarKind kind = VarKind::Fiber) const;
    bool containsKind(VarKind kind) const;

    // Coefficient decomposition of an expression that is linear and
    // homogeneous in variables of `kind`: result maps (index, alpha) to the
    // coefficient (free of `kind`). Throws if the expression mixes degrees.
    std::map<std::pair<int, MultiIndex>, Expr> collectLinear(VarKind kind) const;

    const std::map<Monomial, Rational>& terms() const { return terms_; }

    static Expr fromTerms(std::map<Monomial, Rational> t) {
        Expr e;
        e.terms_ = std::move(t);
        return e;
    }

private:
    std::map<Monomial, Rational> terms_;
};

inline Expr operator*(const Rational& c, const Expr& e) { return Expr(c) * e; }

}  // namespace cartan
