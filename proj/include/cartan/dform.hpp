#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>
#include <vector>

#include "cartan/expr.hpp"

namespace cartan {

// Basis covector: either a horizontal dx^dir or a contact covector
// theta^i_alpha attached to one of the jet families (Fiber = theta,
// Phi/Aux = contact covectors of the auxiliary fibers).
struct Covector {
    bool horizontal = true;
    int dir = 0;        // horizontal only
    JetVar theta;       // contact only; theta.kind in {Fiber, Phi, Aux}

    static Covector dx(int dir) { return Covector{true, dir, JetVar{}}; }
    static Covector contact(const JetVar& v) { return Covector{false, 0, v}; }

    // Fixed basis order: dx^1 < ... < dx^n < theta (Fiber by (i, alpha))
    // < auxiliary contact covectors. Reproducible signs depend on it.
    friend bool operator<(const Covector& a, const Covector& b) {
        if (a.horizontal != b.horizontal)
            return a.horizontal;
        if (a.horizontal)
            return a.dir < b.dir;
        return a.theta < b.theta;
    }
    friend bool operator==(const Covector& a, const Covector& b) {
        if (a.horizontal != b.horizontal)
            return false;
        return a.horizontal ? a.dir == b.dir : a.theta == b.theta;
    }
    friend bool operator!=(const Covector& a, const Covector& b) { return !(a == b); }
};

// Strictly increasing wedge word of basis covectors.
using WedgeWord = std::vector<Covector>;

int contactDegree(const WedgeWord& w);

// Exterior form in the adapted basis {dx^i, theta^i_alpha} with Expr
// coefficients. Terms are kept with sorted wedge words; sign bookkeeping
// happens on insertion.
class DForm {
public:
    DForm() = default;
    static DForm scalar(const Expr& e) {
        DForm f;
        f.add(WedgeWord{}, e);
        return f;
    }
    static DForm covector(const Covector& c) {
        DForm f;
        f.add(WedgeWord{c}, Expr(1));
        return f;
    }

    // Adds coeff * (word as given); sorts the word, tracking the sign.
    // Words with a repeated covector are dropped.
    void add(WedgeWord word, Expr coeff);

    bool isZero() const { return terms_.empty(); }
    // Uniform covector count; throws if mixed (use only on homogeneous forms).
    int degree() const;
    bool isHomogeneous(int deg) const;

    DForm operator-() const;
    DForm operator+(const DForm& o) const;
    DForm operator-(const DForm& o) const;
    DForm& operator+=(const DForm& o) { return *this = *this + o; }
    DForm& operator-=(const DForm& o) { return *this = *this - o; }
    bool operator==(const DForm& o) const { return terms_ == o.terms_; }
    bool operator!=(const DForm& o) const { return !(*this == o); }

    DForm wedge(const DForm& o) const;
    DForm scaled(const Expr& e) const;

    // Terms of contact degree exactly p.
    DForm contactPart(int p) const;
    // Every term has contact degree >= p (membership in C^p Lambda).
    bool inCp(int p) const;
    int minContactDegree() const;  // degree of the least-contact term; large if zero

    bool isHorizontal() const { return inCpComplementZero(); }

    // de Rham differential; n = number of independent variables.
    DForm deRham(int n) const;
    // Horizontal differential of a horizontal form (throws otherwise).
    DForm horizontalDiff(int n) const;

    // Interior product with the evolutionary field of the generic parameter:
    // i dx = 0, i theta^i_alpha = phi^i_alpha, auxiliary covectors pair to 0.
    DForm interiorGenericPhi() const;
    // Interior product with a concrete evolutionary field phi = (phi^1..phi^m).
    DForm interiorEvolutionary(const std::vector<Expr>& phi, int n) const;

    // Lie derivative along the generic evolutionary field, via Cartan's
    // formula i o d + d o i.
    DForm lieGenericPhi(int n) const;
    DForm lieEvolutionary(const std::vector<Expr>& phi, int n) const;

    DForm substituteCoeffs(const std::map<JetVar, Expr>& repl) const;
    DForm mapCoeffs(const std::function<Expr(const Expr&)>& f) const;

    const std::map<WedgeWord, Expr>& terms() const { return terms_; }

private:
    bool inCpComplementZero() const {
        for (const auto& [w, c] : terms_)
            if (contactDegree(w) != 0)
                return false;
        return true;
    }

    std::map<WedgeWord, Expr> terms_;
};

inline DForm operator*(const Expr& e, const DForm& f) { return f.scaled(e); }

// dx^1 ^ ... ^ dx^n.
DForm volumeForm(int n);
// Interior product i_{d/dx^dir}(vol), i.e. (-1)^dir * dx^1^..omit..^dx^n.
DForm volumeContracted(int n, int dir);

}  // namespace cartan
