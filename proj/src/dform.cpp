#include "cartan/dform.hpp"

#include <stdexcept>

namespace cartan {

int contactDegree(const WedgeWord& w) {
    int p = 0;
    for (const auto& c : w)
        if (!c.horizontal)
            ++p;
    return p;
}

void DForm::add(WedgeWord word, Expr coeff) {
    if (coeff.isZero())
        return;
    // Insertion sort, flipping the sign per transposition.
    bool negative = false;
    for (size_t i = 1; i < word.size(); ++i) {
        size_t j = i;
        while (j > 0 && word[j] < word[j - 1]) {
            std::swap(word[j], word[j - 1]);
            negative = !negative;
            --j;
        }
    }
    for (size_t i = 1; i < word.size(); ++i)
        if (word[i] == word[i - 1])
            return;  // repeated covector
    if (negative)
        coeff = -coeff;
    auto it = terms_.find(word);
    if (it == terms_.end()) {
        terms_.emplace(std::move(word), std::move(coeff));
    } else {
        it->second += coeff;
        if (it->second.isZero())
            terms_.erase(it);
    }
}

int DForm::degree() const {
    if (terms_.empty())
        return 0;
    int d = static_cast<int>(terms_.begin()->first.size());
    for (const auto& [w, c] : terms_)
        if (static_cast<int>(w.size()) != d)
            throw std::logic_error("DForm::degree: inhomogeneous form");
    return d;
}

bool DForm::isHomogeneous(int deg) const {
    for (const auto& [w, c] : terms_)
        if (static_cast<int>(w.size()) != deg)
            return false;
    return true;
}

DForm DForm::operator-() const {
    DForm r;
    for (const auto& [w, c] : terms_)
        r.terms_.emplace(w, -c);
    return r;
}

DForm DForm::operator+(const DForm& o) const {
    DForm r = *this;
    for (const auto& [w, c] : o.terms_) {
        auto it = r.terms_.find(w);
        if (it == r.terms_.end()) {
            r.terms_.emplace(w, c);
        } else {
            it->second += c;
            if (it->second.isZero())
                r.terms_.erase(it);
        }
    }
    return r;
}

DForm DForm::operator-(const DForm& o) const { return *this + (-o); }

DForm DForm::wedge(const DForm& o) const {
    DForm r;
    for (const auto& [wa, ca] : terms_) {
        for (const auto& [wb, cb] : o.terms_) {
            WedgeWord w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            r.add(std::move(w), ca * cb);
        }
    }
    return r;
}

DForm DForm::scaled(const Expr& e) const {
    DForm r;
    for (const auto& [w, c] : terms_)
        r.add(w, e * c);
    return r;
}

DForm DForm::contactPart(int p) const {
    DForm r;
    for (const auto& [w, c] : terms_)
        if (contactDegree(w) == p)
            r.terms_.emplace(w, c);
    return r;
}

bool DForm::inCp(int p) const {
    for (const auto& [w, c] : terms_)
        if (contactDegree(w) < p)
            return false;
    return true;
}

int DForm::minContactDegree() const {
    int best = 1 << 20;
    for (const auto& [w, c] : terms_)
        best = std::min(best, contactDegree(w));
    return best;
}

namespace {

// d(f) as a 1-form in the adapted basis.
DForm differentialOfCoeff(const Expr& f, int n) {
    DForm r;
    for (int j = 0; j < n; ++j) {
        Expr dj = f.totalDerivative(j, n);
        if (!dj.isZero())
            r.add({Covector::dx(j)}, std::move(dj));
    }
    for (const JetVar& v : f.vars()) {
        if (!v.isJet())
            continue;
        Expr pd = f.partial(v);
        if (!pd.isZero())
            r.add({Covector::contact(v)}, std::move(pd));
    }
    return r;
}

// Structure equation d(theta^i_alpha) = sum_k dx^k ^ theta^i_{alpha+1_k};
// the same shape holds for the auxiliary contact covectors.
DForm differentialOfCovector(const Covector& c, int n) {
    DForm r;
    if (c.horizontal)
        return r;
    MultiIndex a = c.theta.alpha.size() == n ? c.theta.alpha : MultiIndex(n);
    for (int k = 0; k < n; ++k) {
        JetVar up{c.theta.kind, c.theta.index, a.plus(k)};
        r.add({Covector::dx(k), Covector::contact(up)}, Expr(1));
    }
    return r;
}

}  // namespace

DForm DForm::deRham(int n) const {
    DForm r;
    for (const auto& [w, c] : terms_) {
        // d(c) ^ w
        DForm dc = differentialOfCoeff(c, n);
        for (const auto& [w1, c1] : dc.terms()) {
            WedgeWord word = w1;
            word.insert(word.end(), w.begin(), w.end());
            r.add(std::move(word), c1);
        }
        // graded Leibniz across the word
        for (size_t k = 0; k < w.size(); ++k) {
            DForm dk = differentialOfCovector(w[k], n);
            if (dk.isZero())
                continue;
            Expr sign = (k % 2 == 0) ? Expr(1) : Expr(-1);
            for (const auto& [wk, ck] : dk.terms()) {
                WedgeWord word;
                word.insert(word.end(), w.begin(), w.begin() + static_cast<long>(k));
                word.insert(word.end(), wk.begin(), wk.end());
                word.insert(word.end(), w.begin() + static_cast<long>(k) + 1, w.end());
                r.add(std::move(word), sign * (c * ck));
            }
        }
    }
    return r;
}

DForm DForm::horizontalDiff(int n) const {
    if (!isHorizontal())
        throw std::invalid_argument("horizontalDiff: form has contact terms");
    return deRham(n).contactPart(0);
}

namespace {

// Generic graded contraction; `pair` gives the value of the interior
// product on a single contact covector.
template <typename PairFn>
DForm contract(const std::map<WedgeWord, Expr>& terms, PairFn&& pair) {
    DForm r;
    for (const auto& [w, c] : terms) {
        for (size_t k = 0; k < w.size(); ++k) {
            if (w[k].horizontal)
                continue;
            Expr value = pair(w[k].theta);
            if (value.isZero())
                continue;
            WedgeWord word;
            word.insert(word.end(), w.begin(), w.begin() + static_cast<long>(k));
            word.insert(word.end(), w.begin() + static_cast<long>(k) + 1, w.end());
            Expr sign = (k % 2 == 0) ? Expr(1) : Expr(-1);
            r.add(std::move(word), sign * (c * value));
        }
    }
    return r;
}

}  // namespace

DForm DForm::interiorGenericPhi() const {
    return contract(terms_, [](const JetVar& th) {
        if (th.kind != VarKind::Fiber)
            return Expr(0);
        return Expr::var(JetVar::phi(th.index, th.alpha));
    });
}

DForm DForm::interiorEvolutionary(const std::vector<Expr>& phi, int n) const {
    return contract(terms_, [&](const JetVar& th) {
        if (th.kind != VarKind::Fiber)
            return Expr(0);
        MultiIndex a = th.alpha.size() == n ? th.alpha : MultiIndex(n);
        return phi.at(static_cast<size_t>(th.index)).totalDerivative(a);
    });
}

DForm DForm::lieGenericPhi(int n) const {
    return deRham(n).interiorGenericPhi() + interiorGenericPhi().deRham(n);
}

DForm DForm::lieEvolutionary(const std::vector<Expr>& phi, int n) const {
    return deRham(n).interiorEvolutionary(phi, n) +
           interiorEvolutionary(phi, n).deRham(n);
}

DForm DForm::substituteCoeffs(const std::map<JetVar, Expr>& repl) const {
    DForm r;
    for (const auto& [w, c] : terms_)
        r.add(w, c.substitute(repl));
    return r;
}

DForm DForm::mapCoeffs(const std::function<Expr(const Expr&)>& f) const {
    DForm r;
    for (const auto& [w, c] : terms_)
        r.add(w, f(c));
    return r;
}

DForm volumeForm(int n) {
    WedgeWord w;
    for (int i = 0; i < n; ++i)
        w.push_back(Covector::dx(i));
    DForm r;
    r.add(std::move(w), Expr(1));
    return r;
}

DForm volumeContracted(int n, int dir) {
    WedgeWord w;
    for (int i = 0; i < n; ++i)
        if (i != dir)
            w.push_back(Covector::dx(i));
    DForm r;
    r.add(std::move(w), (dir % 2 == 0) ? Expr(1) : Expr(-1));
    return r;
}

}  // namespace cartan
