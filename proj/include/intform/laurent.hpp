#pragma once

// Multivariate Laurent polynomials with exact rational coefficients.

#include <intform/error.hpp>
#include <intform/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace intform {

using Exponents = std::vector<int>;
using VariableNames = std::vector<std::string>;
using VariableList = std::shared_ptr<const VariableNames>;

inline VariableList make_variables(VariableNames names) {
    return std::make_shared<const VariableNames>(std::move(names));
}

inline bool same_variables(const VariableList& a, const VariableList& b) {
    return a == b || (a && b && *a == *b);
}

/// Finite map from exponent tuples (one slot per variable, negative allowed)
/// to nonzero rationals.
class LaurentPoly {
public:
    using Terms = std::map<Exponents, Rational>;

    LaurentPoly() : vars_(make_variables({})) {}
    explicit LaurentPoly(VariableList vars) : vars_(std::move(vars)) {}

    static LaurentPoly constant(VariableList vars, const Rational& c) {
        LaurentPoly p(std::move(vars));
        p.add_term(Exponents(p.nvars(), 0), c);
        return p;
    }

    static LaurentPoly monomial(VariableList vars, const Rational& c, Exponents e) {
        LaurentPoly p(std::move(vars));
        if (e.size() != p.nvars()) throw StructuralError("exponent tuple length does not match variable list");
        p.add_term(std::move(e), c);
        return p;
    }

    static LaurentPoly variable(VariableList vars, std::size_t index, int exponent = 1) {
        Exponents e(vars->size(), 0);
        e.at(index) = exponent;
        return monomial(std::move(vars), 1, std::move(e));
    }

    const VariableList& variables() const noexcept { return vars_; }
    std::size_t nvars() const noexcept { return vars_->size(); }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    bool is_monomial() const noexcept { return terms_.size() == 1; }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 &&
                std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(), [](int x) { return x == 0; }));
    }

    /// Coefficient of the given exponent tuple (zero when absent).
    Rational coefficient(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(Exponents e, const Rational& c) {
        if (e.size() != nvars()) throw StructuralError("exponent tuple length does not match variable list");
        if (c == 0) return;
        Rational q = c;
        q.canonicalize();  // mpq_class(n, d) is not reduced on construction
        auto [it, inserted] = terms_.try_emplace(std::move(e), std::move(q));
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    LaurentPoly& operator+=(const LaurentPoly& other) {
        require_same(other);
        for (const auto& [e, c] : other.terms_) add_term(e, c);
        return *this;
    }

    LaurentPoly& operator-=(const LaurentPoly& other) {
        require_same(other);
        for (const auto& [e, c] : other.terms_) add_term(e, -c);
        return *this;
    }

    LaurentPoly& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(LaurentPoly a, const Rational& s) { return a *= s; }
    friend LaurentPoly operator*(const Rational& s, LaurentPoly a) { return a *= s; }
    friend LaurentPoly operator-(LaurentPoly a) { return a *= Rational(-1); }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        a.require_same(b);
        LaurentPoly r(a.vars_);
        Exponents e(a.nvars());
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    LaurentPoly& operator*=(const LaurentPoly& other) { return *this = *this * other; }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return same_variables(a.vars_, b.vars_) && a.terms_ == b.terms_;
    }

    /// Inverse of a single nonzero term.
    LaurentPoly inverse_monomial() const {
        if (!is_monomial()) throw UnsupportedError("only a single Laurent monomial is invertible");
        const auto& [e, c] = *terms_.begin();
        Exponents inv(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) inv[i] = -e[i];
        return monomial(vars_, 1 / c, std::move(inv));
    }

    /// Integer power; negative exponents require a monomial.
    LaurentPoly pow(int n) const {
        if (n < 0) return inverse_monomial().pow(-n);
        LaurentPoly result = constant(vars_, 1);
        LaurentPoly base = *this;
        for (; n > 0; n >>= 1) {
            if (n & 1) result = result * base;
            if (n > 1) base = base * base;
        }
        return result;
    }

    Rational evaluate(std::span<const Rational> point) const {
        if (point.size() != nvars()) throw StructuralError("evaluation point has wrong dimension");
        Rational sum = 0;
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (std::size_t i = 0; i < e.size(); ++i) t *= power(point[i], e[i]);
            sum += t;
        }
        return sum;
    }

    /// Re-tag with an equal-length variable list (chart renaming).
    LaurentPoly with_variables(VariableList vars) const {
        if (vars->size() != nvars()) throw StructuralError("variable list length mismatch");
        LaurentPoly r(std::move(vars));
        r.terms_ = terms_;
        return r;
    }

private:
    void require_same(const LaurentPoly& other) const {
        if (!same_variables(vars_, other.vars_)) throw StructuralError("Laurent polynomials over different variable lists");
    }

    VariableList vars_;
    Terms terms_;
};

inline LaurentPoly lp_add(const LaurentPoly& a, const LaurentPoly& b) { return a + b; }
inline LaurentPoly lp_mul(const LaurentPoly& a, const LaurentPoly& b) { return a * b; }

/// Image of one variable under a monomial substitution: coefficient * x^exponents.
struct MonomialImage {
    Rational coefficient;
    Exponents exponents;
};

/// Substitute every variable of `p` by a Laurent monomial over `target`.
inline LaurentPoly lp_substitute_monomial(const LaurentPoly& p, std::span<const MonomialImage> images,
                                          const VariableList& target) {
    if (images.size() != p.nvars()) throw StructuralError("substitution must give an image for every variable");
    for (const auto& img : images) {
        if (img.coefficient == 0) throw UnsupportedError("substitution image must be an invertible monomial");
        if (img.exponents.size() != target->size()) throw StructuralError("image exponent tuple has wrong length");
    }
    LaurentPoly r(target);
    Exponents e(target->size());
    for (const auto& [pe, pc] : p.terms()) {
        std::fill(e.begin(), e.end(), 0);
        Rational c = pc;
        for (std::size_t v = 0; v < pe.size(); ++v) {
            c *= power(images[v].coefficient, pe[v]);
            for (std::size_t t = 0; t < e.size(); ++t) e[t] += pe[v] * images[v].exponents[t];
        }
        r.add_term(e, c);
    }
    return r;
}

/// Convenience overload: images given as monomial LaurentPolys over the target list.
inline LaurentPoly lp_substitute_monomial(const LaurentPoly& p, std::span<const LaurentPoly> images) {
    if (images.empty()) {
        if (p.nvars() != 0) throw StructuralError("substitution must give an image for every variable");
        return p;
    }
    std::vector<MonomialImage> imgs;
    imgs.reserve(images.size());
    for (const auto& q : images) {
        if (!q.is_monomial()) throw UnsupportedError("non-monomial image in substitution");
        imgs.push_back({q.terms().begin()->second, q.terms().begin()->first});
    }
    return lp_substitute_monomial(p, imgs, images.front().variables());
}

/// Formal partial derivative in variable `index`.
inline LaurentPoly lp_partial(const LaurentPoly& p, std::size_t index) {
    if (index >= p.nvars()) throw StructuralError("derivative with respect to an unknown variable");
    LaurentPoly r(p.variables());
    for (const auto& [e, c] : p.terms()) {
        if (e[index] == 0) continue;
        Exponents d = e;
        --d[index];
        r.add_term(std::move(d), c * e[index]);
    }
    return r;
}

}  // namespace intform
