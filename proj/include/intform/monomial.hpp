#pragma once

// Generators of the integral-form algebra and canonical monomials.
//
// Grading table (form degree, parity) used for every sign:
//   theta_j          (0, 1)
//   d gamma_i        (1, 0)
//   (d psi_j)^a      (a, a mod 2)
//   delta^(k)(dpsi_j) (-k, (k+1) mod 2)
// Transposing two factors costs (-1)^(deg*deg' + par*par').  The delta
// parity alternates with k so that the contraction
//   dpsi_j * delta^(k)(dpsi_j) = -k delta^(k-1)(dpsi_j)
// is homogeneous in both gradings.

#include <intform/error.hpp>
#include <intform/laurent.hpp>
#include <intform/rational.hpp>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace intform {

struct GeneratorTable {
    VariableList evens;
    std::vector<std::string> odds;

    GeneratorTable(VariableNames even_names, std::vector<std::string> odd_names)
        : evens(make_variables(std::move(even_names))), odds(std::move(odd_names)) {
        std::vector<std::string> all(evens->begin(), evens->end());
        all.insert(all.end(), odds.begin(), odds.end());
        std::sort(all.begin(), all.end());
        if (std::adjacent_find(all.begin(), all.end()) != all.end())
            throw StructuralError("coordinate names must be unique");
    }

    std::size_t n_even() const noexcept { return evens->size(); }
    std::size_t n_odd() const noexcept { return odds.size(); }

    friend bool operator==(const GeneratorTable& a, const GeneratorTable& b) {
        return *a.evens == *b.evens && a.odds == b.odds;
    }
};

using TablePtr = std::shared_ptr<const GeneratorTable>;

inline TablePtr make_table(VariableNames evens, std::vector<std::string> odds) {
    return std::make_shared<const GeneratorTable>(std::move(evens), std::move(odds));
}

enum class FactorKind { Theta = 0, DEven = 1, DOdd = 2, Delta = 3 };

/// One generator factor.  `value` is the power for DOdd, the derivative
/// order for Delta and unused (1) otherwise.
struct Factor {
    FactorKind kind;
    int index;
    int value = 1;

    static Factor theta(int j) { return {FactorKind::Theta, j, 1}; }
    static Factor d_even(int i) { return {FactorKind::DEven, i, 1}; }
    static Factor d_odd(int j, int power = 1) { return {FactorKind::DOdd, j, power}; }
    static Factor delta(int j, int order = 0) { return {FactorKind::Delta, j, order}; }

    friend bool operator==(const Factor&, const Factor&) = default;
};

inline int factor_degree(const Factor& f) {
    switch (f.kind) {
    case FactorKind::Theta: return 0;
    case FactorKind::DEven: return 1;
    case FactorKind::DOdd: return f.value;
    case FactorKind::Delta: return -f.value;
    }
    return 0;
}

inline int factor_parity(const Factor& f) {
    switch (f.kind) {
    case FactorKind::Theta: return 1;
    case FactorKind::DEven: return 0;
    case FactorKind::DOdd: return f.value & 1;
    case FactorKind::Delta: return (f.value + 1) & 1;
    }
    return 0;
}

inline int sign_exponent(int deg_a, int par_a, int deg_b, int par_b) { return (deg_a * deg_b + par_a * par_b) & 1; }

/// Sign s with a*b = s*b*a.
inline int koszul_sign(const Factor& a, const Factor& b) {
    return sign_exponent(factor_degree(a), factor_parity(a), factor_degree(b), factor_parity(b)) ? -1 : 1;
}

struct Bidegree {
    int degree = 0;
    int picture = 0;

    friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

inline std::string to_string(const Bidegree& b) { return std::to_string(b.degree) + "|" + std::to_string(b.picture); }

/// Canonical product theta^I dgamma^J prod (dpsi_j)^a_j prod delta^(k_j)(dpsi_j).
/// Odd indices carrying a delta never carry a dpsi power.
class Monomial {
public:
    using IndexPowers = std::vector<std::pair<int, int>>;  // sorted by index

    Monomial() = default;

    const std::vector<int>& thetas() const noexcept { return theta_; }
    const std::vector<int>& d_evens() const noexcept { return deven_; }
    const IndexPowers& d_odds() const noexcept { return dodd_; }
    const IndexPowers& deltas() const noexcept { return delta_; }

    bool is_one() const noexcept { return theta_.empty() && deven_.empty() && dodd_.empty() && delta_.empty(); }

    int degree() const {
        int d = static_cast<int>(deven_.size());
        for (const auto& [j, a] : dodd_) d += a;
        for (const auto& [j, k] : delta_) d -= k;
        return d;
    }

    int picture() const noexcept { return static_cast<int>(delta_.size()); }
    Bidegree bidegree() const { return {degree(), picture()}; }

    int parity() const {
        int p = static_cast<int>(theta_.size());
        for (const auto& [j, a] : dodd_) p += a;
        for (const auto& [j, k] : delta_) p += k + 1;
        return p & 1;
    }

    /// Factor sequence in canonical order.
    std::vector<Factor> factors() const {
        std::vector<Factor> out;
        out.reserve(theta_.size() + deven_.size() + dodd_.size() + delta_.size());
        for (int j : theta_) out.push_back(Factor::theta(j));
        for (int i : deven_) out.push_back(Factor::d_even(i));
        for (const auto& [j, a] : dodd_) out.push_back(Factor::d_odd(j, a));
        for (const auto& [j, k] : delta_) out.push_back(Factor::delta(j, k));
        return out;
    }

    int d_odd_power(int j) const { return lookup(dodd_, j, 0); }
    std::optional<int> delta_order(int j) const {
        for (const auto& [idx, k] : delta_)
            if (idx == j) return k;
        return std::nullopt;
    }
    bool has_theta(int j) const { return std::binary_search(theta_.begin(), theta_.end(), j); }
    bool has_d_even(int i) const { return std::binary_search(deven_.begin(), deven_.end(), i); }

    int max_d_odd_power() const {
        int m = 0;
        for (const auto& [j, a] : dodd_) m = std::max(m, a);
        return m;
    }

    bool valid_for(const GeneratorTable& t) const {
        auto ok_odd = [&](int j) { return j >= 0 && static_cast<std::size_t>(j) < t.n_odd(); };
        for (int j : theta_)
            if (!ok_odd(j)) return false;
        for (int i : deven_)
            if (i < 0 || static_cast<std::size_t>(i) >= t.n_even()) return false;
        for (const auto& [j, a] : dodd_)
            if (!ok_odd(j) || a <= 0) return false;
        for (const auto& [j, k] : delta_)
            if (!ok_odd(j) || k < 0) return false;
        return true;
    }

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
    friend bool operator==(const Monomial&, const Monomial&) = default;

    /// Build from factors already in canonical, fully reduced form.
    static Monomial from_canonical(std::span<const Factor> fs) {
        Monomial m;
        for (const auto& f : fs) {
            switch (f.kind) {
            case FactorKind::Theta: m.theta_.push_back(f.index); break;
            case FactorKind::DEven: m.deven_.push_back(f.index); break;
            case FactorKind::DOdd: m.dodd_.emplace_back(f.index, f.value); break;
            case FactorKind::Delta: m.delta_.emplace_back(f.index, f.value); break;
            }
        }
        return m;
    }

private:
    static int lookup(const IndexPowers& v, int j, int fallback) {
        for (const auto& [idx, a] : v)
            if (idx == j) return a;
        return fallback;
    }

    std::vector<int> theta_;
    std::vector<int> deven_;
    IndexPowers dodd_;
    IndexPowers delta_;
};

/// Result of normalizing a raw factor product: scale * monomial.
struct NormalTerm {
    Rational scale;
    Monomial monomial;
};

namespace detail {

inline int canonical_rank(const Factor& f) { return static_cast<int>(f.kind); }

inline bool before(const Factor& a, const Factor& b) {
    if (canonical_rank(a) != canonical_rank(b)) return canonical_rank(a) < canonical_rank(b);
    return a.index < b.index;
}

}  // namespace detail

/// Reduce a raw product of generators to canonical form.  Returns nullopt
/// when the product vanishes.
inline std::optional<NormalTerm> normalize_factors(std::vector<Factor> fs) {
    Rational scale = 1;
    int sign = 1;

    // Sort into canonical order; adjacent transpositions carry Koszul signs.
    for (std::size_t i = 1; i < fs.size(); ++i) {
        for (std::size_t j = i; j > 0 && detail::before(fs[j], fs[j - 1]); --j) {
            sign *= koszul_sign(fs[j - 1], fs[j]);
            std::swap(fs[j - 1], fs[j]);
        }
    }

    // Merge equal generators.
    std::vector<Factor> merged;
    merged.reserve(fs.size());
    for (const auto& f : fs) {
        if (f.kind == FactorKind::DOdd && f.value == 0) continue;
        if (!merged.empty() && merged.back().kind == f.kind && merged.back().index == f.index) {
            if (f.kind == FactorKind::DOdd) {
                merged.back().value += f.value;
                continue;
            }
            return std::nullopt;  // theta^2, dgamma^2, delta*delta on one coordinate
        }
        merged.push_back(f);
    }

    // Contract dpsi_j powers against delta^(k)(dpsi_j).
    for (std::size_t d = 0; d < merged.size(); ++d) {
        if (merged[d].kind != FactorKind::Delta) continue;
        const int j = merged[d].index;
        auto it = std::find_if(merged.begin(), merged.end(),
                               [j](const Factor& f) { return f.kind == FactorKind::DOdd && f.index == j; });
        if (it == merged.end()) continue;
        std::size_t p = static_cast<std::size_t>(it - merged.begin());
        // Move the dpsi power rightwards until it sits just before the delta.
        for (std::size_t q = p + 1; q < d; ++q) sign *= koszul_sign(merged[p], merged[q]);
        const int a = merged[p].value;
        const int b = merged[d].value;
        if (a > b) return std::nullopt;
        scale *= falling_factorial(b, a);
        if (a & 1) sign = -sign;
        merged[d].value = b - a;
        merged.erase(merged.begin() + static_cast<std::ptrdiff_t>(p));
        --d;
    }

    if (sign < 0) scale = -scale;
    return NormalTerm{scale, Monomial::from_canonical(merged)};
}

/// Concatenate two canonical monomials and normalize.
inline std::optional<NormalTerm> multiply(const Monomial& a, const Monomial& b) {
    std::vector<Factor> fs = a.factors();
    auto fb = b.factors();
    fs.insert(fs.end(), fb.begin(), fb.end());
    return normalize_factors(std::move(fs));
}

/// Integer weights of the coordinates under a scaling action; differentials
/// inherit the weight of their coordinate and delta^(k)(dpsi_j) has weight
/// -(k+1) w(psi_j).
struct WeightCharacter {
    std::vector<int> even;
    std::vector<int> odd;

    friend bool operator==(const WeightCharacter&, const WeightCharacter&) = default;
};

inline int monomial_weight(const Monomial& m, const WeightCharacter& w) {
    int s = 0;
    for (int j : m.thetas()) s += w.odd.at(static_cast<std::size_t>(j));
    for (int i : m.d_evens()) s += w.even.at(static_cast<std::size_t>(i));
    for (const auto& [j, a] : m.d_odds()) s += a * w.odd.at(static_cast<std::size_t>(j));
    for (const auto& [j, k] : m.deltas()) s -= (k + 1) * w.odd.at(static_cast<std::size_t>(j));
    return s;
}

inline int exponent_weight(const Exponents& e, const WeightCharacter& w) {
    int s = 0;
    for (std::size_t i = 0; i < e.size(); ++i) s += e[i] * w.even.at(i);
    return s;
}

}  // namespace intform
