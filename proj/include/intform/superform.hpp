#pragma once

// Integral forms on one chart: finite sums of canonical monomials with
// Laurent-polynomial coefficients in the even coordinates.

#include <intform/error.hpp>
#include <intform/laurent.hpp>
#include <intform/monomial.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace intform {

class Superform {
public:
    using Terms = std::map<Monomial, LaurentPoly>;

    Superform() : table_(make_table({}, {})) {}
    Superform(std::string chart, TablePtr table) : chart_(std::move(chart)), table_(std::move(table)) {}

    static Superform zero(std::string chart, TablePtr table) { return Superform(std::move(chart), std::move(table)); }

    static Superform scalar(std::string chart, TablePtr table, const Rational& c) {
        Superform f(std::move(chart), std::move(table));
        f.add_term(Monomial{}, LaurentPoly::constant(f.table_->evens, c));
        return f;
    }

    static Superform function(std::string chart, TablePtr table, const LaurentPoly& p) {
        Superform f(std::move(chart), std::move(table));
        f.add_term(Monomial{}, p);
        return f;
    }

    /// A single normalized product of generators with the given coefficient.
    static Superform product(std::string chart, TablePtr table, std::vector<Factor> factors,
                             const LaurentPoly& coefficient) {
        Superform f(std::move(chart), std::move(table));
        f.add_factors(std::move(factors), coefficient);
        return f;
    }

    static Superform product(std::string chart, TablePtr table, std::vector<Factor> factors) {
        auto one = LaurentPoly::constant(table->evens, 1);
        return product(std::move(chart), std::move(table), std::move(factors), one);
    }

    const std::string& chart() const noexcept { return chart_; }
    const TablePtr& table() const noexcept { return table_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    LaurentPoly coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? LaurentPoly(table_->evens) : it->second;
    }

    void add_term(const Monomial& m, const LaurentPoly& c) {
        if (!same_variables(c.variables(), table_->evens))
            throw StructuralError("coefficient variables do not match the chart's even coordinates");
        if (!m.valid_for(*table_)) throw StructuralError("monomial references indices outside the generator table");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    void add_factors(std::vector<Factor> factors, const LaurentPoly& coefficient) {
        if (auto nt = normalize_factors(std::move(factors))) add_term(nt->monomial, coefficient * nt->scale);
    }

    Superform& operator+=(const Superform& o) {
        require_compatible(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Superform& operator-=(const Superform& o) {
        require_compatible(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    Superform& operator*=(const Rational& s) {
        if (s == 0) terms_.clear();
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }

    friend Superform operator+(Superform a, const Superform& b) { return a += b; }
    friend Superform operator-(Superform a, const Superform& b) { return a -= b; }
    friend Superform operator-(Superform a) { return a *= Rational(-1); }
    friend Superform operator*(Superform a, const Rational& s) { return a *= s; }
    friend Superform operator*(const Rational& s, Superform a) { return a *= s; }

    /// Multiply by an even function (coefficients commute with everything).
    friend Superform operator*(const LaurentPoly& p, const Superform& a) {
        Superform r(a.chart_, a.table_);
        for (const auto& [m, c] : a.terms_) r.add_term(m, p * c);
        return r;
    }

    friend bool operator==(const Superform& a, const Superform& b) {
        return a.chart_ == b.chart_ && *a.table_ == *b.table_ && a.terms_ == b.terms_;
    }

    /// Split into components of fixed (degree | picture).
    std::map<Bidegree, Superform> bidegree_components() const {
        std::map<Bidegree, Superform> out;
        for (const auto& [m, c] : terms_) {
            auto [it, _] = out.try_emplace(m.bidegree(), chart_, table_);
            it->second.add_term(m, c);
        }
        return out;
    }

    /// Bidegree when homogeneous (zero counts as homogeneous of any bidegree: nullopt).
    std::optional<Bidegree> homogeneous_bidegree() const {
        if (terms_.empty()) return std::nullopt;
        Bidegree b = terms_.begin()->first.bidegree();
        for (const auto& [m, c] : terms_)
            if (m.bidegree() != b) throw StructuralError("form is not homogeneous");
        return b;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        Bidegree b = terms_.begin()->first.bidegree();
        int p = terms_.begin()->first.parity();
        return std::all_of(terms_.begin(), terms_.end(),
                           [&](const auto& t) { return t.first.bidegree() == b && t.first.parity() == p; });
    }

    int max_d_odd_power() const {
        int m = 0;
        for (const auto& [mono, c] : terms_) m = std::max(m, mono.max_d_odd_power());
        return m;
    }

    /// Re-tag onto another chart with an equal-shaped table.
    Superform on_chart(std::string chart, TablePtr table) const {
        if (table->n_even() != table_->n_even() || table->n_odd() != table_->n_odd())
            throw StructuralError("tables have different shapes");
        Superform r(std::move(chart), table);
        for (const auto& [m, c] : terms_) r.add_term(m, c.with_variables(table->evens));
        return r;
    }

    void require_compatible(const Superform& o) const {
        if (chart_ != o.chart_ || !(*table_ == *o.table_))
            throw StructuralError("forms live on different charts (" + chart_ + " vs " + o.chart_ + ")");
    }

private:
    std::string chart_;
    TablePtr table_;
    Terms terms_;
};

/// Bilinear extension of monomial concatenation followed by normalization.
inline Superform wedge(const Superform& a, const Superform& b) {
    a.require_compatible(b);
    Superform r(a.chart(), a.table());
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            if (auto nt = multiply(ma, mb)) r.add_term(nt->monomial, (ca * cb) * nt->scale);
        }
    }
    return r;
}

/// Exterior differential: d acts on coefficients through the even partials,
/// sends theta_j to dpsi_j, and kills dgamma, dpsi and every delta.  The
/// Leibniz sign is (-1)^(form degree of the prefix).
inline Superform exterior_d(const Superform& a) {
    const auto& table = a.table();
    Superform r(a.chart(), table);
    for (const auto& [m, f] : a.terms()) {
        const auto fs = m.factors();
        for (std::size_t i = 0; i < table->n_even(); ++i) {
            LaurentPoly df = lp_partial(f, i);
            if (df.is_zero()) continue;
            std::vector<Factor> raw;
            raw.reserve(fs.size() + 1);
            raw.push_back(Factor::d_even(static_cast<int>(i)));
            raw.insert(raw.end(), fs.begin(), fs.end());
            r.add_factors(std::move(raw), df);
        }
        int prefix_degree = 0;
        for (std::size_t p = 0; p < fs.size(); ++p) {
            if (fs[p].kind == FactorKind::Theta) {
                auto raw = fs;
                raw[p] = Factor::d_odd(fs[p].index, 1);
                r.add_factors(std::move(raw), (prefix_degree & 1) ? -f : f);
            }
            prefix_degree += factor_degree(fs[p]);
        }
    }
    return r;
}

/// Formal delta-series: delta^(k)(c dpsi_t + rest) =
///   sum_{m=0..T} rest^m / m! * c^-(k+m+1) * delta^(k+m)(dpsi_t).
/// `argument` must be homogeneous of bidegree (1|0) and contain dpsi_t with an
/// invertible Laurent-monomial coefficient.  When `target` is not given the
/// lowest such index is used.
inline Superform delta_expand(int order, const Superform& argument, int truncation,
                              std::optional<int> target = std::nullopt) {
    if (order < 0) throw StructuralError("delta order must be non-negative");
    if (truncation < 0) throw StructuralError("truncation order must be non-negative");
    if (argument.is_zero() || !argument.is_homogeneous() ||
        argument.terms().begin()->first.bidegree() != Bidegree{1, 0} || argument.terms().begin()->first.parity() != 1)
        throw StructuralError("delta argument must be an odd 1-form of picture 0");

    const auto& table = argument.table();
    auto single_dodd = [](int j) { return Monomial::from_canonical(std::vector<Factor>{Factor::d_odd(j, 1)}); };

    int t = -1;
    if (target) {
        t = *target;
        if (!argument.coefficient(single_dodd(t)).is_monomial())
            throw UnsupportedError("delta argument has no invertible coefficient on the requested differential");
    } else {
        for (std::size_t j = 0; j < table->n_odd(); ++j) {
            if (argument.coefficient(single_dodd(static_cast<int>(j))).is_monomial()) {
                t = static_cast<int>(j);
                break;
            }
        }
        if (t < 0) throw UnsupportedError("delta argument has no invertible leading coefficient");
    }

    const Monomial lead = single_dodd(t);
    const LaurentPoly c = argument.coefficient(lead);
    const LaurentPoly c_inv = c.inverse_monomial();
    Superform rest = argument;
    rest.add_term(lead, -c);

    Superform result(argument.chart(), table);
    Superform rest_power = Superform::scalar(argument.chart(), table, 1);
    Rational inv_factorial = 1;
    for (int m = 0; m <= truncation; ++m) {
        if (m > 0) {
            rest_power = wedge(rest_power, rest);
            inv_factorial /= m;
            if (rest_power.is_zero()) break;
        }
        auto delta = Superform::product(argument.chart(), table, {Factor::delta(t, order + m)},
                                        c_inv.pow(order + m + 1) * inv_factorial);
        result += wedge(rest_power, delta);
    }
    return result;
}

/// Integral-form pairing Omega^{p|0} x Omega^{q|1} -> Omega^{p+q|1}, realized by
/// the wedge product; the bidegrees must sum to (1|1).
inline Superform pair(const Superform& a, const Superform& b) {
    a.require_compatible(b);
    auto ba = a.homogeneous_bidegree();
    auto bb = b.homogeneous_bidegree();
    if (!ba || !bb) return Superform(a.chart(), a.table());
    if (ba->picture != 0 || bb->picture != 1 || ba->degree + bb->degree != 1)
        throw StructuralError("pairing needs bidegrees (n+1|0) and (-n|1), got (" + to_string(*ba) + ") and (" +
                              to_string(*bb) + ")");
    return wedge(a, b);
}

}  // namespace intform
