#pragma once

// Charts, generator-image morphisms, pullback of integral forms and the
// built-in atlases (flat superspace, P^1, P^{1|1}).

#include <intform/error.hpp>
#include <intform/laurent.hpp>
#include <intform/monomial.hpp>
#include <intform/superform.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace intform {

struct Chart {
    std::string id;
    TablePtr table;
    /// Scaling characters; charts of one atlas carry the same number of them
    /// and transitions must preserve each.
    std::vector<WeightCharacter> weights;
};

/// theta~_j |-> sum_i c_i theta_i
struct OddImage {
    std::vector<std::pair<LaurentPoly, int>> terms;
};

struct PullbackOptions {
    /// Largest dpsi power of the ambient computation; -1 means "take it from
    /// the form being pulled back".  Delta series are truncated at
    /// k + window + (number of source odd coordinates), so the nilpotent part
    /// of the argument is always expanded completely.
    int window = -1;
};

/// Morphism source -> target given by the images of the target generators.
/// Pullback sends forms on `target` to forms on `source`.
class Morphism {
public:
    Morphism(Chart source, Chart target, std::vector<LaurentPoly> even_images, std::vector<OddImage> odd_images)
        : source_(std::move(source)), target_(std::move(target)), even_images_(std::move(even_images)),
          odd_images_(std::move(odd_images)) {
        const auto& st = *source_.table;
        const auto& tt = *target_.table;
        if (even_images_.size() != tt.n_even()) throw StructuralError("need one image per target even coordinate");
        if (odd_images_.size() != tt.n_odd()) throw StructuralError("need one image per target odd coordinate");
        for (const auto& img : even_images_) {
            if (!same_variables(img.variables(), st.evens))
                throw StructuralError("even image is not a function of the source even coordinates");
            if (!img.is_monomial()) throw UnsupportedError("even images must be invertible Laurent monomials");
        }
        for (const auto& img : odd_images_) {
            for (const auto& [c, i] : img.terms) {
                if (!same_variables(c.variables(), st.evens))
                    throw StructuralError("odd image coefficient is not a function of the source even coordinates");
                if (i < 0 || static_cast<std::size_t>(i) >= st.n_odd())
                    throw StructuralError("odd image references an unknown source odd coordinate");
            }
        }
        build_generator_images();
        assign_delta_targets();
    }

    static Morphism identity(const Chart& c) {
        std::vector<LaurentPoly> ev;
        for (std::size_t i = 0; i < c.table->n_even(); ++i) ev.push_back(LaurentPoly::variable(c.table->evens, i));
        std::vector<OddImage> od;
        for (std::size_t j = 0; j < c.table->n_odd(); ++j)
            od.push_back({{{LaurentPoly::constant(c.table->evens, 1), static_cast<int>(j)}}});
        return Morphism(c, c, std::move(ev), std::move(od));
    }

    const Chart& source() const noexcept { return source_; }
    const Chart& target() const noexcept { return target_; }
    const std::vector<LaurentPoly>& even_images() const noexcept { return even_images_; }
    const std::vector<OddImage>& odd_images() const noexcept { return odd_images_; }

    /// Pullback of generator images, in source coordinates.
    const Superform& image_of_theta(int j) const { return theta_images_.at(static_cast<std::size_t>(j)); }
    const Superform& image_of_d_even(int i) const { return d_even_images_.at(static_cast<std::size_t>(i)); }
    const Superform& image_of_d_odd(int j) const { return d_odd_images_.at(static_cast<std::size_t>(j)); }

    Superform image_of_delta(int j, int order, int window) const {
        auto t = delta_targets_.at(static_cast<std::size_t>(j));
        if (!t) throw UnsupportedError("delta of target odd coordinate " + std::to_string(j) +
                                       " has no invertible leading coefficient under this morphism");
        const int nilpotent = static_cast<int>(source_.table->n_odd());
        return delta_expand(order, image_of_d_odd(j), order + window + nilpotent, *t);
    }

    Superform pullback(const Superform& a, PullbackOptions opts = {}) const {
        if (a.chart() != target_.id || !(*a.table() == *target_.table))
            throw StructuralError("form lives on chart " + a.chart() + ", morphism target is " + target_.id);
        const int window = opts.window >= 0 ? opts.window : a.max_d_odd_power();
        Superform result(source_.id, source_.table);
        std::map<std::pair<int, int>, Superform> delta_cache;
        for (const auto& [m, f] : a.terms()) {
            Superform prod = Superform::function(source_.id, source_.table, substitute(f));
            for (const auto& fac : m.factors()) {
                switch (fac.kind) {
                case FactorKind::Theta: prod = wedge(prod, image_of_theta(fac.index)); break;
                case FactorKind::DEven: prod = wedge(prod, image_of_d_even(fac.index)); break;
                case FactorKind::DOdd:
                    for (int p = 0; p < fac.value; ++p) prod = wedge(prod, image_of_d_odd(fac.index));
                    break;
                case FactorKind::Delta: {
                    auto key = std::make_pair(fac.index, fac.value);
                    auto it = delta_cache.find(key);
                    if (it == delta_cache.end())
                        it = delta_cache.emplace(key, image_of_delta(fac.index, fac.value, window)).first;
                    prod = wedge(prod, it->second);
                    break;
                }
                }
                if (prod.is_zero()) break;
            }
            result += prod;
        }
        return result;
    }

    /// True when every generator image has the weight of the generator under
    /// each scaling character.
    bool preserves_weights() const {
        if (source_.weights.size() != target_.weights.size()) return false;
        for (std::size_t c = 0; c < source_.weights.size(); ++c) {
            const auto& sw = source_.weights[c];
            const auto& tw = target_.weights[c];
            for (std::size_t i = 0; i < even_images_.size(); ++i) {
                for (const auto& [e, coef] : even_images_[i].terms())
                    if (exponent_weight(e, sw) != tw.even.at(i)) return false;
            }
            for (std::size_t j = 0; j < odd_images_.size(); ++j) {
                for (const auto& [coef, i] : odd_images_[j].terms) {
                    for (const auto& [e, q] : coef.terms())
                        if (exponent_weight(e, sw) + sw.odd.at(static_cast<std::size_t>(i)) != tw.odd.at(j))
                            return false;
                }
            }
        }
        return true;
    }

private:
    LaurentPoly substitute(const LaurentPoly& f) const {
        if (even_images_.empty()) {
            LaurentPoly r(source_.table->evens);
            for (const auto& [e, c] : f.terms()) r.add_term(Exponents(source_.table->n_even(), 0), c);
            return r;
        }
        return lp_substitute_monomial(f, even_images_);
    }

    void build_generator_images() {
        const auto& sid = source_.id;
        const auto& st = source_.table;
        for (const auto& img : odd_images_) {
            Superform th(sid, st);
            for (const auto& [c, i] : img.terms) th += c * Superform::product(sid, st, {Factor::theta(i)});
            theta_images_.push_back(th);
            d_odd_images_.push_back(exterior_d(th));
        }
        for (const auto& img : even_images_)
            d_even_images_.push_back(exterior_d(Superform::function(sid, st, img)));
    }

    // Each target delta is expanded about a distinct source dpsi whose
    // coefficient is an invertible monomial (lowest indices first).
    void assign_delta_targets() {
        const std::size_t n = odd_images_.size();
        std::vector<std::vector<int>> candidates(n);
        for (std::size_t j = 0; j < n; ++j) {
            std::map<int, LaurentPoly> coeff;
            for (const auto& [c, i] : odd_images_[j].terms) {
                auto [it, ins] = coeff.try_emplace(i, c);
                if (!ins) it->second += c;
            }
            for (const auto& [i, c] : coeff)
                if (c.is_monomial()) candidates[j].push_back(i);
        }
        delta_targets_.assign(n, std::nullopt);
        std::vector<std::optional<int>> trial(n);
        std::vector<bool> used(source_.table->n_odd(), false);
        std::function<bool(std::size_t)> match = [&](std::size_t j) -> bool {
            if (j == n) return true;
            for (int i : candidates[j]) {
                if (used[static_cast<std::size_t>(i)]) continue;
                used[static_cast<std::size_t>(i)] = true;
                trial[j] = i;
                if (match(j + 1)) return true;
                used[static_cast<std::size_t>(i)] = false;
            }
            return false;
        };
        if (match(0)) {
            delta_targets_ = trial;
        } else {
            for (std::size_t j = 0; j < n; ++j)
                if (!candidates[j].empty()) delta_targets_[j] = candidates[j].front();
        }
    }

    Chart source_;
    Chart target_;
    std::vector<LaurentPoly> even_images_;
    std::vector<OddImage> odd_images_;
    std::vector<Superform> theta_images_;
    std::vector<Superform> d_even_images_;
    std::vector<Superform> d_odd_images_;
    std::vector<std::optional<int>> delta_targets_;
};

inline Superform pullback(const Morphism& m, const Superform& a, PullbackOptions opts = {}) {
    return m.pullback(a, opts);
}

class Atlas {
public:
    Atlas() = default;
    explicit Atlas(std::string name) : name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

    void add_chart(Chart c) {
        if (find_chart(c.id)) throw StructuralError("duplicate chart id " + c.id);
        morphisms_.insert_or_assign(std::make_pair(c.id, c.id), Morphism::identity(c));
        charts_.push_back(std::move(c));
    }

    void add_morphism(Morphism m) {
        if (!find_chart(m.source().id) || !find_chart(m.target().id))
            throw StructuralError("morphism between unknown charts");
        auto key = std::make_pair(m.source().id, m.target().id);
        morphisms_.insert_or_assign(key, std::move(m));
    }

    const std::vector<Chart>& charts() const noexcept { return charts_; }

    const Chart& chart(const std::string& id) const {
        if (auto c = find_chart(id)) return *c;
        throw StructuralError("unknown chart " + id);
    }

    const Chart* find_chart(const std::string& id) const {
        auto it = std::find_if(charts_.begin(), charts_.end(), [&](const Chart& c) { return c.id == id; });
        return it == charts_.end() ? nullptr : &*it;
    }

    /// Morphism source -> target (pulls target forms back to source).  Each
    /// chart starts with its identity, which add_morphism may replace.
    const Morphism& morphism(const std::string& source, const std::string& target) const {
        auto it = morphisms_.find({source, target});
        if (it != morphisms_.end()) return it->second;
        throw StructuralError("no transition from " + target + " to " + source);
    }

    bool has_morphism(const std::string& source, const std::string& target) const {
        return morphisms_.count({source, target}) > 0;
    }

    const std::map<std::pair<std::string, std::string>, Morphism>& morphisms() const noexcept { return morphisms_; }

private:
    std::string name_;
    std::vector<Chart> charts_;
    std::map<std::pair<std::string, std::string>, Morphism> morphisms_;
};

struct CocycleReport {
    std::size_t checks = 0;
    std::vector<std::string> failures;

    bool ok() const noexcept { return failures.empty(); }
};

/// f_ii = id and f_ij o f_ji = id on every probe form (exact comparison).
inline CocycleReport verify_cocycle(const Atlas& atlas, const std::vector<Superform>& probes) {
    CocycleReport report;
    for (const auto& probe : probes) {
        const std::string& home = probe.chart();
        ++report.checks;
        if (atlas.morphism(home, home).pullback(probe) != probe)
            report.failures.push_back("f_ii != id on chart " + home);
        for (const auto& other : atlas.charts()) {
            if (other.id == home || !atlas.has_morphism(other.id, home) || !atlas.has_morphism(home, other.id))
                continue;
            ++report.checks;
            auto there = atlas.morphism(other.id, home).pullback(probe);
            auto back = atlas.morphism(home, other.id).pullback(there);
            if (back != probe) report.failures.push_back("round trip " + home + " -> " + other.id + " -> " + home);
        }
    }
    return report;
}

namespace detail {

inline std::vector<std::string> coordinate_names(const std::string& stem, int n) {
    if (n == 1) return {stem};
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) out.push_back(stem + std::to_string(i));
    return out;
}

inline Atlas projective_line(bool with_odd) {
    Atlas atlas(with_odd ? "p11" : "p1");
    auto t0 = make_table({"g"}, with_odd ? std::vector<std::string>{"psi"} : std::vector<std::string>{});
    auto t1 = make_table({"gt"}, with_odd ? std::vector<std::string>{"psit"} : std::vector<std::string>{});
    // z1/z0 on U0, z0/z1 on U1; theta/z_i has weight 0 in the homogeneous scaling.
    Chart u0{"U0", t0, {WeightCharacter{{1}, with_odd ? std::vector<int>{1} : std::vector<int>{}}}};
    Chart u1{"U1", t1, {WeightCharacter{{-1}, with_odd ? std::vector<int>{0} : std::vector<int>{}}}};
    atlas.add_chart(u0);
    atlas.add_chart(u1);

    // U1 forms pulled back to U0: gt = 1/g, psit = psi/g.
    std::vector<OddImage> odd01, odd10;
    if (with_odd) {
        odd01.push_back({{{LaurentPoly::variable(t0->evens, 0, -1), 0}}});
        odd10.push_back({{{LaurentPoly::variable(t1->evens, 0, -1), 0}}});
    }
    atlas.add_morphism(Morphism(u0, u1, {LaurentPoly::variable(t0->evens, 0, -1)}, std::move(odd01)));
    atlas.add_morphism(Morphism(u1, u0, {LaurentPoly::variable(t1->evens, 0, -1)}, std::move(odd10)));
    return atlas;
}

}  // namespace detail

/// Projective superline: two affine charts U0 (g, psi) and U1 (gt, psit).
inline Atlas builtin_p11() { return detail::projective_line(true); }

/// Ordinary projective line with the same two charts and no odd coordinate.
inline Atlas builtin_p1() { return detail::projective_line(false); }

/// Flat superspace C^{m|n} as a single chart "C" with one scaling character
/// per coordinate.
inline Atlas builtin_flat(int m, int n) {
    if (m < 0 || n < 0) throw StructuralError("dimensions must be non-negative");
    Atlas atlas("flat:" + std::to_string(m) + "," + std::to_string(n));
    auto table = make_table(detail::coordinate_names("g", m), detail::coordinate_names("psi", n));
    std::vector<WeightCharacter> chars;
    for (int c = 0; c < m + n; ++c) {
        WeightCharacter w{std::vector<int>(static_cast<std::size_t>(m), 0), std::vector<int>(static_cast<std::size_t>(n), 0)};
        if (c < m)
            w.even[static_cast<std::size_t>(c)] = 1;
        else
            w.odd[static_cast<std::size_t>(c - m)] = 1;
        chars.push_back(std::move(w));
    }
    atlas.add_chart(Chart{"C", table, std::move(chars)});
    return atlas;
}

}  // namespace intform
