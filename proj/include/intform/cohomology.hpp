#pragma once

// Section spaces, the two-chart Cech complex of the projective (super)line,
// global and flat de Rham complexes, and the cohomological pairing.
//
// Every transition of the built-in atlases commutes with the scaling
// action recorded in Chart::weights, and so does d.  All complexes therefore
// split into finite-dimensional weight blocks which are computed exactly;
// the cutoff only bounds which weights are scanned.

#include <intform/atlas.hpp>
#include <intform/error.hpp>
#include <intform/laurent.hpp>
#include <intform/linalg.hpp>
#include <intform/monomial.hpp>
#include <intform/superform.hpp>

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace intform {

/// Sheaf label (i|j): form degree i, picture j.
struct SheafLabel {
    int degree = 0;
    int picture = 0;

    friend auto operator<=>(const SheafLabel&, const SheafLabel&) = default;
};

inline std::string to_string(const SheafLabel& s) { return std::to_string(s.degree) + "|" + std::to_string(s.picture); }

/// One basis vector of a section space: monomial times x^exponents.
struct BasisElement {
    Monomial monomial;
    Exponents exponents;

    friend auto operator<=>(const BasisElement&, const BasisElement&) = default;
    friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

class SectionBasis {
public:
    SectionBasis() = default;
    SectionBasis(SheafLabel sheaf, std::string chart, TablePtr table, bool overlap, int lo, int hi,
                 std::vector<BasisElement> elements)
        : sheaf_(sheaf), chart_(std::move(chart)), table_(std::move(table)), overlap_(overlap), lo_(lo), hi_(hi),
          elements_(std::move(elements)) {
        std::sort(elements_.begin(), elements_.end());
        for (std::size_t k = 0; k < elements_.size(); ++k) {
            if (!index_.emplace(elements_[k], k).second) throw StructuralError("duplicate basis element");
        }
    }

    const SheafLabel& sheaf() const noexcept { return sheaf_; }
    const std::string& chart() const noexcept { return chart_; }
    const TablePtr& table() const noexcept { return table_; }
    bool overlap() const noexcept { return overlap_; }
    int lo() const noexcept { return lo_; }
    int hi() const noexcept { return hi_; }
    const std::vector<BasisElement>& elements() const noexcept { return elements_; }
    std::size_t size() const noexcept { return elements_.size(); }

    Superform form(std::size_t k) const {
        const auto& el = elements_.at(k);
        return Superform::product(chart_, table_, el.monomial.factors(),
                                  LaurentPoly::monomial(table_->evens, 1, el.exponents));
    }

    Superform combination(const Vector& v) const {
        Superform r(chart_, table_);
        for (std::size_t k = 0; k < elements_.size(); ++k) {
            if (v.at(k) == 0) continue;
            const auto& el = elements_[k];
            r.add_term(el.monomial, LaurentPoly::monomial(table_->evens, v[k], el.exponents));
        }
        return r;
    }

    /// Coordinates of `a`; a term outside the basis means the window is too small.
    Vector coordinates(const Superform& a) const {
        Vector v(elements_.size());
        for (const auto& [m, f] : a.terms()) {
            for (const auto& [e, c] : f.terms()) {
                auto it = index_.find(BasisElement{m, e});
                if (it == index_.end())
                    throw WindowOverflow("term outside the section window of " + chart_ + " for sheaf " +
                                         to_string(sheaf_));
                v[it->second] = c;
            }
        }
        return v;
    }

private:
    SheafLabel sheaf_;
    std::string chart_;
    TablePtr table_;
    bool overlap_ = false;
    int lo_ = 0;
    int hi_ = 0;
    std::vector<BasisElement> elements_;
    std::map<BasisElement, std::size_t> index_;
};

/// Columns are the coordinates of the images.
inline Matrix assemble(const std::vector<Superform>& images, const SectionBasis& codomain) {
    Matrix m(codomain.size(), images.size());
    for (std::size_t c = 0; c < images.size(); ++c) m.set_column(c, codomain.coordinates(images[c]));
    return m;
}

// ---------------------------------------------------------------------------
// The projective line and superline.

namespace detail {

inline int total_weight(const BasisElement& el, const WeightCharacter& w) {
    return monomial_weight(el.monomial, w) + exponent_weight(el.exponents, w);
}

}  // namespace detail

/// Form parts theta^a dgamma^b (dpsi)^c or theta^a dgamma^b delta^(k)(dpsi)
/// of bidegree (i|j) on a chart with one even and at most one odd coordinate.
inline std::vector<Monomial> line_form_types(const GeneratorTable& t, SheafLabel s) {
    if (t.n_even() != 1 || t.n_odd() > 1) throw UnsupportedError("line charts have one even and at most one odd coordinate");
    if (s.picture < 0 || s.picture > static_cast<int>(t.n_odd()))
        throw UnsupportedError("picture " + std::to_string(s.picture) + " is not available on this chart");
    const bool odd = t.n_odd() == 1;
    std::vector<Monomial> out;
    for (int th = 0; th <= (odd ? 1 : 0); ++th) {
        for (int dg = 0; dg <= 1; ++dg) {
            std::vector<Factor> fs;
            if (th) fs.push_back(Factor::theta(0));
            if (dg) fs.push_back(Factor::d_even(0));
            if (s.picture == 0) {
                int b = s.degree - dg;
                if (b < 0 || (b > 0 && !odd)) continue;
                if (b > 0) fs.push_back(Factor::d_odd(0, b));
            } else {
                int k = dg - s.degree;
                if (k < 0) continue;
                fs.push_back(Factor::delta(0, k));
            }
            out.push_back(Monomial::from_canonical(fs));
        }
    }
    return out;
}

/// The two charts and the transition of a built-in line atlas.
struct LineCover {
    Chart u0;
    Chart u1;
    Morphism phi;  // pulls U1 forms back to U0

    explicit LineCover(const Atlas& atlas)
        : u0(chart_at(atlas, 0)), u1(chart_at(atlas, 1)), phi(atlas.morphism(u0.id, u1.id)) {
        for (const Chart* c : {&u0, &u1}) {
            if (c->table->n_even() != 1 || c->table->n_odd() > 1)
                throw UnsupportedError("chart " + c->id + " is not a line chart");
            if (c->weights.empty() || c->weights[0].even.at(0) == 0)
                throw UnsupportedError("chart " + c->id + " carries no scaling weight");
        }
        if (!phi.preserves_weights()) throw UnsupportedError("transition does not respect the scaling weights");
    }

private:
    static const Chart& chart_at(const Atlas& atlas, std::size_t k) {
        if (atlas.charts().size() != 2) throw UnsupportedError("Cech computations need a two-chart atlas");
        return atlas.charts()[k];
    }
};

/// Sections of (i|j) on one chart of weight w (exponents >= 0), or on the
/// overlap when `overlap` is set (any exponent).
inline SectionBasis weight_block(const Chart& chart, SheafLabel s, int w, bool overlap) {
    const auto& wc = chart.weights.at(0);
    const int we = wc.even.at(0);
    std::vector<BasisElement> els;
    for (const auto& m : line_form_types(*chart.table, s)) {
        int r = w - monomial_weight(m, wc);
        if (r % we != 0) continue;
        int e = r / we;
        if (!overlap && e < 0) continue;
        els.push_back({m, Exponents{e}});
    }
    return SectionBasis(s, chart.id, chart.table, overlap, w, w, std::move(els));
}

/// Truncated section space by exponent window: [0, D] on a chart, and
/// [-(D+|i|+4), D+|i|+4] on the overlap (given in the coordinates of the
/// first chart).
inline SectionBasis build_section_basis(const Atlas& atlas, SheafLabel s, const std::string& chart, int cutoff) {
    if (cutoff < 0) throw StructuralError("cutoff must be non-negative");
    const bool overlap = chart == "overlap";
    const Chart& c = overlap ? atlas.charts().at(0) : atlas.chart(chart);
    const int reach = cutoff + std::abs(s.degree) + 4;
    const int lo = overlap ? -reach : 0;
    const int hi = overlap ? reach : cutoff;
    std::vector<BasisElement> els;
    for (const auto& m : line_form_types(*c.table, s))
        for (int e = lo; e <= hi; ++e) els.push_back({m, Exponents{e}});
    return SectionBasis(s, c.id, c.table, overlap, lo, hi, std::move(els));
}

/// One weight block of the Cech differential (s0, s1) |-> s0 - phi*(s1).
struct CechBlock {
    int weight = 0;
    SectionBasis u0;
    SectionBasis u1;
    SectionBasis overlap;
    Matrix map;
};

inline CechBlock cech_block(const LineCover& cover, SheafLabel s, int w) {
    CechBlock b;
    b.weight = w;
    b.u0 = weight_block(cover.u0, s, w, false);
    b.u1 = weight_block(cover.u1, s, w, false);
    b.overlap = weight_block(cover.u0, s, w, true);
    std::vector<Superform> images;
    for (std::size_t k = 0; k < b.u0.size(); ++k) images.push_back(b.u0.form(k));
    for (std::size_t k = 0; k < b.u1.size(); ++k) images.push_back(-cover.phi.pullback(b.u1.form(k)));
    b.map = assemble(images, b.overlap);
    return b;
}

/// A global section given on both charts.
struct GlobalSection {
    Superform on_u0;
    Superform on_u1;
};

/// Cech cohomology of one sheaf, all weights |w| <= cutoff + |i| + 4.
class CechComplex {
public:
    CechComplex(const Atlas& atlas, SheafLabel sheaf, int cutoff)
        : cover_(atlas), sheaf_(sheaf), cutoff_(cutoff), reach_(cutoff + std::abs(sheaf.degree) + 4) {
        if (cutoff < 0) throw StructuralError("cutoff must be non-negative");
        for (int w = -reach_; w <= reach_; ++w) {
            Solved sb = solve_block(w);
            for (const auto& v : sb.kernel) sections_.push_back(to_section(sb.block, v));
            for (auto idx : sb.complement) h1_reps_.push_back(sb.block.overlap.form(idx));
            blocks_.emplace(w, std::move(sb));
        }
    }

    SheafLabel sheaf() const noexcept { return sheaf_; }
    int cutoff() const noexcept { return cutoff_; }
    int reach() const noexcept { return reach_; }
    std::size_t h0() const noexcept { return sections_.size(); }
    std::size_t h1() const noexcept { return h1_reps_.size(); }
    const std::vector<GlobalSection>& global_sections() const noexcept { return sections_; }
    const std::vector<Superform>& h1_representatives() const noexcept { return h1_reps_; }
    const LineCover& cover() const noexcept { return cover_; }

    const CechBlock& block(int w) const { return blocks_.at(w).block; }
    std::vector<int> weights() const {
        std::vector<int> out;
        for (const auto& [w, b] : blocks_) out.push_back(w);
        return out;
    }

    /// Coordinates of the class of an overlap cochain (in the first chart's
    /// coordinates) with respect to h1_representatives().
    Vector class_of(const Superform& cochain) const {
        const auto& wc = cover_.u0.weights.at(0);
        std::map<int, Superform> parts;
        for (const auto& [m, f] : cochain.terms()) {
            for (const auto& [e, c] : f.terms()) {
                int w = monomial_weight(m, wc) + exponent_weight(e, wc);
                auto [it, _] = parts.try_emplace(w, cochain.chart(), cochain.table());
                it->second.add_term(m, LaurentPoly::monomial(cochain.table()->evens, c, e));
            }
        }
        Vector out(h1());
        for (const auto& [w, part] : parts) {
            auto it = blocks_.find(w);
            if (it == blocks_.end()) {
                // Blocks are exact; one outside the scanned range only matters
                // if it carries cohomology, which would mean the cutoff is too small.
                Solved sb = solve_block(w);
                if (!sb.complement.empty())
                    throw WindowOverflow("cochain has weight " + std::to_string(w) + " outside the scanned range");
                continue;
            }
            const auto& sb = it->second;
            if (sb.complement.empty()) continue;
            auto q = quotient_coordinates(sb.block.map, sb.complement, sb.block.overlap.coordinates(part));
            std::size_t offset = offset_of(w);
            for (std::size_t k = 0; k < q.size(); ++k) out[offset + k] = q[k];
        }
        return out;
    }

private:
    struct Solved {
        CechBlock block;
        std::vector<Vector> kernel;
        std::vector<std::size_t> complement;
    };

    Solved solve_block(int w) const {
        Solved sb;
        sb.block = cech_block(cover_, sheaf_, w);
        sb.kernel = kernel_basis(sb.block.map);
        sb.complement = cokernel_unit_complement(sb.block.map);
        return sb;
    }

    GlobalSection to_section(const CechBlock& b, const Vector& v) const {
        Vector a(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(b.u0.size()));
        Vector c(v.begin() + static_cast<std::ptrdiff_t>(b.u0.size()), v.end());
        return {b.u0.combination(a), b.u1.combination(c)};
    }

    std::size_t offset_of(int w) const {
        std::size_t off = 0;
        for (const auto& [bw, sb] : blocks_) {
            if (bw == w) break;
            off += sb.complement.size();
        }
        return off;
    }

    LineCover cover_;
    SheafLabel sheaf_;
    int cutoff_;
    int reach_;
    std::map<int, Solved> blocks_;
    std::vector<GlobalSection> sections_;
    std::vector<Superform> h1_reps_;
};

struct CohomologyReport {
    std::string kind;    // "cech" or "derham"
    std::string space;
    int picture = 0;
    std::string sheaf;   // "i|j" for Cech; empty for de Rham
    int cutoff = 0;
    std::map<int, std::size_t> dims;                      // Cech degree p, or form degree i
    std::map<int, std::vector<Superform>> generators;     // same keys
    bool stabilized = false;
    std::vector<std::string> notes;

    std::size_t dim(int key) const {
        auto it = dims.find(key);
        return it == dims.end() ? 0 : it->second;
    }
};

inline CohomologyReport cech_report(const Atlas& atlas, SheafLabel s, int cutoff) {
    CechComplex c(atlas, s, cutoff);
    CechComplex wider(atlas, s, cutoff + 2);
    CohomologyReport r;
    r.kind = "cech";
    r.space = atlas.name();
    r.picture = s.picture;
    r.sheaf = to_string(s);
    r.cutoff = cutoff;
    r.dims[0] = c.h0();
    r.dims[1] = c.h1();
    for (const auto& g : c.global_sections()) r.generators[0].push_back(g.on_u0);
    r.generators[1] = c.h1_representatives();
    r.stabilized = c.h0() == wider.h0() && c.h1() == wider.h1();
    return r;
}

inline CohomologyReport cech_h0(const Atlas& atlas, SheafLabel s, int cutoff) { return cech_report(atlas, s, cutoff); }
inline CohomologyReport cech_h1(const Atlas& atlas, SheafLabel s, int cutoff) { return cech_report(atlas, s, cutoff); }

// ---------------------------------------------------------------------------
// de Rham complexes.

namespace detail {

struct QuotientResult {
    std::size_t dim = 0;
    std::vector<Vector> reps;
};

/// H at the middle of  A --d_in--> B --d_out--> C, where B's cochains are the
/// columns of `cochains` (coordinates in an ambient basis of size `ambient`),
/// `d_out_on_cochains` is d applied to them and `incoming` holds the images
/// of the previous cochains in ambient coordinates.
inline QuotientResult middle_cohomology(const Matrix& cochains, const Matrix& d_out_on_cochains,
                                        const std::vector<Vector>& incoming, std::size_t ambient) {
    QuotientResult out;
    std::vector<Vector> closed;
    for (const auto& c : kernel_basis(d_out_on_cochains)) {
        Vector z(ambient);
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k] == 0) continue;
            for (std::size_t r = 0; r < ambient; ++r) z[r] += c[k] * cochains(r, k);
        }
        closed.push_back(std::move(z));
    }
    out.reps = quotient_representatives(incoming, closed, ambient);
    out.dim = out.reps.size();
    return out;
}

inline Matrix identity_matrix(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

inline std::vector<Vector> columns(const Matrix& m) {
    std::vector<Vector> out;
    for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m.column(c));
    return out;
}

}  // namespace detail

/// Matrix of d from one basis to another (images must stay inside `to`).
inline Matrix d_matrix(const SectionBasis& from, const SectionBasis& to) {
    std::vector<Superform> images;
    for (std::size_t k = 0; k < from.size(); ++k) images.push_back(exterior_d(from.form(k)));
    return assemble(images, to);
}

/// One weight of the global de Rham complex on a line atlas: global
/// sections per degree (columns in the first chart's block basis) and d.
struct GlobalDeRhamBlock {
    int weight = 0;
    std::map<int, SectionBasis> chart_basis;  // degree -> U0 block basis
    std::map<int, Matrix> sections;           // degree -> columns of global sections
    std::map<int, Matrix> d;                  // degree i -> matrix U0 block (i) -> U0 block (i+1)
};

inline GlobalDeRhamBlock global_derham_block(const LineCover& cover, int picture, int lo, int hi, int w) {
    GlobalDeRhamBlock b;
    b.weight = w;
    for (int i = lo; i <= hi + 1; ++i) b.chart_basis.emplace(i, weight_block(cover.u0, {i, picture}, w, false));
    for (int i = lo; i <= hi; ++i) {
        auto cb = cech_block(cover, {i, picture}, w);
        auto ker = kernel_basis(cb.map);
        Matrix g(cb.u0.size(), ker.size());
        for (std::size_t c = 0; c < ker.size(); ++c)
            for (std::size_t r = 0; r < cb.u0.size(); ++r) g(r, c) = ker[c][r];
        b.sections.emplace(i, std::move(g));
        b.d.emplace(i, d_matrix(b.chart_basis.at(i), b.chart_basis.at(i + 1)));
    }
    return b;
}

/// Holomorphic de Rham cohomology of global sections on a line atlas,
/// picture j, degrees [lo, hi].  The neighbours lo-1 and hi+1 enter the
/// computation so the endpoint degrees are exact as well.
inline CohomologyReport derham_line(const Atlas& atlas, int picture, int lo, int hi, int cutoff) {
    if (lo > hi) throw StructuralError("empty degree range");
    if (cutoff < 0) throw StructuralError("cutoff must be non-negative");
    LineCover cover(atlas);
    auto run = [&](int cut, CohomologyReport* out) {
        std::map<int, std::size_t> dims;
        const int reach = cut + std::max(std::abs(lo), std::abs(hi)) + 5;
        for (int w = -reach; w <= reach; ++w) {
            auto b = global_derham_block(cover, picture, lo - 1, hi, w);
            for (int i = lo; i <= hi; ++i) {
                const auto& g = b.sections.at(i);
                Matrix dg = b.d.at(i) * g;
                auto incoming = detail::columns(b.d.at(i - 1) * b.sections.at(i - 1));
                auto q = detail::middle_cohomology(g, dg, incoming, g.rows());
                dims[i] += q.dim;
                if (out)
                    for (const auto& v : q.reps) out->generators[i].push_back(b.chart_basis.at(i).combination(v));
            }
        }
        return dims;
    };
    CohomologyReport r;
    r.kind = "derham";
    r.space = atlas.name();
    r.picture = picture;
    r.cutoff = cutoff;
    r.dims = run(cutoff, &r);
    for (int i = lo; i <= hi; ++i) r.dims.try_emplace(i, 0);
    auto wider = run(cutoff + 2, nullptr);
    for (int i = lo; i <= hi; ++i) wider.try_emplace(i, 0);
    r.stabilized = wider == r.dims;
    return r;
}

/// Monomials of C^{m|n} of picture j, grouped by multi-weight, with every
/// exponent, dpsi power and delta order at most `cap`.  Only weights whose
/// block is complete under the cap are kept: even weights in [0, cap], odd
/// weights in [-cap, cap].
inline std::map<std::vector<int>, std::map<int, std::vector<BasisElement>>> flat_blocks(std::size_t m, std::size_t n,
                                                                                         int picture, int cap) {
    std::map<std::vector<int>, std::map<int, std::vector<BasisElement>>> out;
    std::vector<int> weight(m + n);
    Exponents exps(m);
    std::vector<int> thetas, devens;
    std::vector<std::pair<int, int>> dodds, deltas;

    auto emit = [&] {
        if (static_cast<int>(deltas.size()) != picture) return;
        std::vector<Factor> fs;
        for (int j : thetas) fs.push_back(Factor::theta(j));
        for (int i : devens) fs.push_back(Factor::d_even(i));
        for (auto [j, a] : dodds) fs.push_back(Factor::d_odd(j, a));
        for (auto [j, k] : deltas) fs.push_back(Factor::delta(j, k));
        auto mono = Monomial::from_canonical(fs);
        out[weight][mono.degree()].push_back({mono, exps});
    };

    std::function<void(std::size_t)> odd_rec = [&](std::size_t j) {
        if (j == n) {
            emit();
            return;
        }
        const int jj = static_cast<int>(j);
        for (int th = 0; th <= 1; ++th) {
            if (th) thetas.push_back(jj);
            for (int a = 0; a <= cap; ++a) {
                int w = th + a;
                if (w <= cap) {
                    weight[m + j] = w;
                    if (a) dodds.emplace_back(jj, a);
                    odd_rec(j + 1);
                    if (a) dodds.pop_back();
                }
            }
            if (static_cast<int>(deltas.size()) < picture) {
                for (int k = 0; k <= cap; ++k) {
                    int w = th - (k + 1);
                    if (w < -cap) continue;
                    weight[m + j] = w;
                    deltas.emplace_back(jj, k);
                    odd_rec(j + 1);
                    deltas.pop_back();
                }
            }
            if (th) thetas.pop_back();
        }
    };

    std::function<void(std::size_t)> even_rec = [&](std::size_t i) {
        if (i == m) {
            odd_rec(0);
            return;
        }
        for (int dg = 0; dg <= 1; ++dg) {
            if (dg) devens.push_back(static_cast<int>(i));
            for (int e = 0; e + dg <= cap; ++e) {
                exps[i] = e;
                weight[i] = e + dg;
                even_rec(i + 1);
            }
            if (dg) devens.pop_back();
        }
    };
    even_rec(0);
    return out;
}

/// de Rham cohomology of polynomial integral forms on C^{m|n} in picture j.
inline CohomologyReport derham_flat(int m, int n, int picture, int cap) {
    if (m < 0 || n < 0 || m > 3 || n > 3) throw UnsupportedError("flat de Rham supports C^{m|n} with m, n <= 3");
    if (picture < 0 || picture > n) throw UnsupportedError("picture must lie in [0, n]");
    if (cap < 0) throw StructuralError("degree cap must be non-negative");
    Atlas atlas = builtin_flat(m, n);
    const Chart& chart = atlas.charts().front();
    auto run = [&](int c, CohomologyReport* out) {
        std::map<int, std::size_t> dims;
        auto blocks = flat_blocks(static_cast<std::size_t>(m), static_cast<std::size_t>(n), picture, c);
        for (auto& [w, by_degree] : blocks) {
            std::map<int, SectionBasis> bases;
            for (auto& [deg, els] : by_degree)
                bases.emplace(deg, SectionBasis({deg, picture}, chart.id, chart.table, false, 0, c, std::move(els)));
            auto basis_or_empty = [&](int deg) {
                auto it = bases.find(deg);
                return it == bases.end() ? SectionBasis({deg, picture}, chart.id, chart.table, false, 0, c, {})
                                         : it->second;
            };
            for (const auto& [deg, basis] : bases) {
                Matrix d_out = d_matrix(basis, basis_or_empty(deg + 1));
                auto prev = basis_or_empty(deg - 1);
                auto incoming = detail::columns(d_matrix(prev, basis));
                auto q = detail::middle_cohomology(detail::identity_matrix(basis.size()), d_out, incoming,
                                                   basis.size());
                dims[deg] += q.dim;
                if (out)
                    for (const auto& v : q.reps) out->generators[deg].push_back(basis.combination(v));
            }
        }
        return dims;
    };
    CohomologyReport r;
    r.kind = "derham";
    r.space = atlas.name();
    r.picture = picture;
    r.cutoff = cap;
    r.dims = run(cap, &r);
    auto wider = run(cap + 2, nullptr);
    r.stabilized = true;
    for (const auto& [deg, d] : r.dims)
        if (wider.count(deg) && wider.at(deg) != d) r.stabilized = false;
    for (const auto& [deg, d] : wider)
        if (d != 0 && !r.dims.count(deg)) r.notes.push_back("degree " + std::to_string(deg) + " only reached at the wider cap");
    return r;
}

// ---------------------------------------------------------------------------
// Pairing and comparison.

struct PairingResult {
    Matrix matrix;       // rows: H^1(n+1|0) representatives, columns: H^0(-n|1) sections
    std::size_t rank = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
};

/// Products of H^1(Omega^{n+1|0}) representatives with H^0(Omega^{-n|1})
/// sections, projected onto the generator of H^1(Omega^{1|1}).
inline PairingResult pairing_matrix(const Atlas& atlas, int n, int cutoff) {
    if (n < 0) throw StructuralError("n must be non-negative");
    CechComplex left(atlas, {n + 1, 0}, cutoff);
    CechComplex right(atlas, {-n, 1}, cutoff);
    CechComplex target(atlas, {1, 1}, cutoff);
    if (target.h1() != 1) throw StructuralError("H^1 of the top sheaf is not one-dimensional");
    PairingResult r;
    r.rows = left.h1();
    r.cols = right.h0();
    r.matrix = Matrix(r.rows, r.cols);
    for (std::size_t a = 0; a < r.rows; ++a) {
        for (std::size_t b = 0; b < r.cols; ++b) {
            auto prod = pair(left.h1_representatives()[a], right.global_sections()[b].on_u0);
            r.matrix(a, b) = target.class_of(prod).at(0);
        }
    }
    r.rank = rank(r.matrix);
    return r;
}

inline PairingResult pairing_matrix(int n, int cutoff) { return pairing_matrix(builtin_p11(), n, cutoff); }

struct CechDeRhamRow {
    int degree = 0;
    std::size_t derham = 0;
    std::size_t cech = 0;
    std::size_t kunneth = 0;  // dim H^i(P^1) * dim H^{0|1}(C^{0|1})
};

struct CechDeRhamReport {
    std::vector<CechDeRhamRow> rows;
    std::vector<std::string> mismatches;

    bool ok() const noexcept { return mismatches.empty(); }
};

/// de Rham of P^{1|1} in picture 1 against Cech cohomology of the constant
/// sheaf spanned by psi delta(dpsi), plus the tensor-product count.
inline CechDeRhamReport cech_derham_check(int cutoff) {
    Atlas p11 = builtin_p11();
    LineCover cover(p11);
    CechDeRhamReport rep;

    auto dr = derham_line(p11, 1, 0, 1, cutoff);

    // The local generator on each chart and its transition factor.
    auto gen = [](const Chart& c) {
        return Superform::product(c.id, c.table, {Factor::theta(0), Factor::delta(0, 0)});
    };
    Superform s0 = gen(cover.u0);
    Superform pulled = cover.phi.pullback(gen(cover.u1));
    std::optional<Rational> factor;
    if (pulled.size() == 1 && pulled.terms().begin()->first == s0.terms().begin()->first &&
        pulled.terms().begin()->second.is_constant())
        factor = pulled.terms().begin()->second.coefficient(Exponents{0});
    if (!factor) rep.mismatches.push_back("psi delta(dpsi) does not glue to a constant sheaf");
    Matrix coboundary(1, 2);
    coboundary(0, 0) = 1;
    coboundary(0, 1) = factor ? -*factor : Rational(0);
    const std::size_t rk = rank(coboundary);
    const std::size_t cech[2] = {2 - rk, 1 - rk};

    auto p1 = derham_line(builtin_p1(), 0, 0, 1, cutoff);
    auto fiber = derham_flat(0, 1, 1, 4);
    const std::size_t fiber_dim = fiber.dim(0);

    for (int i = 0; i <= 1; ++i) {
        CechDeRhamRow row{i, dr.dim(i), cech[i], p1.dim(i) * fiber_dim};
        if (row.derham != row.cech)
            rep.mismatches.push_back("degree " + std::to_string(i) + ": de Rham " + std::to_string(row.derham) +
                                     " vs Cech " + std::to_string(row.cech));
        if (row.derham != row.kunneth)
            rep.mismatches.push_back("degree " + std::to_string(i) + ": Kunneth count " +
                                     std::to_string(row.kunneth) + " vs " + std::to_string(row.derham));
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace intform
