#pragma once

// Hand-rolled random generators and independent oracles shared by the tests.

#include <intform/intform.hpp>

#include <algorithm>
#include <ostream>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace intform {

// Readable gtest diagnostics.
inline void PrintTo(const Superform& a, std::ostream* os) { *os << pretty_print(a); }
inline void PrintTo(const LaurentPoly& p, std::ostream* os) {
    auto t = make_table(*p.variables(), {});
    *os << pretty_print(Superform::function("", t, p.with_variables(t->evens)));
}

}  // namespace intform

namespace testsupport {

using namespace intform;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
    bool chance(int percent) { return uniform(1, 100) <= percent; }

    Rational rational() {
        int num = uniform(-9, 9);
        if (num == 0) num = 1;
        Rational q(num, uniform(1, 4));
        q.canonicalize();
        return q;
    }

private:
    std::mt19937_64 eng_;
};

inline LaurentPoly random_poly(Rng& rng, const VariableList& vars, int max_terms, int lo, int hi) {
    LaurentPoly p(vars);
    int n = rng.uniform(0, max_terms);
    for (int t = 0; t < n; ++t) {
        Exponents e(vars->size());
        for (auto& x : e) x = rng.uniform(lo, hi);
        p.add_term(e, rng.rational());
    }
    return p;
}

inline LaurentPoly random_nonzero_poly(Rng& rng, const VariableList& vars, int max_terms, int lo, int hi) {
    for (;;) {
        auto p = random_poly(rng, vars, std::max(1, max_terms), lo, hi);
        if (!p.is_zero()) return p;
    }
}

struct MonomialShape {
    int max_d_odd = 3;
    int max_delta = 3;
    int delta_percent = 35;
};

inline Monomial random_monomial(Rng& rng, const GeneratorTable& t, const MonomialShape& s = {}) {
    std::vector<Factor> fs;
    for (std::size_t j = 0; j < t.n_odd(); ++j)
        if (rng.chance(50)) fs.push_back(Factor::theta(static_cast<int>(j)));
    for (std::size_t i = 0; i < t.n_even(); ++i)
        if (rng.chance(35)) fs.push_back(Factor::d_even(static_cast<int>(i)));
    std::vector<Factor> dodd, delta;
    for (std::size_t j = 0; j < t.n_odd(); ++j) {
        int roll = rng.uniform(1, 100);
        if (roll <= s.delta_percent)
            delta.push_back(Factor::delta(static_cast<int>(j), rng.uniform(0, s.max_delta)));
        else if (roll <= s.delta_percent + 40 && s.max_d_odd > 0)
            dodd.push_back(Factor::d_odd(static_cast<int>(j), rng.uniform(1, s.max_d_odd)));
    }
    fs.insert(fs.end(), dodd.begin(), dodd.end());
    fs.insert(fs.end(), delta.begin(), delta.end());
    return Monomial::from_canonical(fs);
}

inline Superform random_form(Rng& rng, const std::string& chart, const TablePtr& table, int max_terms,
                             const MonomialShape& s = {}, int lo = -2, int hi = 2) {
    Superform f(chart, table);
    int n = rng.uniform(1, max_terms);
    for (int k = 0; k < n; ++k)
        f.add_term(random_monomial(rng, *table, s), random_nonzero_poly(rng, table->evens, 2, lo, hi));
    return f;
}

/// Nonzero, with all terms of one bidegree and one parity.
inline Superform random_homogeneous(Rng& rng, const std::string& chart, const TablePtr& table, int max_terms,
                                    const MonomialShape& s = {}, int lo = -2, int hi = 2) {
    Monomial first = random_monomial(rng, *table, s);
    Superform f(chart, table);
    f.add_term(first, random_nonzero_poly(rng, table->evens, 2, lo, hi));
    int want = rng.uniform(0, max_terms - 1);
    for (int tries = 0; tries < 60 && want > 0; ++tries) {
        Monomial m = random_monomial(rng, *table, s);
        if (m.bidegree() == first.bidegree() && m.parity() == first.parity()) {
            f.add_term(m, random_nonzero_poly(rng, table->evens, 2, lo, hi));
            --want;
        }
    }
    if (f.is_zero()) f.add_term(first, LaurentPoly::constant(table->evens, 1));
    return f;
}

// Sign oracle written from the grading table directly:
//   theta (0,1), dgamma (1,0), dpsi^a (a, a), delta^(k) (-k, k+1).
inline std::pair<int, int> oracle_grading(const Factor& f) {
    switch (f.kind) {
    case FactorKind::Theta: return {0, 1};
    case FactorKind::DEven: return {1, 0};
    case FactorKind::DOdd: return {f.value, f.value % 2};
    case FactorKind::Delta: return {-f.value, (f.value + 1) % 2};
    }
    return {0, 0};
}

inline int oracle_swap_sign(const Factor& a, const Factor& b) {
    auto [da, pa] = oracle_grading(a);
    auto [db, pb] = oracle_grading(b);
    long e = static_cast<long>(da) * db + static_cast<long>(pa) * pb;
    return (e % 2 == 0) ? 1 : -1;
}

inline int oracle_rank(const Factor& f) {
    switch (f.kind) {
    case FactorKind::Theta: return 0;
    case FactorKind::DEven: return 1;
    case FactorKind::DOdd: return 2;
    case FactorKind::Delta: return 3;
    }
    return 0;
}

/// Bubble sort into (kind, index) order, counting the sign of every
/// adjacent swap.  Only valid for sequences without repeated generators and
/// without a dpsi and a delta on the same coordinate.
inline std::pair<int, std::vector<Factor>> bubble_sign(std::vector<Factor> fs) {
    int sign = 1;
    for (std::size_t pass = 0; pass < fs.size(); ++pass) {
        for (std::size_t i = 0; i + 1 < fs.size(); ++i) {
            auto key = [](const Factor& f) { return std::make_pair(oracle_rank(f), f.index); };
            if (key(fs[i + 1]) < key(fs[i])) {
                sign *= oracle_swap_sign(fs[i], fs[i + 1]);
                std::swap(fs[i], fs[i + 1]);
            }
        }
    }
    return {sign, fs};
}

/// <x^a f, delta^(b)> = (-1)^b (x^a f)^(b)(0) for f = x^j.
inline Rational distribution_lhs(int a, int b, int j) {
    if (a + j != b) return 0;
    Rational r = factorial(static_cast<unsigned>(b));
    return (b % 2) ? Rational(-r) : r;
}

/// <f, c delta^(m)> for f = x^j.
inline Rational distribution_rhs(const Rational& c, int m, int j) {
    if (j != m) return 0;
    Rational r = c * factorial(static_cast<unsigned>(m));
    return (m % 2) ? Rational(-r) : r;
}

}  // namespace testsupport
