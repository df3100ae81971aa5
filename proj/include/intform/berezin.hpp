#pragma once

// Integration of top integral forms f(x, theta) d^{p+1}x delta(dtheta^1)...delta(dtheta^q):
// the delta factors absorb the dtheta's and leave the Berezin integral of f.

#include <intform/error.hpp>
#include <intform/laurent.hpp>
#include <intform/monomial.hpp>
#include <intform/superform.hpp>

#include <cstddef>

namespace intform {

/// Coefficient function of the top theta monomial, with the sign picked up
/// when each term is brought to the order theta^1..theta^q dgamma^1..dgamma^{p+1}
/// delta(dpsi_1)..delta(dpsi_q).  Equivalently the left derivatives
/// d/dtheta^q ... d/dtheta^1 applied to f.
inline LaurentPoly berezin_reduce(const Superform& w) {
    const auto& t = *w.table();
    LaurentPoly result(t.evens);
    for (const auto& [m, f] : w.terms()) {
        if (m.d_evens().size() != t.n_even() || m.deltas().size() != t.n_odd() || !m.d_odds().empty())
            throw NotTopForm("term is not of top bidegree (" + std::to_string(t.n_even()) + "|" +
                             std::to_string(t.n_odd()) + ")");
        for (const auto& [j, k] : m.deltas())
            if (k != 0) throw NotTopForm("delta derivatives do not belong to a top form");
        if (m.thetas().size() == t.n_odd()) result += f;
    }
    return result;
}

/// Coefficient of x_v^{-1} (all other exponents zero): the residue with the
/// 2 pi i dropped.
inline Rational bosonic_residue(const LaurentPoly& p, std::size_t variable) {
    if (variable >= p.nvars()) throw StructuralError("residue in an unknown variable");
    Exponents e(p.nvars(), 0);
    e[variable] = -1;
    return p.coefficient(e);
}

}  // namespace intform
