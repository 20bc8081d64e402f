#pragma once

// Shared corpus builders for the unit suites.

#include <random>

#include "qflag/algebra.hpp"

namespace qflag::testing {

inline NCPoly random_reduced(const AlgebraContext& ctx, std::mt19937& rng, int max_deg,
                             int max_terms) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<int> idx(1, ctx.rank());
    std::uniform_int_distribution<int> coef(-3, 3);
    NCPoly p(ctx.rank());
    int t = nterms(rng);
    for (int k = 0; k < t; ++k) {
        Word w;
        int d = deg(rng);
        for (int l = 0; l < d; ++l) w += make_letter(idx(rng), idx(rng));
        int c = coef(rng);
        if (c == 0) c = 1;
        p.add_term(w, ScalarQ(Rat(c)));
    }
    return ctx.reduce(p);
}

// all products of exactly `factors` elements z_i z_j^*, reduced
inline std::vector<NCPoly> projective_monomials(const AlgebraContext& ctx, int factors) {
    std::vector<NCPoly> out;
    if (factors == 0) {
        out.push_back(ctx.unit());
        return out;
    }
    std::vector<NCPoly> prev = projective_monomials(ctx, factors - 1);
    for (const NCPoly& p : prev)
        for (int i = 1; i <= ctx.rank(); ++i)
            for (int j = 1; j <= ctx.rank(); ++j)
                out.push_back(ctx.mul(p, ctx.mul(ctx.z(i), ctx.z_star(j))));
    return out;
}

// is p a ScalarQ-linear combination of the given reduced elements?
inline bool in_span(std::vector<NCPoly> basis, NCPoly p) {
    auto eliminate = [](std::vector<NCPoly>& rows, NCPoly v) {
        for (const NCPoly& row : rows) {
            if (v.is_zero()) return v;
            if (row.is_zero()) continue;
            const Word& lw = row.terms.rbegin()->first;
            auto it = v.terms.find(lw);
            if (it != v.terms.end()) {
                ScalarQ factor = it->second / row.terms.rbegin()->second;
                v -= factor * row;
            }
        }
        return v;
    };
    // triangularize basis by leading word
    std::vector<NCPoly> rows;
    std::sort(basis.begin(), basis.end(), [](const NCPoly& a, const NCPoly& b) {
        if (a.is_zero()) return false;
        if (b.is_zero()) return true;
        return DegLexLess()(b.terms.rbegin()->first, a.terms.rbegin()->first);
    });
    for (NCPoly b : basis) {
        NCPoly r = eliminate(rows, b);
        if (!r.is_zero()) rows.push_back(r);
        std::sort(rows.begin(), rows.end(), [](const NCPoly& a, const NCPoly& b2) {
            return DegLexLess()(b2.terms.rbegin()->first, a.terms.rbegin()->first);
        });
    }
    return eliminate(rows, std::move(p)).is_zero();
}

}  // namespace qflag::testing
