#pragma once

// Left actions of the quantized enveloping algebra on the coordinate algebra.
//
// d_K scales each letter by the row weight, d_E and d_F extend the generator
// formulas through the twisted Leibniz rule.  Words act by composition with
// the rightmost letter applied first, matching the coproduct-slice definition
// d_eta(x) = <S^-1(eta), x_(1)> x_(2) which doubles as the test oracle.

#include "algebra.hpp"
#include "uq.hpp"

namespace qflag {

namespace detail {
// q^{(delta_{i,r} - delta_{i,r+1})/2} for the row index of one letter
inline int k_weight_exp(int row, int r) { return (row == r ? 1 : 0) - (row == r + 1 ? 1 : 0); }
}  // namespace detail

inline NCPoly act_d_letter(const AlgebraContext& ctx, const UqLetter& l, const NCPoly& p) {
    const int n = ctx.rank();
    if (l.idx < 1 || l.idx >= n) throw std::out_of_range("act_d: letter index out of range");
    NCPoly acc(n);
    for (const auto& kv : p.terms) {
        const Word& w = kv.first;
        if (l.kind == UqKind::K || l.kind == UqKind::Kinv) {
            int e = 0;
            for (char c : w) e += detail::k_weight_exp(letter_row(c), l.idx);
            if (l.kind == UqKind::Kinv) e = -e;
            acc.add_term(w, kv.second * ScalarQ::s_pow(e));
            continue;
        }
        // twisted Leibniz: sum over positions, K-factor on the left of the
        // slot, K^-1-factor on the right
        const int src = l.kind == UqKind::E ? l.idx + 1 : l.idx;
        const int dst = l.kind == UqKind::E ? l.idx : l.idx + 1;
        const ScalarQ gen_coeff =
            l.kind == UqKind::E ? -ScalarQ::q_pow(-1) : -ScalarQ::q_pow(1);
        for (size_t t = 0; t < w.size(); ++t) {
            if (letter_row(w[t]) != src) continue;
            int e = 0;
            for (size_t u = 0; u < t; ++u) e += detail::k_weight_exp(letter_row(w[u]), l.idx);
            for (size_t u = t + 1; u < w.size(); ++u)
                e -= detail::k_weight_exp(letter_row(w[u]), l.idx);
            Word nw = w;
            nw[t] = make_letter(dst, letter_col(w[t]));
            acc.add_term(nw, kv.second * gen_coeff * ScalarQ::s_pow(e));
        }
    }
    return ctx.reduce(acc);
}

// word acts by composition, rightmost letter first
inline NCPoly act_d(const AlgebraContext& ctx, const UqWord& eta, const NCPoly& p) {
    NCPoly cur = p;
    for (auto it = eta.rbegin(); it != eta.rend(); ++it) cur = act_d_letter(ctx, *it, cur);
    return cur;
}

inline NCPoly act_d(const AlgebraContext& ctx, const UqElement& eta, const NCPoly& p) {
    NCPoly acc(ctx.rank());
    for (const auto& kv : eta.terms) acc += kv.second * act_d(ctx, kv.first, p);
    return ctx.reduce(acc);
}

// oracle: d_eta(x) = <S^-1(eta), x_(1)> x_(2)
inline NCPoly act_d_oracle(const AlgebraContext& ctx, const UqElement& eta, const NCPoly& p) {
    UqElement s = uq_antipode_inv(eta);
    NCPoly acc(ctx.rank());
    for (const auto& kv : ctx.coproduct(p).terms) {
        ScalarQ c = pairing(s, NCPoly::monomial(ctx.rank(), kv.first.first, ScalarQ(1)));
        if (!c.is_zero()) acc.add_term(kv.first.second, kv.second * c);
    }
    return acc;
}

// alternative action at rank 2: right-leg slice of the coproduct
inline NCPoly act_del_n2(const AlgebraContext& ctx, const UqElement& eta, const NCPoly& p) {
    if (ctx.rank() != 2) throw std::domain_error("act_del: rank must be 2");
    NCPoly acc(2);
    for (const auto& kv : ctx.coproduct(p).terms) {
        ScalarQ c = pairing(eta, NCPoly::monomial(2, kv.first.second, ScalarQ(1)));
        if (!c.is_zero()) acc.add_term(kv.first.first, kv.second * c);
    }
    return acc;
}

// nu(K) = K^-1, nu(E) = -F, nu(F) = -E; multiplicative
inline UqElement uq_nu(const UqElement& x) {
    UqElement r;
    for (const auto& kv : x.terms) {
        UqWord w;
        ScalarQ c = kv.second;
        for (UqLetter l : kv.first) {
            switch (l.kind) {
                case UqKind::E: l.kind = UqKind::F; c = -c; break;
                case UqKind::F: l.kind = UqKind::E; c = -c; break;
                case UqKind::K: l.kind = UqKind::Kinv; break;
                case UqKind::Kinv: l.kind = UqKind::K; break;
            }
            w.push_back(l);
        }
        r.add_term(w, c);
    }
    return r;
}

// ---- the braiding check ----------------------------------------------------

// Rhat = q sum e_ii (x) e_ii + (q - q^-1) sum_{i<j} e_ii (x) e_jj
//        + sum_{i != j} e_ij (x) e_ji on C^N (x) C^N
inline MatrixQ rhat_matrix(int N) {
    const int dim = N * N;
    MatrixQ m(dim, std::vector<ScalarQ>(dim, ScalarQ(0)));
    auto at = [&](int a, int b) -> int { return (a - 1) * N + (b - 1); };
    const ScalarQ q = ScalarQ::q_pow(1), qm = ScalarQ::q_pow(1) - ScalarQ::q_pow(-1);
    for (int i = 1; i <= N; ++i) m[at(i, i)][at(i, i)] = q;
    for (int i = 1; i <= N; ++i)
        for (int j = i + 1; j <= N; ++j) m[at(i, j)][at(i, j)] = qm;
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j)
            if (i != j) m[at(i, j)][at(j, i)] += ScalarQ(1);
    return m;
}

// (pi (x) pi) Delta(eta) as an N^2 x N^2 matrix
inline MatrixQ pi2_coproduct(const UqElement& eta, int N) {
    const int dim = N * N;
    MatrixQ acc(dim, std::vector<ScalarQ>(dim, ScalarQ(0)));
    for (const auto& kv : uq_coproduct(eta).terms) {
        MatrixQ a = pi_rep(UqElement::word(kv.first.first), N);
        MatrixQ b = pi_rep(UqElement::word(kv.first.second), N);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                if (a[i][j].is_zero()) continue;
                for (int k = 0; k < N; ++k)
                    for (int l = 0; l < N; ++l) {
                        if (b[k][l].is_zero()) continue;
                        acc[i * N + k][j * N + l] += kv.second * a[i][j] * b[k][l];
                    }
            }
    }
    return acc;
}

// Rhat (pi (x) pi)Delta(eta) = (pi (x) pi)Delta(eta) Rhat for eta in
// {E_r, F_r, K_r}
inline bool verify_rmatrix(int r, int N) {
    if (r < 1 || r >= N) throw std::out_of_range("verify_rmatrix: index out of range");
    MatrixQ R = rhat_matrix(N);
    for (const UqElement& eta : {uq_E(r), uq_F(r), uq_K(r)}) {
        MatrixQ m = pi2_coproduct(eta, N);
        if (matrixq_mul(R, m) != matrixq_mul(m, R)) return false;
    }
    return true;
}

}  // namespace qflag
