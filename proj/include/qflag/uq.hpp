#pragma once

// The quantized enveloping algebra of su(N) in its free-word representation:
// words in E_r, F_r, K_r, K_r^-1 with ScalarQ coefficients.  No normal form
// is imposed; the defining relations are exercised as operator identities
// through the representation pi and the left actions.

#include <cstdint>
#include <map>
#include <vector>

#include "ncpoly.hpp"

namespace qflag {

enum class UqKind : uint8_t { E, F, K, Kinv };

struct UqLetter {
    UqKind kind;
    int idx;  // 1..N-1

    friend bool operator==(const UqLetter& a, const UqLetter& b) {
        return a.kind == b.kind && a.idx == b.idx;
    }
    friend bool operator<(const UqLetter& a, const UqLetter& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.idx < b.idx;
    }
};

using UqWord = std::vector<UqLetter>;

struct UqElement {
    std::map<UqWord, ScalarQ> terms;

    UqElement() = default;
    static UqElement unit() {
        UqElement e;
        e.terms[UqWord()] = ScalarQ(1);
        return e;
    }
    static UqElement letter(UqKind kind, int idx) {
        UqElement e;
        e.terms[UqWord{UqLetter{kind, idx}}] = ScalarQ(1);
        return e;
    }
    static UqElement word(UqWord w) {
        UqElement e;
        e.terms[std::move(w)] = ScalarQ(1);
        return e;
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(const UqWord& w, const ScalarQ& c) {
        if (c.is_zero()) return;
        auto it = terms.find(w);
        if (it == terms.end()) {
            terms.emplace(w, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    UqElement& operator+=(const UqElement& o) {
        for (const auto& kv : o.terms) add_term(kv.first, kv.second);
        return *this;
    }
    friend UqElement operator+(UqElement a, const UqElement& b) { a += b; return a; }
    friend UqElement operator-(const UqElement& a) {
        UqElement r;
        for (const auto& kv : a.terms) r.terms.emplace(kv.first, -kv.second);
        return r;
    }
    friend UqElement operator-(UqElement a, const UqElement& b) { a += -b; return a; }
    friend UqElement operator*(const ScalarQ& c, const UqElement& p) {
        UqElement r;
        if (c.is_zero()) return r;
        for (const auto& kv : p.terms) r.terms.emplace(kv.first, c * kv.second);
        return r;
    }
    friend UqElement operator*(const UqElement& a, const UqElement& b) {
        UqElement r;
        for (const auto& ta : a.terms)
            for (const auto& tb : b.terms) {
                UqWord w = ta.first;
                w.insert(w.end(), tb.first.begin(), tb.first.end());
                r.add_term(w, ta.second * tb.second);
            }
        return r;
    }
    friend bool operator==(const UqElement& a, const UqElement& b) { return a.terms == b.terms; }
};

inline UqElement uq_E(int r) { return UqElement::letter(UqKind::E, r); }
inline UqElement uq_F(int r) { return UqElement::letter(UqKind::F, r); }
inline UqElement uq_K(int r) { return UqElement::letter(UqKind::K, r); }
inline UqElement uq_Kinv(int r) { return UqElement::letter(UqKind::Kinv, r); }

// ---- Hopf structure on letters --------------------------------------------

// star: E <-> F, K and K^-1 fixed, anti-multiplicative
inline UqElement uq_star(const UqElement& x) {
    UqElement r;
    for (const auto& kv : x.terms) {
        UqWord w;
        for (auto it = kv.first.rbegin(); it != kv.first.rend(); ++it) {
            UqLetter l = *it;
            if (l.kind == UqKind::E) l.kind = UqKind::F;
            else if (l.kind == UqKind::F) l.kind = UqKind::E;
            w.push_back(l);
        }
        r.add_term(w, kv.second);
    }
    return r;
}

// S(K) = K^-1, S(E) = -qE, S(F) = -q^-1 F, anti-homomorphic
inline UqElement uq_antipode(const UqElement& x) {
    UqElement r;
    for (const auto& kv : x.terms) {
        UqWord w;
        ScalarQ c = kv.second;
        for (auto it = kv.first.rbegin(); it != kv.first.rend(); ++it) {
            UqLetter l = *it;
            switch (l.kind) {
                case UqKind::E: c *= -ScalarQ::q_pow(1); break;
                case UqKind::F: c *= -ScalarQ::q_pow(-1); break;
                case UqKind::K: l.kind = UqKind::Kinv; break;
                case UqKind::Kinv: l.kind = UqKind::K; break;
            }
            w.push_back(l);
        }
        r.add_term(w, c);
    }
    return r;
}

// S^-1(K) = K^-1, S^-1(E) = -q^-1 E, S^-1(F) = -q F
inline UqElement uq_antipode_inv(const UqElement& x) {
    UqElement r;
    for (const auto& kv : x.terms) {
        UqWord w;
        ScalarQ c = kv.second;
        for (auto it = kv.first.rbegin(); it != kv.first.rend(); ++it) {
            UqLetter l = *it;
            switch (l.kind) {
                case UqKind::E: c *= -ScalarQ::q_pow(-1); break;
                case UqKind::F: c *= -ScalarQ::q_pow(1); break;
                case UqKind::K: l.kind = UqKind::Kinv; break;
                case UqKind::Kinv: l.kind = UqKind::K; break;
            }
            w.push_back(l);
        }
        r.add_term(w, c);
    }
    return r;
}

inline ScalarQ uq_counit(const UqElement& x) {
    ScalarQ acc(0);
    for (const auto& kv : x.terms) {
        bool grouplike = true;
        for (const UqLetter& l : kv.first)
            if (l.kind == UqKind::E || l.kind == UqKind::F) { grouplike = false; break; }
        if (grouplike) acc += kv.second;
    }
    return acc;
}

// formal coproduct into the tensor square of the free-word representation;
// Delta(K) = K(x)K, Delta(E) = E(x)K + K^-1(x)E, Delta(F) = F(x)K + K^-1(x)F
struct UqTensor {
    std::map<std::pair<UqWord, UqWord>, ScalarQ> terms;

    void add_term(const UqWord& a, const UqWord& b, const ScalarQ& c) {
        if (c.is_zero()) return;
        auto key = std::make_pair(a, b);
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms.emplace(key, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    friend bool operator==(const UqTensor& a, const UqTensor& b) { return a.terms == b.terms; }
};

inline UqTensor uq_coproduct(const UqElement& x) {
    UqTensor out;
    for (const auto& kv : x.terms) {
        // product of per-letter coproducts; each E/F letter doubles the terms
        std::vector<std::pair<std::pair<UqWord, UqWord>, ScalarQ>> acc;
        acc.push_back({{UqWord(), UqWord()}, kv.second});
        for (const UqLetter& l : kv.first) {
            std::vector<std::pair<std::pair<UqWord, UqWord>, ScalarQ>> next;
            auto push = [&](const std::pair<std::pair<UqWord, UqWord>, ScalarQ>& base,
                            const UqLetter& la, const UqLetter& lb) {
                auto t = base;
                t.first.first.push_back(la);
                t.first.second.push_back(lb);
                next.push_back(std::move(t));
            };
            for (const auto& base : acc) {
                if (l.kind == UqKind::K || l.kind == UqKind::Kinv) {
                    push(base, l, l);
                } else {
                    push(base, l, UqLetter{UqKind::K, l.idx});
                    push(base, UqLetter{UqKind::Kinv, l.idx}, l);
                }
            }
            acc = std::move(next);
        }
        for (const auto& t : acc) out.add_term(t.first.first, t.first.second, t.second);
    }
    return out;
}

// ---- recursive raising elements -------------------------------------------

// M_ell = E_ell, M_i = E_i M_{i+1} - q^-1 M_{i+1} E_i
inline UqElement m_element(int i, int ell) {
    if (i < 1 || i > ell) throw std::out_of_range("m_element: index out of range");
    UqElement m = uq_E(ell);
    for (int r = ell - 1; r >= i; --r)
        m = uq_E(r) * m - ScalarQ::q_pow(-1) * (m * uq_E(r));
    return m;
}

// N_i = K_i K_{i+1} ... K_ell
inline UqElement n_element(int i, int ell) {
    if (i < 1 || i > ell) throw std::out_of_range("n_element: index out of range");
    UqWord w;
    for (int r = i; r <= ell; ++r) w.push_back(UqLetter{UqKind::K, r});
    return UqElement::word(w);
}

// ---- the representation pi on C^N ----------------------------------------

using MatrixQ = std::vector<std::vector<ScalarQ>>;

inline MatrixQ matrixq_identity(int dim) {
    MatrixQ m(dim, std::vector<ScalarQ>(dim, ScalarQ(0)));
    for (int i = 0; i < dim; ++i) m[i][i] = ScalarQ(1);
    return m;
}

inline MatrixQ matrixq_mul(const MatrixQ& a, const MatrixQ& b) {
    int dim = static_cast<int>(a.size());
    MatrixQ r(dim, std::vector<ScalarQ>(dim, ScalarQ(0)));
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k) {
            if (a[i][k].is_zero()) continue;
            for (int j = 0; j < dim; ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

// pi(E_r) = e_{r+1,r}, pi(F_r) = e_{r,r+1},
// pi(K_r) = sum_j e_jj q^{(delta_{j,r+1} - delta_{j,r})/2}
inline MatrixQ pi_letter(const UqLetter& l, int N) {
    if (l.idx < 1 || l.idx >= N) throw std::out_of_range("pi: letter index out of range");
    MatrixQ m(N, std::vector<ScalarQ>(N, ScalarQ(0)));
    switch (l.kind) {
        case UqKind::E: m[l.idx][l.idx - 1] = ScalarQ(1); break;
        case UqKind::F: m[l.idx - 1][l.idx] = ScalarQ(1); break;
        case UqKind::K:
            for (int j = 1; j <= N; ++j)
                m[j - 1][j - 1] = ScalarQ::s_pow((j == l.idx + 1 ? 1 : 0) - (j == l.idx ? 1 : 0));
            break;
        case UqKind::Kinv:
            for (int j = 1; j <= N; ++j)
                m[j - 1][j - 1] = ScalarQ::s_pow((j == l.idx ? 1 : 0) - (j == l.idx + 1 ? 1 : 0));
            break;
    }
    return m;
}

inline MatrixQ pi_rep(const UqElement& x, int N) {
    MatrixQ acc(N, std::vector<ScalarQ>(N, ScalarQ(0)));
    for (const auto& kv : x.terms) {
        MatrixQ m = matrixq_identity(N);
        for (const UqLetter& l : kv.first) m = matrixq_mul(m, pi_letter(l, N));
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) acc[i][j] += kv.second * m[i][j];
    }
    return acc;
}

// ---- dual pairing ----------------------------------------------------------

// The iterated coproduct of a letter acts on (C^N)^{(x) d} with K-twists on
// each side of the E/F slot.  Sparse vectors over multi-indices (bytes 1..N).
using SparseVec = std::map<std::string, ScalarQ>;

inline void sparsevec_add(SparseVec& v, const std::string& key, const ScalarQ& c) {
    if (c.is_zero()) return;
    auto it = v.find(key);
    if (it == v.end()) {
        v.emplace(key, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) v.erase(it);
    }
}

inline SparseVec apply_tensor_letter(const UqLetter& l, const SparseVec& v) {
    SparseVec out;
    auto kfac = [&](char c, int sign) {  // q^{sign*(delta_{c,idx+1}-delta_{c,idx})/2}
        int j = static_cast<unsigned char>(c);
        int e = (j == l.idx + 1 ? 1 : 0) - (j == l.idx ? 1 : 0);
        return ScalarQ::s_pow(sign * e);
    };
    for (const auto& kv : v) {
        const std::string& key = kv.first;
        const size_t d = key.size();
        if (l.kind == UqKind::K || l.kind == UqKind::Kinv) {
            int sign = l.kind == UqKind::K ? 1 : -1;
            ScalarQ c = kv.second;
            for (char ch : key) c *= kfac(ch, sign);
            sparsevec_add(out, key, c);
        } else {
            // source basis index and its image under the matrix unit
            int src = l.kind == UqKind::E ? l.idx : l.idx + 1;
            int dst = l.kind == UqKind::E ? l.idx + 1 : l.idx;
            for (size_t t = 0; t < d; ++t) {
                if (static_cast<unsigned char>(key[t]) != static_cast<unsigned>(src)) continue;
                ScalarQ c = kv.second;
                for (size_t u = 0; u < t; ++u) c *= kfac(key[u], -1);        // K^-1 side
                for (size_t u = t + 1; u < d; ++u) c *= kfac(key[u], 1);     // K side
                std::string nk = key;
                nk[t] = static_cast<char>(dst);
                sparsevec_add(out, nk, c);
            }
        }
    }
    return out;
}

// <eta, u_{i1 j1} ... u_{id jd}> via the d-fold tensor representation
inline ScalarQ pairing_word(const UqWord& eta, const Word& w) {
    const size_t d = w.size();
    if (d == 0) {
        // unit pairs as the counit
        ScalarQ acc(1);
        for (const UqLetter& l : eta)
            if (l.kind == UqKind::E || l.kind == UqKind::F) return ScalarQ(0);
        return acc;
    }
    std::string cols, rows;
    for (char c : w) {
        rows += static_cast<char>(letter_row(c));
        cols += static_cast<char>(letter_col(c));
    }
    SparseVec v;
    v.emplace(cols, ScalarQ(1));
    for (auto it = eta.rbegin(); it != eta.rend(); ++it) {
        v = apply_tensor_letter(*it, v);
        if (v.empty()) return ScalarQ(0);
    }
    auto f = v.find(rows);
    return f == v.end() ? ScalarQ(0) : f->second;
}

inline ScalarQ pairing(const UqElement& eta, const NCPoly& p) {
    ScalarQ acc(0);
    for (const auto& et : eta.terms)
        for (const auto& pt : p.terms) acc += et.second * pt.second * pairing_word(et.first, pt.first);
    return acc;
}

}  // namespace qflag
