#pragma once

// The exterior algebra on C^ell with its deformed multiplication operators
// and the representation sigma of the index-(< ell) subalgebra.  Vectors are
// maps from subset bitmasks (bit i-1 <=> i in I) to ScalarQ.

#include <cstdint>

#include "uq.hpp"

namespace qflag {

struct ExtVector {
    int ell = 0;
    std::map<uint32_t, ScalarQ> comps;

    explicit ExtVector(int l = 0) : ell(l) {}

    static ExtVector basis(int ell, uint32_t mask) {
        ExtVector v(ell);
        v.comps[mask] = ScalarQ(1);
        return v;
    }

    bool is_zero() const { return comps.empty(); }

    void add_term(uint32_t mask, const ScalarQ& c) {
        if (c.is_zero()) return;
        auto it = comps.find(mask);
        if (it == comps.end()) {
            comps.emplace(mask, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) comps.erase(it);
        }
    }

    ExtVector& operator+=(const ExtVector& o) {
        for (const auto& kv : o.comps) add_term(kv.first, kv.second);
        return *this;
    }
    friend ExtVector operator+(ExtVector a, const ExtVector& b) { a += b; return a; }
    friend ExtVector operator-(const ExtVector& a) {
        ExtVector r(a.ell);
        for (const auto& kv : a.comps) r.comps.emplace(kv.first, -kv.second);
        return r;
    }
    friend ExtVector operator-(ExtVector a, const ExtVector& b) { a += -b; return a; }
    friend ExtVector operator*(const ScalarQ& c, const ExtVector& v) {
        ExtVector r(v.ell);
        if (c.is_zero()) return r;
        for (const auto& kv : v.comps) r.comps.emplace(kv.first, c * kv.second);
        return r;
    }
    friend bool operator==(const ExtVector& a, const ExtVector& b) {
        return a.ell == b.ell && a.comps == b.comps;
    }
};

inline int popcount_below(uint32_t mask, int j) {
    // number of elements of I that are <= j
    uint32_t below = mask & ((1u << j) - 1);
    return __builtin_popcount(below);
}

// eps_j(e_I) = 0 for j in I, else (-q)^{-#(I cap <j>)} e_{I u {j}}
inline ExtVector eps_q(int j, const ExtVector& v) {
    if (j < 1 || j > v.ell) throw std::out_of_range("eps_q: index out of range");
    ExtVector out(v.ell);
    const uint32_t bit = 1u << (j - 1);
    for (const auto& kv : v.comps) {
        if (kv.first & bit) continue;
        int k = popcount_below(kv.first, j);
        out.add_term(kv.first | bit, kv.second * neg_q_power(-k));
    }
    return out;
}

// adjoint against the orthonormal basis (coefficients are real)
inline ExtVector eps_q_dag(int j, const ExtVector& v) {
    if (j < 1 || j > v.ell) throw std::out_of_range("eps_q_dag: index out of range");
    ExtVector out(v.ell);
    const uint32_t bit = 1u << (j - 1);
    for (const auto& kv : v.comps) {
        if (!(kv.first & bit)) continue;
        uint32_t rest = kv.first & ~bit;
        int k = popcount_below(rest, j);
        out.add_term(rest, kv.second * neg_q_power(-k));
    }
    return out;
}

// eps_v for a degree-one vector v = sum_j c_j e_{j}
inline ExtVector eps_q_vec(const ExtVector& v1, const ExtVector& target) {
    ExtVector out(target.ell);
    for (const auto& kv : v1.comps) {
        uint32_t mask = kv.first;
        if (__builtin_popcount(mask) != 1) throw std::invalid_argument("eps_q_vec: not degree one");
        int j = __builtin_ctz(mask) + 1;
        out += kv.second * eps_q(j, target);
    }
    return out;
}

struct OutOfSubalgebra : std::domain_error {
    explicit OutOfSubalgebra(const std::string& m) : std::domain_error(m) {}
};

// sigma on letters with index r < ell
inline ExtVector sigma_letter(const UqLetter& l, const ExtVector& v) {
    if (l.idx < 1 || l.idx >= v.ell)
        throw OutOfSubalgebra("sigma: letter index outside the subalgebra");
    ExtVector out(v.ell);
    const uint32_t rbit = 1u << (l.idx - 1);
    const uint32_t r1bit = 1u << l.idx;
    for (const auto& kv : v.comps) {
        bool has_r = kv.first & rbit, has_r1 = kv.first & r1bit;
        switch (l.kind) {
            case UqKind::E:
                if (has_r1 && !has_r) out.add_term((kv.first & ~r1bit) | rbit, kv.second);
                break;
            case UqKind::F:
                if (has_r && !has_r1) out.add_term((kv.first & ~rbit) | r1bit, kv.second);
                break;
            case UqKind::K:
                out.add_term(kv.first, kv.second * ScalarQ::s_pow((has_r ? 1 : 0) - (has_r1 ? 1 : 0)));
                break;
            case UqKind::Kinv:
                out.add_term(kv.first, kv.second * ScalarQ::s_pow((has_r1 ? 1 : 0) - (has_r ? 1 : 0)));
                break;
        }
    }
    return out;
}

inline ExtVector sigma_rep(const UqElement& eta, const ExtVector& v) {
    ExtVector acc(v.ell);
    for (const auto& kv : eta.terms) {
        ExtVector cur = v;
        for (auto it = kv.first.rbegin(); it != kv.first.rend(); ++it)
            cur = sigma_letter(*it, cur);
        acc += kv.second * cur;
    }
    return acc;
}

}  // namespace qflag
