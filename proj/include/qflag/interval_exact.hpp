#pragma once

// Rational mode for the interval metric.  The deformation value q is an
// exact rational; edge lengths live in the module spanned by the square
// roots sqrt(G(q^{2m})) together with one formal symbol for the tail edge,
// with rational coordinates.  Distances computed along independent routes
// can then be compared exactly, with no floating point involved.

#include <vector>

#include "interval.hpp"
#include "scalar.hpp"

namespace qflag {

struct QStateR {
    int T = 0;
    std::vector<Rat> w;
    Rat atom = 0;

    QStateR() = default;
    QStateR(int trunc, const Rat& fill) : T(trunc), w(trunc + 1, fill) {}

    Rat total() const {
        Rat acc = atom;
        for (const Rat& x : w) acc += x;
        return acc;
    }
};

inline Rat rat_pow(const Rat& q, int e) {
    Rat acc = 1;
    for (int k = 0; k < std::abs(e); ++k) acc *= q;
    if (e < 0) acc = Rat(1) / acc;
    return acc;
}

// G(q^{2m}) = q^{2m-1} (1 - q^{2m+2}), a positive rational
inline Rat g_rat(const Rat& q, int m) {
    return rat_pow(q, 2 * m - 1) * (Rat(1) - rat_pow(q, 2 * m + 2));
}

// element of span{ sqrt(g_0), ..., sqrt(g_T), tail } with rational coords
struct RadVec {
    std::vector<Rat> c;
    Rat tau = 0;

    explicit RadVec(int T = 0) : c(T + 1, Rat(0)) {}

    RadVec& operator+=(const RadVec& o) {
        for (size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
        tau += o.tau;
        return *this;
    }
    friend RadVec operator+(RadVec a, const RadVec& b) { a += b; return a; }
    friend RadVec operator*(const Rat& s, RadVec v) {
        for (Rat& x : v.c) x *= s;
        v.tau *= s;
        return v;
    }
    friend bool operator==(const RadVec& a, const RadVec& b) {
        return a.c == b.c && a.tau == b.tau;
    }

    double eval(const Rat& q, int T) const {
        double acc = rat_to_double(tau) * tail_edge(rat_to_double(q), T);
        for (size_t m = 0; m < c.size(); ++m)
            acc += rat_to_double(c[m]) * std::sqrt(rat_to_double(g_rat(q, static_cast<int>(m))));
        return acc;
    }
};

// e_m = [q^{2m}(1-q^2)/g_m] * sqrt(g_m)
inline Rat edge_coeff(const Rat& q, int m) {
    return rat_pow(q, 2 * m) * (Rat(1) - q * q) / g_rat(q, m);
}

namespace detail {
// chain edge m -> m+1 for m < T, and T -> 0-atom for m = T (carrying the
// tail symbol)
inline RadVec chain_edge(const Rat& q, int T, int m) {
    RadVec e(T);
    e.c[m] = edge_coeff(q, m);
    if (m == T) e.tau = 1;
    return e;
}
}  // namespace detail

// closed form: sum_m |C_m| e_m with the atom attached past the truncation
inline RadVec mk_closed_exact(const QStateR& mu, const QStateR& nu, const Rat& q) {
    if (mu.T != nu.T) throw std::invalid_argument("states have mismatched truncation levels");
    RadVec acc(mu.T);
    Rat cum = 0;
    for (int m = 0; m <= mu.T; ++m) {
        cum += mu.w[m] - nu.w[m];
        Rat a = cum < 0 ? Rat(-cum) : cum;
        acc += a * detail::chain_edge(q, mu.T, m);
    }
    return acc;
}

// transport certificate: the monotone coupling along the chain gives a
// feasible primal value, a potential built from the cumulative signs gives a
// feasible dual value; agreement certifies optimality.  Throws on any
// feasibility or duality violation.
inline RadVec mk_lp_exact(const QStateR& mu, const QStateR& nu, const Rat& q) {
    if (mu.T != nu.T) throw std::invalid_argument("states have mismatched truncation levels");
    const int T = mu.T;
    const int nodes = T + 2;  // 0..T and the atom
    auto weight = [&](const QStateR& s, int node) { return node <= T ? s.w[node] : s.atom; };

    auto dist = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        RadVec d(T);
        for (int m = a; m < b; ++m) d += detail::chain_edge(q, T, m);
        return d;
    };

    // monotone coupling
    RadVec primal(T);
    {
        int a = 0, b = 0;
        Rat ra = weight(mu, 0), rb = weight(nu, 0);
        Rat moved_total = 0;
        while (a < nodes && b < nodes) {
            Rat m = ra < rb ? ra : rb;
            if (m > 0) {
                primal += m * dist(a, b);
                moved_total += m;
            }
            ra -= m;
            rb -= m;
            if (ra == 0) {
                ++a;
                if (a < nodes) ra = weight(mu, a);
            }
            if (rb == 0) {
                ++b;
                if (b < nodes) rb = weight(nu, b);
            }
        }
        if (moved_total != mu.total() || mu.total() != nu.total())
            throw std::runtime_error("transport: marginal mismatch");
    }

    // dual potential from the cumulative signs
    RadVec dual(T);
    {
        std::vector<Rat> cum(T + 1, Rat(0));
        Rat run = 0;
        for (int m = 0; m <= T; ++m) {
            run += mu.w[m] - nu.w[m];
            cum[m] = run;
        }
        // f at the atom is zero; climb the chain
        std::vector<RadVec> f(nodes, RadVec(T));
        for (int m = T; m >= 0; --m) {
            int sgn = cum[m] > 0 ? 1 : (cum[m] < 0 ? -1 : 0);
            f[m] = f[m + 1] + Rat(sgn) * detail::chain_edge(q, T, m);
        }
        for (int node = 0; node <= T; ++node) dual += (mu.w[node] - nu.w[node]) * f[node];
        // the atom contributes zero
    }

    RadVec closed = mk_closed_exact(mu, nu, q);
    if (!(primal == dual) || !(dual == closed))
        throw std::runtime_error("transport: duality gap in the exact oracle");
    return primal;
}

// ---- exact reference states and moments --------------------------------------

inline QStateR haar_state_iq_exact(const Rat& q, int T) {
    QStateR s(T, Rat(0));
    for (int j = 0; j <= T; ++j) s.w[j] = (Rat(1) - q * q) * rat_pow(q, 2 * j);
    s.atom = rat_pow(q, 2 * (T + 1));
    return s;
}

inline QStateR counit_state_exact(int T) {
    QStateR s(T, Rat(0));
    s.atom = 1;
    return s;
}

inline Rat a_k_at_exact(const Rat& q, int k, const Rat& x) {
    Rat p = 1;
    for (int i = 1; i <= k; ++i) p *= Rat(1) - rat_pow(q, 2 * i) * x;
    return p;
}

inline QStateR hk_state_exact(int k, const QStateR& base, const Rat& q) {
    QStateR s(base.T, Rat(0));
    Rat z = base.atom;
    for (int j = 0; j <= base.T; ++j) z += base.w[j] * a_k_at_exact(q, k, rat_pow(q, 2 * j));
    s.atom = base.atom / z;
    for (int j = 0; j <= base.T; ++j) {
        Rat mass = base.w[j] * a_k_at_exact(q, k, rat_pow(q, 2 * j)) / z;
        if (k + j <= base.T)
            s.w[k + j] += mass;
        else
            s.atom += mass;
    }
    return s;
}

// m-th moment of the state against the coordinate function
inline Rat state_moment(const QStateR& s, const Rat& q, int m) {
    Rat acc = 0;
    for (int j = 0; j <= s.T; ++j) acc += s.w[j] * rat_pow(q, 2 * j * m);
    return acc;  // the atom sits at 0
}

// ---- exact difference quotients for the indicator laws -----------------------

struct QFunctionR {
    int T = 0;
    std::vector<Rat> v;
    Rat tail = 0;

    QFunctionR(int trunc, const Rat& fill) : T(trunc), v(trunc + 1, fill), tail(fill) {}
    Rat at(int m) const { return m <= T ? v[m] : tail; }

    static QFunctionR indicator(int trunc, int m) {
        QFunctionR f(trunc, Rat(0));
        f.v[m] = 1;
        return f;
    }
};

inline Rat diff_d_exact(const QFunctionR& f, int m, const Rat& q) {
    return (f.at(m) - f.at(m + 1)) / (rat_pow(q, 2 * m) * (Rat(1) - q * q));
}
inline Rat diff_e_exact(const QFunctionR& f, int m, const Rat& q) {
    if (m == 0) return -f.at(0) / (rat_pow(q, -2) * (Rat(1) - q * q));
    return diff_d_exact(f, m - 1, q);
}

// The indicator derivative laws: D(p_m) = (p_m - q^2 p_{m-1})/(q^{2m}(1-q^2)),
// E(p_m) = (p_{m+1} - q^2 p_m)/(q^{2m}(1-q^2)), and the index-shift
// consistency D(f)(q^{2m'}) = E(f)(q^{2(m'+1)}) that glues the two
// factorizations of the gradient.
inline bool projection_derivative_check(int m, const Rat& q, int T) {
    if (m > T) throw std::out_of_range("projection_derivative_check: m exceeds truncation");
    QFunctionR pm = QFunctionR::indicator(T, m);
    const Rat denom = rat_pow(q, 2 * m) * (Rat(1) - q * q);
    for (int mp = 0; mp <= T + 1; ++mp) {
        Rat expected_d = Rat(0);
        if (mp == m) expected_d = Rat(1) / denom;
        if (mp == m - 1) expected_d = -q * q / denom;  // the p_{m-1} term of D
        if (diff_d_exact(pm, mp, q) != expected_d) return false;

        Rat expected_e = Rat(0);
        if (mp == m + 1) expected_e = Rat(1) / denom;
        if (mp == m) expected_e = -q * q / denom;
        if (diff_e_exact(pm, mp, q) != expected_e) return false;
    }
    for (int mp = 0; mp <= T; ++mp)
        if (diff_d_exact(pm, mp, q) != diff_e_exact(pm, mp + 1, q)) return false;
    return true;
}

}  // namespace qflag
