#pragma once

// The quantized interval as a metric object, floating-point mode: truncated
// functions and states on {q^{2m}} u {0}, difference quotients, the gradient
// seminorm, the finite-rank approximation, the reference states, and the
// Monge-Kantorovich distance through the chain formula with an LP oracle.
//
// The seminorm computed here is a lower bound for the operator-theoretic
// Lipschitz number of a function on the interval, so every distance reported
// is an upper bound for the corresponding state-space distance.

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "lp.hpp"

namespace qflag {

struct QFunction {
    int T = 0;
    std::vector<double> v;  // v[m] = f(q^{2m}), m = 0..T
    double tail = 0.0;      // value on [0, q^{2(T+1)}]

    QFunction() = default;
    QFunction(int trunc, double fill) : T(trunc), v(trunc + 1, fill), tail(fill) {}

    double at(int m) const { return m <= T ? v[m] : tail; }

    static QFunction indicator(int trunc, int m) {
        if (m > trunc) throw std::out_of_range("indicator: point below the truncation");
        QFunction f(trunc, 0.0);
        f.v[m] = 1.0;
        return f;
    }
    static QFunction coordinate(int trunc, double q) {
        QFunction f(trunc, 0.0);
        for (int m = 0; m <= trunc; ++m) f.v[m] = std::pow(q, 2 * m);
        f.tail = 0.0;  // below the truncation the coordinate is approximated by 0
        return f;
    }
};

struct QState {
    int T = 0;
    std::vector<double> w;  // weight at q^{2m}
    double atom = 0.0;      // weight at 0

    QState() = default;
    QState(int trunc, double fill) : T(trunc), w(trunc + 1, fill) {}

    double pair(const QFunction& f) const {
        double acc = atom * f.tail;
        for (int m = 0; m <= T; ++m) acc += w[m] * f.at(m);
        return acc;
    }
};

// G(x) = q^-1 x (1 - q^2 x), nonnegative on the interval
inline double g_at_index(double q, int m) {
    double x = std::pow(q, 2 * m);
    return x * (1.0 - q * q * x) / q;
}

// membership check: x = q^{2m} or x = 0
inline int interval_index(double q, double x) {
    if (x == 0.0) return -1;  // the limit point
    if (x < 0.0 || x > 1.0) throw std::domain_error("point not in the quantized interval");
    double mr = std::log(x) / (2.0 * std::log(q));
    int m = static_cast<int>(std::lround(mr));
    if (m < 0 || std::abs(std::pow(q, 2 * m) - x) > 1e-9 * x)
        throw std::domain_error("point not in the quantized interval");
    return m;
}

inline double g_function(double x, double q) {
    int m = interval_index(q, x);
    return m < 0 ? 0.0 : g_at_index(q, m);
}

// D(f)(q^{2m}) = (f(q^{2m}) - f(q^{2m+2})) / (q^{2m}(1 - q^2)), m in [0..T+1]
inline double diff_d(const QFunction& f, int m, double q) {
    return (f.at(m) - f.at(m + 1)) / (std::pow(q, 2 * m) * (1.0 - q * q));
}

// E(f)(q^{2m}) = D(f)(q^{2(m-1)}) with f(q^{-2}) := 0
inline double diff_e(const QFunction& f, int m, double q) {
    if (m == 0) return (0.0 - f.at(0)) / (std::pow(q, -2) * (1.0 - q * q));
    return diff_d(f, m - 1, q);
}

// L(f) = sup_m G(q^{2m})^{1/2} |D(f)(q^{2m})|
inline double seminorm_grad(const QFunction& f, double q) {
    double best = 0.0;
    for (int m = 0; m <= f.T + 1; ++m)
        best = std::max(best, std::sqrt(g_at_index(q, m)) * std::abs(diff_d(f, m, q)));
    return best;
}

inline double c_factor(double q) { return std::sqrt(1.0 + q) / std::sqrt(1.0 - q); }

// |f(x) - f(y)| <= C_q |sqrt(x) - sqrt(y)| L(f), allowing float slack
inline bool lip_bound_check(const QFunction& f, double x, double y, double q) {
    int mx = interval_index(q, x), my = interval_index(q, y);
    double fx = mx < 0 ? f.tail : f.at(mx);
    double fy = my < 0 ? f.tail : f.at(my);
    double bound = c_factor(q) * std::abs(std::sqrt(x) - std::sqrt(y)) * seminorm_grad(f, q);
    return std::abs(fx - fy) <= bound + 1e-12;
}

// truncation of a function at a finite level
inline QFunction psi_approx(const QFunction& f, int level) {
    if (level > f.T) throw std::out_of_range("psi_approx: level exceeds the truncation");
    QFunction g = f;
    for (int m = level + 1; m <= f.T; ++m) g.v[m] = f.v[level];
    g.tail = f.v[level];
    return g;
}

inline double sup_distance(const QFunction& a, const QFunction& b) {
    double best = std::abs(a.tail - b.tail);
    for (int m = 0; m <= a.T; ++m) best = std::max(best, std::abs(a.at(m) - b.at(m)));
    return best;
}

// ---- reference states -------------------------------------------------------

// the invariant base measure: w_j = (1-q^2) q^{2j}, remainder at 0
inline QState haar_state_iq(double q, int T) {
    QState s(T, 0.0);
    for (int j = 0; j <= T; ++j) s.w[j] = (1.0 - q * q) * std::pow(q, 2 * j);
    s.atom = std::pow(q, 2 * (T + 1));
    return s;
}

inline QState counit_state(int T) {
    QState s(T, 0.0);
    s.atom = 1.0;
    return s;
}

// pluggable base measure: user-supplied weights for ranks where no closed
// form ships
inline QState state_from_weights(std::vector<double> w, double atom) {
    QState s;
    s.T = static_cast<int>(w.size()) - 1;
    if (s.T < 0) throw std::invalid_argument("state needs at least one weight");
    double tot = atom;
    for (double x : w) {
        if (x < -1e-15) throw std::invalid_argument("state weights must be nonnegative");
        tot += x;
    }
    if (atom < -1e-15 || std::abs(tot - 1.0) > 1e-9)
        throw std::invalid_argument("state weights must sum to one");
    s.w = std::move(w);
    s.atom = atom;
    return s;
}

// a_k(x) = prod_{i=1..k} (1 - q^{2i} x)
inline double a_k_at(double q, int k, double x) {
    double p = 1.0;
    for (int i = 1; i <= k; ++i) p *= 1.0 - std::pow(q, 2 * i) * x;
    return p;
}

// state twisted by the k-th power inclusion: weights move to q^{2(k+j)} with
// density a_k against the base, the 0-atom absorbs the far tail
inline QState hk_state(int k, const QState& base, double q) {
    if (k < 0) throw std::out_of_range("hk_state: k must be nonnegative");
    QState s(base.T, 0.0);
    double z = base.atom;
    for (int j = 0; j <= base.T; ++j) z += base.w[j] * a_k_at(q, k, std::pow(q, 2 * j));
    s.atom = base.atom / z;
    for (int j = 0; j <= base.T; ++j) {
        double mass = base.w[j] * a_k_at(q, k, std::pow(q, 2 * j)) / z;
        if (k + j <= base.T)
            s.w[k + j] += mass;
        else
            s.atom += mass;
    }
    return s;
}

// ---- the chain metric --------------------------------------------------------

// consecutive edge e_m = q^{2m}(1-q^2)/sqrt(G(q^{2m})), written without the
// underflowing ratio: q^{m+1/2}(1-q^2)/sqrt(1-q^{2m+2})
inline double edge_len(double q, int m) {
    return std::pow(q, m + 0.5) * (1.0 - q * q) / std::sqrt(1.0 - std::pow(q, 2 * m + 2));
}

// tail edge sum_{j>T} e_j, evaluated numerically
inline double tail_edge(double q, int T) {
    double acc = 0.0, term;
    int j = T + 1;
    do {
        term = edge_len(q, j);
        acc += term;
        ++j;
    } while (term > 1e-300 && j < T + 4000);
    return acc;
}

inline void check_same_truncation(const QState& mu, const QState& nu) {
    if (mu.T != nu.T) throw std::invalid_argument("states have mismatched truncation levels");
}

// chain closed form: sum_m e_m |C_m| with the 0-atom past the truncation
inline double mk_closed_form(const QState& mu, const QState& nu, double q) {
    check_same_truncation(mu, nu);
    double acc = 0.0, cum = 0.0;
    for (int m = 0; m <= mu.T; ++m) {
        cum += mu.w[m] - nu.w[m];
        acc += edge_len(q, m) * std::abs(cum);
    }
    acc += tail_edge(q, mu.T) * std::abs(cum);
    return acc;
}

// LP oracle: maximize mu(f) - nu(f) over the chain-constrained functions with
// f(0) pinned to zero
inline double mk_lp_oracle(const QState& mu, const QState& nu, double q) {
    check_same_truncation(mu, nu);
    const int T = mu.T;
    const int n = T + 1;
    std::vector<std::vector<double>> A(2 * n, std::vector<double>(n, 0.0));
    std::vector<double> b(2 * n, 0.0), c(n, 0.0);
    for (int m = 0; m < T; ++m) {
        A[2 * m][m] = 1.0;
        A[2 * m][m + 1] = -1.0;
        A[2 * m + 1][m] = -1.0;
        A[2 * m + 1][m + 1] = 1.0;
        b[2 * m] = b[2 * m + 1] = edge_len(q, m);
    }
    double last = edge_len(q, T) + tail_edge(q, T);
    A[2 * T][T] = 1.0;
    A[2 * T + 1][T] = -1.0;
    b[2 * T] = b[2 * T + 1] = last;
    for (int m = 0; m <= T; ++m) c[m] = mu.w[m] - nu.w[m];
    // the polytope is symmetric, one direction suffices
    return simplex_maximize(A, b, c).value;
}

}  // namespace qflag
