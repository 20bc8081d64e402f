#pragma once

// Small dense primal simplex, Bland's rule:
//   maximize c.x  subject to  A x <= b,  x free,  b >= 0.
// Free variables are split into positive and negative parts.  Built for the
// chain polytopes of the interval metric (a few hundred rows at most).

#include <stdexcept>
#include <vector>

namespace qflag {

struct SimplexResult {
    double value = 0.0;
    std::vector<double> x;
};

inline SimplexResult simplex_maximize(const std::vector<std::vector<double>>& A,
                                      const std::vector<double>& b,
                                      const std::vector<double>& c,
                                      int max_iters = 200000) {
    const int m = static_cast<int>(A.size());
    const int nfree = static_cast<int>(c.size());
    const int n = 2 * nfree;          // split columns
    const int cols = n + m;           // plus slacks
    const double tol = 1e-11;

    for (double bi : b)
        if (bi < 0) throw std::invalid_argument("simplex: negative right-hand side");

    // tableau rows: [A | I | b], objective row holds reduced costs
    std::vector<std::vector<double>> t(m + 1, std::vector<double>(cols + 1, 0.0));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < nfree; ++j) {
            t[i][2 * j] = A[i][j];
            t[i][2 * j + 1] = -A[i][j];
        }
        t[i][n + i] = 1.0;
        t[i][cols] = b[i];
    }
    for (int j = 0; j < nfree; ++j) {
        t[m][2 * j] = c[j];
        t[m][2 * j + 1] = -c[j];
    }
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;

    for (int iter = 0; iter < max_iters; ++iter) {
        // entering: smallest index with positive reduced cost
        int enter = -1;
        for (int j = 0; j < cols; ++j)
            if (t[m][j] > tol) { enter = j; break; }
        if (enter < 0) {
            SimplexResult r;
            r.value = -t[m][cols];
            r.x.assign(nfree, 0.0);
            for (int i = 0; i < m; ++i)
                if (basis[i] < n) {
                    int j = basis[i] / 2;
                    r.x[j] += (basis[i] % 2 == 0 ? 1.0 : -1.0) * t[i][cols];
                }
            return r;
        }
        // ratio test, Bland tie-break on the basis index
        int leave = -1;
        double best = 0.0;
        for (int i = 0; i < m; ++i) {
            if (t[i][enter] <= tol) continue;
            double ratio = t[i][cols] / t[i][enter];
            if (leave < 0 || ratio < best - 1e-15 ||
                (ratio < best + 1e-15 && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) throw std::runtime_error("simplex: unbounded objective");
        // pivot
        double piv = t[leave][enter];
        for (int j = 0; j <= cols; ++j) t[leave][j] /= piv;
        for (int i = 0; i <= m; ++i) {
            if (i == leave) continue;
            double f = t[i][enter];
            if (f == 0.0) continue;
            for (int j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }
    throw std::runtime_error("simplex: iteration cap reached");
}

}  // namespace qflag
