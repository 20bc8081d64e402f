#pragma once

// Property suite for the interval metric, reported in the same JSON shape as
// the symbolic suites.

#include <random>

#include "interval_exact.hpp"
#include "report.hpp"

namespace qflag {

inline std::vector<CheckResult> suite_interval(int T = 60, unsigned seed = 42) {
    std::vector<CheckResult> out;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> upos(0.0, 1.0);

    auto rand_state = [&](double) {
        QState s(T, 0.0);
        std::uniform_int_distribution<int> nmass(1, 6);
        int k = nmass(rng);
        double tot = 0.0;
        for (int t = 0; t < k; ++t) {
            int pos = static_cast<int>(rng() % static_cast<unsigned>(T + 2));
            double m = upos(rng);
            if (pos > T)
                s.atom += m;
            else
                s.w[pos] += m;
            tot += m;
        }
        for (double& w : s.w) w /= tot;
        s.atom /= tot;
        return s;
    };
    auto rand_function = [&](double q) {
        QFunction f(T, 0.0);
        double cur = u(rng);
        f.tail = cur;
        for (int m = T; m >= 0; --m) {
            cur += u(rng) * edge_len(q, m);
            f.v[m] = cur;
        }
        return f;
    };

    // indicator derivative laws, exact
    for (int m = 0; m <= 6; ++m)
        out.push_back(CheckResult::of("interval/indicator-derivatives/m" + std::to_string(m),
                                      "D(p_m) and E(p_m) match the two-projection laws",
                                      projection_derivative_check(m, Rat(1, 2), 12)));

    for (double q : {0.3, 0.5, 0.7}) {
        std::string qs = "/q" + std::to_string(static_cast<int>(q * 10));
        // oracle agreement
        bool oracle_ok = true;
        for (int trial = 0; trial < 30 && oracle_ok; ++trial) {
            QState mu = rand_state(q), nu = rand_state(q);
            oracle_ok = std::abs(mk_closed_form(mu, nu, q) - mk_lp_oracle(mu, nu, q)) < 1e-9;
        }
        out.push_back(CheckResult::of("interval/oracle" + qs,
                                      "chain closed form equals the LP value within 1e-9",
                                      oracle_ok));

        // metric axioms on random triples
        bool metric_ok = true;
        for (int trial = 0; trial < 20 && metric_ok; ++trial) {
            QState a = rand_state(q), b = rand_state(q), c = rand_state(q);
            double ab = mk_closed_form(a, b, q);
            metric_ok = std::abs(ab - mk_closed_form(b, a, q)) < 1e-12 &&
                        ab <= mk_closed_form(a, c, q) + mk_closed_form(c, b, q) + 1e-12;
        }
        out.push_back(CheckResult::of("interval/metric" + qs,
                                      "symmetry and the triangle inequality", metric_ok));

        // pointwise estimate and finite-rank bound
        bool lip_ok = true, psi_ok = true;
        for (int trial = 0; trial < 100 && (lip_ok && psi_ok); ++trial) {
            QFunction f = rand_function(q);
            int mx = static_cast<int>(rng() % (T + 2));
            int my = static_cast<int>(rng() % (T + 2));
            double x = mx > T ? 0.0 : std::pow(q, 2 * mx);
            double yv = my > T ? 0.0 : std::pow(q, 2 * my);
            lip_ok = lip_bound_check(f, x, yv, q);
            double L = seminorm_grad(f, q);
            for (int level = 0; level <= 8 && psi_ok; level += 2)
                psi_ok = sup_distance(f, psi_approx(f, level)) <=
                         c_factor(q) * std::pow(q, level) * L + 1e-12;
        }
        out.push_back(CheckResult::of("interval/lipschitz" + qs,
                                      "|f(x)-f(y)| <= C_q |sqrt x - sqrt y| L(f)", lip_ok));
        out.push_back(CheckResult::of("interval/finite-rank" + qs,
                                      "|f - Psi_level(f)| <= C_q q^level L(f)", psi_ok));

        // convergence of the twisted states with the chain envelope
        QState base = haar_state_iq(q, T);
        QState eps = counit_state(T);
        bool conv_ok = true;
        double prev = 0.0;
        for (int k = 0; k <= 6 && conv_ok; ++k) {
            double d = mk_closed_form(hk_state(k, base, q), eps, q);
            conv_ok = d <= tail_edge(q, k - 1) + 1e-12 && (k == 0 || d < prev);
            prev = d;
        }
        out.push_back(CheckResult::of("interval/convergence" + qs,
                                      "distances to the limit functional decrease within the "
                                      "chain envelope",
                                      conv_ok));

        // diameter
        QState d0(T, 0.0);
        d0.w[0] = 1.0;
        double chain = tail_edge(q, -1);
        out.push_back(CheckResult::of("interval/diameter" + qs,
                                      "state-space diameter bounded by the chain length",
                                      mk_closed_form(d0, eps, q) <= chain + 1e-12));
    }

    // exact moment inequality at a rational value
    {
        const Rat qr(1, 2);
        QStateR base = haar_state_iq_exact(qr, 40);
        bool ok = true;
        for (int k = 0; k <= 6 && ok; ++k) {
            QStateR hk = hk_state_exact(k, base, qr);
            for (int m = 1; m <= 6 && ok; ++m)
                ok = state_moment(hk, qr, m) <= rat_pow(qr, 2 * k * m);
        }
        out.push_back(
            CheckResult::of("interval/moments", "twisted-state moments decay as q^{2km}", ok));
    }
    return out;
}

}  // namespace qflag
