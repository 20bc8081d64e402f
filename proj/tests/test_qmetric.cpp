#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qflag/algebra.hpp"
#include "qflag/interval_exact.hpp"

using namespace qflag;

namespace {

QState random_state(std::mt19937& rng, int T, double q) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    QState s(T, 0.0);
    std::uniform_int_distribution<int> nmass(1, 6);
    int k = nmass(rng);
    double tot = 0.0;
    for (int t = 0; t < k; ++t) {
        int pos = static_cast<int>(rng() % static_cast<unsigned>(T + 2));
        double m = u(rng);
        if (pos > T)
            s.atom += m;
        else
            s.w[pos] += m;
        tot += m;
    }
    for (double& w : s.w) w /= tot;
    s.atom /= tot;
    (void)q;
    return s;
}

QStateR random_state_exact(std::mt19937& rng, int T) {
    QStateR s(T, Rat(0));
    std::uniform_int_distribution<int> nmass(1, 5);
    std::uniform_int_distribution<int> num(1, 9);
    int k = nmass(rng);
    Rat tot = 0;
    for (int t = 0; t < k; ++t) {
        int pos = static_cast<int>(rng() % static_cast<unsigned>(T + 2));
        Rat m(num(rng), 10);
        if (pos > T)
            s.atom += m;
        else
            s.w[pos] += m;
        tot += m;
    }
    for (Rat& w : s.w) w /= tot;
    s.atom /= tot;
    return s;
}

QFunction random_function(std::mt19937& rng, int T) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    QFunction f(T, 0.0);
    for (int m = 0; m <= T; ++m) f.v[m] = u(rng);
    f.tail = u(rng);
    return f;
}

}  // namespace

TEST_CASE("difference quotients on indicators") {
    const double q = 0.5;
    QFunction p0 = QFunction::indicator(10, 0);
    REQUIRE(diff_d(p0, 0, q) == Catch::Approx(1.0 / (1.0 - q * q)));
    REQUIRE(diff_e(p0, 1, q) == Catch::Approx(1.0 / (1.0 - q * q)));
    REQUIRE(diff_e(p0, 0, q) == Catch::Approx(-q * q / (1.0 - q * q)));

    QFunction c(10, 3.25);
    for (int m = 0; m <= 11; ++m) REQUIRE(diff_d(c, m, q) == 0.0);
}

TEST_CASE("indicator derivative laws hold exactly") {
    const Rat q(1, 2);
    for (int m : {0, 1, 3, 7}) REQUIRE(projection_derivative_check(m, q, 12));
    REQUIRE(projection_derivative_check(0, Rat(7, 10), 12));
    REQUIRE_THROWS_AS(projection_derivative_check(13, q, 12), std::out_of_range);
}

TEST_CASE("the squared-gradient density") {
    const double q = 0.5;
    REQUIRE(g_function(0.0, q) == 0.0);
    REQUIRE(g_function(1.0, q) == Catch::Approx((1.0 - q * q) / q));
    REQUIRE(g_function(q * q, q) == Catch::Approx(q * (1.0 - std::pow(q, 4))));
    REQUIRE_THROWS_AS(g_function(0.3, q), std::domain_error);
    REQUIRE_THROWS_AS(g_function(-1.0, q), std::domain_error);
}

TEST_CASE("gradient seminorm") {
    const double q = 0.5;
    const int T = 60;
    QFunction one(T, 1.0);
    REQUIRE(seminorm_grad(one, q) == 0.0);

    QFunction id = QFunction::coordinate(T, q);
    REQUIRE(seminorm_grad(id, q) == Catch::Approx(std::sqrt(1.5)));

    QFunction p0 = QFunction::indicator(T, 0);
    REQUIRE(seminorm_grad(p0, q) ==
            Catch::Approx(std::sqrt(g_at_index(q, 0)) / (1.0 - q * q)));
}

TEST_CASE("lipschitz estimate") {
    const double q = 0.5;
    const int T = 40;
    QFunction p0 = QFunction::indicator(T, 0);
    REQUIRE(lip_bound_check(p0, 1.0, q * q, q));
    QFunction c(T, 2.0);
    REQUIRE(lip_bound_check(c, 1.0, 0.0, q));

    std::mt19937 rng(42);
    for (double qq : {0.3, 0.5, 0.7}) {
        for (int trial = 0; trial < 200; ++trial) {
            QFunction f = random_function(rng, T);
            int mx = static_cast<int>(rng() % (T + 2));
            int my = static_cast<int>(rng() % (T + 2));
            double x = mx > T ? 0.0 : std::pow(qq, 2 * mx);
            double y = my > T ? 0.0 : std::pow(qq, 2 * my);
            REQUIRE(lip_bound_check(f, x, y, qq));
        }
    }
}

TEST_CASE("finite-rank approximation") {
    const double q = 0.5;
    const int T = 30;
    std::mt19937 rng(42);

    QFunction f = random_function(rng, T);
    QFunction psi0 = psi_approx(f, 0);
    for (int m = 0; m <= T; ++m) REQUIRE(psi0.at(m) == f.v[0]);

    QFunction id = QFunction::coordinate(T, q);
    QFunction psi2 = psi_approx(id, 2);
    REQUIRE(psi2.at(3) == Catch::Approx(std::pow(q, 4)));

    double err = sup_distance(id, psi_approx(id, 3));
    REQUIRE(err == Catch::Approx(1.0 / 64));
    REQUIRE(err <= c_factor(q) * std::pow(q, 3) * seminorm_grad(id, q));

    REQUIRE_THROWS_AS(psi_approx(id, T + 1), std::out_of_range);

    for (double qq : {0.3, 0.5, 0.7})
        for (int level = 0; level <= 10; ++level)
            for (int trial = 0; trial < 25; ++trial) {
                QFunction g = random_function(rng, T);
                REQUIRE(sup_distance(g, psi_approx(g, level)) <=
                        c_factor(qq) * std::pow(qq, level) * seminorm_grad(g, qq) + 1e-12);
            }
}

TEST_CASE("reference states") {
    const double q = 0.5;
    const int T = 40;
    QState base = haar_state_iq(q, T);
    REQUIRE(base.w[0] == Catch::Approx(1 - q * q));
    double tot = base.atom;
    for (double w : base.w) tot += w;
    REQUIRE(tot == Catch::Approx(1.0));

    QFunction id = QFunction::coordinate(T, q);
    REQUIRE(base.pair(id) == Catch::Approx(1.0 / (1.0 + q * q)).margin(1e-10));

    QState eps = counit_state(T);
    REQUIRE(eps.atom == 1.0);
    REQUIRE(eps.pair(id) == 0.0);
    REQUIRE(eps.pair(QFunction(T, 1.0)) == 1.0);
    REQUIRE(eps.pair(QFunction::indicator(T, 0)) == 0.0);
}

TEST_CASE("base measure moments match the closed form up to the tail") {
    const Rat q(1, 2);
    const int T = 24;
    QStateR base = haar_state_iq_exact(q, T);
    REQUIRE(base.total() == Rat(1));
    for (int m = 1; m <= T / 2; ++m) {
        Rat closed = (Rat(1) - q * q) / (Rat(1) - rat_pow(q, 2 * (m + 1)));
        Rat remainder = (Rat(1) - q * q) * rat_pow(q, 2 * (T + 1) * (m + 1)) /
                        (Rat(1) - rat_pow(q, 2 * (m + 1)));
        REQUIRE(closed - state_moment(base, q, m) == remainder);
    }
}

TEST_CASE("twisted states") {
    const Rat q(1, 2);
    const int T = 30;
    QStateR base = haar_state_iq_exact(q, T);

    // k = 0 is the base
    QStateR h0 = hk_state_exact(0, base, q);
    REQUIRE(h0.w == base.w);
    REQUIRE(h0.atom == base.atom);

    for (int k = 1; k <= 6; ++k) {
        QStateR hk = hk_state_exact(k, base, q);
        REQUIRE(hk.total() == Rat(1));
        // support shifted below q^{2k}
        for (int j = 0; j < k; ++j) REQUIRE(hk.w[j] == Rat(0));

        // moment identity against the density form, and the decay inequality
        Rat z = base.atom;
        for (int j = 0; j <= T; ++j) z += base.w[j] * a_k_at_exact(q, k, rat_pow(q, 2 * j));
        for (int m = 1; m <= 6; ++m) {
            Rat density_moment = 0;
            for (int j = 0; j + k <= T; ++j)
                density_moment += base.w[j] * a_k_at_exact(q, k, rat_pow(q, 2 * j)) *
                                  rat_pow(q, 2 * (k + j) * m);
            REQUIRE(state_moment(hk, q, m) == density_moment / z);
            REQUIRE(state_moment(hk, q, m) <= rat_pow(q, 2 * k * m));
        }
    }
}

TEST_CASE("twisted-state moments match the symbolic state") {
    // the rank-2 closed-form invariant state gives the untruncated moments
    // h_k(y^m) = h((z*)^k y^m z^k)/h(a_k); the interval-lab states reproduce
    // them up to the mass lumped at the origin.  The raw products reach
    // degree 12, beyond the default bound, so complete a deeper system.
    const AlgebraContext ctx(2, 14);
    const Rat q(1, 2);
    const int T = 40;
    QStateR base = haar_state_iq_exact(q, T);
    NCPoly y = ctx.y_top();
    for (int k = 0; k <= 3; ++k) {
        QStateR hk = hk_state_exact(k, base, q);
        NCPoly zs = ctx.pow(ctx.z_star(2), k), zk = ctx.pow(ctx.z(2), k);
        ScalarQ den_sym = ctx.haar_n2(ctx.mul(zs, zk));
        for (int m = 1; m <= 3; ++m) {
            ScalarQ num_sym = ctx.haar_n2(ctx.mul(ctx.mul(zs, ctx.pow(y, m)), zk));
            Rat sym = (num_sym / den_sym).eval_q_rat(q);
            Rat diff = sym - state_moment(hk, q, m);
            REQUIRE(diff >= 0);
            REQUIRE(diff <= Rat(16) * rat_pow(q, 2 * T));
        }
    }
}

TEST_CASE("chain distance basics") {
    const double q = 0.5;
    const int T = 30;
    QState mu(T, 0.0);
    mu.w[0] = 1.0;
    QState nu(T, 0.0);
    nu.w[1] = 1.0;
    REQUIRE(mk_closed_form(mu, mu, q) == 0.0);
    REQUIRE(mk_closed_form(mu, nu, q) == Catch::Approx(std::sqrt(q * (1 - q * q))));
    REQUIRE(mk_closed_form(mu, nu, 0.5) == Catch::Approx(0.61237243569));
    REQUIRE(mk_lp_oracle(mu, nu, q) == Catch::Approx(std::sqrt(q * (1 - q * q))));
}

TEST_CASE("closed form agrees with the LP oracle") {
    std::mt19937 rng(42);
    const int T = 40;
    for (double q : {0.3, 0.5, 0.7})
        for (int trial = 0; trial < 40; ++trial) {
            QState mu = random_state(rng, T, q);
            QState nu = random_state(rng, T, q);
            double a = mk_closed_form(mu, nu, q);
            double b = mk_lp_oracle(mu, nu, q);
            REQUIRE(std::abs(a - b) < 1e-9);
        }
}

TEST_CASE("exact oracle certificate") {
    std::mt19937 rng(42);
    const Rat q(1, 2);
    const int T = 12;
    for (int trial = 0; trial < 12; ++trial) {
        QStateR mu = random_state_exact(rng, T);
        QStateR nu = random_state_exact(rng, T);
        RadVec lp = mk_lp_exact(mu, nu, q);       // throws on any duality gap
        RadVec closed = mk_closed_exact(mu, nu, q);
        REQUIRE(lp == closed);
    }
    // cross-check the exact value against the float closed form
    QStateR mu = random_state_exact(rng, T);
    QStateR nu = random_state_exact(rng, T);
    QState muf(T, 0.0), nuf(T, 0.0);
    for (int j = 0; j <= T; ++j) {
        muf.w[j] = rat_to_double(mu.w[j]);
        nuf.w[j] = rat_to_double(nu.w[j]);
    }
    muf.atom = rat_to_double(mu.atom);
    nuf.atom = rat_to_double(nu.atom);
    REQUIRE(mk_closed_exact(mu, nu, q).eval(q, T) ==
            Catch::Approx(mk_closed_form(muf, nuf, 0.5)));
}

TEST_CASE("the chain distance is a metric") {
    std::mt19937 rng(42);
    const double q = 0.5;
    const int T = 30;
    for (int trial = 0; trial < 30; ++trial) {
        QState a = random_state(rng, T, q);
        QState b = random_state(rng, T, q);
        QState c = random_state(rng, T, q);
        double ab = mk_closed_form(a, b, q);
        double ba = mk_closed_form(b, a, q);
        double ac = mk_closed_form(a, c, q);
        double cb = mk_closed_form(c, b, q);
        REQUIRE(ab == Catch::Approx(ba));
        REQUIRE(ab <= ac + cb + 1e-12);
    }
    // distinct supports are separated
    QState d0(T, 0.0);
    d0.w[0] = 1.0;
    QState d3(T, 0.0);
    d3.w[3] = 1.0;
    REQUIRE(mk_closed_form(d0, d3, q) > 0.0);
}

TEST_CASE("states converge to the limit functional") {
    const int T = 60;
    for (double q : {0.3, 0.5, 0.7}) {
        QState base = haar_state_iq(q, T);
        QState eps = counit_state(T);
        double prev = -1.0;
        for (int k = 0; k <= 6; ++k) {
            QState hk = hk_state(k, base, q);
            double d = mk_closed_form(hk, eps, q);
            double envelope = tail_edge(q, k - 1);  // sum of edges from k on
            REQUIRE(d <= envelope + 1e-12);
            if (k > 0) REQUIRE(d < prev);
            prev = d;
        }
    }
}

TEST_CASE("finite diameter") {
    const int T = 60;
    std::mt19937 rng(42);
    for (double q : {0.3, 0.5, 0.7}) {
        double chain_total = 0.0;
        for (int m = 0; m <= T; ++m) chain_total += edge_len(q, m);
        chain_total += tail_edge(q, T);
        // the extreme points realize the diameter
        QState d0(T, 0.0);
        d0.w[0] = 1.0;
        REQUIRE(mk_closed_form(d0, counit_state(T), q) == Catch::Approx(chain_total));
        for (int trial = 0; trial < 25; ++trial) {
            QState a = random_state(rng, T, q);
            QState b = random_state(rng, T, q);
            REQUIRE(mk_closed_form(a, b, q) <= chain_total + 1e-12);
        }
        QState base = haar_state_iq(q, T);
        REQUIRE(std::isfinite(mk_closed_form(base, counit_state(T), q)));
    }
}
