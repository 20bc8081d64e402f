#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qflag/action.hpp"
#include "qflag/exterior.hpp"
#include "test_support.hpp"

using namespace qflag;
using namespace qflag::testing;

namespace {

// defining relations as (lhs, rhs) pairs of free-word elements
std::vector<std::pair<UqElement, UqElement>> defining_relations(int N) {
    std::vector<std::pair<UqElement, UqElement>> rel;
    const int ell = N - 1;
    const ScalarQ q = ScalarQ::q_pow(1), qinv = ScalarQ::q_pow(-1);
    for (int i = 1; i <= ell; ++i) {
        rel.push_back({uq_K(i) * uq_Kinv(i), UqElement::unit()});
        rel.push_back({uq_Kinv(i) * uq_K(i), UqElement::unit()});
        for (int j = 1; j <= ell; ++j) {
            rel.push_back({uq_K(i) * uq_K(j), uq_K(j) * uq_K(i)});
            int c2 = 2 * (i == j ? 1 : 0) - (i == j - 1 ? 1 : 0) - (i == j + 1 ? 1 : 0);
            rel.push_back({uq_K(i) * uq_E(j), ScalarQ::s_pow(c2) * (uq_E(j) * uq_K(i))});
            rel.push_back({uq_K(i) * uq_F(j), ScalarQ::s_pow(-c2) * (uq_F(j) * uq_K(i))});
            // [E_i, F_j] = delta_ij (K_i^2 - K_i^-2)/(q - q^-1)
            UqElement lhs = uq_E(i) * uq_F(j) - uq_F(j) * uq_E(i);
            UqElement rhs;
            if (i == j)
                rhs = (ScalarQ(1) / (q - qinv)) *
                      (uq_K(i) * uq_K(i) - uq_Kinv(i) * uq_Kinv(i));
            rel.push_back({lhs, rhs});
            if (std::abs(i - j) > 1) rel.push_back({uq_E(i) * uq_E(j), uq_E(j) * uq_E(i)});
            if (std::abs(i - j) == 1) {
                UqElement serre = uq_E(i) * uq_E(i) * uq_E(j) -
                                  (q + qinv) * (uq_E(i) * uq_E(j) * uq_E(i)) +
                                  uq_E(j) * uq_E(i) * uq_E(i);
                rel.push_back({serre, UqElement()});
            }
        }
    }
    return rel;
}

UqWord random_uq_word(std::mt19937& rng, int ell, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_int_distribution<int> idx(1, ell);
    UqWord w;
    int d = len(rng);
    for (int t = 0; t < d; ++t)
        w.push_back(UqLetter{static_cast<UqKind>(kind(rng)), idx(rng)});
    return w;
}

}  // namespace

TEST_CASE("pi representation on generators") {
    // pi(E_1) = e_21 at rank 2
    MatrixQ e1 = pi_rep(uq_E(1), 2);
    REQUIRE(e1[1][0] == ScalarQ(1));
    REQUIRE(e1[0][0].is_zero());
    REQUIRE(e1[0][1].is_zero());
    REQUIRE(e1[1][1].is_zero());

    MatrixQ k1 = pi_rep(uq_K(1), 2);
    REQUIRE(k1[0][0] == ScalarQ::s_pow(-1));
    REQUIRE(k1[1][1] == ScalarQ::s_pow(1));
    REQUIRE(k1[0][1].is_zero());

    REQUIRE(pi_rep(uq_K(1) * uq_Kinv(1), 2) == matrixq_identity(2));

    // pi(F_r) is the transpose of pi(E_r)
    for (int N : {2, 3})
        for (int r = 1; r < N; ++r) {
            MatrixQ e = pi_rep(uq_E(r), N), f = pi_rep(uq_F(r), N);
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j) REQUIRE(e[i][j] == f[j][i]);
        }
}

TEST_CASE("pi respects the defining relations") {
    for (int N : {2, 3})
        for (const auto& [lhs, rhs] : defining_relations(N))
            REQUIRE(pi_rep(lhs, N) == pi_rep(rhs, N));
}

TEST_CASE("hopf operations on enveloping letters") {
    // Delta(F_1) = F_1 (x) K_1 + K_1^-1 (x) F_1
    UqTensor cf = uq_coproduct(uq_F(1));
    UqTensor expected;
    expected.add_term({UqLetter{UqKind::F, 1}}, {UqLetter{UqKind::K, 1}}, ScalarQ(1));
    expected.add_term({UqLetter{UqKind::Kinv, 1}}, {UqLetter{UqKind::F, 1}}, ScalarQ(1));
    REQUIRE(cf == expected);

    REQUIRE(uq_counit(uq_E(1)).is_zero());
    REQUIRE(uq_counit(uq_K(1)) == ScalarQ(1));
    REQUIRE(uq_antipode(uq_K(1)) == uq_Kinv(1));
    REQUIRE(uq_antipode(uq_E(1)) == -ScalarQ::q_pow(1) * uq_E(1));
    REQUIRE(uq_antipode(uq_F(1)) == -ScalarQ::q_pow(-1) * uq_F(1));

    // star swaps raising and lowering letters and is an involution
    REQUIRE(uq_star(uq_E(1)) == uq_F(1));
    REQUIRE(uq_star(uq_K(1)) == uq_K(1));

    // S^-1 inverts S on words, star is involutive
    std::mt19937 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        UqElement x = UqElement::word(random_uq_word(rng, 2, 4));
        REQUIRE(uq_antipode_inv(uq_antipode(x)) == x);
        REQUIRE(uq_star(uq_star(x)) == x);
    }
}

TEST_CASE("dual pairing") {
    const AlgebraContext& ctx = get_context(2);
    REQUIRE(pairing(uq_E(1), ctx.gen(2, 1)) == ScalarQ(1));
    REQUIRE(pairing(uq_E(1), ctx.gen(1, 1)).is_zero());
    REQUIRE(pairing(uq_K(1), ctx.gen(1, 1)) == ScalarQ::s_pow(-1));

    std::mt19937 rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        NCPoly p = random_reduced(ctx, rng, 3, 3);
        REQUIRE(pairing(UqElement::unit(), p) == ctx.counit(p));
    }

    SECTION("pairing intertwines product and coproduct") {
        std::mt19937 rng2(7);
        for (int N : {2, 3}) {
            const AlgebraContext& c = get_context(N);
            for (int trial = 0; trial < 10; ++trial) {
                UqElement eta = UqElement::word(random_uq_word(rng2, N - 1, 3));
                NCPoly x = random_reduced(c, rng2, 2, 2);
                NCPoly y = random_reduced(c, rng2, 2, 2);
                // <eta, xy> = <eta_(1), x><eta_(2), y>
                ScalarQ direct = pairing(eta, c.mul(x, y));
                ScalarQ split(0);
                for (const auto& kv : uq_coproduct(eta).terms)
                    split += kv.second * pairing(UqElement::word(kv.first.first), x) *
                             pairing(UqElement::word(kv.first.second), y);
                REQUIRE(direct == split);
            }
        }
    }
}

TEST_CASE("braiding commutes with the doubled representation") {
    REQUIRE(verify_rmatrix(1, 2));
    REQUIRE(verify_rmatrix(1, 3));
    REQUIRE(verify_rmatrix(2, 3));
    REQUIRE_THROWS_AS(verify_rmatrix(2, 2), std::out_of_range);
    // the unit trivially commutes
    MatrixQ R = rhat_matrix(2);
    MatrixQ one = pi2_coproduct(UqElement::unit(), 2);
    REQUIRE(matrixq_mul(R, one) == matrixq_mul(one, R));
}

TEST_CASE("generator actions") {
    const AlgebraContext& ctx = get_context(2);
    REQUIRE(act_d(ctx, uq_K(1), ctx.gen(1, 1)) == ScalarQ::s_pow(1) * ctx.gen(1, 1));
    REQUIRE(act_d(ctx, uq_E(1), ctx.gen(2, 1)) == -ScalarQ::q_pow(-1) * ctx.gen(1, 1));
    REQUIRE(act_d(ctx, uq_F(1), ctx.gen(1, 2)) == -ScalarQ::q_pow(1) * ctx.gen(2, 2));
    REQUIRE(act_d(ctx, uq_E(1), ctx.gen(1, 1)).is_zero());
}

TEST_CASE("action is a composition action of words") {
    std::mt19937 rng(42);
    for (int N : {2, 3}) {
        const AlgebraContext& ctx = get_context(N);
        for (int trial = 0; trial < 12; ++trial) {
            UqWord a = random_uq_word(rng, N - 1, 2);
            UqWord b = random_uq_word(rng, N - 1, 2);
            NCPoly x = random_reduced(ctx, rng, 3, 2);
            UqWord ab = a;
            ab.insert(ab.end(), b.begin(), b.end());
            REQUIRE(act_d(ctx, ab, x) == act_d(ctx, a, act_d(ctx, b, x)));
        }
    }
}

TEST_CASE("defining relations act identically") {
    std::mt19937 rng(42);
    for (int N : {2, 3}) {
        const AlgebraContext& ctx = get_context(N);
        std::vector<NCPoly> corpus;
        for (int trial = 0; trial < 6; ++trial) corpus.push_back(random_reduced(ctx, rng, 3, 2));
        for (const auto& [lhs, rhs] : defining_relations(N))
            for (const NCPoly& x : corpus)
                REQUIRE(act_d(ctx, lhs, x) == act_d(ctx, rhs, x));
    }
}

TEST_CASE("coproduct-slice oracle agrees with the leibniz action") {
    std::mt19937 rng(42);
    for (int N : {2, 3}) {
        const AlgebraContext& ctx = get_context(N);
        for (int r = 1; r < N; ++r)
            for (const UqElement& eta : {uq_E(r), uq_F(r), uq_K(r), uq_Kinv(r)})
                for (int i = 1; i <= N; ++i)
                    for (int j = 1; j <= N; ++j)
                        REQUIRE(act_d(ctx, eta, ctx.gen(i, j)) ==
                                act_d_oracle(ctx, eta, ctx.gen(i, j)));
        for (int trial = 0; trial < 8; ++trial) {
            UqElement eta = UqElement::word(random_uq_word(rng, N - 1, 3));
            NCPoly x = random_reduced(ctx, rng, 3, 2);
            REQUIRE(act_d(ctx, eta, x) == act_d_oracle(ctx, eta, x));
        }
    }
}

TEST_CASE("action star rules") {
    std::mt19937 rng(42);
    for (int N : {2, 3}) {
        const AlgebraContext& ctx = get_context(N);
        int maxdeg = N == 2 ? 3 : 2;
        for (int r = 1; r < N; ++r)
            for (int trial = 0; trial < 6; ++trial) {
                NCPoly x = random_reduced(ctx, rng, maxdeg, 2);
                NCPoly xs = ctx.star(x);
                REQUIRE(act_d(ctx, uq_E(r), xs) ==
                        -ScalarQ::q_pow(-1) * ctx.star(act_d(ctx, uq_F(r), x)));
                REQUIRE(act_d(ctx, uq_F(r), xs) ==
                        -ScalarQ::q_pow(1) * ctx.star(act_d(ctx, uq_E(r), x)));
                REQUIRE(act_d(ctx, uq_K(r), xs) == ctx.star(act_d(ctx, uq_Kinv(r), x)));
            }
    }
}

TEST_CASE("haar state is action invariant at rank 2") {
    const AlgebraContext& ctx = get_context(2);
    std::mt19937 rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        NCPoly x = random_reduced(ctx, rng, 4, 3);
        REQUIRE(ctx.haar_n2(act_d(ctx, uq_E(1), x)).is_zero());
        REQUIRE(ctx.haar_n2(act_d(ctx, uq_F(1), x)).is_zero());
        REQUIRE(ctx.haar_n2(act_d(ctx, uq_K(1), x)) == ctx.haar_n2(x));
    }
}

TEST_CASE("sphere and projective eigen relations") {
    const AlgebraContext& c3 = get_context(3);
    // subalgebra generators act by the counit on the sphere algebra
    std::vector<NCPoly> sphere;
    for (int i = 1; i <= 3; ++i) {
        sphere.push_back(c3.z(i));
        sphere.push_back(c3.z_star(i));
        for (int j = 1; j <= 3; ++j) sphere.push_back(c3.mul(c3.z(i), c3.z_star(j)));
    }
    for (const NCPoly& x : sphere) {
        REQUIRE(act_d(c3, uq_E(1), x).is_zero());
        REQUIRE(act_d(c3, uq_F(1), x).is_zero());
        REQUIRE(act_d(c3, uq_K(1), x) == x);
    }
    // K_ell fixes the projective subalgebra
    for (int n : {2, 3}) {
        const AlgebraContext& ctx = get_context(n);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                NCPoly x = ctx.mul(ctx.z(i), ctx.z_star(j));
                REQUIRE(act_d(ctx, uq_K(n - 1), x) == x);
            }
    }
}

TEST_CASE("alternative action at rank 2 and the transpose intertwiner") {
    const AlgebraContext& ctx = get_context(2);
    REQUIRE(act_del_n2(ctx, uq_K(1), ctx.gen(2, 1)) == ScalarQ::s_pow(-1) * ctx.gen(2, 1));

    std::mt19937 rng(42);
    for (int trial = 0; trial < 8; ++trial) {
        NCPoly p = random_reduced(ctx, rng, 3, 3);
        REQUIRE(act_del_n2(ctx, UqElement::unit(), p) == p);
    }

    // d_eta T = T del_{nu(eta)} on generators and on a corpus
    for (const UqElement& eta : {uq_E(1), uq_F(1), uq_K(1)}) {
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j) {
                NCPoly x = ctx.gen(i, j);
                REQUIRE(act_d(ctx, eta, ctx.transpose_n2(x)) ==
                        ctx.transpose_n2(act_del_n2(ctx, uq_nu(eta), x)));
            }
        for (int trial = 0; trial < 5; ++trial) {
            NCPoly x = random_reduced(ctx, rng, 3, 2);
            REQUIRE(act_d(ctx, eta, ctx.transpose_n2(x)) ==
                    ctx.transpose_n2(act_del_n2(ctx, uq_nu(eta), x)));
        }
    }
}

TEST_CASE("deformed exterior multiplication") {
    const int ell = 2;
    ExtVector e0 = ExtVector::basis(ell, 0);
    ExtVector e1 = ExtVector::basis(ell, 0b01);
    ExtVector e12 = ExtVector::basis(ell, 0b11);

    REQUIRE(eps_q(1, e0) == e1);
    REQUIRE(eps_q(2, e1) == neg_q_power(-1) * e12);
    REQUIRE(eps_q(1, e1).is_zero());
    REQUIRE_THROWS_AS(eps_q(3, e1), std::out_of_range);

    // eps_i eps_j = -q eps_j eps_i for i < j, on all basis vectors
    for (uint32_t mask = 0; mask < 4; ++mask) {
        ExtVector v = ExtVector::basis(ell, mask);
        REQUIRE(eps_q(1, eps_q(2, v)) == -ScalarQ::q_pow(1) * eps_q(2, eps_q(1, v)));
    }

    // adjoint against the orthonormal basis
    for (int j = 1; j <= ell; ++j)
        for (uint32_t a = 0; a < 4; ++a)
            for (uint32_t b = 0; b < 4; ++b) {
                ExtVector va = ExtVector::basis(ell, a), vb = ExtVector::basis(ell, b);
                ScalarQ lhs(0), rhs(0);
                ExtVector ea = eps_q(j, va);
                auto it = ea.comps.find(b);
                if (it != ea.comps.end()) lhs = it->second;
                ExtVector db = eps_q_dag(j, vb);
                auto it2 = db.comps.find(a);
                if (it2 != db.comps.end()) rhs = it2->second;
                REQUIRE(lhs == rhs);
            }
}

TEST_CASE("sigma representation") {
    const int ell = 2;
    REQUIRE(sigma_rep(uq_E(1), ExtVector::basis(ell, 0b10)) == ExtVector::basis(ell, 0b01));
    REQUIRE(sigma_rep(uq_K(1), ExtVector::basis(ell, 0b01)) ==
            ScalarQ::s_pow(1) * ExtVector::basis(ell, 0b01));
    REQUIRE(sigma_rep(uq_E(1), ExtVector::basis(ell, 0)).is_zero());
    REQUIRE_THROWS_AS(sigma_rep(uq_E(2), ExtVector::basis(ell, 0)), OutOfSubalgebra);

    // sigma respects the rank-2 defining relations (indices < ell only)
    for (const auto& [lhs, rhs] : defining_relations(2))
        for (uint32_t mask = 0; mask < 4; ++mask) {
            ExtVector v = ExtVector::basis(ell, mask);
            REQUIRE(sigma_rep(lhs, v) == sigma_rep(rhs, v));
        }

    // sigma(F_r) is the adjoint of sigma(E_r)
    for (uint32_t a = 0; a < 4; ++a)
        for (uint32_t b = 0; b < 4; ++b) {
            ScalarQ lhs(0), rhs(0);
            ExtVector ea = sigma_rep(uq_E(1), ExtVector::basis(ell, a));
            if (auto it = ea.comps.find(b); it != ea.comps.end()) lhs = it->second;
            ExtVector fb = sigma_rep(uq_F(1), ExtVector::basis(ell, b));
            if (auto it = fb.comps.find(a); it != fb.comps.end()) rhs = it->second;
            REQUIRE(lhs == rhs);
        }
}

TEST_CASE("sigma intertwines the deformed exterior operators") {
    // sigma(eta) eps_v = eps_{sigma(eta_(1)) v} sigma(eta_(2)) for generators
    const int ell = 2;
    for (const UqElement& eta : {uq_E(1), uq_F(1), uq_K(1)})
        for (int j = 1; j <= ell; ++j)
            for (uint32_t mask = 0; mask < 4; ++mask) {
                ExtVector v1 = ExtVector::basis(ell, 1u << (j - 1));
                ExtVector target = ExtVector::basis(ell, mask);
                ExtVector lhs = sigma_rep(eta, eps_q_vec(v1, target));
                ExtVector rhs(ell);
                for (const auto& kv : uq_coproduct(eta).terms) {
                    ExtVector moved = sigma_rep(UqElement::word(kv.first.first), v1);
                    ExtVector acted = sigma_rep(UqElement::word(kv.first.second), target);
                    rhs += kv.second * eps_q_vec(moved, acted);
                }
                REQUIRE(lhs == rhs);
            }
}

TEST_CASE("raising words") {
    REQUIRE(m_element(1, 1) == uq_E(1));
    REQUIRE(m_element(1, 2) ==
            uq_E(1) * uq_E(2) - ScalarQ::q_pow(-1) * (uq_E(2) * uq_E(1)));
    REQUIRE(m_element(2, 2) == uq_E(2));
    REQUIRE(n_element(2, 2) == uq_K(2));
    REQUIRE(n_element(1, 2) == uq_K(1) * uq_K(2));
    REQUIRE_THROWS_AS(m_element(3, 2), std::out_of_range);
}
