#pragma once

// Named verification suites over the symbolic layer.  Each check carries an
// identifier, the law it exercises, a status, and a witness on failure; the
// command-line front end serializes these to JSON and the acceptance harness
// aggregates them.

#include <random>
#include <set>

#include "forms.hpp"

namespace qflag {

inline NCPoly random_reduced_element(const AlgebraContext& ctx, std::mt19937& rng, int max_deg,
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

namespace detail {
inline void push_zero(std::vector<CheckResult>& out, std::string id, std::string law,
                      const NCPoly& v) {
    out.push_back(CheckResult::of(std::move(id), std::move(law), v.is_zero(),
                                  v.is_zero() ? "" : to_string(v)));
}
inline std::string tag(const AlgebraContext& ctx) { return "N" + std::to_string(ctx.rank()); }
}  // namespace detail

// ---- unitarity of the fundamental matrix -----------------------------------

inline std::vector<CheckResult> suite_unitarity(const AlgebraContext& ctx) {
    std::vector<CheckResult> out;
    const int n = ctx.rank();
    static const char* laws[4] = {
        "sum_k u_ki* u_kj = delta_ij", "sum_k u_ik u_jk* = delta_ij",
        "sum_k q^{2(k-j)} u_ki u_kj* = delta_ij", "sum_k q^{2(i-k)} u_ik* u_jk = delta_ij"};
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            ScalarQ delta = i == j ? ScalarQ(1) : ScalarQ(0);
            NCPoly f[4] = {NCPoly(n), NCPoly(n), NCPoly(n), NCPoly(n)};
            for (int k = 1; k <= n; ++k) {
                f[0] += ctx.star(ctx.gen(k, i)) * ctx.gen(k, j);
                f[1] += ctx.gen(i, k) * ctx.star(ctx.gen(j, k));
                f[2] += ScalarQ::q_pow(2 * (k - j)) * (ctx.gen(k, i) * ctx.star(ctx.gen(k, j)));
                f[3] += ScalarQ::q_pow(2 * (i - k)) * (ctx.star(ctx.gen(i, k)) * ctx.gen(j, k));
            }
            for (int fam = 0; fam < 4; ++fam) {
                f[fam].add_term(Word(), -delta);
                detail::push_zero(out,
                                  "unitarity/" + detail::tag(ctx) + "/f" + std::to_string(fam + 1) +
                                      "/i" + std::to_string(i) + "j" + std::to_string(j),
                                  laws[fam], ctx.reduce(f[fam]));
            }
        }
    return out;
}

// ---- sphere relations --------------------------------------------------------

inline std::vector<CheckResult> suite_sphere(const AlgebraContext& ctx) {
    std::vector<CheckResult> out;
    const int n = ctx.rank();
    const std::string t = detail::tag(ctx);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            detail::push_zero(out, "sphere/" + t + "/zz/" + std::to_string(i) + std::to_string(j),
                              "z_i z_j = q z_j z_i (i<j)",
                              ctx.reduce(ctx.z(i) * ctx.z(j) -
                                         ScalarQ::q_pow(1) * (ctx.z(j) * ctx.z(i))));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            detail::push_zero(out,
                              "sphere/" + t + "/zsz/" + std::to_string(i) + std::to_string(j),
                              "z_i* z_j = q z_j z_i* (i!=j)",
                              ctx.reduce(ctx.z_star(i) * ctx.z(j) -
                                         ScalarQ::q_pow(1) * (ctx.z(j) * ctx.z_star(i))));
        }
    detail::push_zero(out, "sphere/" + t + "/comm1", "[z_1*, z_1] = 0",
                      ctx.reduce(ctx.z_star(1) * ctx.z(1) - ctx.z(1) * ctx.z_star(1)));
    for (int i = 2; i <= n; ++i) {
        NCPoly lhs = ctx.z_star(i) * ctx.z(i) - ctx.z(i) * ctx.z_star(i);
        NCPoly rhs(n);
        for (int j = 1; j < i; ++j) rhs += ctx.x_elem(j);
        rhs = (ScalarQ(1) - ScalarQ::q_pow(2)) * rhs;
        detail::push_zero(out, "sphere/" + t + "/comm" + std::to_string(i),
                          "[z_i*, z_i] = (1-q^2) sum_{j<i} z_j z_j*", ctx.reduce(lhs - rhs));
    }
    NCPoly sum(n), wsum(n);
    for (int i = 1; i <= n; ++i) {
        sum += ctx.x_elem(i);
        wsum += ScalarQ::q_pow(2 * (n - i)) * ctx.mul(ctx.z_star(i), ctx.z(i));
    }
    sum.add_term(Word(), ScalarQ(-1));
    wsum.add_term(Word(), ScalarQ(-1));
    detail::push_zero(out, "sphere/" + t + "/sum", "sum_i z_i z_i* = 1", ctx.reduce(sum));
    detail::push_zero(out, "sphere/" + t + "/wsum", "sum_i q^{2(N-i)} z_i* z_i = 1",
                      ctx.reduce(wsum));
    return out;
}

// ---- hopf axioms --------------------------------------------------------------

inline std::vector<CheckResult> suite_hopf(const AlgebraContext& ctx) {
    std::vector<CheckResult> out;
    const int n = ctx.rank();
    const std::string t = detail::tag(ctx);
    // determinant and cofactor sanity
    out.push_back(CheckResult::of("hopf/" + t + "/determinant", "quantum determinant = 1",
                                  ctx.quantum_minor(ctx.rank() == 2 ? std::vector<int>{1, 2}
                                                                    : std::vector<int>{1, 2, 3},
                                                    ctx.rank() == 2 ? std::vector<int>{1, 2}
                                                                    : std::vector<int>{1, 2, 3}) ==
                                      ctx.unit()));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            // counit axiom legwise
            NCPoly left(n), right(n);
            TensorPoly cp = ctx.coproduct(ctx.gen(i, j));
            for (const auto& kv : cp.terms) {
                left += kv.second *
                        (ctx.counit(NCPoly::monomial(n, kv.first.first, ScalarQ(1))) *
                         NCPoly::monomial(n, kv.first.second, ScalarQ(1)));
                right += kv.second *
                         (ctx.counit(NCPoly::monomial(n, kv.first.second, ScalarQ(1))) *
                          NCPoly::monomial(n, kv.first.first, ScalarQ(1)));
            }
            std::string ij = std::to_string(i) + std::to_string(j);
            detail::push_zero(out, "hopf/" + t + "/counit/" + ij, "(eps (x) 1)Delta = id",
                              ctx.reduce(left - ctx.gen(i, j)));
            detail::push_zero(out, "hopf/" + t + "/counit-r/" + ij, "(1 (x) eps)Delta = id",
                              ctx.reduce(right - ctx.gen(i, j)));

            // coassociativity legwise
            std::map<std::pair<Word, std::pair<Word, Word>>, ScalarQ> first, second;
            for (const auto& kv : cp.terms) {
                for (const auto& iv :
                     ctx.coproduct(NCPoly::monomial(n, kv.first.first, ScalarQ(1))).terms) {
                    auto key = std::make_pair(iv.first.first,
                                              std::make_pair(iv.first.second, kv.first.second));
                    first[key] += kv.second * iv.second;
                    if (first[key].is_zero()) first.erase(key);
                }
                for (const auto& iv :
                     ctx.coproduct(NCPoly::monomial(n, kv.first.second, ScalarQ(1))).terms) {
                    auto key = std::make_pair(kv.first.first,
                                              std::make_pair(iv.first.first, iv.first.second));
                    second[key] += kv.second * iv.second;
                    if (second[key].is_zero()) second.erase(key);
                }
            }
            out.push_back(CheckResult::of("hopf/" + t + "/coassoc/" + ij,
                                          "(Delta (x) 1)Delta = (1 (x) Delta)Delta",
                                          first == second));

            // antipode axiom
            NCPoly m1(n), m2(n);
            for (const auto& kv : cp.terms) {
                m1 += kv.second *
                      ctx.mul(ctx.antipode(NCPoly::monomial(n, kv.first.first, ScalarQ(1))),
                              NCPoly::monomial(n, kv.first.second, ScalarQ(1)));
                m2 += kv.second *
                      ctx.mul(NCPoly::monomial(n, kv.first.first, ScalarQ(1)),
                              ctx.antipode(NCPoly::monomial(n, kv.first.second, ScalarQ(1))));
            }
            NCPoly expected = i == j ? ctx.unit() : NCPoly::zero(n);
            detail::push_zero(out, "hopf/" + t + "/antipode-l/" + ij, "m(S (x) 1)Delta = eps 1",
                              ctx.reduce(m1 - expected));
            detail::push_zero(out, "hopf/" + t + "/antipode-r/" + ij, "m(1 (x) S)Delta = eps 1",
                              ctx.reduce(m2 - expected));
        }

    // star: involution and anti-multiplicativity on a small random corpus
    std::mt19937 rng(42);
    int maxdeg = n == 2 ? 4 : 2;
    for (int trial = 0; trial < 8; ++trial) {
        NCPoly p = random_reduced_element(ctx, rng, maxdeg, 3);
        NCPoly r = random_reduced_element(ctx, rng, maxdeg, 3);
        detail::push_zero(out, "hopf/" + t + "/star-invol/" + std::to_string(trial),
                          "star(star(p)) = p", ctx.star(ctx.star(p)) - p);
        detail::push_zero(out, "hopf/" + t + "/star-antimult/" + std::to_string(trial),
                          "star(p r) = star(r) star(p)",
                          ctx.star(ctx.mul(p, r)) - ctx.mul(ctx.star(r), ctx.star(p)));
    }
    return out;
}

// ---- enveloping-algebra actions ------------------------------------------------

inline std::vector<CheckResult> suite_action(const AlgebraContext& ctx, unsigned seed = 42) {
    std::vector<CheckResult> out;
    const int n = ctx.rank(), ell = ctx.ell();
    const std::string t = detail::tag(ctx);
    std::mt19937 rng(seed);

    std::vector<NCPoly> corpus;
    for (int trial = 0; trial < 6; ++trial)
        corpus.push_back(random_reduced_element(ctx, rng, 3, 2));

    // operator identities for the defining relations
    const ScalarQ q = ScalarQ::q_pow(1), qinv = ScalarQ::q_pow(-1);
    std::vector<std::pair<UqElement, UqElement>> rel;
    for (int i = 1; i <= ell; ++i) {
        rel.push_back({uq_K(i) * uq_Kinv(i), UqElement::unit()});
        for (int j = 1; j <= ell; ++j) {
            rel.push_back({uq_K(i) * uq_K(j), uq_K(j) * uq_K(i)});
            int c2 = 2 * (i == j ? 1 : 0) - (i == j - 1 ? 1 : 0) - (i == j + 1 ? 1 : 0);
            rel.push_back({uq_K(i) * uq_E(j), ScalarQ::s_pow(c2) * (uq_E(j) * uq_K(i))});
            rel.push_back({uq_K(i) * uq_F(j), ScalarQ::s_pow(-c2) * (uq_F(j) * uq_K(i))});
            UqElement comm = uq_E(i) * uq_F(j) - uq_F(j) * uq_E(i);
            UqElement rhs;
            if (i == j)
                rhs = (ScalarQ(1) / (q - qinv)) * (uq_K(i) * uq_K(i) - uq_Kinv(i) * uq_Kinv(i));
            rel.push_back({comm, rhs});
            if (std::abs(i - j) == 1)
                rel.push_back({uq_E(i) * uq_E(i) * uq_E(j) -
                                   (q + qinv) * (uq_E(i) * uq_E(j) * uq_E(i)) +
                                   uq_E(j) * uq_E(i) * uq_E(i),
                               UqElement()});
        }
    }
    int ri = 0;
    for (const auto& [lhs, rhs] : rel) {
        bool ok = true;
        std::string wit;
        for (const NCPoly& x : corpus) {
            NCPoly d = act_d(ctx, lhs, x) - act_d(ctx, rhs, x);
            if (!d.is_zero()) {
                ok = false;
                wit = to_string(d);
                break;
            }
        }
        out.push_back(CheckResult::of("action/" + t + "/relation/" + std::to_string(ri++),
                                      "defining relations act identically", ok, wit));
    }

    // oracle agreement and composition
    auto rand_word = [&](int max_len) {
        std::uniform_int_distribution<int> len(0, max_len);
        std::uniform_int_distribution<int> kind(0, 3);
        std::uniform_int_distribution<int> idx(1, ell);
        UqWord w;
        int d = len(rng);
        for (int k = 0; k < d; ++k)
            w.push_back(UqLetter{static_cast<UqKind>(kind(rng)), idx(rng)});
        return w;
    };
    for (int trial = 0; trial < 8; ++trial) {
        UqElement eta = UqElement::word(rand_word(3));
        NCPoly x = corpus[trial % corpus.size()];
        detail::push_zero(out, "action/" + t + "/oracle/" + std::to_string(trial),
                          "d_eta(x) = <S^-1(eta), x_(1)> x_(2)",
                          act_d(ctx, eta, x) - act_d_oracle(ctx, eta, x));
        UqWord a = rand_word(2), b = rand_word(2);
        UqWord ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        detail::push_zero(out, "action/" + t + "/compose/" + std::to_string(trial),
                          "d_{eta xi} = d_eta d_xi",
                          act_d(ctx, ab, x) - act_d(ctx, a, act_d(ctx, b, x)));
    }

    // star rules
    for (int r = 1; r <= ell; ++r)
        for (int trial = 0; trial < 4; ++trial) {
            NCPoly x = corpus[trial % corpus.size()];
            NCPoly xs = ctx.star(x);
            detail::push_zero(out,
                              "action/" + t + "/star-E/r" + std::to_string(r) + "." +
                                  std::to_string(trial),
                              "d_E(x*) = -q^-1 d_F(x)*",
                              act_d(ctx, uq_E(r), xs) +
                                  ScalarQ::q_pow(-1) * ctx.star(act_d(ctx, uq_F(r), x)));
            detail::push_zero(out,
                              "action/" + t + "/star-K/r" + std::to_string(r) + "." +
                                  std::to_string(trial),
                              "d_K(x*) = d_{K^-1}(x)*",
                              act_d(ctx, uq_K(r), xs) - ctx.star(act_d(ctx, uq_Kinv(r), x)));
        }

    // eigen relations on the sphere and projective subalgebras
    std::vector<NCPoly> proj;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) proj.push_back(ctx.mul(ctx.z(i), ctx.z_star(j)));
    int pi_idx = 0;
    for (const NCPoly& x : proj)
        detail::push_zero(out, "action/" + t + "/k-fix/" + std::to_string(pi_idx++),
                          "d_{K_l}(x) = x on the projective algebra",
                          act_d(ctx, uq_K(ell), x) - x);
    if (ell >= 2) {
        std::vector<NCPoly> sphere;
        for (int i = 1; i <= n; ++i) {
            sphere.push_back(ctx.z(i));
            sphere.push_back(ctx.z_star(i));
        }
        for (int r = 1; r < ell; ++r) {
            int si = 0;
            for (const NCPoly& x : sphere) {
                std::string sfx = "/r" + std::to_string(r) + "." + std::to_string(si++);
                detail::push_zero(out, "action/" + t + "/sphere-E" + sfx,
                                  "d_eta(x) = eps(eta) x on the sphere algebra",
                                  act_d(ctx, uq_E(r), x));
                detail::push_zero(out, "action/" + t + "/sphere-K" + sfx,
                                  "d_eta(x) = eps(eta) x on the sphere algebra",
                                  act_d(ctx, uq_K(r), x) - x);
            }
        }
    }

    // haar compatibility at rank 2
    if (n == 2) {
        for (int trial = 0; trial < 6; ++trial) {
            NCPoly x = random_reduced_element(ctx, rng, 4, 3);
            bool ok = ctx.haar_n2(act_d(ctx, uq_E(1), x)).is_zero() &&
                      ctx.haar_n2(act_d(ctx, uq_F(1), x)).is_zero() &&
                      ctx.haar_n2(act_d(ctx, uq_K(1), x)) == ctx.haar_n2(x);
            out.push_back(CheckResult::of("action/" + t + "/haar/" + std::to_string(trial),
                                          "h d_eta = eps(eta) h", ok));
        }
    } else {
        out.push_back(CheckResult::skipped("action/" + t + "/haar", "h d_eta = eps(eta) h",
                                           "closed-form invariant state available at rank 2 only"));
    }
    return out;
}

inline std::vector<CheckResult> suite_rmatrix(int N) {
    std::vector<CheckResult> out;
    for (int r = 1; r < N; ++r)
        out.push_back(CheckResult::of("rmatrix/N" + std::to_string(N) + "/r" + std::to_string(r),
                                      "Rhat (pi (x) pi)Delta(eta) = (pi (x) pi)Delta(eta) Rhat",
                                      verify_rmatrix(r, N)));
    return out;
}

// ---- forms ---------------------------------------------------------------------

inline std::vector<CheckResult> suite_forms(const AlgebraContext& ctx, int max_zdeg) {
    std::vector<CheckResult> out;
    const std::string t = detail::tag(ctx);
    for (int m : {-1, 0, 1}) {
        auto corpus = form_corpus(ctx, m, max_zdeg);
        size_t graded_ok = 0, square_ok = 0, omega_total = 0, omega_ok = 0;
        std::string wit_grade, wit_square, wit_omega;
        for (const FormElement& w : corpus) {
            FormElement up = dbar(ctx, w), down = dbar_dagger(ctx, w);
            bool g = gamma_member(ctx, up) && gamma_member(ctx, down);
            graded_ok += g;
            if (!g && wit_grade.empty() && !w.comps.empty())
                wit_grade = to_string(w.comps.begin()->second);
            bool s = dbar(ctx, up).is_zero() && dbar_dagger(ctx, down).is_zero();
            square_ok += s;
            if (!s && wit_square.empty() && !w.comps.empty())
                wit_square = to_string(w.comps.begin()->second);
            if (omega_member(ctx, w)) {
                ++omega_total;
                bool o = omega_member(ctx, up) && omega_member(ctx, down);
                omega_ok += o;
                if (!o && wit_omega.empty() && !w.comps.empty())
                    wit_omega = to_string(w.comps.begin()->second);
            }
        }
        std::string m_tag = "/M" + std::to_string(m);
        out.push_back(CheckResult::of("forms/" + t + m_tag + "/grading",
                                      "the differentials preserve the graded component",
                                      graded_ok == corpus.size(), wit_grade));
        out.push_back(CheckResult::of("forms/" + t + m_tag + "/squares",
                                      "dbar^2 = 0 = (dbar^dag)^2", square_ok == corpus.size(),
                                      wit_square));
        out.push_back(CheckResult::of("forms/" + t + m_tag + "/invariance",
                                      "the differentials preserve the invariant forms",
                                      omega_ok == omega_total, wit_omega));

        // commutator closed form on a shallow sub-corpus
        auto small = form_corpus(ctx, m, std::min(max_zdeg, 2));
        bool comm_ok = true;
        std::string wit_comm;
        std::vector<NCPoly> xs;
        for (int i = 1; i <= ctx.rank(); ++i)
            for (int j = 1; j <= ctx.rank(); ++j) xs.push_back(ctx.mul(ctx.z(i), ctx.z_star(j)));
        for (const NCPoly& x : xs)
            for (const FormElement& w : small) {
                if (commutator_dbar(ctx, x, w) != commutator_closed_form(ctx, x, w)) {
                    comm_ok = false;
                    if (wit_comm.empty()) wit_comm = to_string(x);
                }
            }
        out.push_back(CheckResult::of("forms/" + t + m_tag + "/commutator",
                                      "[dbar, x (x) 1] = q^-1 sum_i (-q)^{i-l} d_{F_i..F_l}(x) "
                                      "(x) eps_i",
                                      comm_ok, wit_comm));

        // grading flip anticommutes
        bool parity_ok = true;
        for (const FormElement& w : small) {
            FormElement d = dbar(ctx, w) + dbar_dagger(ctx, w);
            FormElement anti = gamma_parity(d) + dbar(ctx, gamma_parity(w)) +
                               dbar_dagger(ctx, gamma_parity(w));
            parity_ok &= anti.is_zero();
        }
        out.push_back(CheckResult::of("forms/" + t + m_tag + "/parity",
                                      "the grading flip anticommutes with dbar + dbar^dag",
                                      parity_ok));
    }
    return out;
}

// gradient lemmas plus the iterated product identity
inline std::vector<CheckResult> suite_gradient(const AlgebraContext& ctx) {
    std::vector<CheckResult> out = verify_gradient_suite(ctx);
    const std::string t = detail::tag(ctx);
    NCPoly y = ctx.y_top();
    detail::push_zero(out, "gradient/" + t + "/y-exchange", "y_l z_N = q^2 z_N y_l",
                      ctx.reduce(y * ctx.z(ctx.rank()) -
                                 ScalarQ::q_pow(2) * (ctx.z(ctx.rank()) * y)));
    for (int k = 1; k <= 3; ++k) {
        NCPoly lhs = ctx.mul(ctx.pow(ctx.z_star(ctx.rank()), k), ctx.pow(ctx.z(ctx.rank()), k));
        NCPoly rhs = ctx.unit();
        for (int j = 1; j <= k; ++j)
            rhs = ctx.mul(rhs, ctx.reduce(ctx.unit() - ScalarQ::q_pow(2 * j) * y));
        detail::push_zero(out, "gradient/" + t + "/ak/" + std::to_string(k),
                          "(z_N*)^k z_N^k = prod_{j<=k} (1 - q^{2j} y_l)", lhs - rhs);
    }
    return out;
}

// ---- rank-2 specials ------------------------------------------------------------

inline std::vector<CheckResult> suite_transpose(const AlgebraContext& ctx, unsigned seed = 42) {
    std::vector<CheckResult> out;
    if (ctx.rank() != 2) {
        out.push_back(CheckResult::skipped("transpose/" + detail::tag(ctx),
                                           "transpose defined at rank 2", "unsupported rank"));
        return out;
    }
    std::mt19937 rng(seed);
    for (int trial = 0; trial < 8; ++trial) {
        NCPoly x = random_reduced_element(ctx, rng, 3, 3);
        NCPoly y = random_reduced_element(ctx, rng, 3, 2);
        detail::push_zero(out, "transpose/invol/" + std::to_string(trial), "T T = id",
                          ctx.transpose_n2(ctx.transpose_n2(x)) - x);
        detail::push_zero(out, "transpose/mult/" + std::to_string(trial), "T(xy) = T(x)T(y)",
                          ctx.transpose_n2(ctx.mul(x, y)) -
                              ctx.mul(ctx.transpose_n2(x), ctx.transpose_n2(y)));
        detail::push_zero(out, "transpose/star/" + std::to_string(trial), "T(x*) = T(x)*",
                          ctx.transpose_n2(ctx.star(x)) - ctx.star(ctx.transpose_n2(x)));
        bool hT = ctx.haar_n2(ctx.transpose_n2(x)) == ctx.haar_n2(x);
        out.push_back(CheckResult::of("transpose/haar/" + std::to_string(trial), "h T = h", hT));
    }
    // intertwining with the alternative action
    const char* letters[3] = {"E", "F", "K"};
    int li = 0;
    for (const UqElement& eta : {uq_E(1), uq_F(1), uq_K(1)}) {
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j) {
                NCPoly x = ctx.gen(i, j);
                detail::push_zero(out,
                                  std::string("transpose/intertwine/") + letters[li] + "/u" +
                                      std::to_string(i) + std::to_string(j),
                                  "d_eta T = T del_{nu(eta)}",
                                  act_d(ctx, eta, ctx.transpose_n2(x)) -
                                      ctx.transpose_n2(act_del_n2(ctx, uq_nu(eta), x)));
            }
        ++li;
    }
    return out;
}

inline std::vector<CheckResult> suite_haar(const AlgebraContext& ctx, unsigned seed = 42) {
    std::vector<CheckResult> out;
    if (ctx.rank() != 2) {
        out.push_back(CheckResult::skipped("haar/" + detail::tag(ctx),
                                           "closed-form invariant state defined at rank 2",
                                           "unsupported rank"));
        return out;
    }
    std::mt19937 rng(seed);
    auto slice = [&](const NCPoly& x, bool right) {
        NCPoly acc(2);
        for (const auto& kv : ctx.coproduct(x).terms) {
            const Word& evalw = right ? kv.first.second : kv.first.first;
            const Word& keepw = right ? kv.first.first : kv.first.second;
            ScalarQ h = ctx.haar_n2(NCPoly::monomial(2, evalw, ScalarQ(1)));
            if (!h.is_zero()) acc.add_term(keepw, kv.second * h);
        }
        return acc;
    };
    for (int trial = 0; trial < 10; ++trial) {
        NCPoly x = random_reduced_element(ctx, rng, 4, 3);
        NCPoly hx = NCPoly::scalar(2, ctx.haar_n2(x));
        detail::push_zero(out, "haar/bi-invariance-r/" + std::to_string(trial),
                          "(1 (x) h)Delta(x) = h(x) 1", slice(x, true) - hx);
        detail::push_zero(out, "haar/bi-invariance-l/" + std::to_string(trial),
                          "(h (x) 1)Delta(x) = h(x) 1", slice(x, false) - hx);
    }
    for (int trial = 0; trial < 8; ++trial) {
        NCPoly x = random_reduced_element(ctx, rng, 3, 2);
        NCPoly y = random_reduced_element(ctx, rng, 3, 2);
        bool mod = ctx.haar_n2(ctx.mul(x, y)) == ctx.haar_n2(ctx.mul(y, ctx.modular_theta(x)));
        out.push_back(CheckResult::of("haar/modular/" + std::to_string(trial),
                                      "h(xy) = h(y theta(x))", mod));
    }
    for (auto& r : suite_transpose(ctx, seed)) {
        r.check_id = "haar/" + r.check_id;
        out.push_back(std::move(r));
    }
    for (int trial = 0; trial < 6; ++trial) {
        NCPoly x = random_reduced_element(ctx, rng, 4, 3);
        bool ok = ctx.haar_n2(act_d(ctx, uq_E(1), x)).is_zero() &&
                  ctx.haar_n2(act_d(ctx, uq_F(1), x)).is_zero() &&
                  ctx.haar_n2(act_d(ctx, uq_K(1), x)) == ctx.haar_n2(x);
        out.push_back(
            CheckResult::of("haar/action/" + std::to_string(trial), "h d_eta = eps(eta) h", ok));
    }
    // invariance of the conditional expectation under the twisted states
    std::vector<NCPoly> proj;
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) proj.push_back(ctx.mul(ctx.z(i), ctx.z_star(j)));
    auto hk = [&](int k, const NCPoly& x) {
        NCPoly zs = ctx.pow(ctx.z_star(2), k), zk = ctx.pow(ctx.z(2), k);
        return ctx.haar_n2(ctx.mul(ctx.mul(zs, x), zk)) / ctx.haar_n2(ctx.mul(zs, zk));
    };
    int ei = 0;
    for (const NCPoly& p : proj) {
        NCPoly e = ctx.cond_expectation(p);
        bool ok = ctx.counit(e) == ctx.counit(p);
        for (int k = 0; k <= 2 && ok; ++k) ok = hk(k, e) == hk(k, p);
        out.push_back(CheckResult::of("haar/expectation-invariance/" + std::to_string(ei++),
                                      "h_k E = h_k and eps E = eps", ok));
    }
    return out;
}

inline std::vector<CheckResult> suite_confluence(const AlgebraContext& ctx, unsigned seed = 42,
                                                 int trials = 50) {
    std::vector<CheckResult> out;
    std::mt19937 rng(seed);
    for (int trial = 0; trial < trials; ++trial) {
        NCPoly p(ctx.rank());
        std::uniform_int_distribution<int> deg(0, 6);
        std::uniform_int_distribution<int> idx(1, ctx.rank());
        std::uniform_int_distribution<int> coef(-3, 3);
        for (int k = 0; k < 5; ++k) {
            Word w;
            int d = deg(rng);
            for (int l = 0; l < d; ++l) w += make_letter(idx(rng), idx(rng));
            int c = coef(rng);
            p.add_term(w, ScalarQ(Rat(c == 0 ? 1 : c)));
        }
        bool ok = ctx.reduce(p, Strategy::LeftOutermost) == ctx.reduce(p, Strategy::RightInnermost);
        out.push_back(CheckResult::of(
            "confluence/" + detail::tag(ctx) + "/" + std::to_string(trial),
            "reduction strategies agree", ok, ok ? "" : to_string(p)));
    }
    return out;
}

}  // namespace qflag
