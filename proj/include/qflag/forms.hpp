#pragma once

// Twisted antiholomorphic forms: elements of the coordinate algebra tensored
// with the exterior algebra, the raising/lowering differentials built from
// the recursive raising words, the gradient twisted derivations, and the
// commutation-law verification suite.

#include "action.hpp"
#include "exterior.hpp"
#include "report.hpp"

namespace qflag {

struct FormElement {
    int n = 0;        // ambient rank, ell = n - 1
    int twist = 0;    // the integer twist labelling the form space
    std::map<uint32_t, NCPoly> comps;

    FormElement(int rank, int m) : n(rank), twist(m) {}

    int ell() const { return n - 1; }
    bool is_zero() const { return comps.empty(); }

    void add_comp(uint32_t mask, const NCPoly& x) {
        if (x.is_zero()) return;
        auto it = comps.find(mask);
        if (it == comps.end()) {
            comps.emplace(mask, x);
        } else {
            it->second += x;
            if (it->second.is_zero()) comps.erase(it);
        }
    }

    FormElement& operator+=(const FormElement& o) {
        for (const auto& kv : o.comps) add_comp(kv.first, kv.second);
        return *this;
    }
    friend FormElement operator+(FormElement a, const FormElement& b) { a += b; return a; }
    friend FormElement operator-(const FormElement& a) {
        FormElement r(a.n, a.twist);
        for (const auto& kv : a.comps) r.comps.emplace(kv.first, -kv.second);
        return r;
    }
    friend FormElement operator-(FormElement a, const FormElement& b) { a += -b; return a; }
    friend FormElement operator*(const ScalarQ& c, const FormElement& v) {
        FormElement r(v.n, v.twist);
        if (c.is_zero()) return r;
        for (const auto& kv : v.comps) r.comps.emplace(kv.first, c * kv.second);
        return r;
    }
    friend bool operator==(const FormElement& a, const FormElement& b) {
        return a.n == b.n && a.twist == b.twist && a.comps == b.comps;
    }
};

// grading flip (-1)^{#I}
inline FormElement gamma_parity(const FormElement& w) {
    FormElement r(w.n, w.twist);
    for (const auto& kv : w.comps) {
        int k = __builtin_popcount(kv.first);
        r.comps.emplace(kv.first, k % 2 == 0 ? kv.second : -kv.second);
    }
    return r;
}

// componentwise K_ell eigenvalue check defining the graded space
inline bool gamma_member(const AlgebraContext& ctx, const FormElement& w) {
    const int ell = ctx.ell();
    for (const auto& kv : w.comps) {
        int k = __builtin_popcount(kv.first);
        int delta = (kv.first >> (ell - 1)) & 1u;
        ScalarQ eig = ScalarQ::s_pow(w.twist - k - delta);
        if (act_d(ctx, uq_K(ell), kv.second) != eig * kv.second) return false;
    }
    return true;
}

// (d_a (x) sigma(b)) applied componentwise
inline FormElement act_tensor(const AlgebraContext& ctx, const UqElement& a, const UqElement& b,
                              const FormElement& w) {
    FormElement out(w.n, w.twist);
    const int ell = ctx.ell();
    for (const auto& kv : w.comps) {
        ExtVector moved = sigma_rep(b, ExtVector::basis(ell, kv.first));
        if (moved.is_zero()) continue;
        NCPoly acted = act_d(ctx, a, kv.second);
        if (acted.is_zero()) continue;
        for (const auto& mv : moved.comps) out.add_comp(mv.first, mv.second * acted);
    }
    return out;
}

// full invariance condition on top of the grading
inline bool omega_member(const AlgebraContext& ctx, const FormElement& w) {
    if (!gamma_member(ctx, w)) return false;
    const int ell = ctx.ell();
    for (int r = 1; r < ell; ++r) {
        if (act_tensor(ctx, uq_K(r), uq_K(r), w) != w) return false;
        FormElement e = act_tensor(ctx, uq_E(r), uq_K(r), w) +
                        act_tensor(ctx, uq_Kinv(r), uq_E(r), w);
        if (!e.is_zero()) return false;
        FormElement f = act_tensor(ctx, uq_F(r), uq_K(r), w) +
                        act_tensor(ctx, uq_Kinv(r), uq_F(r), w);
        if (!f.is_zero()) return false;
    }
    return true;
}

namespace detail {
inline UqElement dbar_word(const AlgebraContext& ctx, int i) {
    // N_i M_i^*
    return n_element(i, ctx.ell()) * uq_star(m_element(i, ctx.ell()));
}
inline UqElement dbar_dagger_word(const AlgebraContext& ctx, int i) {
    // M_i N_i
    return m_element(i, ctx.ell()) * n_element(i, ctx.ell());
}
}  // namespace detail

// raising differential: sum_i d_{N_i M_i^*} (x) eps_i
inline FormElement dbar(const AlgebraContext& ctx, const FormElement& w) {
    const int ell = ctx.ell();
    FormElement out(w.n, w.twist);
    for (int i = 1; i <= ell; ++i) {
        UqElement eta = detail::dbar_word(ctx, i);
        const uint32_t bit = 1u << (i - 1);
        for (const auto& kv : w.comps) {
            if (kv.first & bit) continue;
            NCPoly acted = act_d(ctx, eta, kv.second);
            if (acted.is_zero()) continue;
            int below = popcount_below(kv.first, i);
            out.add_comp(kv.first | bit, neg_q_power(-below) * acted);
        }
    }
    return out;
}

// lowering differential: sum_i d_{M_i N_i} (x) eps_i^dag
inline FormElement dbar_dagger(const AlgebraContext& ctx, const FormElement& w) {
    const int ell = ctx.ell();
    FormElement out(w.n, w.twist);
    for (int i = 1; i <= ell; ++i) {
        UqElement eta = detail::dbar_dagger_word(ctx, i);
        const uint32_t bit = 1u << (i - 1);
        for (const auto& kv : w.comps) {
            if (!(kv.first & bit)) continue;
            NCPoly acted = act_d(ctx, eta, kv.second);
            if (acted.is_zero()) continue;
            uint32_t rest = kv.first & ~bit;
            int below = popcount_below(rest, i);
            out.add_comp(rest, neg_q_power(-below) * acted);
        }
    }
    return out;
}

// left module action (x (x) 1) w
inline FormElement lmul(const AlgebraContext& ctx, const NCPoly& x, const FormElement& w) {
    FormElement out(w.n, w.twist);
    for (const auto& kv : w.comps) out.add_comp(kv.first, ctx.mul(x, kv.second));
    return out;
}

// gradient twisted derivations: nabla_i = (-q)^{i-N} d_{F_i ... F_ell}
inline NCPoly nabla_i(const AlgebraContext& ctx, const NCPoly& x, int i) {
    const int ell = ctx.ell();
    if (i < 1 || i > ell) throw std::out_of_range("nabla_i: index out of range");
    UqWord word;
    for (int r = i; r <= ell; ++r) word.push_back(UqLetter{UqKind::F, r});
    return neg_q_power(i - ctx.rank()) * act_d(ctx, word, x);
}

inline FormElement nabla(const AlgebraContext& ctx, const NCPoly& x, int twist = 0) {
    FormElement out(ctx.rank(), twist);
    for (int i = 1; i <= ctx.ell(); ++i) out.add_comp(1u << (i - 1), nabla_i(ctx, x, i));
    return out;
}

// [dbar, x (x) 1] evaluated on w
inline FormElement commutator_dbar(const AlgebraContext& ctx, const NCPoly& x,
                                   const FormElement& w) {
    return dbar(ctx, lmul(ctx, x, w)) - lmul(ctx, x, dbar(ctx, w));
}

// the closed form q^-1 sum_i (-q)^{i-ell} d_{F_i...F_ell}(x) (x) eps_i
inline FormElement commutator_closed_form(const AlgebraContext& ctx, const NCPoly& x,
                                          const FormElement& w) {
    const int ell = ctx.ell();
    FormElement out(w.n, w.twist);
    for (int i = 1; i <= ell; ++i) {
        UqWord word;
        for (int r = i; r <= ell; ++r) word.push_back(UqLetter{UqKind::F, r});
        NCPoly dx = ScalarQ::q_pow(-1) * neg_q_power(i - ell) * act_d(ctx, word, x);
        if (dx.is_zero()) continue;
        const uint32_t bit = 1u << (i - 1);
        for (const auto& kv : w.comps) {
            if (kv.first & bit) continue;
            int below = popcount_below(kv.first, i);
            out.add_comp(kv.first | bit, neg_q_power(-below) * ctx.mul(dx, kv.second));
        }
    }
    return out;
}

// ---- fixed corpora ---------------------------------------------------------

// all reduced words of length <= max_deg in the letters z_1..z_N, z*_1..z*_N
// whose star-minus-plain letter count equals `charge`, deduplicated
inline std::vector<NCPoly> sphere_monomials(const AlgebraContext& ctx, int max_deg, int charge) {
    const int n = ctx.rank();
    std::vector<NCPoly> out;
    std::set<std::string> seen;
    struct Item {
        NCPoly val;
        int deg, charge;
    };
    std::vector<Item> frontier{{ctx.unit(), 0, 0}};
    auto consider = [&](const NCPoly& v, int c) {
        if (c != charge || v.is_zero()) return;
        std::string key = to_string(v);
        if (seen.insert(key).second) out.push_back(v);
    };
    consider(ctx.unit(), 0);
    for (int d = 1; d <= max_deg; ++d) {
        std::vector<Item> next;
        for (const Item& it : frontier) {
            for (int i = 1; i <= n; ++i) {
                next.push_back({ctx.mul(it.val, ctx.z(i)), d, it.charge - 1});
                next.push_back({ctx.mul(it.val, ctx.z_star(i)), d, it.charge + 1});
            }
        }
        for (const Item& it : next) consider(it.val, it.charge);
        frontier = std::move(next);
    }
    return out;
}

// graded corpus: sphere monomials of matching charge tensored with each e_I
inline std::vector<FormElement> form_corpus(const AlgebraContext& ctx, int twist, int max_zdeg) {
    const int ell = ctx.ell();
    std::vector<FormElement> out;
    for (uint32_t mask = 0; mask < (1u << ell); ++mask) {
        int k = __builtin_popcount(mask);
        int delta = (mask >> (ell - 1)) & 1u;
        int charge = twist - k - delta;
        for (const NCPoly& m : sphere_monomials(ctx, max_zdeg, charge)) {
            FormElement w(ctx.rank(), twist);
            w.add_comp(mask, m);
            if (!w.is_zero()) out.push_back(std::move(w));
        }
    }
    return out;
}

// ---- the gradient commutation suite ----------------------------------------

inline std::vector<CheckResult> verify_gradient_suite(const AlgebraContext& ctx) {
    std::vector<CheckResult> out;
    const int n = ctx.rank(), ell = ctx.ell();
    auto zero_check = [&](std::string id, std::string law, const NCPoly& v) {
        out.push_back(CheckResult::of(std::move(id), std::move(law), v.is_zero(),
                                      v.is_zero() ? "" : to_string(v)));
    };

    // gradient values on the row generators
    for (int i = 1; i <= ell; ++i)
        for (int r = 1; r <= n; ++r) {
            zero_check("nabla/z/i" + std::to_string(i) + "r" + std::to_string(r),
                       "nabla_i(z_r) = 0", nabla_i(ctx, ctx.z(r), i));
            NCPoly diff = nabla_i(ctx, ctx.z_star(r), i) -
                          neg_q_power(i - n) * ctx.star(ctx.gen(i, r));
            zero_check("nabla/zstar/i" + std::to_string(i) + "r" + std::to_string(r),
                       "nabla_i(z_r*) = (-q)^{i-N} u_ir*", diff);
        }

    // z_s nabla_i(z_r*) = nabla_i(z_r*) z_s for s != r
    for (int i = 1; i <= ell; ++i)
        for (int s = 1; s <= n; ++s)
            for (int r = 1; r <= n; ++r) {
                std::string suffix = "/i" + std::to_string(i) + "s" + std::to_string(s) + "r" +
                                     std::to_string(r);
                if (s == r) {
                    out.push_back(CheckResult::skipped("grad/z-commute" + suffix,
                                                       "z_s nabla_i(z_r*) = nabla_i(z_r*) z_s",
                                                       "hypothesis s != r"));
                    continue;
                }
                NCPoly g = nabla_i(ctx, ctx.z_star(r), i);
                zero_check("grad/z-commute" + suffix, "z_s nabla_i(z_r*) = nabla_i(z_r*) z_s",
                           ctx.mul(ctx.z(s), g) - ctx.mul(g, ctx.z(s)));
            }

    // s < r: z_s* nabla_i(z_r*) = nabla_i(z_r*) z_s*, x_s nabla_i(x_r) = q^2 nabla_i(x_r) x_s
    for (int i = 1; i <= ell; ++i)
        for (int s = 1; s <= n; ++s)
            for (int r = s + 1; r <= n; ++r) {
                std::string suffix = "/i" + std::to_string(i) + "s" + std::to_string(s) + "r" +
                                     std::to_string(r);
                NCPoly g = nabla_i(ctx, ctx.z_star(r), i);
                zero_check("grad/zstar-commute" + suffix,
                           "z_s* nabla_i(z_r*) = nabla_i(z_r*) z_s*",
                           ctx.mul(ctx.z_star(s), g) - ctx.mul(g, ctx.z_star(s)));
                NCPoly gx = nabla_i(ctx, ctx.x_elem(r), i);
                zero_check("grad/x-exchange" + suffix, "x_s nabla_i(x_r) = q^2 nabla_i(x_r) x_s",
                           ctx.mul(ctx.x_elem(s), gx) -
                               ScalarQ::q_pow(2) * ctx.mul(gx, ctx.x_elem(s)));
            }

    // s <= r: x_s nabla_i(y_r) = q^2 nabla_i(y_r) x_s and the y_s variant
    for (int i = 1; i <= ell; ++i)
        for (int r = 1; r <= n; ++r)
            for (int s = 1; s <= r; ++s) {
                std::string suffix = "/i" + std::to_string(i) + "s" + std::to_string(s) + "r" +
                                     std::to_string(r);
                NCPoly gy = nabla_i(ctx, ctx.y_elem(r), i);
                zero_check("grad/xy-exchange" + suffix, "x_s nabla_i(y_r) = q^2 nabla_i(y_r) x_s",
                           ctx.mul(ctx.x_elem(s), gy) -
                               ScalarQ::q_pow(2) * ctx.mul(gy, ctx.x_elem(s)));
                zero_check("grad/yy-exchange" + suffix, "y_s nabla_i(y_r) = q^2 nabla_i(y_r) y_s",
                           ctx.mul(ctx.y_elem(s), gy) -
                               ScalarQ::q_pow(2) * ctx.mul(gy, ctx.y_elem(s)));
            }

    // closed form of nabla_i(y_ell)
    NCPoly y = ctx.y_top();
    for (int i = 1; i <= ell; ++i) {
        NCPoly expected = -ScalarQ::s_pow(-3) * neg_q_power(i - n) *
                          ctx.mul(ctx.star(ctx.gen(i, n)), ctx.z(n));
        zero_check("grad/y-closed-form/i" + std::to_string(i),
                   "nabla_i(y_l) = -q^{-3/2} (-q)^{i-N} u_iN* z_N", nabla_i(ctx, y, i) - expected);
    }

    // sum_i nabla_i(y_l)* nabla_i(y_l) = q^-1 y_l (1 - q^2 y_l)
    NCPoly acc(n);
    for (int i = 1; i <= ell; ++i) {
        NCPoly g = nabla_i(ctx, y, i);
        acc += ctx.mul(ctx.star(g), g);
    }
    NCPoly rhs = ScalarQ::q_pow(-1) * ctx.mul(y, ctx.reduce(ctx.unit() - ScalarQ::q_pow(2) * y));
    zero_check("grad/squared-gradient", "nabla(y_l)* nabla(y_l) = q^-1 y_l (1 - q^2 y_l)",
               ctx.reduce(acc - rhs));

    return out;
}

}  // namespace qflag
