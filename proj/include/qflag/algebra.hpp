#pragma once

// The coordinate algebra of deformed SU(N) on its normal-word basis:
// quantum minors and cofactors, the star structure (star-letters eliminated
// eagerly through cofactors), Hopf operations, the sphere/projective
// generators, and the rank-2 specials (Haar state, modular automorphism,
// transpose, circle projection).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>
#include <unistd.h>

#include "rewrite.hpp"

namespace qflag {

// When QFLAG_RULE_CACHE names a directory, completed systems are persisted
// there and reloaded instead of re-derived (written via rename, so parallel
// writers stay consistent).
inline RewriteSystem build_rewrite_system(int n, int bound) {
    const char* dir = std::getenv("QFLAG_RULE_CACHE");
    std::string path;
    if (dir && *dir) {
        path = std::string(dir) + "/rules-N" + std::to_string(n) + "-B" +
               std::to_string(bound) + ".txt";
        std::ifstream in(path);
        RewriteSystem rs;
        if (in && RewriteSystem::load(in, n, bound, rs)) return rs;
    }
    RewriteSystem rs = RewriteSystem::complete(n, bound);
    if (!path.empty()) {
        std::string tmp = path + "." + std::to_string(::getpid());
        std::ofstream out(tmp);
        if (out) {
            rs.save(out);
            out.close();
            std::rename(tmp.c_str(), path.c_str());
        }
    }
    return rs;
}


class AlgebraContext {
public:
    AlgebraContext(int n, int degree_bound)
        : n_(n), rs_(build_rewrite_system(n, degree_bound)) {
        // cofactor of each letter: star(u_ij) = (-q)^{j-i} D_{<N>\{i}, <N>\{j}}
        star_letter_.resize(256);
        for (int i = 1; i <= n_; ++i)
            for (int j = 1; j <= n_; ++j) {
                NCPoly cof = neg_q_power(j - i) *
                             quantum_minor(complement(i), complement(j));
                star_letter_[static_cast<unsigned char>(make_letter(i, j))] = reduce(cof);
            }
    }

    int rank() const { return n_; }
    int ell() const { return n_ - 1; }
    int bound() const { return rs_.bound(); }
    const RewriteSystem& rewrite_system() const { return rs_; }

    NCPoly reduce(const NCPoly& p, Strategy strat = Strategy::LeftOutermost) const {
        return rs_.reduce(p, strat);
    }
    NCPoly mul(const NCPoly& a, const NCPoly& b) const { return rs_.reduce(a * b); }
    NCPoly mul(const NCPoly& a, const NCPoly& b, const NCPoly& c) const {
        return mul(mul(a, b), c);
    }
    NCPoly pow(const NCPoly& a, int k) const {
        NCPoly r = NCPoly::unit(n_);
        for (int t = 0; t < k; ++t) r = mul(r, a);
        return r;
    }
    NCPoly gen(int i, int j) const { return NCPoly::generator(n_, i, j); }
    NCPoly unit() const { return NCPoly::unit(n_); }

    // ---- quantum minors and star --------------------------------------

    // D_IJ = sum over permutations sigma of (-q)^{inv(sigma)}
    //        u_{i_sigma(1) j_1} ... u_{i_sigma(n) j_n}, reduced
    NCPoly quantum_minor(std::vector<int> I, std::vector<int> J) const {
        if (I.size() != J.size() || I.empty())
            throw std::invalid_argument("quantum_minor: index sets must have equal nonzero size");
        std::sort(I.begin(), I.end());
        std::sort(J.begin(), J.end());
        const int m = static_cast<int>(I.size());
        std::vector<int> perm(m);
        std::iota(perm.begin(), perm.end(), 0);
        NCPoly acc(n_);
        do {
            int inv = 0;
            for (int a = 0; a < m; ++a)
                for (int b = a + 1; b < m; ++b)
                    if (perm[a] > perm[b]) ++inv;
            Word w;
            for (int col = 0; col < m; ++col) w += make_letter(I[perm[col]], J[col]);
            acc.add_term(w, neg_q_power(inv));
        } while (std::next_permutation(perm.begin(), perm.end()));
        return reduce(acc);
    }

    const NCPoly& star_letter(int i, int j) const {
        return star_letter_[static_cast<unsigned char>(make_letter(i, j))];
    }

    // anti-multiplicative involution; coefficients are real rational
    // functions of s, so conjugation is the identity on scalars
    NCPoly star(const NCPoly& p) const {
        NCPoly acc(n_);
        for (const auto& kv : p.terms) {
            NCPoly prod = NCPoly::unit(n_);
            for (auto it = kv.first.rbegin(); it != kv.first.rend(); ++it)
                prod = mul(prod, star_letter_[static_cast<unsigned char>(*it)]);
            acc += kv.second * prod;
        }
        return acc;
    }

    // S(u_ij) = cofactor of (i,j) = star(u_ji); anti-homomorphic extension
    NCPoly antipode(const NCPoly& p) const {
        NCPoly acc(n_);
        for (const auto& kv : p.terms) {
            NCPoly prod = NCPoly::unit(n_);
            for (auto it = kv.first.rbegin(); it != kv.first.rend(); ++it) {
                int i = letter_row(*it), j = letter_col(*it);
                prod = mul(prod, star_letter_[static_cast<unsigned char>(make_letter(j, i))]);
            }
            acc += kv.second * prod;
        }
        return acc;
    }

    ScalarQ counit(const NCPoly& p) const {
        ScalarQ acc(0);
        for (const auto& kv : p.terms) {
            bool diag = true;
            for (char c : kv.first)
                if (letter_row(c) != letter_col(c)) { diag = false; break; }
            if (diag) acc += kv.second;
        }
        return acc;
    }

    // Delta(u_ij) = sum_k u_ik (x) u_kj, extended multiplicatively; legs reduced
    TensorPoly coproduct(const NCPoly& p) const {
        TensorPoly out(n_);
        for (const auto& kv : p.terms) {
            const Word& w = kv.first;
            const size_t d = w.size();
            // iterate middle indices
            std::vector<int> k(d, 1);
            while (true) {
                Word left, right;
                for (size_t t = 0; t < d; ++t) {
                    left += make_letter(letter_row(w[t]), k[t]);
                    right += make_letter(k[t], letter_col(w[t]));
                }
                NCPoly lred = reduce(NCPoly::monomial(n_, left, ScalarQ(1)));
                NCPoly rred = reduce(NCPoly::monomial(n_, right, ScalarQ(1)));
                for (const auto& lt : lred.terms)
                    for (const auto& rt : rred.terms)
                        out.add_term(lt.first, rt.first, kv.second * lt.second * rt.second);
                size_t t = 0;
                while (t < d && k[t] == n_) { k[t] = 1; ++t; }
                if (t == d) break;
                ++k[t];
            }
        }
        return out;
    }

    // ---- sphere and projective generators ------------------------------

    NCPoly z(int i) const {
        check_index(i);
        return gen(n_, i);
    }
    NCPoly z_star(int i) const {
        check_index(i);
        return star_letter(n_, i);
    }
    NCPoly x_elem(int i) const {
        check_index(i);
        return mul(z(i), z_star(i));
    }
    NCPoly y_elem(int j) const {
        check_index(j);
        NCPoly acc(n_);
        for (int i = 1; i <= j; ++i) acc += x_elem(i);
        return reduce(acc);
    }
    NCPoly y_top() const { return y_elem(ell()); }

    enum class SphereKind { Z, ZStar, X, Y };
    NCPoly sphere_element(SphereKind kind, int index) const {
        switch (kind) {
            case SphereKind::Z: return z(index);
            case SphereKind::ZStar: return z_star(index);
            case SphereKind::X: return x_elem(index);
            case SphereKind::Y: return y_elem(index);
        }
        throw std::invalid_argument("sphere_element: bad kind");
    }

    // ---- rank-2 specials ------------------------------------------------

    // Closed-form Haar state on the normal basis.  With the rank-2 letter
    // dictionary u11 = a*, u12 = -q b, u21 = b*, u22 = a, a normal word
    // u11^al u12^be u21^ga u22^de evaluates through
    // h(a^k b^i (b*)^j) = delta_ij delta_k0 (1-q^2)/(1-q^{2(1+j)}).
    ScalarQ haar_n2(const NCPoly& p) const {
        if (n_ != 2) throw std::domain_error("haar_n2: rank must be 2");
        ScalarQ acc(0);
        for (const auto& kv : p.terms) {
            int al = 0, be = 0, ga = 0, de = 0;
            for (char c : kv.first) {
                int i = letter_row(c), j = letter_col(c);
                if (i == 1 && j == 1) ++al;
                else if (i == 1 && j == 2) ++be;
                else if (i == 2 && j == 1) ++ga;
                else ++de;
            }
            if (al != de || be != ga) continue;
            // (a*)^al a^al = prod_{j=1..al} (1 - q^{2j} b b*)
            std::vector<ScalarQ> prod{ScalarQ(1)};  // coefficients in t = b b*
            for (int j = 1; j <= al; ++j) {
                std::vector<ScalarQ> next(prod.size() + 1, ScalarQ(0));
                for (size_t m = 0; m < prod.size(); ++m) {
                    next[m] += prod[m];
                    next[m + 1] -= ScalarQ::q_pow(2 * j) * prod[m];
                }
                prod = std::move(next);
            }
            ScalarQ val(0);
            const ScalarQ one(1), qsq = ScalarQ::q_pow(2);
            for (size_t m = 0; m < prod.size(); ++m) {
                int j = static_cast<int>(m) + be;
                val += prod[m] * (one - qsq) / (one - ScalarQ::q_pow(2 * (1 + j)));
            }
            ScalarQ pref = neg_q_power(be) * ScalarQ::q_pow(2 * al * be);
            acc += kv.second * pref * val;
        }
        return acc;
    }

    // theta(u_ij) = q^{2(i+j-N-1)} u_ij, multiplicative
    NCPoly modular_theta(const NCPoly& p) const { return theta_pow(p, 1); }
    NCPoly modular_theta_inv(const NCPoly& p) const { return theta_pow(p, -1); }

    // T(u_ij) = q^{j-i} u_ji, algebra automorphism; rank 2 only
    NCPoly transpose_n2(const NCPoly& p) const {
        if (n_ != 2) throw std::domain_error("transpose_n2: rank must be 2");
        NCPoly acc(n_);
        for (const auto& kv : p.terms) {
            Word w;
            int e = 0;
            for (char c : kv.first) {
                int i = letter_row(c), j = letter_col(c);
                e += j - i;
                w += make_letter(j, i);
            }
            acc.add_term(w, kv.second * ScalarQ::q_pow(e));
        }
        return reduce(acc);
    }

    // Phi into rank N-1: u_ij fixed for i,j < N, last row/column to delta_ij
    NCPoly phi_project(const NCPoly& p, const AlgebraContext& lower) const {
        if (n_ < 3) throw std::domain_error("phi_project: rank must be >= 3");
        if (lower.rank() != n_ - 1)
            throw std::invalid_argument("phi_project: lower context of wrong rank");
        NCPoly acc(n_ - 1);
        for (const auto& kv : p.terms) {
            Word w;
            bool killed = false;
            for (char c : kv.first) {
                int i = letter_row(c), j = letter_col(c);
                if (i < n_ && j < n_) {
                    w += make_letter(i, j);
                } else if (!(i == n_ && j == n_)) {
                    killed = true;
                    break;
                }
            }
            if (!killed) acc.add_term(w, kv.second);
        }
        return lower.reduce(acc);
    }

    // Phi at rank 2 lands in Laurent polynomials on the circle:
    // u11 -> w, u22 -> w^-1, off-diagonal -> 0
    std::map<int, ScalarQ> phi_circle(const NCPoly& p) const {
        if (n_ != 2) throw std::domain_error("phi_circle: rank must be 2");
        std::map<int, ScalarQ> acc;
        for (const auto& kv : p.terms) {
            int pow = 0;
            bool killed = false;
            for (char c : kv.first) {
                int i = letter_row(c), j = letter_col(c);
                if (i != j) { killed = true; break; }
                pow += (i == 1) ? 1 : -1;
            }
            if (killed) continue;
            acc[pow] += kv.second;
            if (acc[pow].is_zero()) acc.erase(pow);
        }
        return acc;
    }

    // Haar state after Phi, evaluated on one normal word.
    ScalarQ haar_phi_word(const Word& w, const AlgebraContext* lower) const {
        if (n_ == 2) {
            // circle Haar picks the w^0 coefficient
            int pow = 0;
            for (char c : w) {
                int i = letter_row(c), j = letter_col(c);
                if (i != j) return ScalarQ(0);
                pow += (i == 1) ? 1 : -1;
            }
            return pow == 0 ? ScalarQ(1) : ScalarQ(0);
        }
        if (n_ != 3 || lower == nullptr || lower->rank() != 2)
            throw std::domain_error("haar_phi_word: supported at rank 2 and 3 only");
        NCPoly img = phi_project(NCPoly::monomial(n_, w, ScalarQ(1)), *lower);
        return lower->haar_n2(img);
    }

    // conditional expectation E = (1 (x) h Phi) Delta, ranks 2 and 3
    NCPoly cond_expectation(const NCPoly& p, const AlgebraContext* lower = nullptr) const {
        if (n_ != 2 && n_ != 3)
            throw std::domain_error("cond_expectation: supported at rank 2 and 3 only");
        TensorPoly cp = coproduct(p);
        NCPoly acc(n_);
        for (const auto& kv : cp.terms) {
            ScalarQ weight = haar_phi_word(kv.first.second, lower);
            if (weight.is_zero()) continue;
            acc.add_term(kv.first.first, kv.second * weight);
        }
        return acc;
    }

private:
    std::vector<int> complement(int k) const {
        std::vector<int> r;
        for (int t = 1; t <= n_; ++t)
            if (t != k) r.push_back(t);
        return r;
    }
    void check_index(int i) const {
        if (i < 1 || i > n_) throw std::out_of_range("generator index out of range");
    }
    NCPoly theta_pow(const NCPoly& p, int sign) const {
        NCPoly acc(n_);
        for (const auto& kv : p.terms) {
            int e = 0;
            for (char c : kv.first) e += 2 * (letter_row(c) + letter_col(c) - n_ - 1);
            acc.add_term(kv.first, kv.second * ScalarQ::q_pow(sign * e));
        }
        return acc;
    }

    int n_;
    RewriteSystem rs_;
    std::vector<NCPoly> star_letter_;
};

// Shared per-rank contexts with the default completion bounds (8 at rank 2,
// 9 at rank 3 where the k<=3 product identities reach degree nine).
inline const AlgebraContext& get_context(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<AlgebraContext>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto it = registry.find(n);
    if (it == registry.end()) {
        int bound = n <= 2 ? 8 : 9;
        it = registry.emplace(n, std::make_unique<AlgebraContext>(n, bound)).first;
    }
    return *it->second;
}

}  // namespace qflag
