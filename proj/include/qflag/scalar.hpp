#pragma once

// Exact scalar arithmetic for the deformed coordinate algebras: the field of
// rational functions over Q in one formal variable s, with the convention
// q = s^2 (so half-integer powers of q are honest elements).
//
// Canonical form: numerator is a sparse Laurent polynomial in s, denominator
// is a monic true polynomial with nonzero constant term, and the two share no
// factor.  Equality is structural.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qflag {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double rat_to_double(const Rat& r) { return static_cast<double>(r); }

// Sparse Laurent polynomial in s over Q.  Terms sorted by ascending exponent,
// no zero coefficients stored.
class SPoly {
public:
    using Term = std::pair<int, Rat>;

    SPoly() = default;
    explicit SPoly(const Rat& c) {
        if (c != 0) terms_.emplace_back(0, c);
    }
    static SPoly monomial(const Rat& c, int exp) {
        SPoly p;
        if (c != 0) p.terms_.emplace_back(exp, c);
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const {
        return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second == 1;
    }
    bool is_monomial() const { return terms_.size() == 1; }
    // true polynomial (no negative exponents)
    bool is_polynomial() const { return terms_.empty() || terms_.front().first >= 0; }

    int low() const { return terms_.front().first; }    // requires nonzero
    int high() const { return terms_.back().first; }    // requires nonzero
    const Rat& lead_coeff() const { return terms_.back().second; }
    const std::vector<Term>& terms() const { return terms_; }

    Rat coeff(int exp) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), exp,
                                   [](const Term& t, int e) { return t.first < e; });
        if (it != terms_.end() && it->first == exp) return it->second;
        return Rat(0);
    }

    SPoly shifted(int k) const {  // multiply by s^k
        SPoly r = *this;
        for (auto& t : r.terms_) t.first += k;
        return r;
    }

    friend SPoly operator-(const SPoly& a) {
        SPoly r = a;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }

    friend SPoly operator+(const SPoly& a, const SPoly& b) {
        SPoly r;
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        auto ia = a.terms_.begin(), ib = b.terms_.begin();
        while (ia != a.terms_.end() || ib != b.terms_.end()) {
            if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->first < ib->first)) {
                r.terms_.push_back(*ia++);
            } else if (ia == a.terms_.end() || ib->first < ia->first) {
                r.terms_.push_back(*ib++);
            } else {
                Rat c = ia->second + ib->second;
                if (c != 0) r.terms_.emplace_back(ia->first, c);
                ++ia; ++ib;
            }
        }
        return r;
    }
    friend SPoly operator-(const SPoly& a, const SPoly& b) { return a + (-b); }

    friend SPoly operator*(const SPoly& a, const SPoly& b) {
        if (a.is_zero() || b.is_zero()) return SPoly();
        if (a.is_monomial()) {
            SPoly r = b.shifted(a.terms_[0].first);
            for (auto& t : r.terms_) t.second *= a.terms_[0].second;
            return r;
        }
        std::map<int, Rat> acc;
        for (const auto& ta : a.terms_)
            for (const auto& tb : b.terms_) acc[ta.first + tb.first] += ta.second * tb.second;
        SPoly r;
        for (auto& kv : acc)
            if (kv.second != 0) r.terms_.emplace_back(kv.first, kv.second);
        return r;
    }

    SPoly& operator+=(const SPoly& o) { *this = *this + o; return *this; }
    SPoly& operator-=(const SPoly& o) { *this = *this - o; return *this; }
    SPoly& operator*=(const SPoly& o) { *this = *this * o; return *this; }

    friend bool operator==(const SPoly& a, const SPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const SPoly& a, const SPoly& b) { return !(a == b); }
    friend bool operator<(const SPoly& a, const SPoly& b) { return a.terms_ < b.terms_; }

    void scale(const Rat& c) {
        if (c == 0) { terms_.clear(); return; }
        for (auto& t : terms_) t.second *= c;
    }

    // Division with remainder among true polynomials; divisor nonzero.
    static void divmod(const SPoly& a, const SPoly& b, SPoly& quo, SPoly& rem) {
        quo = SPoly();
        rem = a;
        const int db = b.high();
        while (!rem.is_zero() && rem.high() >= db) {
            Rat c = rem.lead_coeff() / b.lead_coeff();
            int e = rem.high() - db;
            SPoly m = SPoly::monomial(c, e);
            quo += m;
            rem -= m * b;
        }
    }

    // Monic gcd of two true polynomials (both with valuation 0 in intended use).
    static SPoly gcd(SPoly a, SPoly b) {
        while (!b.is_zero()) {
            SPoly q, r;
            divmod(a, b, q, r);
            a = std::move(b);
            b = std::move(r);
        }
        if (a.is_zero()) return a;
        Rat lc = a.lead_coeff();
        a.scale(Rat(1) / lc);
        return a;
    }

    double eval_double(double s0) const {
        double acc = 0;
        for (const auto& t : terms_) acc += rat_to_double(t.second) * std::pow(s0, t.first);
        return acc;
    }

    Rat eval_rat(const Rat& s0) const {
        Rat acc = 0;
        for (const auto& t : terms_) {
            Rat p = 1;
            int e = t.first >= 0 ? t.first : -t.first;
            for (int k = 0; k < e; ++k) p *= s0;
            if (t.first < 0) p = Rat(1) / p;
            acc += t.second * p;
        }
        return acc;
    }

    bool even_exponents_only() const {
        for (const auto& t : terms_)
            if (t.first % 2 != 0) return false;
        return true;
    }

    // Substitute q for s^2; requires even exponents only.
    Rat eval_q_rat(const Rat& q0) const {
        Rat acc = 0;
        for (const auto& t : terms_) {
            if (t.first % 2 != 0) throw std::domain_error("eval_q_rat: odd power of s");
            Rat p = 1;
            int e = t.first / 2;
            for (int k = 0; k < std::abs(e); ++k) p *= q0;
            if (e < 0) p = Rat(1) / p;
            acc += t.second * p;
        }
        return acc;
    }

private:
    std::vector<Term> terms_;
};

// Rational function in s over Q.
class ScalarQ {
public:
    ScalarQ() : den_(Rat(1)) {}
    ScalarQ(int v) : num_(Rat(v)), den_(Rat(1)) {}
    explicit ScalarQ(const Rat& v) : num_(v), den_(Rat(1)) {}
    ScalarQ(SPoly num, SPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static ScalarQ s_pow(int k) { return ScalarQ(SPoly::monomial(Rat(1), k), SPoly(Rat(1))); }
    static ScalarQ q_pow(int k) { return s_pow(2 * k); }
    static ScalarQ q() { return q_pow(1); }
    static ScalarQ s() { return s_pow(1); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_rational() const { return den_.is_one() && (num_.is_zero() || (num_.is_monomial() && num_.low() == 0)); }
    Rat rational_value() const { return num_.is_zero() ? Rat(0) : num_.coeff(0); }

    const SPoly& num() const { return num_; }
    const SPoly& den() const { return den_; }

    friend ScalarQ operator-(const ScalarQ& a) {
        ScalarQ r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend ScalarQ operator+(const ScalarQ& a, const ScalarQ& b) {
        if (a.den_ == b.den_) return ScalarQ(a.num_ + b.num_, a.den_);
        return ScalarQ(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend ScalarQ operator-(const ScalarQ& a, const ScalarQ& b) { return a + (-b); }
    friend ScalarQ operator*(const ScalarQ& a, const ScalarQ& b) {
        return ScalarQ(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend ScalarQ operator/(const ScalarQ& a, const ScalarQ& b) {
        if (b.is_zero()) throw std::domain_error("ScalarQ: division by zero");
        return ScalarQ(a.num_ * b.den_, a.den_ * b.num_);
    }
    ScalarQ& operator+=(const ScalarQ& o) { *this = *this + o; return *this; }
    ScalarQ& operator-=(const ScalarQ& o) { *this = *this - o; return *this; }
    ScalarQ& operator*=(const ScalarQ& o) { *this = *this * o; return *this; }
    ScalarQ& operator/=(const ScalarQ& o) { *this = *this / o; return *this; }

    friend bool operator==(const ScalarQ& a, const ScalarQ& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const ScalarQ& a, const ScalarQ& b) { return !(a == b); }

    ScalarQ inverse() const {
        if (is_zero()) throw std::domain_error("ScalarQ: inverse of zero");
        return ScalarQ(den_, num_);
    }

    double eval_double(double s0) const {
        double d = den_.eval_double(s0);
        if (d == 0) throw std::domain_error("ScalarQ: denominator vanishes");
        return num_.eval_double(s0) / d;
    }
    Rat eval_rat(const Rat& s0) const {
        Rat d = den_.eval_rat(s0);
        if (d == 0) throw std::domain_error("ScalarQ: denominator vanishes");
        return num_.eval_rat(s0) / d;
    }
    // evaluation at rational q (requires element of Q(q), i.e. even s-powers)
    Rat eval_q_rat(const Rat& q0) const {
        Rat d = den_.eval_q_rat(q0);
        if (d == 0) throw std::domain_error("ScalarQ: denominator vanishes");
        return num_.eval_q_rat(q0) / d;
    }

private:
    void normalize() {
        if (den_.is_zero()) throw std::domain_error("ScalarQ: zero denominator");
        if (num_.is_zero()) { den_ = SPoly(Rat(1)); return; }
        // pull the s-power out of the denominator
        int v = den_.low();
        if (v != 0) {
            den_ = den_.shifted(-v);
            num_ = num_.shifted(-v);
        }
        // monic denominator
        if (!den_.is_one()) {
            Rat lc = den_.lead_coeff();
            if (lc != 1) {
                den_.scale(Rat(1) / lc);
                num_.scale(Rat(1) / lc);
            }
        }
        if (den_.is_one()) return;
        // cancel common factor (denominator has nonzero constant term here)
        SPoly nshift = num_.shifted(-num_.low());
        SPoly g = SPoly::gcd(nshift, den_);
        if (!g.is_zero() && g.high() > 0) {
            SPoly q1, r1, q2, r2;
            SPoly::divmod(nshift, g, q1, r1);
            SPoly::divmod(den_, g, q2, r2);
            num_ = q1.shifted(num_.low());
            den_ = q2;
        }
    }

    SPoly num_;
    SPoly den_;
};

inline ScalarQ q_power(int k) { return ScalarQ::q_pow(k); }
inline ScalarQ s_power(int k) { return ScalarQ::s_pow(k); }
// (-q)^k, k possibly negative
inline ScalarQ neg_q_power(int k) {
    ScalarQ r = ScalarQ::q_pow(k);
    if (k % 2 != 0) r = -r;
    return r;
}

// ---- printing ------------------------------------------------------------

// One Laurent-polynomial term as a factor string, even s-powers rendered as
// q-powers.
namespace detail {
inline std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}
inline void append_power(std::ostringstream& os, int exp) {
    if (exp == 0) return;
    if (exp % 2 == 0) {
        os << "q";
        if (exp != 2) os << "^" << exp / 2;
    } else {
        os << "s";
        if (exp != 1) os << "^" << exp;
    }
}
}  // namespace detail

inline std::string to_string(const SPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    // print highest power first
    const auto& ts = p.terms();
    for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
        Rat c = it->second;
        if (!first) {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        } else if (c < 0) {
            os << "-";
            c = -c;
        }
        first = false;
        if (it->first == 0) {
            os << detail::rat_str(c);
        } else {
            if (c != 1) os << detail::rat_str(c) << "*";
            detail::append_power(os, it->first);
        }
    }
    return os.str();
}

// Sparse "c*s^k" rendering used by the JSON serialization.
inline std::string to_sparse_s_string(const SPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : p.terms()) {
        if (!first) os << " + ";
        first = false;
        os << detail::rat_str(t.second) << "*s^" << t.first;
    }
    return os.str();
}

// Render a scalar; `as_factor` wraps sums in parentheses so the result can be
// glued onto a monomial with '*'.
inline std::string to_string(const ScalarQ& x, bool as_factor = false) {
    if (x.is_zero()) return "0";
    std::string num = to_string(x.num());
    if (x.den().is_one()) {
        if (as_factor && x.num().terms().size() > 1) return "(" + num + ")";
        return num;
    }
    std::string den = to_string(x.den());
    std::string r = "(" + num + ")/(" + den + ")";
    return r;
}

}  // namespace qflag
