#pragma once

// Noncommutative polynomials in the N^2 generators u_ij: finite linear
// combinations of words with ScalarQ coefficients.  A word is encoded as a
// byte string, one letter per byte, letter (i,j) packed as (i<<4)|j with
// 1-based indices.  Byte order equals the row-major order on generators, so
// plain string comparison is the lexicographic order and a word is normal
// exactly when its bytes are nondecreasing.

#include <map>
#include <string>
#include <vector>

#include "scalar.hpp"

namespace qflag {

using Word = std::string;

inline char make_letter(int i, int j) { return static_cast<char>((i << 4) | j); }
inline int letter_row(char c) { return (static_cast<unsigned char>(c) >> 4) & 0xF; }
inline int letter_col(char c) { return static_cast<unsigned char>(c) & 0xF; }

inline bool word_is_normal(const Word& w) {
    for (size_t k = 1; k < w.size(); ++k)
        if (static_cast<unsigned char>(w[k - 1]) > static_cast<unsigned char>(w[k])) return false;
    return true;
}

// degree first, then row-major lexicographic
struct DegLexLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

struct NCPoly {
    int n = 0;  // ambient rank
    std::map<Word, ScalarQ, DegLexLess> terms;

    NCPoly() = default;
    explicit NCPoly(int rank) : n(rank) {}

    static NCPoly zero(int rank) { return NCPoly(rank); }
    static NCPoly unit(int rank) {
        NCPoly p(rank);
        p.terms[Word()] = ScalarQ(1);
        return p;
    }
    static NCPoly scalar(int rank, const ScalarQ& c) {
        NCPoly p(rank);
        if (!c.is_zero()) p.terms[Word()] = c;
        return p;
    }
    static NCPoly generator(int rank, int i, int j) {
        NCPoly p(rank);
        p.terms[Word(1, make_letter(i, j))] = ScalarQ(1);
        return p;
    }
    static NCPoly monomial(int rank, const Word& w, const ScalarQ& c) {
        NCPoly p(rank);
        if (!c.is_zero()) p.terms[w] = c;
        return p;
    }

    bool is_zero() const { return terms.empty(); }

    size_t degree() const { return terms.empty() ? 0 : terms.rbegin()->first.size(); }

    void add_term(const Word& w, const ScalarQ& c) {
        if (c.is_zero()) return;
        auto it = terms.find(w);
        if (it == terms.end()) {
            terms.emplace(w, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    NCPoly& operator+=(const NCPoly& o) {
        for (const auto& kv : o.terms) add_term(kv.first, kv.second);
        return *this;
    }
    NCPoly& operator-=(const NCPoly& o) {
        for (const auto& kv : o.terms) add_term(kv.first, -kv.second);
        return *this;
    }
    friend NCPoly operator+(NCPoly a, const NCPoly& b) { a += b; return a; }
    friend NCPoly operator-(NCPoly a, const NCPoly& b) { a -= b; return a; }
    friend NCPoly operator-(const NCPoly& a) {
        NCPoly r(a.n);
        for (const auto& kv : a.terms) r.terms.emplace(kv.first, -kv.second);
        return r;
    }

    friend NCPoly operator*(const ScalarQ& c, const NCPoly& p) {
        NCPoly r(p.n);
        if (c.is_zero()) return r;
        for (const auto& kv : p.terms) r.terms.emplace(kv.first, c * kv.second);
        return r;
    }

    // free product, no reduction
    friend NCPoly operator*(const NCPoly& a, const NCPoly& b) {
        NCPoly r(a.n);
        for (const auto& ta : a.terms)
            for (const auto& tb : b.terms) r.add_term(ta.first + tb.first, ta.second * tb.second);
        return r;
    }

    friend bool operator==(const NCPoly& a, const NCPoly& b) {
        return a.n == b.n && a.terms == b.terms;
    }
    friend bool operator!=(const NCPoly& a, const NCPoly& b) { return !(a == b); }
};

inline std::string to_string(const Word& w) {
    if (w.empty()) return "1";
    std::string r;
    for (size_t k = 0; k < w.size(); ++k) {
        if (k) r += "*";
        r += "u[" + std::to_string(letter_row(w[k])) + "," + std::to_string(letter_col(w[k])) + "]";
    }
    return r;
}

inline std::string to_string(const NCPoly& p) {
    if (p.is_zero()) return "0";
    std::string r;
    bool first = true;
    for (const auto& kv : p.terms) {
        std::string cs = to_string(kv.second, /*as_factor=*/true);
        bool neg = cs.size() > 0 && cs[0] == '-';
        if (first) {
            if (neg) { r += "-"; cs = cs.substr(1); }
        } else {
            r += neg ? " - " : " + ";
            if (neg) cs = cs.substr(1);
        }
        first = false;
        if (kv.first.empty()) {
            r += cs;
        } else if (cs == "1") {
            r += to_string(kv.first);
        } else {
            r += cs + "*" + to_string(kv.first);
        }
    }
    return r;
}

// Formal sum of tensors of basis words (legs kept reduced by producers).
struct TensorPoly {
    int n = 0;
    std::map<std::pair<Word, Word>, ScalarQ> terms;

    explicit TensorPoly(int rank = 0) : n(rank) {}

    void add_term(const Word& a, const Word& b, const ScalarQ& c) {
        if (c.is_zero()) return;
        auto key = std::make_pair(a, b);
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms.emplace(key, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    friend bool operator==(const TensorPoly& a, const TensorPoly& b) {
        return a.n == b.n && a.terms == b.terms;
    }
    friend bool operator!=(const TensorPoly& a, const TensorPoly& b) { return !(a == b); }
};

}  // namespace qflag
