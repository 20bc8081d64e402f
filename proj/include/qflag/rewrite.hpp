#pragma once

// Rewriting the free algebra on the u_ij onto its normal-word basis.
//
// The seed rules orient the quadratic exchange relations (every descending
// adjacent pair rewrites to ascending words) together with the determinant
// relation, oriented on the diagonal word u_11 u_22 ... u_NN; that word is
// not the degree-lex maximum of the relation, but it is the one the normal
// basis must eliminate.  Overlap ambiguities are then resolved up to a
// degree bound, adding each nontrivial reduced S-difference as a new rule.
// No rule increases word degree; at fixed degree the quadratic rules
// strictly descend the lexicographic order while the determinant family
// strictly reduces the words carrying the whole diagonal multiset.
// Canonicity of normal forms holds up to the completion bound and is
// exercised by the confluence smoke test.

#include <deque>
#include <memory>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "ncpoly.hpp"

namespace qflag {

struct BoundExceeded : std::runtime_error {
    explicit BoundExceeded(const std::string& m) : std::runtime_error(m) {}
};
struct CompletionFailure : std::runtime_error {
    explicit CompletionFailure(const std::string& m) : std::runtime_error(m) {}
};

enum class Strategy { LeftOutermost, RightInnermost };

class RewriteSystem {
public:
    RewriteSystem() = default;

    int rank() const { return n_; }
    int bound() const { return bound_; }
    size_t rule_count() const { return rules_.size(); }

    // Oriented quadratic rules and determinant rule, then overlap completion
    // up to degree_bound.
    static RewriteSystem complete(int n, int degree_bound, size_t rule_cap = 20000) {
        if (n < 2) throw std::invalid_argument("rank must be >= 2");
        if (degree_bound < 2) throw std::invalid_argument("degree bound must be >= 2");
        RewriteSystem rs;
        rs.n_ = n;
        rs.bound_ = degree_bound;
        rs.seed_quadratic_rules();
        rs.add_determinant_rule();
        rs.run_completion(rule_cap);
        return rs;
    }

    bool word_reducible(const Word& w) const {
        return find_redex(w, Strategy::LeftOutermost).first >= 0;
    }

    NCPoly reduce(const NCPoly& p, Strategy strat = Strategy::LeftOutermost) const {
        if (p.degree() > static_cast<size_t>(bound_))
            throw BoundExceeded("input degree " + std::to_string(p.degree()) +
                                " exceeds completion bound " + std::to_string(bound_));
        NCPoly result(n_);
        std::map<Word, ScalarQ, DegLexLess> work(p.terms.begin(), p.terms.end());
        while (!work.empty()) {
            auto it = std::prev(work.end());
            Word w = it->first;
            ScalarQ c = it->second;
            work.erase(it);
            if (c.is_zero()) continue;
            auto [pos, rule_ptr] = find_redex(w, strat);
            if (pos < 0) {
                result.add_term(w, c);
                continue;
            }
            const Rule& rule = *rule_ptr;
            Word prefix = w.substr(0, pos);
            Word suffix = w.substr(pos + rule.lhs.size());
            for (const auto& kv : rule.rhs.terms) {
                Word nw = prefix + kv.first + suffix;
                ScalarQ nc = c * kv.second;
                auto rit = result.terms.find(nw);
                if (rit != result.terms.end()) {
                    // already known irreducible
                    rit->second += nc;
                    if (rit->second.is_zero()) result.terms.erase(rit);
                    continue;
                }
                auto wit = work.find(nw);
                if (wit == work.end()) {
                    work.emplace(nw, nc);
                } else {
                    wit->second += nc;
                    if (wit->second.is_zero()) work.erase(wit);
                }
            }
        }
        return result;
    }

    // raw product, then normal form
    NCPoly mul(const NCPoly& a, const NCPoly& b, Strategy strat = Strategy::LeftOutermost) const {
        return reduce(a * b, strat);
    }

    // leading words of all rules, for introspection/tests
    std::vector<Word> rule_leads() const {
        std::vector<Word> r;
        r.reserve(rules_.size());
        for (const auto& rule : rules_) r.push_back(rule.lhs);
        return r;
    }

    // ---- plain-text persistence (derivation cache) -------------------------

    void save(std::ostream& os) const {
        os << "qflag-rules 1 " << n_ << ' ' << bound_ << ' ' << rules_.size() << '\n';
        auto put_poly = [&os](const SPoly& p) {
            os << ' ' << p.terms().size();
            for (const auto& t : p.terms()) os << ' ' << t.first << ' ' << t.second;
        };
        for (const Rule& r : rules_) {
            os << r.lhs.size();
            for (char c : r.lhs) os << ' ' << static_cast<int>(static_cast<unsigned char>(c));
            os << ' ' << r.rhs.terms.size() << '\n';
            for (const auto& kv : r.rhs.terms) {
                os << ' ' << kv.first.size();
                for (char c : kv.first)
                    os << ' ' << static_cast<int>(static_cast<unsigned char>(c));
                put_poly(kv.second.num());
                put_poly(kv.second.den());
                os << '\n';
            }
        }
    }

    // returns false when the stream does not hold a matching system
    static bool load(std::istream& is, int n, int bound, RewriteSystem& out) {
        std::string magic;
        int version = 0, fn = 0, fbound = 0;
        size_t count = 0;
        if (!(is >> magic >> version >> fn >> fbound >> count)) return false;
        if (magic != "qflag-rules" || version != 1 || fn != n || fbound != bound) return false;
        RewriteSystem rs;
        rs.n_ = n;
        rs.bound_ = bound;
        rs.pair_rule_.assign(256 * 256, -1);
        auto get_word = [&is](Word& w) {
            size_t len;
            if (!(is >> len)) return false;
            w.clear();
            for (size_t k = 0; k < len; ++k) {
                int b;
                if (!(is >> b)) return false;
                w += static_cast<char>(b);
            }
            return true;
        };
        auto get_poly = [&is](SPoly& p) {
            size_t terms;
            if (!(is >> terms)) return false;
            p = SPoly();
            for (size_t k = 0; k < terms; ++k) {
                int exp;
                Rat c;
                if (!(is >> exp >> c)) return false;
                p += SPoly::monomial(c, exp);
            }
            return true;
        };
        for (size_t r = 0; r < count; ++r) {
            Word lhs;
            size_t nterms;
            if (!get_word(lhs) || !(is >> nterms)) return false;
            NCPoly rhs(n);
            for (size_t t = 0; t < nterms; ++t) {
                Word w;
                SPoly num, den;
                if (!get_word(w) || !get_poly(num) || !get_poly(den)) return false;
                rhs.add_term(w, ScalarQ(std::move(num), std::move(den)));
            }
            rs.add_rule(std::move(lhs), std::move(rhs));
        }
        out = std::move(rs);
        return true;
    }

private:
    struct Rule {
        Word lhs;
        NCPoly rhs;
    };

    int n_ = 0;
    int bound_ = 0;
    std::vector<Rule> rules_;
    // 2-letter redexes: index by byte pair
    std::vector<int> pair_rule_;  // 256*256, -1 if none
    // longer leads grouped by length
    std::map<size_t, std::unordered_map<Word, int>> long_rules_;

    // leftmost/rightmost redex position per strategy with the matched rule,
    // position -1 if none
    std::pair<int, const Rule*> find_redex(const Word& w, Strategy strat) const {
        if (strat == Strategy::LeftOutermost) {
            for (size_t pos = 0; pos < w.size(); ++pos) {
                // longest first
                for (auto it = long_rules_.rbegin(); it != long_rules_.rend(); ++it) {
                    size_t len = it->first;
                    if (pos + len > w.size()) continue;
                    auto f = it->second.find(w.substr(pos, len));
                    if (f != it->second.end())
                        return {static_cast<int>(pos), &rules_[f->second]};
                }
                if (pos + 2 <= w.size()) {
                    int idx = pair_rule_[pair_key(w[pos], w[pos + 1])];
                    if (idx >= 0) return {static_cast<int>(pos), &rules_[idx]};
                }
            }
        } else {
            for (int pos = static_cast<int>(w.size()) - 2; pos >= 0; --pos) {
                // shortest first
                int idx = pair_rule_[pair_key(w[pos], w[pos + 1])];
                if (idx >= 0) return {pos, &rules_[idx]};
                for (auto it = long_rules_.begin(); it != long_rules_.end(); ++it) {
                    size_t len = it->first;
                    if (pos + len > w.size()) break;
                    auto f = it->second.find(w.substr(pos, len));
                    if (f != it->second.end()) return {pos, &rules_[f->second]};
                }
            }
        }
        return {-1, nullptr};
    }

    static size_t pair_key(char a, char b) {
        return (static_cast<size_t>(static_cast<unsigned char>(a)) << 8) |
               static_cast<unsigned char>(b);
    }

    void index_rule(int idx) {
        const Rule& r = rules_[idx];
        if (r.lhs.size() == 2) {
            pair_rule_[pair_key(r.lhs[0], r.lhs[1])] = idx;
        } else {
            long_rules_[r.lhs.size()].emplace(r.lhs, idx);
        }
    }

    void add_rule(Word lhs, NCPoly rhs) {
        rules_.push_back(Rule{std::move(lhs), std::move(rhs)});
        index_rule(static_cast<int>(rules_.size()) - 1);
    }

    void seed_quadratic_rules() {
        pair_rule_.assign(256 * 256, -1);
        const ScalarQ qinv = ScalarQ::q_pow(-1);
        const ScalarQ qmqi = ScalarQ::q_pow(1) - ScalarQ::q_pow(-1);
        // descending pair u_ab u_cd, (a,b) > (c,d) row-major
        for (int a = 1; a <= n_; ++a)
            for (int b = 1; b <= n_; ++b)
                for (int c = 1; c <= n_; ++c)
                    for (int d = 1; d <= n_; ++d) {
                        if (a < c || (a == c && b <= d)) continue;
                        Word lhs;
                        lhs += make_letter(a, b);
                        lhs += make_letter(c, d);
                        NCPoly rhs(n_);
                        Word sorted;
                        sorted += make_letter(c, d);
                        sorted += make_letter(a, b);
                        if (a == c || b == d) {
                            // same row or same column: q-exchange
                            rhs.add_term(sorted, qinv);
                        } else if (b < d) {
                            // a>c, b<d: commuting pair
                            rhs.add_term(sorted, ScalarQ(1));
                        } else {
                            // a>c, b>d: exchange plus correction
                            rhs.add_term(sorted, ScalarQ(1));
                            Word corr;
                            corr += make_letter(c, b);
                            corr += make_letter(a, d);
                            rhs.add_term(corr, -qmqi);
                        }
                        add_rule(lhs, std::move(rhs));
                    }
    }

    // Quantum determinant sum over permutations, raw (unreduced).
    NCPoly determinant_raw() const {
        std::vector<int> perm(n_);
        for (int i = 0; i < n_; ++i) perm[i] = i + 1;
        NCPoly det(n_);
        do {
            int inv = 0;
            for (int i = 0; i < n_; ++i)
                for (int j = i + 1; j < n_; ++j)
                    if (perm[i] > perm[j]) ++inv;
            Word w;
            for (int col = 1; col <= n_; ++col) w += make_letter(perm[col - 1], col);
            det.add_term(w, neg_q_power(inv));
        } while (std::next_permutation(perm.begin(), perm.end()));
        return det;
    }

    void add_determinant_rule() {
        NCPoly rel = determinant_raw();
        rel.add_term(Word(), ScalarQ(-1));
        NCPoly nf = reduce(rel);
        orient_and_add(nf);
    }

    // true when the letter multiset of w covers the whole diagonal u_11..u_NN
    bool contains_full_diagonal(const Word& w) const {
        unsigned seen = 0;
        for (char c : w) {
            int i = letter_row(c);
            if (i == letter_col(c)) seen |= 1u << i;
        }
        for (int i = 1; i <= n_; ++i)
            if (!(seen & (1u << i))) return false;
        return true;
    }

    // Orient a nonzero reduced relation.  The determinant relation and its
    // descendants are oriented on the full-diagonal word (the words carrying
    // the complete diagonal multiset are exactly the ones eliminated from the
    // normal basis); everything else leads with its degree-lex maximum.  The
    // lead is only taken among words of maximal degree so that no rule can
    // increase degree.
    void orient_and_add(const NCPoly& nf) {
        auto lead = std::prev(nf.terms.end());
        const size_t top_degree = lead->first.size();
        for (auto it = nf.terms.rbegin(); it != nf.terms.rend(); ++it) {
            if (it->first.size() < top_degree) break;
            if (contains_full_diagonal(it->first)) {
                lead = std::prev(it.base());
                break;
            }
        }
        Word lhs = lead->first;
        ScalarQ lc = lead->second;
        NCPoly rhs(n_);
        for (const auto& kv : nf.terms) {
            if (kv.first == lhs) continue;
            rhs.add_term(kv.first, -(kv.second / lc));
        }
        add_rule(std::move(lhs), std::move(rhs));
    }

    struct CriticalPair {
        Word word;
        int rule_a, pos_a;
        int rule_b, pos_b;
    };

    // overlaps between rules i and j (both orders) into the queue
    void collect_pairs(std::deque<CriticalPair>& queue, int i, int j) const {
        const Word& li = rules_[i].lhs;
        const Word& lj = rules_[j].lhs;
        // proper overlap: suffix of li == prefix of lj
        for (size_t k = 1; k < li.size() && k < lj.size(); ++k) {
            if (li.compare(li.size() - k, k, lj, 0, k) == 0) {
                Word w = li + lj.substr(k);
                if (w.size() <= static_cast<size_t>(bound_))
                    queue.push_back({w, i, 0, j, static_cast<int>(li.size() - k)});
            }
            if (lj.compare(lj.size() - k, k, li, 0, k) == 0) {
                Word w = lj + li.substr(k);
                if (w.size() <= static_cast<size_t>(bound_))
                    queue.push_back({w, j, 0, i, static_cast<int>(lj.size() - k)});
            }
        }
        // inclusion: lj inside li (or the reverse)
        if (lj.size() < li.size()) {
            for (size_t p = 0; p + lj.size() <= li.size(); ++p)
                if (li.compare(p, lj.size(), lj) == 0)
                    queue.push_back({li, i, 0, j, static_cast<int>(p)});
        } else if (li.size() < lj.size()) {
            for (size_t p = 0; p + li.size() <= lj.size(); ++p)
                if (lj.compare(p, li.size(), li) == 0)
                    queue.push_back({lj, j, 0, i, static_cast<int>(p)});
        }
    }

    NCPoly apply_rule_at(const Word& w, int rule_idx, int pos) const {
        const Rule& r = rules_[rule_idx];
        Word prefix = w.substr(0, pos);
        Word suffix = w.substr(pos + r.lhs.size());
        NCPoly out(n_);
        for (const auto& kv : r.rhs.terms) out.add_term(prefix + kv.first + suffix, kv.second);
        return out;
    }

    void run_completion(size_t rule_cap) {
        std::deque<CriticalPair> queue;
        size_t processed_rules = 0;
        while (processed_rules < rules_.size()) {
            size_t upto = rules_.size();
            for (size_t i = processed_rules; i < upto; ++i)
                for (size_t j = 0; j <= i; ++j)
                    collect_pairs(queue, static_cast<int>(i), static_cast<int>(j));
            processed_rules = upto;
            while (!queue.empty()) {
                CriticalPair cp = queue.front();
                queue.pop_front();
                NCPoly ra = reduce(apply_rule_at(cp.word, cp.rule_a, cp.pos_a));
                NCPoly rb = reduce(apply_rule_at(cp.word, cp.rule_b, cp.pos_b));
                NCPoly diff = ra - rb;
                if (diff.is_zero()) continue;
                orient_and_add(diff);
                if (rules_.size() > rule_cap)
                    throw CompletionFailure("rule cap exceeded at " +
                                            std::to_string(rules_.size()) + " rules");
            }
        }
    }
};

}  // namespace qflag
