#include "ncis/commpoly.hpp"

#include <algorithm>
#include <functional>

#include "ncis/errors.hpp"

namespace ncis {

CommMonomial::CommMonomial(std::vector<int> exponents) : exps_(std::move(exponents)) {
    for (int e : exps_)
        if (e < 0) throw InvalidArgument("negative exponent");
}

int CommMonomial::degree() const {
    int d = 0;
    for (int e : exps_) d += e;
    return d;
}

Integer CommMonomial::factorial() const {
    Integer f = 1;
    for (int e : exps_) {
        Integer t;
        mpz_fac_ui(t.get_mpz_t(), static_cast<unsigned long>(e));
        f *= t;
    }
    return f;
}

CommMonomial CommMonomial::operator*(const CommMonomial& other) const {
    if (other.n() != n()) throw InvalidArgument("monomials over different variable counts");
    CommMonomial r = *this;
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
    return r;
}

std::string CommMonomial::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        if (exps_[i] == 0) continue;
        if (!s.empty()) s += '*';
        s += 'x' + std::to_string(i + 1);
        if (exps_[i] > 1) s += '^' + std::to_string(exps_[i]);
    }
    return s.empty() ? "1" : s;
}

std::strong_ordering operator<=>(const CommMonomial& a, const CommMonomial& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    if (auto c = a.exps_.size() <=> b.exps_.size(); c != 0) return c;
    // Descending lexicographic: a larger leading exponent sorts first.
    return std::lexicographical_compare_three_way(b.exps_.begin(), b.exps_.end(), a.exps_.begin(),
                                                  a.exps_.end());
}

std::vector<CommMonomial> monomials_of_degree(int d, int n) {
    std::vector<CommMonomial> out;
    std::vector<int> cur(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == n - 1) {
            cur[pos] = remaining;
            out.emplace_back(cur);
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            cur[pos] = e;
            rec(pos + 1, remaining - e);
        }
    };
    if (n == 0) {
        if (d == 0) out.emplace_back(cur);
        return out;
    }
    rec(0, d);
    return out;
}

// --- CommPoly ---------------------------------------------------------------

CommPoly::CommPoly(const CommMonomial& m, Rational c) : n_(m.n()) { add_term(m, c); }

Rational CommPoly::coefficient(const CommMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void CommPoly::add_term(const CommMonomial& m, const Rational& c) {
    if (m.n() != n_) throw InvalidArgument("monomial variable count does not match polynomial");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

int CommPoly::degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

bool CommPoly::is_homogeneous() const {
    return terms_.empty() || terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
}

CommPoly& CommPoly::operator+=(const CommPoly& other) {
    if (other.n_ != n_) throw InvalidArgument("adding polynomials over different variable counts");
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

CommPoly& CommPoly::operator-=(const CommPoly& other) {
    if (other.n_ != n_) throw InvalidArgument("subtracting polynomials over different variable counts");
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

CommPoly& CommPoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, coeff] : terms_) coeff *= c;
    return *this;
}

CommPoly operator*(const CommPoly& a, const CommPoly& b) {
    if (a.n_ != b.n_) throw InvalidArgument("multiplying polynomials over different variable counts");
    CommPoly r(a.n_);
    for (const auto& [m1, c1] : a.terms_)
        for (const auto& [m2, c2] : b.terms_) r.add_term(m1 * m2, c1 * c2);
    return r;
}

std::string CommPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        const bool negative = c < 0;
        const Rational mag = negative ? Rational(-c) : c;
        if (first) {
            if (negative) s += '-';
        } else {
            s += negative ? " - " : " + ";
        }
        first = false;
        if (m.degree() == 0) {
            s += ncis::to_string(mag);
        } else if (mag == 1) {
            s += m.to_string();
        } else {
            s += ncis::to_string(mag) + "*" + m.to_string();
        }
    }
    return s;
}

CommPoly parse_comm_poly(std::string_view text, int n) {
    std::string s;
    for (char ch : text)
        if (ch != ' ') s += ch;
    CommPoly result(n);
    if (s.empty() || s == "0") return result;
    std::vector<std::string> terms;
    std::string cur;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char ch = s[i];
        if ((ch == '+' || ch == '-') && i > 0 && s[i - 1] != '*' && s[i - 1] != '/' && s[i - 1] != '^') {
            terms.push_back(cur);
            cur.clear();
            if (ch == '-') cur += '-';
            continue;
        }
        cur += ch;
    }
    terms.push_back(cur);
    for (std::string term : terms) {
        Rational coeff = 1;
        if (!term.empty() && (term[0] == '-' || term[0] == '+')) {
            if (term[0] == '-') coeff = -1;
            term.erase(0, 1);
        }
        std::vector<int> exps(static_cast<std::size_t>(n), 0);
        std::size_t start = 0;
        while (start <= term.size()) {
            std::size_t end = term.find('*', start);
            if (end == std::string::npos) end = term.size();
            const std::string tok = term.substr(start, end - start);
            if (tok.empty()) throw InvalidArgument("malformed polynomial: " + std::string(text));
            if (tok[0] == 'x') {
                const auto caret = tok.find('^');
                const int var = std::stoi(tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
                const int e = caret == std::string::npos ? 1 : std::stoi(tok.substr(caret + 1));
                if (var < 1 || var > n) throw InvalidArgument("variable " + tok + " out of range");
                exps[var - 1] += e;
            } else {
                coeff *= parse_rational(tok);
            }
            start = end + 1;
        }
        result.add_term(CommMonomial(exps), coeff);
    }
    return result;
}

CommPoly partial(int i, const CommPoly& p) {
    if (i < 1 || i > p.n()) throw InvalidArgument("partial: variable out of range");
    CommPoly r(p.n());
    for (const auto& [m, c] : p.terms()) {
        const int e = m.exponents()[i - 1];
        if (e == 0) continue;
        auto exps = m.exponents();
        exps[i - 1] -= 1;
        r.add_term(CommMonomial(exps), c * e);
    }
    return r;
}

Rational comm_pairing(const CommPoly& q, const CommPoly& p) {
    if (q.n() != p.n()) throw InvalidArgument("pairing over different variable counts");
    Rational s = 0;
    for (const auto& [m, c] : q.terms()) {
        auto it = p.terms().find(m);
        if (it != p.terms().end()) s += c * it->second * Rational(m.factorial());
    }
    return s;
}

CommMonomial chi(const Word& w) {
    std::vector<int> exps(static_cast<std::size_t>(w.alphabet_size()), 0);
    for (Letter l : w.letters()) ++exps[l - 1];
    return CommMonomial(std::move(exps));
}

CommPoly chi(const FreePoly& f) {
    CommPoly r(f.alphabet_size());
    for (const auto& [w, c] : f.terms()) r.add_term(chi(w), c);
    return r;
}

FreePoly psi(const CommPoly& p) {
    FreePoly r(p.n());
    for (const auto& [m, c] : p.terms()) {
        std::vector<Letter> letters;
        for (int i = 0; i < m.n(); ++i) letters.insert(letters.end(), m.exponents()[i], static_cast<Letter>(i + 1));
        const Rational weight = c * Rational(m.factorial());
        do {
            r.add_term(Word(letters, p.n()), weight);
        } while (std::next_permutation(letters.begin(), letters.end()));
    }
    return r;
}

CommPoly a_alpha(const CommMonomial& alpha) {
    const int n = alpha.n();
    CommPoly r(n);
    for (const auto& sigma : all_permutations(static_cast<std::size_t>(n))) {
        std::vector<int> exps(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n; ++i) exps[sigma(i)] = alpha.exponents()[i];
        r.add_term(CommMonomial(exps), sigma.sign());
    }
    return r;
}

CommPoly vandermonde(int n) {
    if (n < 1) throw InvalidArgument("vandermonde needs n >= 1");
    CommPoly r(CommMonomial::one(n));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            std::vector<int> ei(static_cast<std::size_t>(n), 0), ej(static_cast<std::size_t>(n), 0);
            ei[i] = 1;
            ej[j] = 1;
            CommPoly factor{CommMonomial(ei)};
            factor.add_term(CommMonomial(ej), -1);
            r = r * factor;
        }
    }
    return r;
}

}  // namespace ncis
