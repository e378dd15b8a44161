#include "ncis/freealg.hpp"

#include <algorithm>
#include <numeric>

#include "ncis/errors.hpp"

namespace ncis {

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    while (exp--) r *= base;
    return r;
}

// --- Word -------------------------------------------------------------------

Word::Word(std::vector<Letter> letters, int alphabet_size)
    : letters_(std::move(letters)), n_(alphabet_size) {
    if (alphabet_size < 1 || alphabet_size > 255) {
        throw InvalidArgument("alphabet size must lie in [1, 255]");
    }
    for (Letter l : letters_) {
        if (l < 1 || l > alphabet_size) {
            throw InvalidArgument("letter x" + std::to_string(l) + " outside alphabet of size " +
                                  std::to_string(alphabet_size));
        }
    }
}

Word Word::concat(const Word& other) const {
    if (other.n_ != n_) throw InvalidArgument("concatenating words over different alphabets");
    Word r = *this;
    r.letters_.insert(r.letters_.end(), other.letters_.begin(), other.letters_.end());
    return r;
}

Word Word::drop_front(std::size_t k) const {
    Word r(n_);
    if (k < letters_.size()) r.letters_.assign(letters_.begin() + k, letters_.end());
    return r;
}

bool Word::starts_with(const Word& prefix) const {
    return prefix.degree() <= degree() &&
           std::equal(prefix.letters_.begin(), prefix.letters_.end(), letters_.begin());
}

std::uint64_t Word::index() const {
    std::uint64_t idx = 0;
    for (Letter l : letters_) idx = idx * static_cast<std::uint64_t>(n_) + (l - 1);
    return idx;
}

Word Word::from_index(std::uint64_t index, std::size_t degree, int alphabet_size) {
    Word w(alphabet_size);
    w.letters_.resize(degree);
    for (std::size_t i = degree; i-- > 0;) {
        w.letters_[i] = static_cast<Letter>(index % alphabet_size + 1);
        index /= alphabet_size;
    }
    return w;
}

std::string Word::to_string() const {
    if (letters_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) s += '*';
        s += 'x';
        s += std::to_string(letters_[i]);
    }
    return s;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
    if (auto c = std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(),
                                                         b.letters_.begin(), b.letters_.end());
        c != 0) {
        return c;
    }
    return a.n_ <=> b.n_;
}

std::vector<Word> all_words(std::size_t d, int n) {
    const std::uint64_t count = ipow(n, d);
    std::vector<Word> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(Word::from_index(i, d, n));
    return out;
}

// --- Permutation ------------------------------------------------------------

Permutation::Permutation(std::size_t m) : images_(m) {
    std::iota(images_.begin(), images_.end(), std::size_t{0});
}

Permutation Permutation::from_one_line(const std::vector<int>& one_line) {
    Permutation p;
    std::vector<bool> seen(one_line.size(), false);
    for (int v : one_line) {
        if (v < 1 || static_cast<std::size_t>(v) > one_line.size() || seen[v - 1]) {
            throw InvalidArgument("one-line notation is not a bijection");
        }
        seen[v - 1] = true;
        p.images_.push_back(static_cast<std::size_t>(v - 1));
    }
    return p;
}

int Permutation::sign() const {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < images_.size(); ++i)
        for (std::size_t j = i + 1; j < images_.size(); ++j)
            if (images_[i] > images_[j]) ++inversions;
    return inversions % 2 ? -1 : 1;
}

Permutation Permutation::inverse() const {
    Permutation r(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) r.images_[images_[i]] = i;
    return r;
}

Permutation Permutation::compose(const Permutation& other) const {
    if (other.size() != size()) throw InvalidArgument("composing permutations of different sizes");
    Permutation r(size());
    for (std::size_t i = 0; i < size(); ++i) r.images_[i] = images_[other.images_[i]];
    return r;
}

bool Permutation::next() { return std::next_permutation(images_.begin(), images_.end()); }

std::vector<Permutation> all_permutations(std::size_t m) {
    std::vector<Permutation> out;
    Permutation p(m);
    do {
        out.push_back(p);
    } while (p.next());
    return out;
}

// --- FreePoly ---------------------------------------------------------------

FreePoly::FreePoly(const Word& w, Rational c) : n_(w.alphabet_size()) { add_term(w, c); }

FreePoly FreePoly::constant(Rational c, int alphabet_size) {
    return FreePoly(Word(alphabet_size), std::move(c));
}

Rational FreePoly::coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
}

void FreePoly::add_term(const Word& w, const Rational& c) {
    if (w.alphabet_size() != n_) throw InvalidArgument("word alphabet does not match polynomial");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

bool FreePoly::is_homogeneous() const {
    return terms_.empty() || terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
}

int FreePoly::degree() const {
    return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.degree());
}

FreePoly FreePoly::homogeneous_component(std::size_t d) const {
    FreePoly r(n_);
    for (const auto& [w, c] : terms_)
        if (w.degree() == d) r.terms_.emplace_hint(r.terms_.end(), w, c);
    return r;
}

Rational FreePoly::constant_term() const { return coefficient(Word(n_)); }

FreePoly& FreePoly::operator+=(const FreePoly& other) {
    if (other.n_ != n_) throw InvalidArgument("adding polynomials over different alphabets");
    for (const auto& [w, c] : other.terms_) add_term(w, c);
    return *this;
}

FreePoly& FreePoly::operator-=(const FreePoly& other) {
    if (other.n_ != n_) throw InvalidArgument("subtracting polynomials over different alphabets");
    for (const auto& [w, c] : other.terms_) add_term(w, -c);
    return *this;
}

FreePoly& FreePoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, coeff] : terms_) coeff *= c;
    return *this;
}

FreePoly operator*(const FreePoly& a, const FreePoly& b) { return multiply(a, b); }

std::string FreePoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        const bool negative = c < 0;
        const Rational mag = negative ? Rational(-c) : c;
        if (first) {
            if (negative) s += '-';
        } else {
            s += negative ? " - " : " + ";
        }
        first = false;
        if (w.empty()) {
            s += ncis::to_string(mag);
        } else if (mag == 1) {
            s += w.to_string();
        } else {
            s += ncis::to_string(mag) + "*" + w.to_string();
        }
    }
    return s;
}

// --- parsing ----------------------------------------------------------------

namespace {

std::string strip_spaces(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (ch != ' ' && ch != '\t' && ch != '\n') s += ch;
    return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

bool is_letter_token(const std::string& tok) {
    return tok.size() >= 2 && tok[0] == 'x' &&
           std::all_of(tok.begin() + 1, tok.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
}

Letter parse_letter(const std::string& tok, int alphabet_size) {
    const int v = std::stoi(tok.substr(1));
    if (v < 1 || v > alphabet_size) throw InvalidArgument("letter " + tok + " outside alphabet");
    return static_cast<Letter>(v);
}

}  // namespace

Word parse_word(std::string_view text, int alphabet_size) {
    const std::string s = strip_spaces(text);
    if (s == "1" || s.empty()) return Word(alphabet_size);
    std::vector<Letter> letters;
    for (const auto& tok : split(s, '*')) {
        if (!is_letter_token(tok)) throw InvalidArgument("malformed word: " + std::string(text));
        letters.push_back(parse_letter(tok, alphabet_size));
    }
    return Word(std::move(letters), alphabet_size);
}

FreePoly parse_free_poly(std::string_view text, int alphabet_size) {
    const std::string s = strip_spaces(text);
    FreePoly result(alphabet_size);
    if (s.empty() || s == "0") return result;
    // Split into signed terms; a sign right after '*' or '/' belongs to a literal.
    std::vector<std::string> terms;
    std::string cur;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char ch = s[i];
        if ((ch == '+' || ch == '-') && i > 0 && s[i - 1] != '*' && s[i - 1] != '/') {
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
        if (term.empty()) throw InvalidArgument("malformed polynomial: " + std::string(text));
        std::vector<Letter> letters;
        for (const auto& tok : split(term, '*')) {
            if (is_letter_token(tok)) {
                letters.push_back(parse_letter(tok, alphabet_size));
            } else {
                coeff *= parse_rational(tok);
            }
        }
        result.add_term(Word(std::move(letters), alphabet_size), coeff);
    }
    return result;
}

// --- operators --------------------------------------------------------------

FreePoly multiply(const FreePoly& f, const FreePoly& g) {
    if (f.alphabet_size() != g.alphabet_size()) {
        throw InvalidArgument("multiplying polynomials over different alphabets");
    }
    FreePoly r(f.alphabet_size());
    for (const auto& [u, a] : f.terms())
        for (const auto& [v, b] : g.terms()) r.add_term(u.concat(v), a * b);
    return r;
}

FreePoly d_letter(Letter a, const FreePoly& f) {
    FreePoly r(f.alphabet_size());
    for (const auto& [w, c] : f.terms())
        if (!w.empty() && w[0] == a) r.add_term(w.drop_front(1), c);
    return r;
}

FreePoly d_word(const Word& u, const FreePoly& f) {
    const Word prefix = reverse(u);
    FreePoly r(f.alphabet_size());
    for (const auto& [w, c] : f.terms())
        if (w.starts_with(prefix)) r.add_term(w.drop_front(prefix.degree()), c);
    return r;
}

Word reverse(const Word& u) {
    std::vector<Letter> letters(u.letters().rbegin(), u.letters().rend());
    if (letters.empty()) return Word(u.alphabet_size());
    return Word(std::move(letters), u.alphabet_size());
}

FreePoly apply_reversed(const FreePoly& f, const FreePoly& p) {
    if (f.alphabet_size() != p.alphabet_size()) {
        throw InvalidArgument("apply_reversed over different alphabets");
    }
    FreePoly r(p.alphabet_size());
    for (const auto& [w, c] : f.terms()) {
        for (const auto& [v, b] : p.terms())
            if (v.starts_with(w)) r.add_term(v.drop_front(w.degree()), c * b);
    }
    return r;
}

Rational pairing(const FreePoly& f, const FreePoly& p) {
    if (f.alphabet_size() != p.alphabet_size()) throw InvalidArgument("pairing over different alphabets");
    Rational s = 0;
    const auto& small = f.size() <= p.size() ? f : p;
    const auto& large = f.size() <= p.size() ? p : f;
    for (const auto& [w, c] : small.terms()) {
        auto it = large.terms().find(w);
        if (it != large.terms().end()) s += c * it->second;
    }
    return s;
}

Word sigma_act(const Permutation& sigma, const Word& w) {
    if (sigma.size() != static_cast<std::size_t>(w.alphabet_size())) {
        throw InvalidArgument("permutation size differs from alphabet size");
    }
    std::vector<Letter> letters(w.letters().begin(), w.letters().end());
    for (auto& l : letters) l = static_cast<Letter>(sigma(l - 1) + 1);
    return letters.empty() ? Word(w.alphabet_size()) : Word(std::move(letters), w.alphabet_size());
}

FreePoly sigma_act(const Permutation& sigma, const FreePoly& f) {
    FreePoly r(f.alphabet_size());
    for (const auto& [w, c] : f.terms()) r.add_term(sigma_act(sigma, w), c);
    return r;
}

Word pi_act(const Word& u, const Permutation& pi) {
    if (pi.size() != u.degree()) throw InvalidArgument("position permutation size differs from degree");
    if (u.empty()) return u;
    std::vector<Letter> letters(u.degree());
    for (std::size_t i = 0; i < u.degree(); ++i) letters[i] = u[pi(i)];
    return Word(std::move(letters), u.alphabet_size());
}

FreePoly delta_w(const Word& w, int n) {
    if (w.alphabet_size() != n) throw InvalidArgument("delta_w: word alphabet differs from n");
    FreePoly r(n);
    const auto sigmas = all_permutations(static_cast<std::size_t>(n));
    const auto pis = all_permutations(w.degree());
    for (const auto& pi : pis) {
        const Word moved = pi_act(w, pi);
        for (const auto& sigma : sigmas) r.add_term(sigma_act(sigma, moved), sigma.sign());
    }
    return r;
}

}  // namespace ncis
