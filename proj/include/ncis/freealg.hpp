#pragma once

// Sparse polynomials over words in non-commuting variables x1..xn.

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ncis/rational.hpp"

namespace ncis {

using Letter = std::uint8_t;

/// A monomial x_{i1} x_{i2} ... x_{ik} with letters in [1, n].
class Word {
public:
    Word() = default;
    explicit Word(int alphabet_size) : n_(alphabet_size) {}
    Word(std::vector<Letter> letters, int alphabet_size);

    int alphabet_size() const { return n_; }
    std::size_t degree() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    std::span<const Letter> letters() const { return letters_; }
    Letter operator[](std::size_t i) const { return letters_[i]; }

    Word concat(const Word& other) const;
    /// Suffix after the first `k` letters.
    Word drop_front(std::size_t k) const;
    bool starts_with(const Word& prefix) const;

    /// Position of this word among all words of the same degree (base-n digits).
    std::uint64_t index() const;
    static Word from_index(std::uint64_t index, std::size_t degree, int alphabet_size);

    /// `x1*x2*x1`; the empty word prints as `1`.
    std::string to_string() const;

    /// Degree first, then lexicographic on letter indices.
    friend std::strong_ordering operator<=>(const Word& a, const Word& b);
    friend bool operator==(const Word& a, const Word& b) = default;

private:
    std::vector<Letter> letters_;
    int n_ = 0;
};

/// One-line notation on [m]; images are stored 0-based.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::size_t m);  // identity
    /// `one_line` uses 1-based values, e.g. {2,3,1}.
    static Permutation from_one_line(const std::vector<int>& one_line);

    std::size_t size() const { return images_.size(); }
    /// 0-based image of 0-based point.
    std::size_t operator()(std::size_t i) const { return images_[i]; }
    int sign() const;
    Permutation inverse() const;
    /// (this ∘ other)(i) = this(other(i)).
    Permutation compose(const Permutation& other) const;
    /// Lexicographic successor; false after the last permutation.
    bool next();

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<std::size_t> images_;
};

/// All permutations of [m] in lexicographic order.
std::vector<Permutation> all_permutations(std::size_t m);

class FreePoly {
public:
    using Terms = std::map<Word, Rational>;

    FreePoly() = default;
    explicit FreePoly(int alphabet_size) : n_(alphabet_size) {}
    FreePoly(const Word& w, Rational c = 1);
    static FreePoly constant(Rational c, int alphabet_size);

    int alphabet_size() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Rational coefficient(const Word& w) const;
    /// Adds c*w; drops the entry if it cancels.
    void add_term(const Word& w, const Rational& c);

    bool is_homogeneous() const;
    /// Degree of the highest term, -1 for zero.
    int degree() const;
    FreePoly homogeneous_component(std::size_t d) const;
    /// Coefficient of the empty word.
    Rational constant_term() const;

    FreePoly& operator+=(const FreePoly& other);
    FreePoly& operator-=(const FreePoly& other);
    FreePoly& operator*=(const Rational& c);
    friend FreePoly operator+(FreePoly a, const FreePoly& b) { return a += b; }
    friend FreePoly operator-(FreePoly a, const FreePoly& b) { return a -= b; }
    friend FreePoly operator*(FreePoly a, const Rational& c) { return a *= c; }
    friend FreePoly operator*(const Rational& c, FreePoly a) { return a *= c; }
    friend FreePoly operator*(const FreePoly& a, const FreePoly& b);
    friend bool operator==(const FreePoly& a, const FreePoly& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    /// `c1*w1 + c2*w2`, terms in canonical word order, `0` for zero.
    std::string to_string() const;

private:
    Terms terms_;
    int n_ = 0;
};

Word parse_word(std::string_view text, int alphabet_size);
FreePoly parse_free_poly(std::string_view text, int alphabet_size);

FreePoly multiply(const FreePoly& f, const FreePoly& g);

/// d_a: strips a leading letter `a`, kills every other word.
FreePoly d_letter(Letter a, const FreePoly& f);

/// d_u = d_{u1} ∘ d_{u2} ∘ ... ∘ d_{uk}. The innermost operator acts first, so
/// d_u removes the prefix u_k u_{k-1} ... u_1, i.e. reverse(u).
FreePoly d_word(const Word& u, const FreePoly& f);

Word reverse(const Word& u);

/// Σ_w c_w d_{reverse(w)} P: each word w of f strips the prefix w from P.
FreePoly apply_reversed(const FreePoly& f, const FreePoly& p);

/// Word-diagonal bilinear form Σ_w f_w P_w.
Rational pairing(const FreePoly& f, const FreePoly& p);

/// Relabels letters through σ ∈ S_n (σ(i) acts on letter i).
Word sigma_act(const Permutation& sigma, const Word& w);
FreePoly sigma_act(const Permutation& sigma, const FreePoly& f);

/// Position permutation u∘π = u_{π(1)} ... u_{π(k)}.
Word pi_act(const Word& u, const Permutation& pi);

/// Σ_{σ∈S_n} Σ_{π∈S_k} sign(σ) σ∘(w∘π). Enumerates n!·k! terms; keep k ≤ 6, n ≤ 5.
FreePoly delta_w(const Word& w, int n);

/// All words of degree d over n letters in canonical order.
std::vector<Word> all_words(std::size_t d, int n);

std::uint64_t ipow(std::uint64_t base, unsigned exp);

}  // namespace ncis
