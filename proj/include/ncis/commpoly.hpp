#pragma once

// Polynomials in commuting variables x1..xn, plus the χ and ψ bridges to the
// free algebra.

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ncis/freealg.hpp"
#include "ncis/rational.hpp"

namespace ncis {

/// x^α with α a vector of n nonnegative exponents.
class CommMonomial {
public:
    CommMonomial() = default;
    explicit CommMonomial(std::vector<int> exponents);
    static CommMonomial one(int n) { return CommMonomial(std::vector<int>(static_cast<std::size_t>(n), 0)); }

    const std::vector<int>& exponents() const { return exps_; }
    int n() const { return static_cast<int>(exps_.size()); }
    int degree() const;
    /// α! = Π α_i!.
    Integer factorial() const;
    CommMonomial operator*(const CommMonomial& other) const;
    /// `x1^2*x2`; `1` for the unit.
    std::string to_string() const;

    /// Graded: degree first, then lexicographically descending exponents
    /// (x1^2 < x1*x2 < x2^2 within degree 2).
    friend std::strong_ordering operator<=>(const CommMonomial& a, const CommMonomial& b);
    friend bool operator==(const CommMonomial&, const CommMonomial&) = default;

private:
    std::vector<int> exps_;
};

/// All monomials of degree d in n variables, in the order above.
std::vector<CommMonomial> monomials_of_degree(int d, int n);

class CommPoly {
public:
    using Terms = std::map<CommMonomial, Rational>;

    CommPoly() = default;
    explicit CommPoly(int n) : n_(n) {}
    CommPoly(const CommMonomial& m, Rational c = 1);

    int n() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Rational coefficient(const CommMonomial& m) const;
    void add_term(const CommMonomial& m, const Rational& c);
    int degree() const;
    bool is_homogeneous() const;

    CommPoly& operator+=(const CommPoly& other);
    CommPoly& operator-=(const CommPoly& other);
    CommPoly& operator*=(const Rational& c);
    friend CommPoly operator+(CommPoly a, const CommPoly& b) { return a += b; }
    friend CommPoly operator-(CommPoly a, const CommPoly& b) { return a -= b; }
    friend CommPoly operator*(CommPoly a, const Rational& c) { return a *= c; }
    friend CommPoly operator*(const CommPoly& a, const CommPoly& b);
    friend bool operator==(const CommPoly& a, const CommPoly& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    std::string to_string() const;

private:
    Terms terms_;
    int n_ = 0;
};

CommPoly parse_comm_poly(std::string_view text, int n);

/// ∂/∂x_i with i in [1, n].
CommPoly partial(int i, const CommPoly& p);

/// [Q(∂) P]_{c.t.} = Σ_α Q_α P_α α!.
Rational comm_pairing(const CommPoly& q, const CommPoly& p);

/// Lets the letters commute: x1x2x1 ↦ x1^2 x2.
CommMonomial chi(const Word& w);
CommPoly chi(const FreePoly& f);

/// ψ(x^α) = Σ_{π∈S_k} u∘π for any u with χ(u) = x^α; every distinct
/// rearrangement appears with coefficient α!.
FreePoly psi(const CommPoly& p);

/// Σ_{σ∈S_n} sign(σ) σ∘x^α; σ sends the exponent at position i to σ(i).
CommPoly a_alpha(const CommMonomial& alpha);

/// Π_{i<j} (x_i - x_j).
CommPoly vandermonde(int n);

}  // namespace ncis
