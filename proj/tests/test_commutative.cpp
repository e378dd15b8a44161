#include "doctest.h"
#include "ncis/commutative.hpp"
#include "ncis/generators.hpp"
#include "ncis/perp.hpp"
#include "support.hpp"

using namespace ncis;

namespace {

CommPoly cp(std::string_view text, int n) { return parse_comm_poly(text, n); }

// Q(∂) applied to P by repeated partial derivatives, then the constant term.
Rational differential_pairing(const CommPoly& q, const CommPoly& p) {
    Rational total = 0;
    for (const auto& [m, c] : q.terms()) {
        CommPoly r = p;
        for (int i = 0; i < m.n(); ++i)
            for (int e = 0; e < m.exponents()[static_cast<std::size_t>(i)]; ++e) r = partial(i + 1, r);
        total += c * r.coefficient(CommMonomial::one(p.n()));
    }
    return total;
}

PerpConfig exact() {
    PerpConfig c;
    c.mode = Mode::Exact;
    return c;
}

}  // namespace

TEST_CASE("comm_pairing examples and brute-force agreement") {
    CHECK(comm_pairing(cp("x1^2", 2), cp("x1^2", 2)) == 2);
    CHECK(comm_pairing(cp("x1*x2", 2), cp("x1*x2", 2)) == 1);
    CHECK(comm_pairing(cp("x1", 2), cp("x2", 2)) == 0);
    for (int n = 1; n <= 3; ++n)
        for (int d = 0; d <= 4; ++d) {
            const auto ms = monomials_of_degree(d, n);
            for (const auto& a : ms)
                for (const auto& b : ms) {
                    const Rational v = comm_pairing(CommPoly(a), CommPoly(b));
                    CHECK(v == comm_pairing(CommPoly(b), CommPoly(a)));
                    CHECK(v == differential_pairing(CommPoly(a), CommPoly(b)));
                }
        }
}

TEST_CASE("chi and psi") {
    CHECK(chi(test::fp("x1*x2*x1", 2)) == cp("x1^2*x2", 2));
    CHECK(chi(test::fp("x1*x2 + x2*x1", 2)) == cp("2*x1*x2", 2));
    CHECK(psi(cp("x1*x2", 2)) == test::fp("x1*x2 + x2*x1", 2));
    CHECK(psi(cp("x1^2", 2)) == test::fp("2*x1*x1", 2));
    std::mt19937_64 rng(601);
    for (int t = 0; t < 1000; ++t) {
        const int n = 1 + t % 3;
        const FreePoly f = test::random_free_mixed(rng, n, 3, 3);
        const FreePoly g = test::random_free_mixed(rng, n, 3, 3);
        CHECK(chi(multiply(f, g)) == chi(f) * chi(g));
        const int k = t % 5;
        const auto ms = monomials_of_degree(k, n);
        const CommMonomial& m = ms[rng() % ms.size()];
        Rational fact = 1;
        for (int i = 2; i <= k; ++i) fact *= i;
        CHECK(chi(psi(CommPoly(m))) == CommPoly(m) * fact);
    }
}

TEST_CASE("lemma3 identity") {
    CHECK(lemma3_check(test::fp("x1*x2", 2), cp("x1*x2", 2)));
    CHECK(lemma3_check(test::fp("x1*x1", 2), cp("x1^2", 2)));
    CHECK(pairing(test::fp("x1*x1", 2), psi(cp("x1^2", 2))) == 2);
    std::mt19937_64 rng(602);
    for (int t = 0; t < 1000; ++t) {
        const int n = 1 + t % 3;
        const int d = static_cast<int>(rng() % 5);
        const FreePoly f = test::random_free(rng, n, static_cast<std::size_t>(d), 3);
        const CommPoly p = test::random_comm(rng, n, d, 3);
        CHECK(lemma3_check(f, p));
        CHECK(pairing(f, psi(p)) == comm_pairing(chi(f), p));
    }
}

TEST_CASE("vandermonde") {
    CHECK(vandermonde(1) == CommPoly(CommMonomial::one(1)));
    CHECK(vandermonde(2) == cp("x1 - x2", 2));
    const CommPoly v3 = vandermonde(3);
    CHECK(v3.size() == 6);
    CHECK(v3.degree() == 3);
    CHECK(v3 == cp("x1 - x2", 3) * cp("x1 - x3", 3) * cp("x2 - x3", 3));
}

TEST_CASE("vandermonde closure spans the symmetric perp") {
    const u64 fact[] = {1, 1, 2, 6, 24};
    for (int n = 1; n <= 4; ++n) {
        const auto closure = vandermonde_closure(n);
        CHECK(span_dimension(closure) == fact[n]);
        const int top = n * (n - 1) / 2;
        for (int d = 0; d <= top + 1; ++d) {
            std::vector<CommPoly> level;
            for (const auto& c : closure)
                if (c.degree() == d) level.push_back(c);
            const u64 perp = comm_perp_dimension(SystemId::SYM, n, d, exact());
            CHECK(span_dimension(level) == perp);
            for (const auto& c : level) CHECK(is_in_perp(c, SystemId::SYM, n));
            if (d == top) CHECK(perp == 1);
        }
    }
    CHECK(span_dimension(vandermonde_closure(2)) == 2);
}

TEST_CASE("a_alpha") {
    CHECK(a_alpha(CommMonomial({1, 0})) == cp("x1 - x2", 2));
    CHECK(a_alpha(CommMonomial({1, 1})).is_zero());
    const CommPoly a = a_alpha(CommMonomial({2, 1, 0}));
    CHECK(psi(a) == delta_w(test::wd("x1*x1*x2", 3), 3));
    CHECK(psi(a) == delta_w(test::wd("x1*x2*x1", 3), 3));
    CHECK(a == vandermonde(3));
}

TEST_CASE("commutative perp dimensions") {
    const u64 fact[] = {1, 1, 2, 6, 24}, catalan[] = {1, 1, 2, 5, 14};
    for (int n = 1; n <= 4; ++n) {
        CHECK(comm_perp_total(SystemId::SYM, n) == fact[n]);
        CHECK(comm_perp_total(SystemId::QSYM, n) == catalan[n]);
        CHECK(comm_perp_total(SystemId::QSYM, n, exact()) == catalan[n]);
        CHECK(comm_perp_dimension(SystemId::SYM, n, comm_degree_cutoff(n), exact()) == 0);
        CHECK(comm_perp_dimension(SystemId::QSYM, n, comm_degree_cutoff(n), exact()) == 0);
    }
    u64 sum = 0;
    for (int d = 0; d <= 3; ++d) sum += comm_perp_dimension(SystemId::SYM, 3, d);
    CHECK(sum == 6);
    for (int d = 1; d <= 4; ++d) CHECK(comm_perp_dimension(SystemId::SYM, 1, d) == 0);
    CHECK(comm_degree_cutoff(4) == 10);
}

TEST_CASE("psi pulls the free perp back onto the symmetric perp") {
    for (int n = 1; n <= 3; ++n)
        for (int d = 0; d <= 3; ++d) {
            const auto basis = perp_basis_comm(SystemId::SYM, n, d, exact());
            for (const auto& p : basis) CHECK(is_in_perp(psi(p), SystemId::NCSYM, n));
            CHECK(psi_preimage_perp_dimension(n, d) == basis.size());
        }
}

TEST_CASE("delta_w membership scan") {
    CHECK(is_in_perp(delta_w(test::wd("x1", 2), 2), SystemId::NCSYM, 2));
    CHECK_FALSE(is_in_perp(delta_w(test::wd("x1*x1", 2), 2), SystemId::NCSYM, 2));
    CHECK(delta_w(test::wd("x1*x2", 3), 3).is_zero());
    for (int n = 2; n <= 3; ++n) {
        const DeltaWScan s = delta_w_membership_scan(n, 4);
        CHECK(s.pass());
        CHECK(s.counterexamples == 0);
        CHECK(s.words == (n == 2 ? 31u : 121u));
        CHECK(s.literal_exceptions == (n == 2 ? 1u : 15u));
    }
}

TEST_CASE("rho") {
    CHECK(rho(3) == CommMonomial({2, 1, 0}));
    CHECK(rho(1) == CommMonomial({0}));
}
