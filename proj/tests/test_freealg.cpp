#include "doctest.h"
#include "ncis/errors.hpp"
#include "ncis/freealg.hpp"
#include "support.hpp"

using namespace ncis;
using test::fp;
using test::wd;

TEST_CASE("multiply concatenates words bilinearly") {
    CHECK(multiply(fp("x1", 2), fp("x2", 2)) == fp("x1*x2", 2));
    CHECK(multiply(fp("x1 + x2", 2), fp("x1", 2)) == fp("x1*x1 + x2*x1", 2));
    CHECK(multiply(fp("x1*x2", 2), FreePoly::constant(1, 2)) == fp("x1*x2", 2));
    CHECK_THROWS_AS(multiply(fp("x1", 2), fp("x1", 3)), InvalidArgument);
}

TEST_CASE("d_letter strips one leading letter") {
    CHECK(d_letter(1, fp("x1*x2", 2)) == fp("x2", 2));
    CHECK(d_letter(1, fp("x2*x1", 2)).is_zero());
    CHECK(d_letter(1, fp("3*x1*x2 + x2*x1", 2)) == fp("3*x2", 2));
    CHECK(d_letter(1, FreePoly::constant(5, 2)).is_zero());
}

TEST_CASE("d_word composes innermost first") {
    CHECK(d_word(wd("x2*x1", 2), fp("x1*x2*x1", 2)) == fp("x1", 2));
    CHECK(d_word(wd("x1*x2", 2), fp("x1*x2*x1", 2)).is_zero());
    CHECK(d_word(wd("x1*x1*x1", 2), fp("x1*x1", 2)).is_zero());
    const FreePoly f = fp("x1*x2*x1", 2);
    CHECK(d_word(wd("x2*x1", 2), f) == d_letter(2, d_letter(1, f)));
}

TEST_CASE("reverse") {
    CHECK(reverse(wd("x1*x2*x3", 3)) == wd("x3*x2*x1", 3));
    CHECK(reverse(wd("x1", 3)) == wd("x1", 3));
    std::mt19937_64 rng(11);
    for (int t = 0; t < 1000; ++t) {
        const Word w = test::random_word(rng, 3, static_cast<std::size_t>(t % 7));
        CHECK(reverse(reverse(w)) == w);
    }
}

TEST_CASE("apply_reversed strips each word of f as a prefix") {
    CHECK(apply_reversed(fp("x1*x2", 3), fp("x1*x2*x3", 3)) == fp("x3", 3));
    CHECK(apply_reversed(fp("x1*x2", 3), fp("x2*x1*x3", 3)).is_zero());
    CHECK(apply_reversed(fp("x1 + x2", 2), fp("x1*x1", 2)) == fp("x1", 2));
    CHECK(apply_reversed(fp("x1", 2), FreePoly::constant(1, 2)).is_zero());
}

TEST_CASE("pairing is the coefficient dot product") {
    CHECK(pairing(fp("x1*x2", 2), fp("x1*x2", 2)) == 1);
    CHECK(pairing(fp("x1*x2", 2), fp("x2*x1", 2)) == 0);
    CHECK(pairing(fp("2*x1 + x2", 2), fp("x1", 2)) == 2);
    CHECK(pairing(fp("x1 + x1*x1", 2), fp("x1*x1", 2)) == 1);
}

TEST_CASE("sigma_act and pi_act") {
    const Permutation swap = Permutation::from_one_line({2, 1});
    CHECK(sigma_act(swap, fp("x1*x2*x1", 2)) == fp("x2*x1*x2", 2));
    CHECK(sigma_act(Permutation(2), fp("x1*x2*x1", 2)) == fp("x1*x2*x1", 2));
    const Permutation cyc = Permutation::from_one_line({2, 3, 1});
    CHECK(pi_act(wd("x1*x2*x3", 3), cyc) == wd("x2*x3*x1", 3));
    CHECK(pi_act(wd("x1*x2*x3", 3), Permutation(3)) == wd("x1*x2*x3", 3));
    CHECK(pi_act(wd("x1*x1*x2", 3), Permutation::from_one_line({2, 1, 3})) == wd("x1*x1*x2", 3));
    CHECK_THROWS_AS(pi_act(wd("x1*x2", 3), cyc), InvalidArgument);
}

TEST_CASE("delta_w examples") {
    CHECK(delta_w(wd("x1", 2), 2) == fp("x1 - x2", 2));
    CHECK(delta_w(wd("x1*x2", 2), 2).is_zero());
    CHECK(delta_w(wd("x1*x1", 2), 2) == fp("2*x1*x1 - 2*x2*x2", 2));
}

TEST_CASE("text form round trip") {
    const FreePoly f = fp("x1*x2 - 1/2*x2*x1 + 3", 2);
    CHECK(f.to_string() == "3 + x1*x2 - 1/2*x2*x1");
    CHECK(parse_free_poly(f.to_string(), 2) == f);
    CHECK(FreePoly(2).to_string() == "0");
    CHECK(wd("x1*x2*x1", 2).to_string() == "x1*x2*x1");
}

TEST_CASE("word pairing is the Kronecker delta and equals the constant term") {
    std::mt19937_64 rng(101);
    for (int t = 0; t < 1000; ++t) {
        const int n = 1 + t % 3;
        const Word u = test::random_word(rng, n, static_cast<std::size_t>(t % 4));
        const Word v = test::random_word(rng, n, static_cast<std::size_t>(t % 4));
        CHECK(pairing(FreePoly(u), FreePoly(v)) == (u == v ? 1 : 0));
        const FreePoly f = test::random_free_mixed(rng, n, 3, 4);
        const FreePoly p = test::random_free_mixed(rng, n, 3, 6);
        CHECK(pairing(f, p) == apply_reversed(f, p).constant_term());
        CHECK(pairing(f, p) == pairing(p, f));
    }
}

TEST_CASE("multiplication by a word is adjoint to its derivative") {
    std::mt19937_64 rng(102);
    for (int t = 0; t < 1000; ++t) {
        const int n = 1 + t % 3;
        const std::size_t du = static_cast<std::size_t>(t % 3), df = static_cast<std::size_t>((t / 3) % 3);
        const Word u = test::random_word(rng, n, du);
        const FreePoly f = test::random_free(rng, n, df, 3);
        const FreePoly uf = multiply(FreePoly(u), f);
        FreePoly p = test::random_free(rng, n, du + df, 5);
        for (const auto& [w, c] : uf.terms())
            if (rng() % 2) p.add_term(w, c);  // bias towards overlap
        CHECK(pairing(uf, p) == pairing(f, d_word(reverse(u), p)));
    }
}

TEST_CASE("d_word of reverse(u) undoes left multiplication by u") {
    std::mt19937_64 rng(103);
    for (int t = 0; t < 1000; ++t) {
        const int n = 1 + t % 3;
        const Word u = test::random_word(rng, n, static_cast<std::size_t>(t % 4));
        const FreePoly g = test::random_free_mixed(rng, n, 3, 4);
        CHECK(d_word(reverse(u), multiply(FreePoly(u), g)) == g);
    }
}

TEST_CASE("sigma_act is an automorphism preserving the pairing") {
    std::mt19937_64 rng(104);
    for (int t = 0; t < 1000; ++t) {
        const int n = 2 + t % 3;
        const Permutation s = test::random_permutation(rng, static_cast<std::size_t>(n));
        const FreePoly f = test::random_free_mixed(rng, n, 3, 4);
        const FreePoly g = test::random_free_mixed(rng, n, 3, 4);
        CHECK(pairing(sigma_act(s, f), sigma_act(s, g)) == pairing(f, g));
        CHECK(sigma_act(s, multiply(f, g)) == multiply(sigma_act(s, f), sigma_act(s, g)));
    }
}

TEST_CASE("delta_w alternates under every sigma") {
    for (int n = 2; n <= 3; ++n)
        for (std::size_t d = 0; d <= 4; ++d)
            for (const Word& w : all_words(d, n)) {
                const FreePoly dw = delta_w(w, n);
                for (const Permutation& s : all_permutations(static_cast<std::size_t>(n)))
                    CHECK(sigma_act(s, dw) == dw * Rational(s.sign()));
            }
}

TEST_CASE("word index round trip") {
    for (int n = 1; n <= 4; ++n)
        for (std::size_t d = 0; d <= 4; ++d) {
            const auto ws = all_words(d, n);
            REQUIRE(ws.size() == ipow(static_cast<std::uint64_t>(n), static_cast<unsigned>(d)));
            for (std::size_t i = 0; i < ws.size(); ++i) {
                CHECK(ws[i].index() == i);
                CHECK(Word::from_index(i, d, n) == ws[i]);
                if (i > 0) CHECK(ws[i - 1] < ws[i]);
            }
        }
}
