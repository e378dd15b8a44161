#pragma once
// Seeded random inputs shared by the property tests.
#include <algorithm>
#include <random>
#include "ncis/commpoly.hpp"
#include "ncis/freealg.hpp"

namespace ncis::test {

inline Word random_word(std::mt19937_64& rng, int n, std::size_t deg) {
    std::uniform_int_distribution<int> letter(1, n);
    std::vector<Letter> ls(deg);
    for (auto& l : ls) l = static_cast<Letter>(letter(rng));
    return Word(std::move(ls), n);
}

inline Rational random_coeff(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 3);
    int a = num(rng);
    if (a == 0) a = 1;
    Rational q(a, den(rng));
    q.canonicalize();
    return q;
}

inline FreePoly random_free(std::mt19937_64& rng, int n, std::size_t deg, int terms) {
    FreePoly f(n);
    for (int t = 0; t < terms; ++t) f.add_term(random_word(rng, n, deg), random_coeff(rng));
    return f;
}

/// Terms of mixed degree up to max_deg.
inline FreePoly random_free_mixed(std::mt19937_64& rng, int n, std::size_t max_deg, int terms) {
    std::uniform_int_distribution<std::size_t> deg(0, max_deg);
    FreePoly f(n);
    for (int t = 0; t < terms; ++t) f.add_term(random_word(rng, n, deg(rng)), random_coeff(rng));
    return f;
}

inline CommPoly random_comm(std::mt19937_64& rng, int n, int deg, int terms) {
    const auto monos = monomials_of_degree(deg, n);
    std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
    CommPoly p(n);
    for (int t = 0; t < terms; ++t) p.add_term(monos[pick(rng)], random_coeff(rng));
    return p;
}

inline Permutation random_permutation(std::mt19937_64& rng, std::size_t m) {
    std::vector<int> v(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = static_cast<int>(i + 1);
    std::shuffle(v.begin(), v.end(), rng);
    return Permutation::from_one_line(v);
}

inline FreePoly fp(std::string_view text, int n) { return parse_free_poly(text, n); }
inline Word wd(std::string_view text, int n) { return parse_word(text, n); }

}  // namespace ncis::test
