#include "ncis/verify.hpp"

#include <random>

#include "ncis/altsys.hpp"
#include "ncis/combinat.hpp"
#include "ncis/commutative.hpp"
#include "ncis/errors.hpp"

namespace ncis {

void Report::check(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    pass = false;
    ++failure_count;
    if (failures.size() < kMaxListed) failures.push_back(what);
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"lemma3", "cor24", "deltaw", "prop42", "products", "closure"};
    return names;
}

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Rational small_coeff(std::mt19937_64& rng) {
    int c = 0;
    while (c == 0) c = uniform(rng, -3, 3);
    return c;
}

FreePoly random_free(std::mt19937_64& rng, int n, int max_deg) {
    FreePoly f(n);
    const int terms = uniform(rng, 1, 4);
    for (int t = 0; t < terms; ++t) {
        const int d = uniform(rng, 0, max_deg);
        std::vector<Letter> letters;
        for (int i = 0; i < d; ++i) letters.push_back(static_cast<Letter>(uniform(rng, 1, n)));
        f.add_term(Word(std::move(letters), n), small_coeff(rng));
    }
    return f;
}

CommPoly random_comm(std::mt19937_64& rng, int n, int max_deg) {
    CommPoly p(n);
    const int terms = uniform(rng, 1, 4);
    for (int t = 0; t < terms; ++t) {
        const int d = uniform(rng, 0, max_deg);
        std::vector<int> e(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < d; ++i) ++e[static_cast<std::size_t>(uniform(rng, 0, n - 1))];
        p.add_term(CommMonomial(std::move(e)), small_coeff(rng));
    }
    return p;
}

Composition random_composition(std::mt19937_64& rng, int max_size) {
    Composition c;
    int left = uniform(rng, 1, max_size);
    while (left > 0) {
        const int part = uniform(rng, 1, left);
        c.parts.push_back(part);
        left -= part;
    }
    return c;
}

SetComposition random_setcomp(std::mt19937_64& rng, int d) {
    std::vector<int> label(static_cast<std::size_t>(d));
    for (auto& l : label) l = uniform(rng, 0, d - 1);
    std::vector<Block> parts(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) parts[static_cast<std::size_t>(label[static_cast<std::size_t>(i)])].push_back(i + 1);
    std::vector<Block> nonempty;
    for (auto& p : parts)
        if (!p.empty()) nonempty.push_back(std::move(p));
    return SetComposition(std::move(nonempty));
}

PerpConfig exact_config(const PerpConfig& base) {
    PerpConfig c = base;
    c.mode = Mode::Exact;
    c.cache_dir.clear();
    return c;
}

}  // namespace

Report verify_lemma3(const VerifyOptions& o) {
    Report r;
    r.suite = "lemma3";
    std::mt19937_64 rng(o.seed);
    for (u64 t = 0; t < o.trials; ++t) {
        const int n = uniform(rng, 1, o.n);
        const FreePoly f = random_free(rng, n, o.max_deg);
        const CommPoly p = random_comm(rng, n, o.max_deg);
        r.check(lemma3_check(f, p), "f=" + f.to_string() + " P=" + p.to_string());
    }
    return r;
}

Report verify_cor24(const VerifyOptions& o) {
    Report r;
    r.suite = "cor24";
    const PerpConfig exact = exact_config(o.config);
    for (int n = 1; n <= o.n; ++n) {
        for (int d = 0; d <= std::min(o.max_deg, 3); ++d) {
            const auto basis = perp_basis_comm(SystemId::SYM, n, d, exact);
            for (const auto& p : basis)
                r.check(is_in_perp(psi(p), SystemId::NCSYM, n), "psi(" + p.to_string() + ") not in the free perp");
            const u64 pre = psi_preimage_perp_dimension(n, d);
            r.check(pre == basis.size(), "n=" + std::to_string(n) + " d=" + std::to_string(d) +
                                             " preimage dim " + std::to_string(pre) + " vs " +
                                             std::to_string(basis.size()));
        }
    }
    return r;
}

Report verify_deltaw(const VerifyOptions& o) {
    Report r;
    r.suite = "deltaw";
    const DeltaWScan scan = delta_w_membership_scan(o.n, o.max_deg);
    r.cases = scan.words;
    r.failure_count = scan.counterexamples;
    r.pass = scan.pass();
    for (std::size_t i = 0; i < scan.failures.size() && i < Report::kMaxListed; ++i) r.failures.push_back(scan.failures[i]);
    return r;
}

Report verify_prop42(const VerifyOptions& o) {
    Report r;
    r.suite = "prop42";
    for (int n = 1; n <= o.n; ++n) {
        for (int d = 0; d <= o.max_deg; ++d) {
            for (const auto& phi : alt_basis(n, d)) {
                const FreePoly expanded = expand_alt(phi);
                for (int ell = 0; ell <= d; ++ell) {
                    for (const auto& a : enumerate_ordered_gen_comps(ell, n, n)) {
                        const FreePoly stripped = d_word(reverse(word_of_gencomp(a)), expanded);
                        for (int k = 1; k + ell <= d; ++k) {
                            for (const auto& psi_part : enumerate_set_partitions(k)) {
                                if (static_cast<int>(psi_part.length()) > n) continue;
                                const FreePoly lhs = apply_reversed(m_phi(psi_part, n), stripped);
                                FreePoly rhs(n);
                                const auto res = act(psi_part, a, phi);
                                if (res && res->sign != 0) rhs = expand_colored(res->comp) * Rational(res->sign);
                                r.check(lhs == rhs, "Phi=" + phi.to_string() + " A=" + a.to_string() +
                                                        " Psi=" + psi_part.to_string());
                            }
                        }
                    }
                }
            }
        }
    }
    return r;
}

Report verify_products(const VerifyOptions& o) {
    Report r;
    r.suite = "products";
    std::mt19937_64 rng(o.seed);
    const int half = std::max(1, o.max_deg / 2);
    for (u64 t = 0; t < o.trials; ++t) {
        const int n = uniform(rng, 1, o.n);
        const Composition alpha = random_composition(rng, half);
        const Composition beta = random_composition(rng, half);
        CommPoly rhs(n);
        for (const auto& [gamma, mult] : quasi_shuffle_compositions(alpha, beta))
            rhs += m_alpha(gamma, n) * Rational(static_cast<long>(mult));
        r.check(m_alpha(alpha, n) * m_alpha(beta, n) == rhs,
                "M_" + alpha.to_string() + " * M_" + beta.to_string() + " n=" + std::to_string(n));

        const SetComposition a = random_setcomp(rng, uniform(rng, 1, half));
        const SetComposition b = random_setcomp(rng, uniform(rng, 1, half));
        FreePoly free_rhs(n);
        for (const auto& [c, mult] : quasi_shuffle_setcomps(a, b))
            free_rhs += mcal_a(c, n) * Rational(static_cast<long>(mult));
        r.check(multiply(mcal_a(a, n), mcal_a(b, n)) == free_rhs,
                "M_" + a.to_string() + " * M_" + b.to_string() + " n=" + std::to_string(n));
    }
    return r;
}

Report verify_closure(const VerifyOptions& o) {
    Report r;
    r.suite = "closure";
    const PerpConfig exact = exact_config(o.config);
    for (int n = 1; n <= o.n; ++n) {
        for (SystemId system : {SystemId::NCSYM, SystemId::NCQSYM}) {
            for (int d = 1; d <= o.max_deg; ++d) {
                for (const auto& p : perp_basis_free(system, n, d, exact)) {
                    for (int a = 1; a <= n; ++a) {
                        const FreePoly q = d_letter(static_cast<Letter>(a), p);
                        r.check(is_in_perp(q, system, n),
                                to_string(system) + " d_x" + std::to_string(a) + "(" + p.to_string() + ")");
                    }
                }
            }
        }
        for (SystemId system : {SystemId::SYM, SystemId::QSYM}) {
            for (int d = 1; d <= o.max_deg; ++d) {
                for (const auto& p : perp_basis_comm(system, n, d, exact)) {
                    for (int i = 1; i <= n; ++i) {
                        r.check(is_in_perp(partial(i, p), system, n),
                                to_string(system) + " d/dx" + std::to_string(i) + "(" + p.to_string() + ")");
                    }
                }
            }
        }
    }
    return r;
}

Report run_suite(std::string_view name, const VerifyOptions& o) {
    if (o.n < 1 || o.max_deg < 0) throw InvalidArgument("verify needs n >= 1 and max-deg >= 0");
    if (name == "lemma3") return verify_lemma3(o);
    if (name == "cor24") return verify_cor24(o);
    if (name == "deltaw") return verify_deltaw(o);
    if (name == "prop42") return verify_prop42(o);
    if (name == "products") return verify_products(o);
    if (name == "closure") return verify_closure(o);
    throw InvalidArgument("unknown suite '" + std::string(name) + "'");
}

}  // namespace ncis
