#include <fstream>
#include <unistd.h>
#include <json.hpp>
#include "doctest.h"
#include "ncis/combinat.hpp"
#include "ncis/commutative.hpp"
#include "ncis/errors.hpp"
#include "ncis/modarith.hpp"
#include "ncis/perp.hpp"
#include "support.hpp"

using namespace ncis;
using test::fp;

namespace {

const SystemId kAll[] = {SystemId::NCSYM, SystemId::NCQSYM, SystemId::SYM, SystemId::QSYM};

PerpConfig cfg(Mode mode, u64 seed = 1, unsigned threads = 1) {
    PerpConfig c;
    c.mode = mode;
    c.seed = seed;
    c.threads = threads;
    return c;
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag)
        : path(std::filesystem::temp_directory_path() / ("ncis_" + tag + "_" + std::to_string(::getpid()))) {
        std::filesystem::remove_all(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

std::vector<FreePoly> free_generator_polys(SystemId sys, int n, int max_k) {
    std::vector<FreePoly> out;
    for (int k = 1; k <= max_k; ++k) {
        if (sys == SystemId::NCSYM)
            for (const auto& phi : enumerate_set_partitions(k)) out.push_back(m_phi(phi, n));
        else
            for (const auto& a : enumerate_set_compositions(k)) out.push_back(mcal_a(a, n));
    }
    std::erase_if(out, [](const FreePoly& f) { return f.is_zero(); });
    return out;
}

}  // namespace

TEST_CASE("perp dimension examples") {
    CHECK(perp_dimension(SystemId::NCSYM, 3, 2).perp_dim == 3);
    CHECK(perp_dimension(SystemId::NCSYM, 4, 4).perp_dim == 47);
    for (SystemId s : kAll)
        for (Mode m : {Mode::Exact, Mode::Modp, Mode::ModpCertified}) CHECK(perp_dimension(s, 3, 0, cfg(m)).perp_dim == 1);
    const DegreeResult r = perp_dimension(SystemId::NCSYM, 3, 3, cfg(Mode::Exact));
    CHECK(r.n_cols == 27);
    CHECK(r.rank.rank == 24);
    CHECK(r.perp_dim == 3);
}

TEST_CASE("exact perp basis examples") {
    const auto b1 = perp_basis_free(SystemId::NCSYM, 2, 1, cfg(Mode::Exact));
    REQUIRE(b1.size() == 1);
    CHECK(b1[0] == fp("x1 - x2", 2));
    CHECK(perp_basis_free(SystemId::NCSYM, 2, 2, cfg(Mode::Exact)).empty());
    CHECK(perp_basis_free(SystemId::NCSYM, 3, 1, cfg(Mode::Exact)).size() == 2);
    const auto sym = perp_basis_comm(SystemId::SYM, 3, 3, cfg(Mode::Exact));
    REQUIRE(sym.size() == 1);
    const CommPoly v = vandermonde(3);
    CHECK((sym[0] == v || sym[0] == v * Rational(-1)));
    CHECK(perp_basis_free(SystemId::NCSYM, 3, 4, cfg(Mode::Exact)).empty());
}

TEST_CASE("exact mode refuses oversized bases") {
    PerpConfig c = cfg(Mode::Exact);
    c.exact_col_bound = 16;
    CHECK_THROWS_AS(perp_basis_free(SystemId::NCSYM, 3, 3, c), ResourceError);
}

TEST_CASE("hilbert series examples") {
    CHECK(hilbert_series(SystemId::NCSYM, 3, 4, cfg(Mode::Exact)).coefficients() == std::vector<u64>{1, 2, 3, 3, 0});
    CHECK(hilbert_series(SystemId::NCSYM, 5, 3).coefficients() == std::vector<u64>{1, 4, 15, 55});
    CHECK(hilbert_series(SystemId::NCQSYM, 1, 3).coefficients() == std::vector<u64>{1, 0, 0, 0});
    CHECK(hilbert_series(SystemId::NCSYM, 1, 3).coefficients() == std::vector<u64>{1, 0, 0, 0});
    CHECK(hilbert_series(SystemId::NCSYM, 2, 4).coefficients() == std::vector<u64>{1, 1, 0, 0, 0});
    CHECK(hilbert_series(SystemId::NCSYM, 3, 4).total() == 9);
}

TEST_CASE("is_in_perp examples") {
    CHECK(is_in_perp(fp("x1 - x2", 2), SystemId::NCSYM, 2));
    CHECK_FALSE(is_in_perp(fp("x1 + x2", 2), SystemId::NCSYM, 2));
    CHECK(is_in_perp(delta_w(test::wd("x1*x1*x2", 3), 3), SystemId::NCSYM, 3));
    CHECK(is_in_perp(delta_w(test::wd("x2*x1*x1", 3), 3), SystemId::NCSYM, 3));
    CHECK_THROWS_AS(is_in_perp(fp("x1 + x1*x2", 2), SystemId::NCSYM, 2), InvalidArgument);
}

TEST_CASE("certified modular dimensions") {
    const DegreeResult a = perp_dimension(SystemId::NCSYM, 3, 3, cfg(Mode::ModpCertified));
    CHECK(a.perp_dim == 3);
    CHECK(a.rank.mode == Mode::ModpCertified);
    const DegreeResult b = certify_modp(SystemId::NCSYM, 4, 5, modp::prime_from_seed(3));
    CHECK(b.perp_dim == 102);
    CHECK(b.rank.mode == Mode::ModpCertified);
    CHECK(certify_modp(SystemId::NCSYM, 3, 4, modp::prime_from_seed(3)).perp_dim == 0);
}

TEST_CASE("modes agree wherever exact elimination runs") {
    for (SystemId s : kAll)
        for (int n = 1; n <= 4; ++n) {
            const int top = n <= 2 ? 6 : (n == 3 ? 5 : 4);
            const auto e = hilbert_series(s, n, top, cfg(Mode::Exact)).coefficients();
            CHECK(hilbert_series(s, n, top, cfg(Mode::ModpCertified)).coefficients() == e);
            CHECK(hilbert_series(s, n, top, cfg(Mode::Modp)).coefficients() == e);
        }
}

TEST_CASE("two random primes give the same dimensions") {
    for (SystemId s : kAll)
        for (int n = 2; n <= 4; ++n) {
            const int top = n == 4 ? 5 : 6;
            CHECK(hilbert_series(s, n, top, cfg(Mode::Modp, 11)).coefficients() ==
                  hilbert_series(s, n, top, cfg(Mode::Modp, 12)).coefficients());
        }
    CHECK(cfg(Mode::Modp, 11).resolved_prime() != cfg(Mode::Modp, 12).resolved_prime());
}

TEST_CASE("dimensions do not depend on worker count or row order") {
    for (SystemId s : kAll) {
        const auto one = hilbert_series(s, 3, 5, cfg(Mode::ModpCertified, 1, 1)).coefficients();
        CHECK(hilbert_series(s, 3, 5, cfg(Mode::ModpCertified, 1, 3)).coefficients() == one);
        CHECK(hilbert_series(s, 3, 5, cfg(Mode::Exact, 1, 4)).coefficients() == one);
    }
    std::mt19937_64 rng(501);
    for (SystemId s : kAll)
        for (int d = 1; d <= 4; ++d) {
            SparseRowMatrix m = IdealRowStream(s, 3, d).materialize();
            const u64 base = solve_rows(RowSource::from_matrix(m), cfg(Mode::Modp), false).nullity;
            for (int t = 0; t < 3; ++t) {
                std::shuffle(m.rows.begin(), m.rows.end(), rng);
                CHECK(solve_rows(RowSource::from_matrix(m), cfg(Mode::Modp), false).nullity == base);
                CHECK(solve_rows(RowSource::from_matrix(m), cfg(Mode::Exact), false).nullity == base);
            }
        }
}

TEST_CASE("perp bases are orthogonal, primitive and sign-normalized") {
    for (SystemId s : {SystemId::NCSYM, SystemId::NCQSYM})
        for (int n = 2; n <= 3; ++n)
            for (int d = 1; d <= 4; ++d)
                for (Mode m : {Mode::Exact, Mode::ModpCertified}) {
                    const auto basis = perp_basis_free(s, n, d, cfg(m));
                    CHECK(basis.size() == perp_dimension(s, n, d, cfg(Mode::Exact)).perp_dim);
                    for (const auto& p : basis) {
                        CHECK(is_in_perp(p, s, n));
                        Integer g = 0;
                        for (const auto& [w, c] : p.terms()) {
                            CHECK(c.get_den() == 1);
                            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
                        }
                        CHECK(g == 1);
                        CHECK(p.terms().begin()->second > 0);
                    }
                    CHECK(span_dimension(basis) == basis.size());
                }
}

TEST_CASE("free perps are closed under derivation") {
    for (SystemId s : {SystemId::NCSYM, SystemId::NCQSYM})
        for (int n = 1; n <= 3; ++n)
            for (int d = 1; d <= 4; ++d) {
                const auto lower = perp_basis_free(s, n, d - 1, cfg(Mode::Exact));
                for (const auto& p : perp_basis_free(s, n, d, cfg(Mode::Exact)))
                    for (int a = 1; a <= n; ++a) {
                        std::vector<FreePoly> ext = lower;
                        ext.push_back(d_letter(static_cast<Letter>(a), p));
                        CHECK(span_dimension(ext) == lower.size());
                    }
            }
}

TEST_CASE("generators applied to perp elements land in lower perps") {
    for (SystemId s : {SystemId::NCSYM, SystemId::NCQSYM})
        for (int n = 1; n <= 3; ++n)
            for (int d = 1; d <= 4; ++d) {
                const auto gens = free_generator_polys(s, n, d);
                for (const auto& p : perp_basis_free(s, n, d, cfg(Mode::Exact)))
                    for (const auto& g : gens) {
                        const FreePoly r = apply_reversed(g, p);
                        if (g.degree() == d) CHECK(r.is_zero());
                        else CHECK(is_in_perp(r, s, n));
                    }
            }
}

TEST_CASE("commutative perps are closed under partial derivatives") {
    for (SystemId s : {SystemId::SYM, SystemId::QSYM})
        for (int n = 1; n <= 3; ++n)
            for (int d = 1; d <= 5; ++d)
                for (const auto& p : perp_basis_comm(s, n, d, cfg(Mode::Exact)))
                    for (int i = 1; i <= n; ++i) CHECK(is_in_perp(partial(i, p), s, n));
}

TEST_CASE("result cache is read through") {
    TempDir dir("cache");
    PerpConfig c = cfg(Mode::ModpCertified, 5);
    c.cache_dir = dir.path.string();
    const HilbertSeries first = hilbert_series(SystemId::NCSYM, 3, 4, c);
    for (const auto& d : first.degrees) CHECK_FALSE(d.from_cache);
    const HilbertSeries second = hilbert_series(SystemId::NCSYM, 3, 4, c);
    CHECK(second.coefficients() == first.coefficients());
    for (std::size_t d = 1; d < second.degrees.size(); ++d) CHECK(second.degrees[d].from_cache);

    const ResultCache cache(dir.path);
    const auto name = ResultCache::record_name(SystemId::NCSYM, 3, 2, Mode::ModpCertified, c.resolved_prime(), {});
    std::ifstream in(dir.path / name);
    REQUIRE(in);
    const auto j = nlohmann::json::parse(in);
    CHECK(j.at("system") == "ncsym");
    CHECK(j.at("n") == 3);
    CHECK(j.at("d") == 2);
    CHECK(j.at("mode") == "modp_certified");
    CHECK(j.at("prime") == c.resolved_prime());
    CHECK(j.at("n_cols") == 9);
    CHECK(j.at("rank") == 6);
    CHECK(j.at("perp_dim") == 3);
    CHECK(j.contains("elapsed_ms"));
    const std::size_t stored = cache.entries().size();
    CHECK(stored >= 4);
    CHECK(cache.clear() == stored);
    CHECK(cache.entries().empty());

    PerpConfig e = cfg(Mode::Exact);
    e.cache_dir = dir.path.string();
    CHECK(perp_dimension(SystemId::QSYM, 3, 3, e).perp_dim == perp_dimension(SystemId::QSYM, 3, 3, e).perp_dim);
    CHECK(perp_dimension(SystemId::QSYM, 3, 3, e).from_cache);
}

TEST_CASE("memory cap aborts with a resumable checkpoint") {
    TempDir dir("ckpt");
    PerpConfig c = cfg(Mode::ModpCertified, 9);
    c.cache_dir = dir.path.string();
    c.max_entries = 6000;
    CHECK_THROWS_AS(hilbert_series(SystemId::NCSYM, 4, 5, c), ResourceError);
    const ResultCache cache(dir.path);
    CHECK(std::filesystem::exists(cache.checkpoint_path(SystemId::NCSYM, 4, Mode::ModpCertified, c.resolved_prime(), {})));
    c.max_entries = PerpConfig{}.max_entries;
    const HilbertSeries hs = hilbert_series(SystemId::NCSYM, 4, 5, c);
    CHECK(hs.coefficients() == std::vector<u64>{1, 3, 8, 20, 47, 102});
    CHECK(hs.degrees[1].from_cache);
    CHECK_FALSE(hs.degrees[5].from_cache);
}

TEST_CASE("modes and configuration parsing") {
    CHECK(parse_mode("exact") == Mode::Exact);
    CHECK(parse_mode("modp") == Mode::Modp);
    CHECK(parse_mode("modp_certified") == Mode::ModpCertified);
    CHECK(parse_mode("certified") == Mode::ModpCertified);
    CHECK_THROWS_AS(parse_mode("fast"), InvalidArgument);
    PerpConfig c;
    c.prime = 97;
    CHECK_THROWS_AS(c.resolved_prime(), InvalidArgument);
    CHECK_THROWS_AS(perp_dimension(SystemId::NCSYM, 2, 1, c), InvalidArgument);
}
