#include "doctest.h"
#include "ncis/errors.hpp"
#include "ncis/linalg.hpp"
#include "ncis/modarith.hpp"
#include "ncis/perp.hpp"
#include "support.hpp"

using namespace ncis;

namespace {

using u128 = unsigned __int128;

SparseRowMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int range, double density) {
    std::uniform_int_distribution<int> val(-range, range);
    std::bernoulli_distribution keep(density);
    SparseRowMatrix m;
    m.n_cols = cols;
    for (std::size_t r = 0; r < rows; ++r) {
        SparseRow row;
        for (std::size_t c = 0; c < cols; ++c)
            if (keep(rng)) {
                const int v = val(rng);
                if (v) row.push(c, v);
            }
        m.rows.push_back(row);
    }
    // Low-rank cases: append combinations of earlier rows.
    for (std::size_t r = 0; r < rows / 2 && rows > 1; ++r) {
        const auto& a = m.rows[rng() % rows];
        const auto& b = m.rows[rng() % rows];
        std::map<u64, i64> sum;
        for (std::size_t i = 0; i < a.size(); ++i) sum[a.cols[i]] += 2 * a.vals[i];
        for (std::size_t i = 0; i < b.size(); ++i) sum[b.cols[i]] -= 3 * b.vals[i];
        SparseRow row;
        for (auto [c, v] : sum)
            if (v) row.push(c, v);
        m.rows.push_back(row);
    }
    return m;
}

std::size_t naive_rank_q(const SparseRowMatrix& m) {
    std::vector<std::vector<Rational>> a(m.rows.size(), std::vector<Rational>(m.n_cols));
    for (std::size_t r = 0; r < m.rows.size(); ++r)
        for (std::size_t i = 0; i < m.rows[r].size(); ++i) a[r][m.rows[r].cols[i]] = m.rows[r].vals[i];
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.n_cols && rank < a.size(); ++c) {
        std::size_t piv = rank;
        while (piv < a.size() && a[piv][c] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t r = rank + 1; r < a.size(); ++r) {
            if (a[r][c] == 0) continue;
            const Rational f = a[r][c] / a[rank][c];
            for (std::size_t j = c; j < m.n_cols; ++j) a[r][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

u64 naive_pow(u64 b, u64 e, u64 p) {
    u64 r = 1;
    for (b %= p; e; e >>= 1, b = static_cast<u64>(u128(b) * b % p))
        if (e & 1) r = static_cast<u64>(u128(r) * b % p);
    return r;
}

std::size_t naive_rank_p(const SparseRowMatrix& m, u64 p) {
    std::vector<std::vector<u64>> a(m.rows.size(), std::vector<u64>(m.n_cols, 0));
    for (std::size_t r = 0; r < m.rows.size(); ++r)
        for (std::size_t i = 0; i < m.rows[r].size(); ++i) {
            const i64 v = m.rows[r].vals[i];
            a[r][m.rows[r].cols[i]] = v >= 0 ? static_cast<u64>(v) % p : p - static_cast<u64>(-v) % p;
        }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.n_cols && rank < a.size(); ++c) {
        std::size_t piv = rank;
        while (piv < a.size() && a[piv][c] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[rank]);
        const u64 inv = naive_pow(a[rank][c], p - 2, p);
        for (std::size_t r = rank + 1; r < a.size(); ++r) {
            if (a[r][c] == 0) continue;
            const u64 f = static_cast<u64>(u128(a[r][c]) * inv % p);
            for (std::size_t j = c; j < m.n_cols; ++j)
                a[r][j] = static_cast<u64>((a[r][j] + u128(p - f) * a[rank][j]) % p);
        }
        ++rank;
    }
    return rank;
}

bool naive_is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

ModularImage image_for(const SparseRowMatrix& m, u64 p, std::size_t& dim) {
    SparseEchelonModp e(m.n_cols, p);
    for (const auto& r : m.rows) e.insert(r);
    const auto ns = e.nullspace();
    dim = ns.size();
    ModularImage img{p, {}};
    for (const auto& v : ns) img.rref.insert(img.rref.end(), v.begin(), v.end());
    rref_modp(img.rref, dim, m.n_cols, p);
    return img;
}

const u64 kP = 1125899906842679ull;  // smallest prime above 2^50

}  // namespace

TEST_CASE("rank examples in every mode") {
    SparseRowMatrix id{3, {}}, zero{3, {}}, prop{2, {}};
    for (u64 i = 0; i < 3; ++i) id.rows.push_back({{i}, {1}});
    zero.rows.push_back({});
    prop.rows.push_back({{0, 1}, {1, 1}});
    prop.rows.push_back({{0, 1}, {2, 2}});
    for (Mode mode : {Mode::Exact, Mode::Modp, Mode::ModpCertified}) {
        CHECK(rank(id, mode, kP).rank == 3);
        CHECK(rank(zero, mode, kP).rank == 0);
        CHECK(rank(prop, mode, kP).rank == 1);
    }
    CHECK(rank(prop, Mode::Modp, kP).prime == kP);
}

TEST_CASE("primes at or below 2^50 are rejected") {
    SparseRowMatrix id{1, {{{0}, {1}}}};
    CHECK_THROWS_AS(rank(id, Mode::Modp, 97), InvalidArgument);
    CHECK_THROWS_AS(rank(id, Mode::Modp, (u64{1} << 50) - 27), InvalidArgument);
    CHECK_THROWS_AS(rank(id, Mode::Modp, kP + 2), InvalidArgument);  // composite
    CHECK_THROWS_AS(modp::require_valid_prime(modp::kMaxPrime + 1), InvalidArgument);
}

TEST_CASE("prime helpers agree with trial division") {
    std::mt19937_64 rng(301);
    for (int t = 0; t < 1000; ++t) {
        const u64 n = rng() % 2000000;
        CHECK(modp::is_prime(n) == naive_is_prime(n));
    }
    CHECK(modp::is_prime(kP));
    for (u64 q = (u64{1} << 50) + 1; q < kP; q += 2) CHECK_FALSE(modp::is_prime(q));
    for (int t = 0; t < 20; ++t) {
        const u64 p = modp::random_prime(rng);
        CHECK(p > modp::kMinPrime);
        CHECK(p < modp::kMaxPrime);
        CHECK(modp::is_prime(p));
        const u64 a = 1 + rng() % (p - 1);
        CHECK(modp::mul(a, modp::inverse(a, p), p) == 1);
        CHECK(modp::pow(a, p - 1, p) == 1);
    }
    CHECK(modp::prime_from_seed(5) == modp::prime_from_seed(5));
    CHECK(modp::prime_from_seed(5) != modp::prime_from_seed(6));
}

TEST_CASE("rational reconstruction") {
    std::mt19937_64 rng(302);
    for (int t = 0; t < 1000; ++t) {
        const i64 a = static_cast<i64>(rng() % 2000000) - 1000000;
        const i64 b = static_cast<i64>(1 + rng() % 1000000);
        if (std::gcd(a, b) != 1) continue;
        const u64 r = modp::mul(modp::from_signed(a, kP), modp::inverse(static_cast<u64>(b), kP), kP);
        const auto q = modp::rational_reconstruct(r, kP);
        REQUIRE(q.has_value());
        CHECK(q->first == a);
        CHECK(q->second == b);
    }
}

TEST_CASE("sparse ranks match dense oracles") {
    std::mt19937_64 rng(303);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t rows = 1 + rng() % 9, cols = 1 + rng() % 9;
        const int range = t % 2 ? 3 : 1000000;
        const SparseRowMatrix m = random_matrix(rng, rows, cols, range, 0.4);
        const std::size_t rq = naive_rank_q(m);
        CHECK(rank_exact(m) == rq);
        CHECK(rank_modp(m, kP) == naive_rank_p(m, kP));
        CHECK(rank_modp(m, kP) == rq);  // small entries: no accidental drop at this size
    }
}

TEST_CASE("small primes expose rank drops consistently") {
    // Exercised through the dense oracle only: the library refuses such primes.
    SparseRowMatrix m{2, {{{0, 1}, {1, 5}}, {{0, 1}, {2, 3}}}};
    CHECK(naive_rank_q(m) == 2);
    CHECK(naive_rank_p(m, 7) == 1);
    CHECK(rank_modp(m, kP) == 2);
}

TEST_CASE("nullspaces annihilate every row") {
    std::mt19937_64 rng(304);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t rows = 1 + rng() % 7, cols = 1 + rng() % 8;
        const SparseRowMatrix m = random_matrix(rng, rows, cols, 4, 0.5);
        const std::size_t rq = naive_rank_q(m);
        SparseEchelonModp em(cols, kP);
        ExactEchelon ee(cols);
        NullspaceTracker tr(cols, kP);
        for (const auto& r : m.rows) {
            em.insert(r);
            ee.insert(r);
            std::vector<u64> dense(cols, 0);
            for (std::size_t i = 0; i < r.size(); ++i) dense[r.cols[i]] = modp::from_signed(r.vals[i], kP);
            const std::size_t before = tr.nullity();
            const bool in_span = tr.annihilates(dense.data());
            const bool dropped = tr.add_row(dense.data());
            CHECK(in_span == !dropped);
            CHECK(tr.nullity() == before - (dropped ? 1 : 0));
        }
        CHECK(em.rank() == rq);
        CHECK(ee.rank() == rq);
        CHECK(tr.nullity() == cols - rq);
        const auto nq = ee.nullspace();
        const auto np = em.nullspace();
        CHECK(nq.size() == cols - rq);
        CHECK(np.size() == cols - rq);
        for (const auto& r : m.rows) {
            for (const auto& v : nq) {
                Rational s = 0;
                for (std::size_t i = 0; i < r.size(); ++i) s += v[r.cols[i]] * r.vals[i];
                CHECK(s == 0);
            }
            for (const auto& v : np) {
                u64 s = 0;
                for (std::size_t i = 0; i < r.size(); ++i)
                    s = modp::add(s, modp::mul(v[r.cols[i]], modp::from_signed(r.vals[i], kP), kP), kP);
                CHECK(s == 0);
            }
            for (std::size_t t2 = 0; t2 < tr.nullity(); ++t2) {
                const auto v = tr.basis_vector(t2);
                u64 s = 0;
                for (std::size_t i = 0; i < r.size(); ++i)
                    s = modp::add(s, modp::mul(v[r.cols[i]], modp::from_signed(r.vals[i], kP), kP), kP);
                CHECK(s == 0);
            }
        }
    }
}

TEST_CASE("dense rref over F_p and Q") {
    std::mt19937_64 rng(305);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
        const SparseRowMatrix m = random_matrix(rng, rows, cols, 5, 0.6);
        const std::size_t rq = naive_rank_q(m);
        std::vector<u64> dense(m.rows.size() * cols, 0);
        std::vector<std::vector<Rational>> q(m.rows.size(), std::vector<Rational>(cols));
        for (std::size_t r = 0; r < m.rows.size(); ++r)
            for (std::size_t i = 0; i < m.rows[r].size(); ++i) {
                dense[r * cols + m.rows[r].cols[i]] = modp::from_signed(m.rows[r].vals[i], kP);
                q[r][m.rows[r].cols[i]] = m.rows[r].vals[i];
            }
        CHECK(rref_modp(dense, m.rows.size(), cols, kP) == rq);
        rref_exact(q);
        CHECK(q.size() == rq);
        for (std::size_t r = 0; r < q.size(); ++r) {
            std::size_t lead = 0;
            while (q[r][lead] == 0) ++lead;
            CHECK(q[r][lead] == 1);
            for (std::size_t o = 0; o < q.size(); ++o)
                if (o != r) CHECK(q[o][lead] == 0);
        }
    }
}

TEST_CASE("certification lifts large entries with several primes") {
    // x_{i+1} = 2^40 x_i, so the nullspace is spanned by (1, 2^40, ..., 2^160).
    SparseRowMatrix m{5, {}};
    for (u64 i = 0; i < 4; ++i) m.rows.push_back({{i, i + 1}, {i64{1} << 40, -1}});
    const RowSource src = RowSource::from_matrix(m);
    std::size_t dim = 0;
    ModularImage first = image_for(m, kP, dim);
    REQUIRE(dim == 1);
    auto more = [&](u64 q) -> std::optional<ModularImage> {
        std::size_t d2 = 0;
        ModularImage img = image_for(m, q, d2);
        if (d2 != dim) return std::nullopt;
        return img;
    };
    const Certificate cert = certify_images(first, dim, 5, src, more, 7, 1, true);
    REQUIRE(cert.ok);
    CHECK(cert.primes_used >= 3);
    REQUIRE(cert.vectors.has_value());
    Integer expect = 1;
    for (std::size_t i = 0; i < 5; ++i, expect *= Integer(1) << 40) CHECK(cert.vectors->entry(i, 0) == expect);
    CHECK_FALSE(certify_images(first, dim, 5, src, more, 7, 1, false, 2).ok);
}

TEST_CASE("certification rejects a wrong image") {
    SparseRowMatrix m{3, {{{0, 1}, {1, -1}}, {{1, 2}, {1, -1}}}};
    SparseRowMatrix looser{3, {{{0, 1}, {1, -1}}}};
    const RowSource src = RowSource::from_matrix(m);
    std::size_t dim = 0;
    ModularImage wrong = image_for(looser, kP, dim);
    REQUIRE(dim == 2);
    auto none = [](u64) -> std::optional<ModularImage> { return std::nullopt; };
    CHECK_FALSE(certify_images(wrong, dim, 3, src, none, 1, 1, false).ok);
    ModularImage right = image_for(m, kP, dim);
    REQUIRE(dim == 1);
    const Certificate c = certify_images(right, dim, 3, src, none, 1, 1, true);
    REQUIRE(c.ok);
    CHECK(c.primes_used == 1);
    for (std::size_t i = 0; i < 3; ++i) CHECK(c.vectors->entry(i, 0) == 1);
}

TEST_CASE("empty nullspace certifies vacuously") {
    SparseRowMatrix id{2, {{{0}, {1}}, {{1}, {1}}}};
    const RowSource src = RowSource::from_matrix(id);
    auto none = [](u64) -> std::optional<ModularImage> { return std::nullopt; };
    const Certificate c = certify_images(ModularImage{kP, {}}, 0, 2, src, none, 1, 1, true);
    CHECK(c.ok);
}

TEST_CASE("random rational nullspaces certify and match exact elimination") {
    std::mt19937_64 rng(306);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t cols = 2 + rng() % 7;
        const SparseRowMatrix m = random_matrix(rng, 1 + rng() % cols, cols, 50, 0.7);
        NullspaceResult exact = solve_rows(RowSource::from_matrix(m), [] {
            PerpConfig c;
            c.mode = Mode::Exact;
            return c;
        }(), true);
        PerpConfig cc;
        cc.seed = static_cast<u64>(t);
        const NullspaceResult cert = solve_rows(RowSource::from_matrix(m), cc, true);
        CHECK(cert.nullity == exact.nullity);
        CHECK(cert.rank.mode == Mode::ModpCertified);
        REQUIRE(cert.basis.size() == exact.basis.size());
        for (const auto& v : cert.basis)
            for (const auto& r : m.rows) {
                Rational s = 0;
                for (std::size_t i = 0; i < r.size(); ++i) s += v[r.cols[i]] * r.vals[i];
                CHECK(s == 0);
            }
    }
}
