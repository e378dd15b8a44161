#include <algorithm>
#include <atomic>
#include <random>

#include "ncis/linalg.hpp"
#include "ncis/modarith.hpp"
#include "ncis/parallel.hpp"
#include "ncis/simd.hpp"

namespace ncis {

namespace {

void set_u64(Integer& z, u64 v) { mpz_import(z.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v); }

std::size_t bits(const Integer& z) { return z == 0 ? 0 : mpz_sizeinbase(z.get_mpz_t(), 2); }

// a/b ≡ r (mod m) with |a| <= bound and 0 < b <= bound.
bool reconstruct(const Integer& r, const Integer& m, const Integer& bound, Integer& a, Integer& b) {
    Integer r0 = m, r1 = r, t0 = 0, t1 = 1, q, tmp;
    while (r1 > bound) {
        mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
        tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (t1 == 0 || abs(t1) > bound) return false;
    Integer g;
    mpz_gcd(g.get_mpz_t(), t1.get_mpz_t(), m.get_mpz_t());
    if (g != 1) return false;
    a = t1 < 0 ? Integer(-r1) : r1;
    b = abs(t1);
    return true;
}

struct Crt {
    Integer modulus = 1;
    Integer half;
    Integer bound;
    std::vector<Integer> coeffs;

    explicit Crt(const std::vector<ModularImage>& images) {
        for (const auto& img : images) {
            Integer p;
            set_u64(p, img.p);
            modulus *= p;
        }
        for (const auto& img : images) {
            Integer p, rest, inv;
            set_u64(p, img.p);
            rest = modulus / p;
            mpz_invert(inv.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
            coeffs.push_back(rest * inv);
        }
        half = modulus / 2;
        mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    }

    void combine(const std::vector<ModularImage>& images, std::size_t offset, Integer& x) const {
        x = 0;
        for (std::size_t j = 0; j < images.size(); ++j) {
            const u64 r = images[j].rref[offset];
            if (r == 0) continue;
            Integer rz;
            set_u64(rz, r);
            x += rz * coeffs[j];
        }
        mpz_mod(x.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
    }

    void symmetric(Integer& y) const {
        if (y > half) y -= modulus;
    }
};

}  // namespace

std::vector<Rational> LiftedBasis::vector_at(std::size_t t) const {
    std::vector<Rational> v(n_cols);
    for (std::size_t i = 0; i < n_cols; ++i) v[i] = Rational(entry(i, t));
    return v;
}

std::vector<std::size_t> pivot_columns(const ModularImage& img, std::size_t dim, std::size_t n_cols) {
    std::vector<std::size_t> out;
    for (std::size_t t = 0; t < dim; ++t) {
        const u64* row = img.rref.data() + t * n_cols;
        std::size_t c = 0;
        while (c < n_cols && row[c] == 0) ++c;
        out.push_back(c);
    }
    return out;
}

bool residues_orthogonal(const ModularImage& img, std::size_t dim, std::size_t n_cols, const RowSource& rows,
                         unsigned threads, u64* max_row_l1) {
    if (max_row_l1) *max_row_l1 = 0;
    if (dim == 0) return true;
    const u64 p = img.p;
    std::vector<u64> by_word(n_cols * dim);
    for (std::size_t t = 0; t < dim; ++t)
        for (std::size_t i = 0; i < n_cols; ++i) by_word[i * dim + t] = img.rref[t * n_cols + i];
    const simd::ModKernels& k = simd::active_kernels();
    std::atomic<bool> ok{true};
    std::atomic<u64> l1_max{0};
    parallel_parts(std::max(1u, threads), [&](unsigned part, unsigned n_parts) {
        std::vector<u64> acc(dim);
        u64 local_l1 = 0;
        rows.for_each(part, n_parts, [&](const SparseRow& row) {
            if (!ok.load(std::memory_order_relaxed)) return;
            std::fill(acc.begin(), acc.end(), 0);
            u64 l1 = 0;
            for (std::size_t e = 0; e < row.size(); ++e) {
                const i64 v = row.vals[e];
                l1 += static_cast<u64>(v < 0 ? -v : v);
                const u64 c = modp::from_signed(v, p);
                if (c != 0) k.axpy(acc.data(), by_word.data() + row.cols[e] * dim, dim, c, p);
            }
            local_l1 = std::max(local_l1, l1);
            for (u64 a : acc) {
                if (a != 0) {
                    ok = false;
                    return;
                }
            }
        });
        u64 seen = l1_max.load();
        while (local_l1 > seen && !l1_max.compare_exchange_weak(seen, local_l1)) {
        }
    });
    if (max_row_l1) *max_row_l1 = l1_max.load();
    return ok.load();
}

std::optional<CrtLift> crt_lift(const std::vector<ModularImage>& images, std::size_t dim, std::size_t n_cols,
                                bool want_vectors, unsigned threads) {
    const Crt crt(images);
    CrtLift out;
    out.modulus_bits = bits(crt.modulus);
    std::vector<Integer> denominators(dim, 1);
    std::vector<std::size_t> vec_bits(dim, 0);
    std::atomic<bool> failed{false};
    parallel_for(dim, threads, [&](std::size_t begin, std::size_t end) {
        Integer x, y, a, b;
        for (std::size_t t = begin; t < end && !failed.load(std::memory_order_relaxed); ++t) {
            Integer& den = denominators[t];
            // Entry i scaled by den at the time it was seen; later growth of
            // den multiplies it by at most 2^(bits(final) - bits(den_i) + 1).
            long excess = 0;
            for (std::size_t i = 0; i < n_cols; ++i) {
                crt.combine(images, t * n_cols + i, x);
                if (x == 0) continue;
                y = x * den;
                mpz_mod(y.get_mpz_t(), y.get_mpz_t(), crt.modulus.get_mpz_t());
                crt.symmetric(y);
                if (abs(y) > crt.bound) {
                    if (!reconstruct(y < 0 ? Integer(y + crt.modulus) : y, crt.modulus, crt.bound, a, b)) {
                        failed = true;
                        return;
                    }
                    den *= b;
                    y = a;
                }
                excess = std::max(excess, static_cast<long>(bits(y)) - static_cast<long>(bits(den)) + 1);
            }
            vec_bits[t] = static_cast<std::size_t>(std::max(0L, excess + static_cast<long>(bits(den))));
        }
    });
    if (failed.load()) return std::nullopt;
    for (auto b : vec_bits) out.max_bits = std::max(out.max_bits, b);
    if (!want_vectors) return out;

    LiftedBasis lifted;
    lifted.dim = dim;
    lifted.n_cols = n_cols;
    lifted.big = out.max_bits > 62;
    if (lifted.big) {
        lifted.wide.assign(dim * n_cols, 0);
    } else {
        lifted.small.assign(dim * n_cols, 0);
    }
    parallel_for(dim, threads, [&](std::size_t begin, std::size_t end) {
        Integer x;
        for (std::size_t t = begin; t < end; ++t) {
            for (std::size_t i = 0; i < n_cols; ++i) {
                crt.combine(images, t * n_cols + i, x);
                if (x == 0) continue;
                x *= denominators[t];
                mpz_mod(x.get_mpz_t(), x.get_mpz_t(), crt.modulus.get_mpz_t());
                crt.symmetric(x);
                if (lifted.big) {
                    lifted.wide[i * dim + t] = x;
                } else {
                    lifted.small[i * dim + t] = x.get_si();
                }
            }
        }
    });
    out.vectors = std::move(lifted);
    return out;
}

Certificate certify_images(ModularImage first, std::size_t dim, std::size_t n_cols, const RowSource& rows,
                           const std::function<std::optional<ModularImage>(u64)>& more, u64 seed,
                           unsigned threads, bool want_vectors, std::size_t max_primes) {
    Certificate cert;
    if (dim == 0) {
        cert.ok = true;
        cert.primes_used = 1;
        if (want_vectors) cert.vectors = LiftedBasis{0, n_cols, false, {}, {}};
        return cert;
    }
    u64 l1 = 0;
    if (!residues_orthogonal(first, dim, n_cols, rows, threads, &l1)) return cert;
    std::size_t l1_bits = 0;
    while ((l1 >> l1_bits) != 0) ++l1_bits;
    const auto pivots = pivot_columns(first, dim, n_cols);

    std::vector<ModularImage> images;
    images.push_back(std::move(first));
    std::mt19937_64 rng(seed);
    for (;;) {
        auto lift = crt_lift(images, dim, n_cols, want_vectors, threads);
        if (lift && lift->max_bits + l1_bits + 2 <= lift->modulus_bits) {
            cert.ok = true;
            cert.primes_used = images.size();
            cert.vectors = std::move(lift->vectors);
            return cert;
        }
        if (images.size() >= max_primes) return cert;
        u64 p = 0;
        do {
            p = modp::random_prime(rng);
        } while (std::any_of(images.begin(), images.end(), [&](const ModularImage& m) { return m.p == p; }));
        auto next = more(p);
        if (!next || next->p != p || next->rref.size() != dim * n_cols) return cert;
        if (pivot_columns(*next, dim, n_cols) != pivots) return cert;
        if (!residues_orthogonal(*next, dim, n_cols, rows, threads)) return cert;
        images.push_back(std::move(*next));
    }
}

}  // namespace ncis
