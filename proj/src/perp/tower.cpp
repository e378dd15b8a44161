#include <algorithm>
#include <cstring>
#include <fstream>
#include <random>

#include "ncis/errors.hpp"
#include "ncis/modarith.hpp"
#include "ncis/parallel.hpp"
#include "ncis/perp.hpp"
#include "ncis/simd.hpp"

namespace ncis {

namespace {
constexpr u64 kBatchRows = 64;
}

FreePerpTower::FreePerpTower(SystemId system, int n, u64 p, unsigned threads, u64 max_entries)
    : system_(system), n_(n), p_(p), threads_(std::max(1u, threads)), max_entries_(max_entries) {
    if (!is_free(system)) throw InvalidArgument("the derivative tower needs a free system");
    if (n < 1) throw InvalidArgument("need n >= 1");
    modp::require_valid_prime(p);
}

void FreePerpTower::advance(bool canonical) {
    const int d = degree_ + 1;
    const u64 n = static_cast<u64>(n_);
    const u64 words_prev = ipow(n, static_cast<unsigned>(d - 1));
    const u64 words = ipow(n, static_cast<unsigned>(d));
    rows_consumed_ = 0;
    if (dim_ == 0) {
        degree_ = d;
        basis_.clear();
        return;
    }
    const std::size_t m = dim_;
    const std::size_t c = n * m;
    const u64 estimate = c * c + 2 * m * words_prev + kBatchRows * c;
    if (estimate > max_entries_) {
        throw ResourceError("degree " + std::to_string(d) + " needs about " + std::to_string(estimate) +
                            " words of working memory, above the configured cap of " +
                            std::to_string(max_entries_));
    }
    if (gens_degree_ < d) {
        gens_ = free_generators(system_, n_, d);
        gens_degree_ = d;
    }

    std::vector<u64> bt(words_prev * m);
    for (std::size_t j = 0; j < m; ++j)
        for (u64 w = 0; w < words_prev; ++w) bt[w * m + j] = basis_[j * words_prev + w];

    const auto& kern = simd::active_kernels();
    NullspaceTracker tracker(c, p_, threads_);
    std::vector<std::vector<std::pair<u64, u64>>> terms(gens_.size());
    for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
        const u64 nv = ipow(n, static_cast<unsigned>(d - gens_[gi].degree));
        for (const auto& [w, coeff] : gens_[gi].terms) terms[gi].emplace_back(w * nv, modp::from_signed(coeff, p_));
    }
    auto build_row = [&](std::size_t gi, u64 v, u64* out) {
        std::fill(out, out + c, 0);
        for (const auto& [base, coeff] : terms[gi]) {
            const u64 word = base + v;
            kern.axpy(out + (word / words_prev) * m, bt.data() + (word % words_prev) * m, m, coeff, p_);
        }
    };

    // Rows are fed in batches. A random combination that vanishes on the
    // current nullspace lets the whole batch be skipped; otherwise the batch
    // is bisected. Rows missed this way are caught by the exact check below.
    constexpr std::size_t kBatch = kBatchRows;
    std::mt19937_64 rng(p_ ^ static_cast<u64>(d));
    std::uniform_int_distribution<u64> coeff_dist(1, p_ - 1);
    std::vector<u64> batch(kBatch * c);
    std::vector<u64> combo(c);
    std::size_t filled = 0;
    auto test = [&](auto&& self, std::size_t lo, std::size_t hi) -> void {
        if (tracker.nullity() == 0) return;
        if (hi - lo == 1) {
            tracker.add_row(batch.data() + lo * c);
            return;
        }
        std::fill(combo.begin(), combo.end(), 0);
        for (std::size_t i = lo; i < hi; ++i) kern.axpy(combo.data(), batch.data() + i * c, c, coeff_dist(rng), p_);
        if (tracker.annihilates(combo.data())) return;
        const std::size_t mid = lo + (hi - lo) / 2;
        self(self, lo, mid);
        self(self, mid, hi);
    };
    auto flush = [&] {
        if (filled > 0) test(test, 0, filled);
        filled = 0;
    };
    for (std::size_t gi = 0; gi < gens_.size() && tracker.nullity() > 0; ++gi) {
        const u64 nv = ipow(n, static_cast<unsigned>(d - gens_[gi].degree));
        for (u64 v = 0; v < nv && tracker.nullity() > 0; ++v) {
            build_row(gi, v, batch.data() + filled * c);
            ++rows_consumed_;
            if (++filled == kBatch) flush();
        }
    }
    flush();

    std::vector<u64> next;
    std::vector<u64> by_word;
    std::vector<u64> acc;
    std::size_t k = 0;
    for (;;) {
        k = tracker.nullity();
        if (estimate + 2 * k * words > max_entries_) {
            throw ResourceError("degree " + std::to_string(d) + " needs about " +
                                std::to_string(estimate + 2 * k * words) +
                                " words of working memory, above the configured cap of " +
                                std::to_string(max_entries_));
        }
        next.assign(k * words, 0);
        parallel_for(k, threads_, [&](std::size_t begin, std::size_t end) {
            for (std::size_t t = begin; t < end; ++t) {
                u64* dst = next.data() + t * words;
                for (u64 a = 0; a < n; ++a) {
                    for (std::size_t j = 0; j < m; ++j) {
                        const u64 coeff = tracker.at(a * m + j, t);
                        if (coeff != 0)
                            kern.axpy(dst + a * words_prev, basis_.data() + j * words_prev, words_prev, coeff, p_);
                    }
                }
            }
        });
        if (k == 0) break;
        by_word.assign(words * k, 0);
        for (std::size_t t = 0; t < k; ++t)
            for (u64 w = 0; w < words; ++w) by_word[w * k + t] = next[t * words + w];
        acc.assign(k, 0);
        std::vector<std::pair<std::size_t, u64>> missed;
        for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
            const u64 nv = ipow(n, static_cast<unsigned>(d - gens_[gi].degree));
            for (u64 v = 0; v < nv; ++v) {
                std::fill(acc.begin(), acc.end(), 0);
                for (const auto& [base, coeff] : terms[gi]) kern.axpy(acc.data(), by_word.data() + (base + v) * k, k, coeff, p_);
                if (std::any_of(acc.begin(), acc.end(), [](u64 x) { return x != 0; })) missed.emplace_back(gi, v);
            }
        }
        if (missed.empty()) break;
        for (const auto& [gi, v] : missed) {
            build_row(gi, v, combo.data());
            tracker.add_row(combo.data());
        }
    }
    by_word = {};
    if (canonical && k > 0) rref_modp(next, k, words, p_, threads_);
    basis_ = std::move(next);
    dim_ = k;
    degree_ = d;
}

Certificate FreePerpTower::certify(u64 seed, bool want_vectors) const {
    std::vector<FreePerpTower> helpers;
    return certify_tower(*this, helpers, seed, want_vectors);
}

Certificate certify_tower(const FreePerpTower& tower, std::vector<FreePerpTower>& helpers, u64 seed,
                          bool want_vectors) {
    const int d = tower.degree();
    if (d == 0) {
        Certificate c;
        c.ok = true;
        c.primes_used = 1;
        if (want_vectors) c.vectors = LiftedBasis{1, 1, false, {1}, {}};
        return c;
    }
    const u64 words = ipow(static_cast<u64>(tower.n()), static_cast<unsigned>(d));
    IdealRowStream stream(tower.system(), tower.n(), d);
    std::size_t used = 0;
    auto more = [&](u64 p) -> std::optional<ModularImage> {
        const std::size_t idx = used++;
        if (idx < helpers.size() && helpers[idx].prime() != p) helpers.erase(helpers.begin() + static_cast<std::ptrdiff_t>(idx), helpers.end());
        if (idx >= helpers.size())
            helpers.emplace_back(tower.system(), tower.n(), p, tower.threads(), tower.max_entries());
        FreePerpTower& h = helpers[idx];
        if (h.degree() > d) return std::nullopt;
        while (h.degree() < d) h.advance(true);
        if (h.dim() != tower.dim()) return std::nullopt;
        return ModularImage{p, h.basis()};
    };
    return certify_images(ModularImage{tower.prime(), tower.basis()}, tower.dim(), words, stream.source(), more,
                          seed, tower.threads(), want_vectors);
}

namespace {
constexpr char kMagic[8] = {'N', 'C', 'I', 'S', 'T', 'W', 'R', '1'};
}

void FreePerpTower::save(const std::filesystem::path& file) const {
    std::filesystem::create_directories(file.parent_path());
    const auto tmp = file.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ResourceError("cannot write checkpoint " + tmp);
        const u64 header[5] = {static_cast<u64>(system_), static_cast<u64>(n_), p_, static_cast<u64>(degree_), dim_};
        out.write(kMagic, sizeof kMagic);
        out.write(reinterpret_cast<const char*>(header), sizeof header);
        out.write(reinterpret_cast<const char*>(basis_.data()), static_cast<std::streamsize>(basis_.size() * sizeof(u64)));
        if (!out) throw ResourceError("cannot write checkpoint " + tmp);
    }
    std::filesystem::rename(tmp, file);
}

bool FreePerpTower::load(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) return false;
    char magic[8];
    u64 header[5];
    in.read(magic, sizeof magic);
    in.read(reinterpret_cast<char*>(header), sizeof header);
    if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0) return false;
    if (header[0] != static_cast<u64>(system_) || header[1] != static_cast<u64>(n_) || header[2] != p_) return false;
    const int degree = static_cast<int>(header[3]);
    const std::size_t dim = header[4];
    const u64 words = ipow(static_cast<u64>(n_), static_cast<unsigned>(degree));
    std::vector<u64> basis(dim * words);
    in.read(reinterpret_cast<char*>(basis.data()), static_cast<std::streamsize>(basis.size() * sizeof(u64)));
    if (!in) return false;
    degree_ = degree;
    dim_ = dim;
    basis_ = std::move(basis);
    return true;
}

}  // namespace ncis
