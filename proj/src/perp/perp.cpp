#include "ncis/perp.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>

#include "ncis/errors.hpp"
#include "ncis/modarith.hpp"

namespace ncis {

std::string to_string(Mode m) {
    switch (m) {
        case Mode::Exact: return "exact";
        case Mode::Modp: return "modp";
        case Mode::ModpCertified: return "modp_certified";
    }
    return "?";
}

Mode parse_mode(std::string_view text) {
    std::string s(text);
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (s == "exact") return Mode::Exact;
    if (s == "modp") return Mode::Modp;
    if (s == "modp_certified" || s == "certified") return Mode::ModpCertified;
    throw InvalidArgument("unknown mode '" + std::string(text) + "'");
}

u64 PerpConfig::resolved_prime() const {
    if (prime) {
        modp::require_valid_prime(*prime);
        return *prime;
    }
    return modp::prime_from_seed(seed);
}

std::vector<u64> HilbertSeries::coefficients() const {
    std::vector<u64> out;
    for (const auto& d : degrees) out.push_back(d.perp_dim);
    return out;
}

u64 HilbertSeries::total() const {
    u64 s = 0;
    for (const auto& d : degrees) s += d.perp_dim;
    return s;
}

namespace {

using Clock = std::chrono::steady_clock;

u64 ms_since(Clock::time_point t0) {
    return static_cast<u64>(std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count());
}

void require_exact_size(u64 n_cols, const PerpConfig& config) {
    if (n_cols > config.exact_col_bound) {
        throw ResourceError("exact elimination over " + std::to_string(n_cols) +
                            " columns exceeds the configured bound of " + std::to_string(config.exact_col_bound));
    }
}

NullspaceResult solve_exact(const RowSource& rows, const PerpConfig& config, bool want_basis) {
    require_exact_size(rows.n_cols, config);
    NullspaceResult out;
    out.n_cols = rows.n_cols;
    ExactEchelon ech(rows.n_cols);
    u64 consumed = 0;
    rows.for_each(0, 1, [&](const SparseRow& r) {
        if (ech.full_rank()) return;
        ++consumed;
        ech.insert(r);
    });
    out.rank = {ech.rank(), Mode::Exact, std::nullopt, consumed};
    out.nullity = rows.n_cols - ech.rank();
    if (want_basis) out.basis = ech.nullspace();
    return out;
}

}  // namespace

NullspaceResult solve_rows(const RowSource& rows, const PerpConfig& config, bool want_basis) {
    if (config.mode == Mode::Exact) return solve_exact(rows, config, want_basis);
    const u64 p = config.resolved_prime();
    NullspaceResult out;
    out.n_cols = rows.n_cols;
    SparseEchelonModp ech(rows.n_cols, p);
    u64 consumed = 0;
    rows.for_each(0, 1, [&](const SparseRow& r) {
        if (ech.full_rank()) return;
        ++consumed;
        ech.insert(r);
        if (ech.stored_entries() > config.max_entries)
            throw ResourceError("echelon form exceeds the configured entry cap");
    });
    out.rank = {ech.rank(), config.mode, p, consumed};
    out.nullity = rows.n_cols - ech.rank();
    if (config.mode == Mode::Modp && !want_basis) return out;

    auto image_for = [&](u64 q, SparseEchelonModp& e) {
        const auto null_vectors = e.nullspace();
        ModularImage img{q, {}};
        img.rref.reserve(null_vectors.size() * rows.n_cols);
        for (const auto& v : null_vectors) img.rref.insert(img.rref.end(), v.begin(), v.end());
        rref_modp(img.rref, null_vectors.size(), rows.n_cols, q, config.threads);
        return img;
    };
    auto more = [&](u64 q) -> std::optional<ModularImage> {
        SparseEchelonModp e(rows.n_cols, q);
        rows.for_each(0, 1, [&](const SparseRow& r) {
            if (!e.full_rank()) e.insert(r);
        });
        if (e.rank() != ech.rank()) return std::nullopt;
        return image_for(q, e);
    };
    auto cert = certify_images(image_for(p, ech), out.nullity, rows.n_cols, rows, more, config.seed,
                               config.threads, want_basis);
    if (cert.ok) {
        out.rank.mode = Mode::ModpCertified;
        if (want_basis)
            for (std::size_t t = 0; t < cert.vectors->dim; ++t) out.basis.push_back(cert.vectors->vector_at(t));
        return out;
    }
    if (config.mode == Mode::Modp) {
        throw CertificationError("mod-p basis could not be lifted; rerun in exact mode");
    }
    if (rows.n_cols > config.exact_col_bound) {
        throw CertificationError("certification failed for prime " + std::to_string(p) +
                                 " and the size is beyond the exact fallback bound");
    }
    return solve_exact(rows, config, want_basis);
}

RankResult rank(const SparseRowMatrix& m, Mode mode, std::optional<u64> prime, unsigned threads) {
    PerpConfig config;
    config.mode = mode;
    config.prime = prime;
    config.threads = threads;
    config.exact_col_bound = ~u64{0};
    if (mode == Mode::Modp) {
        const u64 p = config.resolved_prime();
        return {rank_modp(m, p), Mode::Modp, p, m.rows.size()};
    }
    return solve_rows(RowSource::from_matrix(m), config, false).rank;
}

namespace {

DegreeResult zero_degree(Mode mode, std::optional<u64> prime) {
    DegreeResult r;
    r.d = 0;
    r.n_cols = 1;
    r.perp_dim = 1;
    r.rank = {0, mode, prime, 0};
    return r;
}

DegreeResult direct_degree(SystemId system, int n, int d, const PerpConfig& config) {
    const auto t0 = Clock::now();
    IdealRowStream stream(system, n, d, config.generators);
    const auto solved = solve_rows(stream.source(), config, false);
    DegreeResult r;
    r.d = d;
    r.n_cols = solved.n_cols;
    r.perp_dim = solved.nullity;
    r.rank = solved.rank;
    r.elapsed_ms = ms_since(t0);
    return r;
}

// Once a degree of the perp vanishes every higher degree does too: the perp
// is closed under the letter (or partial) derivatives.
DegreeResult vanished_degree(SystemId system, int n, int d, Mode mode, std::optional<u64> prime) {
    DegreeResult r;
    r.d = d;
    r.n_cols = is_free(system) ? ipow(static_cast<u64>(n), static_cast<unsigned>(d))
                               : monomials_of_degree(d, n).size();
    r.perp_dim = 0;
    r.rank = {r.n_cols, mode, prime, 0};
    return r;
}

}  // namespace

HilbertSeries hilbert_series(SystemId system, int n, int max_d, const PerpConfig& config) {
    if (n < 1) throw InvalidArgument("need n >= 1");
    if (max_d < 0) throw InvalidArgument("need max_d >= 0");
    const bool modular = config.mode != Mode::Exact;
    const std::optional<u64> prime = modular ? std::optional<u64>(config.resolved_prime()) : std::nullopt;
    const ResultCache cache(config.cache_dir);

    HilbertSeries hs;
    hs.system = system;
    hs.n = n;
    hs.degrees.push_back(zero_degree(config.mode, prime));

    std::vector<std::optional<DegreeResult>> cached(static_cast<std::size_t>(max_d) + 1);
    bool all_cached = true;
    for (int d = 1; d <= max_d; ++d) {
        cached[d] = cache.load(system, n, d, config.mode, prime, config.generators);
        if (!cached[d]) all_cached = false;
    }
    if (all_cached) {
        for (int d = 1; d <= max_d; ++d) hs.degrees.push_back(*cached[d]);
        return hs;
    }

    if (is_free(system) && modular) {
        const bool certified = config.mode == Mode::ModpCertified;
        FreePerpTower tower(system, n, *prime, config.threads, config.max_entries);
        std::vector<FreePerpTower> helpers;
        const auto ckpt = cache.enabled() ? cache.checkpoint_path(system, n, config.mode, *prime, config.generators)
                                          : std::filesystem::path();
        if (cache.enabled()) {
            FreePerpTower resumed(system, n, *prime, config.threads, config.max_entries);
            if (resumed.load(ckpt) && resumed.degree() <= max_d) {
                bool have = true;
                for (int d = 1; d <= resumed.degree(); ++d) have = have && cached[d].has_value();
                if (have) {
                    tower = std::move(resumed);
                    for (int d = 1; d <= tower.degree(); ++d) hs.degrees.push_back(*cached[d]);
                }
            }
        }
        for (int d = tower.degree() + 1; d <= max_d; ++d) {
            if (cached[d] && tower.dim() == 0) {
                hs.degrees.push_back(*cached[d]);
                continue;
            }
            const auto t0 = Clock::now();
            tower.advance(certified);
            DegreeResult r;
            r.d = d;
            r.n_cols = ipow(static_cast<u64>(n), static_cast<unsigned>(d));
            r.perp_dim = tower.dim();
            r.rank = {r.n_cols - r.perp_dim, config.mode, prime, tower.rows_consumed()};
            if (certified && !certify_tower(tower, helpers, config.seed, false).ok) {
                if (r.n_cols > config.exact_col_bound) {
                    throw CertificationError("certification failed at degree " + std::to_string(d) + " for prime " +
                                             std::to_string(*prime));
                }
                PerpConfig exact = config;
                exact.mode = Mode::Exact;
                r = direct_degree(system, n, d, exact);
            }
            r.elapsed_ms = ms_since(t0);
            cache.store(system, n, config.mode, prime, r, config.generators);
            if (cache.enabled()) tower.save(ckpt);
            hs.degrees.push_back(r);
        }
        return hs;
    }

    for (int d = 1; d <= max_d; ++d) {
        if (cached[d]) {
            hs.degrees.push_back(*cached[d]);
            continue;
        }
        DegreeResult r = hs.degrees.back().perp_dim == 0 ? vanished_degree(system, n, d, config.mode, prime)
                                                         : direct_degree(system, n, d, config);
        cache.store(system, n, config.mode, prime, r, config.generators);
        hs.degrees.push_back(r);
    }
    return hs;
}

DegreeResult perp_dimension(SystemId system, int n, int d, const PerpConfig& config) {
    if (d < 0) throw InvalidArgument("need d >= 0");
    if (n < 1) throw InvalidArgument("need n >= 1");
    const bool modular = config.mode != Mode::Exact;
    const std::optional<u64> prime = modular ? std::optional<u64>(config.resolved_prime()) : std::nullopt;
    if (d == 0) return zero_degree(config.mode, prime);
    if (is_free(system) && modular) return hilbert_series(system, n, d, config).degrees.back();
    const ResultCache cache(config.cache_dir);
    if (auto hit = cache.load(system, n, d, config.mode, prime, config.generators)) return *hit;
    DegreeResult r = direct_degree(system, n, d, config);
    cache.store(system, n, config.mode, prime, r, config.generators);
    return r;
}

DegreeResult certify_modp(SystemId system, int n, int d, u64 prime, const PerpConfig& config) {
    PerpConfig c = config;
    c.mode = Mode::ModpCertified;
    c.prime = prime;
    return perp_dimension(system, n, d, c);
}

namespace {

// Primitive integer vector with a positive first nonzero entry.
void make_primitive(std::vector<Rational>& v) {
    Integer den = 1, num = 0;
    for (const auto& x : v) {
        if (x == 0) continue;
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), x.get_num_mpz_t());
    }
    if (num == 0) return;
    Rational scale(den, num);
    for (const auto& x : v) {
        if (x == 0) continue;
        if (x < 0) scale = -scale;
        break;
    }
    for (auto& x : v) x *= scale;
}

}  // namespace

std::vector<FreePoly> perp_basis_free(SystemId system, int n, int d, const PerpConfig& config) {
    if (!is_free(system)) throw InvalidArgument("perp_basis_free needs NCSYM or NCQSYM");
    if (d < 0) throw InvalidArgument("need d >= 0");
    if (d == 0) return {FreePoly::constant(1, n)};
    std::vector<std::vector<Rational>> vectors;
    const u64 words = ipow(static_cast<u64>(n), static_cast<unsigned>(d));
    if (config.mode == Mode::Exact) {
        vectors = solve_rows(IdealRowStream(system, n, d, config.generators).source(), config, true).basis;
    } else {
        FreePerpTower tower(system, n, config.resolved_prime(), config.threads, config.max_entries);
        while (tower.degree() < d) tower.advance(true);
        if (auto cert = tower.certify(config.seed, true); cert.ok) {
            const auto& lifted = cert.vectors;
            for (std::size_t t = 0; t < lifted->dim; ++t) vectors.push_back(lifted->vector_at(t));
        } else {
            PerpConfig exact = config;
            exact.mode = Mode::Exact;
            if (words > config.exact_col_bound)
                throw CertificationError("certification failed and the size is beyond the exact bound");
            vectors = solve_rows(IdealRowStream(system, n, d, config.generators).source(), exact, true).basis;
        }
    }
    std::vector<FreePoly> out;
    for (auto& v : vectors) {
        make_primitive(v);
        FreePoly f(n);
        for (u64 i = 0; i < words; ++i)
            if (v[i] != 0) f.add_term(Word::from_index(i, static_cast<std::size_t>(d), n), v[i]);
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<CommPoly> perp_basis_comm(SystemId system, int n, int d, const PerpConfig& config) {
    if (is_free(system)) throw InvalidArgument("perp_basis_comm needs SYM or QSYM");
    if (d < 0) throw InvalidArgument("need d >= 0");
    if (d == 0) return {CommPoly(CommMonomial::one(n))};
    IdealRowStream stream(system, n, d, config.generators);
    auto solved = solve_rows(stream.source(), config, true);
    std::vector<CommPoly> out;
    for (auto& v : solved.basis) {
        make_primitive(v);
        CommPoly p(n);
        for (u64 i = 0; i < v.size(); ++i)
            if (v[i] != 0) p.add_term(stream.monomials()[i], v[i]);
        out.push_back(std::move(p));
    }
    return out;
}

bool is_in_perp(const FreePoly& p, SystemId system, int n) {
    if (!is_free(system)) throw InvalidArgument("free polynomial against a commutative system");
    if (p.alphabet_size() != n) throw InvalidArgument("alphabet size mismatch");
    if (p.is_zero()) return true;
    if (!p.is_homogeneous()) throw InvalidArgument("is_in_perp needs a homogeneous polynomial");
    const int d = p.degree();
    if (d == 0) return true;
    std::map<u64, Rational> coeff;
    for (const auto& [w, c] : p.terms()) coeff.emplace(w.index(), c);
    bool ok = true;
    IdealRowStream(system, n, d).for_each([&](const SparseRow& r) {
        if (!ok) return;
        Rational s = 0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            auto it = coeff.find(r.cols[i]);
            if (it != coeff.end()) s += it->second * r.vals[i];
        }
        if (s != 0) ok = false;
    });
    return ok;
}

bool is_in_perp(const CommPoly& p, SystemId system, int n, const GeneratorOptions& opts) {
    if (is_free(system)) throw InvalidArgument("commutative polynomial against a free system");
    if (p.n() != n) throw InvalidArgument("variable count mismatch");
    if (p.is_zero()) return true;
    if (!p.is_homogeneous()) throw InvalidArgument("is_in_perp needs a homogeneous polynomial");
    const int d = p.degree();
    if (d == 0) return true;
    IdealRowStream stream(system, n, d, opts);
    std::vector<Rational> dense(stream.n_cols());
    for (const auto& [m, c] : p.terms()) dense[stream.column_of(m)] = c;
    bool ok = true;
    stream.for_each([&](const SparseRow& r) {
        if (!ok) return;
        Rational s = 0;
        for (std::size_t i = 0; i < r.size(); ++i) s += dense[r.cols[i]] * r.vals[i];
        if (s != 0) ok = false;
    });
    return ok;
}

}  // namespace ncis
