#pragma once

// Degree-by-degree inverse systems I^⊥: ranks of ideal row spaces, perp
// dimensions and bases, Hilbert series, and certified modular computation.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncis/commpoly.hpp"
#include "ncis/freealg.hpp"
#include "ncis/generators.hpp"
#include "ncis/linalg.hpp"

namespace ncis {

enum class Mode { Exact, Modp, ModpCertified };

std::string to_string(Mode m);
/// `exact`, `modp`, `modp_certified` (also `certified`).
Mode parse_mode(std::string_view text);

struct RankResult {
    u64 rank = 0;
    Mode mode = Mode::Exact;
    std::optional<u64> prime;
    u64 n_rows_consumed = 0;
};

struct PerpConfig {
    Mode mode = Mode::ModpCertified;
    /// When unset the prime is drawn from `seed`.
    std::optional<u64> prime;
    u64 seed = 1;
    unsigned threads = 1;
    /// Empty disables the result cache and checkpoints.
    std::string cache_dir;
    GeneratorOptions generators;
    /// Largest column count accepted by exact elimination.
    u64 exact_col_bound = 4096;
    /// Cap on resident 64-bit words held by one degree of the computation.
    u64 max_entries = 400'000'000;

    u64 resolved_prime() const;
};

struct DegreeResult {
    int d = 0;
    u64 n_cols = 1;
    u64 perp_dim = 1;
    RankResult rank;
    bool from_cache = false;
    u64 elapsed_ms = 0;
};

struct HilbertSeries {
    SystemId system = SystemId::NCSYM;
    int n = 1;
    std::vector<DegreeResult> degrees;

    std::vector<u64> coefficients() const;
    u64 total() const;
};

/// Rank and (optionally) nullspace basis of a row source. In the modular
/// modes the basis is the certified lift; exact elimination is the fallback.
struct NullspaceResult {
    RankResult rank;
    u64 n_cols = 0;
    u64 nullity = 0;
    std::vector<std::vector<Rational>> basis;
};

NullspaceResult solve_rows(const RowSource& rows, const PerpConfig& config, bool want_basis);

RankResult rank(const SparseRowMatrix& m, Mode mode, std::optional<u64> prime = std::nullopt,
                unsigned threads = 1);

DegreeResult perp_dimension(SystemId system, int n, int d, const PerpConfig& config = {});
HilbertSeries hilbert_series(SystemId system, int n, int max_d, const PerpConfig& config = {});

/// Basis of the degree-d perp. Exact mode eliminates over Q (bounded by
/// exact_col_bound); the modular modes return the certified lifted basis.
/// Vectors come in reduced row echelon order, each scaled to primitive
/// integers with a positive leading coefficient.
std::vector<FreePoly> perp_basis_free(SystemId system, int n, int d, const PerpConfig& config = {});
std::vector<CommPoly> perp_basis_comm(SystemId system, int n, int d, const PerpConfig& config = {});

bool is_in_perp(const FreePoly& p, SystemId system, int n);
bool is_in_perp(const CommPoly& p, SystemId system, int n, const GeneratorOptions& opts = {});

/// Mod-p dimension, then lifting and exact verification; falls back to exact
/// elimination when lifting or verification fails and the size allows it.
DegreeResult certify_modp(SystemId system, int n, int d, u64 prime, const PerpConfig& config = {});

/// Perp dimensions of free systems via the derivative tower over F_p: the
/// degree-d perp is {Σ_a x_a Q_a : Q_a in the degree-(d-1) perp} cut out by
/// the rows g*v (generators g, words v).
class FreePerpTower {
public:
    FreePerpTower(SystemId system, int n, u64 p, unsigned threads = 1, u64 max_entries = 400'000'000);

    SystemId system() const { return system_; }
    int n() const { return n_; }
    u64 prime() const { return p_; }
    unsigned threads() const { return threads_; }
    u64 max_entries() const { return max_entries_; }
    int degree() const { return degree_; }
    std::size_t dim() const { return dim_; }
    u64 rows_consumed() const { return rows_consumed_; }
    /// dim x n^degree, row-major.
    const std::vector<u64>& basis() const { return basis_; }

    /// Moves to degree()+1. With `canonical` the new basis is put in RREF.
    void advance(bool canonical);
    /// Certifies the current RREF basis over Q; see certify_tower.
    Certificate certify(u64 seed, bool want_vectors) const;

    void save(const std::filesystem::path& file) const;
    /// Returns false when the file is absent or describes another computation.
    bool load(const std::filesystem::path& file);

private:
    SystemId system_;
    int n_;
    u64 p_;
    unsigned threads_;
    u64 max_entries_;
    int degree_ = 0;
    std::size_t dim_ = 1;
    std::vector<u64> basis_{1};
    u64 rows_consumed_ = 0;
    std::vector<FreeGenerator> gens_;
    int gens_degree_ = 0;
};

/// Certifies the current degree of a canonical tower, advancing helper
/// towers for further primes when one prime does not suffice. Helpers are
/// kept in `helpers` so that later degrees reuse them.
Certificate certify_tower(const FreePerpTower& tower, std::vector<FreePerpTower>& helpers, u64 seed,
                          bool want_vectors);

/// One JSON record per (system, n, d, mode, prime, generator option).
class ResultCache {
public:
    explicit ResultCache(std::filesystem::path dir);

    bool enabled() const { return !dir_.empty(); }
    std::optional<DegreeResult> load(SystemId system, int n, int d, Mode mode, std::optional<u64> prime,
                                     const GeneratorOptions& gens) const;
    /// Filed under the requested mode and prime; the record itself carries
    /// the mode that produced it.
    void store(SystemId system, int n, Mode mode, std::optional<u64> prime, const DegreeResult& r,
               const GeneratorOptions& gens) const;
    std::filesystem::path checkpoint_path(SystemId system, int n, Mode mode, u64 prime,
                                          const GeneratorOptions& gens) const;
    std::vector<std::filesystem::path> entries() const;
    std::size_t clear() const;

    static std::string record_name(SystemId system, int n, int d, Mode mode, std::optional<u64> prime,
                                   const GeneratorOptions& gens);

private:
    std::filesystem::path dir_;
};

}  // namespace ncis
