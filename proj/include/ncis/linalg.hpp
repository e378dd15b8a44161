#pragma once

// Row spaces over F_p and over Q: sparse echelon forms, dense RREF, an
// incremental nullspace tracker, and certification of mod-p nullspaces.

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <vector>

#include "ncis/rational.hpp"

namespace ncis {

using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Integer coordinate vector; `cols` strictly increasing is not required but
/// duplicate columns must not occur.
struct SparseRow {
    std::vector<u64> cols;
    std::vector<i64> vals;

    void clear() {
        cols.clear();
        vals.clear();
    }
    void push(u64 c, i64 v) {
        cols.push_back(c);
        vals.push_back(v);
    }
    std::size_t size() const { return cols.size(); }
};

struct SparseRowMatrix {
    u64 n_cols = 0;
    std::vector<SparseRow> rows;
};

using RowVisitor = std::function<void(const SparseRow&)>;

/// A lazily generated row set. `for_each(part, n_parts, visit)` emits a
/// disjoint slice; the union over parts is the whole set.
struct RowSource {
    u64 n_cols = 0;
    std::function<void(unsigned part, unsigned n_parts, const RowVisitor& visit)> for_each;

    static RowSource from_matrix(const SparseRowMatrix& m);
};

/// Row echelon structure over F_p fed one sparse row at a time.
///
/// Each stored pivot row has been reduced by every earlier pivot, so an
/// incoming row is reduced by visiting pivots in insertion order. The new
/// pivot column is the surviving entry whose column has appeared least often
/// among stored rows (ties to the smallest column) to limit fill.
class SparseEchelonModp {
public:
    SparseEchelonModp(u64 n_cols, u64 p);

    /// Returns true when the row increased the rank.
    bool insert(const SparseRow& row);
    bool insert_residues(const std::vector<u64>& cols, const std::vector<u64>& vals);

    u64 n_cols() const { return n_cols_; }
    u64 prime() const { return p_; }
    std::size_t rank() const { return pivots_.size(); }
    bool full_rank() const { return rank() == n_cols_; }
    std::size_t stored_entries() const { return stored_; }

    /// Dense nullspace vectors, one per free column.
    std::vector<std::vector<u64>> nullspace() const;

private:
    struct Pivot {
        u64 col;
        std::vector<u64> cols;
        std::vector<u64> vals;  // the entry at `col` is 1
    };

    bool reduce_and_store();

    u64 n_cols_;
    u64 p_;
    std::vector<Pivot> pivots_;
    std::vector<i64> pivot_of_;       // column -> pivot index or -1
    std::vector<std::uint32_t> seen_;  // column occurrence counts in stored rows
    std::vector<u64> acc_;
    std::vector<std::uint32_t> mark_;
    std::uint32_t epoch_ = 0;
    std::vector<u64> touched_;
    std::size_t stored_ = 0;
};

/// The same strategy over Z with fraction-free updates r <- a*r - b*pivot
/// followed by removal of the row content.
class ExactEchelon {
public:
    explicit ExactEchelon(u64 n_cols);

    bool insert(const SparseRow& row);
    bool insert(const std::vector<std::pair<u64, Integer>>& row);

    u64 n_cols() const { return n_cols_; }
    std::size_t rank() const { return pivots_.size(); }
    bool full_rank() const { return rank() == n_cols_; }

    std::vector<std::vector<Rational>> nullspace() const;

private:
    struct Pivot {
        u64 col;
        std::vector<u64> cols;
        std::vector<Integer> vals;
    };

    bool reduce_and_store();

    u64 n_cols_;
    std::vector<Pivot> pivots_;
    std::vector<i64> pivot_of_;
    std::vector<std::uint32_t> seen_;
    std::vector<Integer> acc_;
    std::vector<std::uint32_t> mark_;
    std::uint32_t epoch_ = 0;
    std::vector<u64> touched_;
};

/// Maintains a basis of {x : r.x = 0 for all rows r seen so far} over F_p,
/// starting from the whole space. Cheap to query once the nullspace is small,
/// which is the regime of tall, highly redundant systems.
class NullspaceTracker {
public:
    NullspaceTracker(std::size_t n_cols, u64 p, unsigned threads = 1);

    /// r has n_cols reduced entries. Returns true when the nullity dropped.
    bool add_row(const u64* r);
    /// True when r vanishes on every tracked basis vector.
    bool annihilates(const u64* r);

    std::size_t n_cols() const { return n_cols_; }
    std::size_t nullity() const { return k_; }
    /// Basis vector t as a dense column.
    std::vector<u64> basis_vector(std::size_t t) const;
    /// Entry (i, t), i < n_cols, t < nullity.
    u64 at(std::size_t i, std::size_t t) const { return n_[i * stride_ + t]; }

private:
    std::size_t n_cols_;
    std::size_t stride_;
    std::size_t k_;
    u64 p_;
    unsigned threads_;
    std::vector<u64> n_;
    std::vector<u64> s_;
};

/// In-place RREF of a dense row-major rows x cols matrix over F_p. The first
/// `rank` rows hold the result; the rest are zeroed. Returns the rank.
std::size_t rref_modp(std::vector<u64>& m, std::size_t rows, std::size_t cols, u64 p,
                      unsigned threads = 1);

/// RREF over Q; zero rows are dropped.
void rref_exact(std::vector<std::vector<Rational>>& rows);

std::size_t rank_exact(const SparseRowMatrix& m);
std::size_t rank_modp(const SparseRowMatrix& m, u64 p);

/// Integer vectors stored column-major by coordinate: entry (i, t) at
/// small[i * dim + t], or in `wide` when some entry exceeds 62 bits.
struct LiftedBasis {
    std::size_t dim = 0;
    std::size_t n_cols = 0;
    bool big = false;
    std::vector<i64> small;
    std::vector<Integer> wide;

    Integer entry(std::size_t i, std::size_t t) const {
        return big ? wide[i * dim + t] : Integer(static_cast<long>(small[i * dim + t]));
    }
    std::vector<Rational> vector_at(std::size_t t) const;
};

/// A nullspace basis modulo one prime in reduced row echelon form.
struct ModularImage {
    u64 p = 0;
    std::vector<u64> rref;  // dim x n_cols, row-major
};

std::vector<std::size_t> pivot_columns(const ModularImage& img, std::size_t dim, std::size_t n_cols);

/// Checks every row against every basis vector modulo the image's prime.
/// Reports the largest row ℓ1 norm seen.
bool residues_orthogonal(const ModularImage& img, std::size_t dim, std::size_t n_cols, const RowSource& rows,
                         unsigned threads, u64* max_row_l1 = nullptr);

struct CrtLift {
    /// Upper bound on log2 of every entry of the scaled integer vectors.
    std::size_t max_bits = 0;
    std::size_t modulus_bits = 0;
    std::optional<LiftedBasis> vectors;
};

/// Chinese remaindering of the images followed by rational reconstruction,
/// one common denominator per vector. nullopt when the modulus is too small.
std::optional<CrtLift> crt_lift(const std::vector<ModularImage>& images, std::size_t dim, std::size_t n_cols,
                                bool want_vectors, unsigned threads = 1);

struct Certificate {
    bool ok = false;
    std::size_t primes_used = 0;
    std::optional<LiftedBasis> vectors;
};

/// Certifies that a mod-p nullspace has the dimension of the rational one.
///
/// The integer vectors y obtained by reconstruction satisfy y.r ≡ 0 modulo
/// every prime used (checked row by row), and |y.r| < M/2 by the size bound,
/// so y.r = 0 exactly. They are independent because they reduce to a scaled
/// RREF basis modulo the first prime. `more(p)` supplies the image for an
/// additional prime, or nullopt when that prime disagrees in shape.
Certificate certify_images(ModularImage first, std::size_t dim, std::size_t n_cols, const RowSource& rows,
                           const std::function<std::optional<ModularImage>(u64)>& more, u64 seed,
                           unsigned threads, bool want_vectors, std::size_t max_primes = 8);

}  // namespace ncis
