#include <algorithm>
#include <functional>

#include "ncis/errors.hpp"
#include "ncis/linalg.hpp"
#include "ncis/modarith.hpp"
#include "ncis/parallel.hpp"
#include "ncis/simd.hpp"

namespace ncis {

RowSource RowSource::from_matrix(const SparseRowMatrix& m) {
    RowSource src;
    src.n_cols = m.n_cols;
    src.for_each = [&m](unsigned part, unsigned n_parts, const RowVisitor& visit) {
        for (std::size_t i = part; i < m.rows.size(); i += n_parts) visit(m.rows[i]);
    };
    return src;
}

// --- SparseEchelonModp -------------------------------------------------------

SparseEchelonModp::SparseEchelonModp(u64 n_cols, u64 p)
    : n_cols_(n_cols), p_(p), pivot_of_(n_cols, -1), seen_(n_cols, 0), acc_(n_cols, 0),
      mark_(n_cols, 0) {}

bool SparseEchelonModp::insert(const SparseRow& row) {
    std::vector<u64> vals(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) vals[i] = modp::from_signed(row.vals[i], p_);
    return insert_residues(row.cols, vals);
}

bool SparseEchelonModp::insert_residues(const std::vector<u64>& cols, const std::vector<u64>& vals) {
    if (++epoch_ == 0) {
        std::fill(mark_.begin(), mark_.end(), 0);
        epoch_ = 1;
    }
    touched_.clear();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        const u64 c = cols[i];
        if (c >= n_cols_) throw InvalidArgument("row column out of range");
        if (mark_[c] != epoch_) {
            mark_[c] = epoch_;
            acc_[c] = 0;
            touched_.push_back(c);
        }
        acc_[c] = modp::add(acc_[c], vals[i] % p_, p_);
    }
    return reduce_and_store();
}

bool SparseEchelonModp::reduce_and_store() {
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> queue;
    std::vector<char> queued(pivots_.size(), 0);
    for (u64 c : touched_) {
        const i64 idx = pivot_of_[c];
        if (idx >= 0 && !queued[idx]) {
            queued[idx] = 1;
            queue.push(static_cast<std::size_t>(idx));
        }
    }
    while (!queue.empty()) {
        const std::size_t idx = queue.top();
        queue.pop();
        const Pivot& pv = pivots_[idx];
        const u64 f = acc_[pv.col];
        if (f == 0) continue;
        const u64 neg_f = p_ - f;
        for (std::size_t t = 0; t < pv.cols.size(); ++t) {
            const u64 c = pv.cols[t];
            if (mark_[c] != epoch_) {
                mark_[c] = epoch_;
                acc_[c] = 0;
                touched_.push_back(c);
                const i64 j = pivot_of_[c];
                if (j >= 0 && !queued[j]) {
                    queued[j] = 1;
                    queue.push(static_cast<std::size_t>(j));
                }
            }
            acc_[c] = modp::add(acc_[c], modp::mul(neg_f, pv.vals[t], p_), p_);
        }
    }

    Pivot fresh;
    u64 best = n_cols_;
    for (u64 c : touched_) {
        if (acc_[c] == 0) continue;
        if (best == n_cols_ || seen_[c] < seen_[best] || (seen_[c] == seen_[best] && c < best)) best = c;
    }
    if (best == n_cols_) return false;
    std::sort(touched_.begin(), touched_.end());
    const u64 inv = modp::inverse(acc_[best], p_);
    for (u64 c : touched_) {
        if (acc_[c] == 0) continue;
        fresh.cols.push_back(c);
        fresh.vals.push_back(c == best ? 1 : modp::mul(acc_[c], inv, p_));
        ++seen_[c];
    }
    fresh.col = best;
    stored_ += fresh.cols.size();
    pivot_of_[best] = static_cast<i64>(pivots_.size());
    pivots_.push_back(std::move(fresh));
    return true;
}

std::vector<std::vector<u64>> SparseEchelonModp::nullspace() const {
    const std::size_t r = pivots_.size();
    // Reduced rows: own pivot plus free columns only.
    std::vector<std::vector<std::pair<u64, u64>>> reduced(r);
    std::vector<u64> dense(n_cols_, 0);
    std::vector<u64> touched;
    for (std::size_t i = r; i-- > 0;) {
        const Pivot& pv = pivots_[i];
        touched.clear();
        auto touch = [&](u64 c) {
            if (dense[c] == 0) touched.push_back(c);
        };
        for (std::size_t t = 0; t < pv.cols.size(); ++t) {
            const u64 c = pv.cols[t];
            const i64 j = pivot_of_[c];
            if (c != pv.col && j >= 0) continue;
            touch(c);
            dense[c] = modp::add(dense[c], pv.vals[t], p_);
        }
        for (std::size_t t = 0; t < pv.cols.size(); ++t) {
            const u64 c = pv.cols[t];
            const i64 j = pivot_of_[c];
            if (c == pv.col || j < 0) continue;
            const u64 f = pv.vals[t];
            for (const auto& [cc, vv] : reduced[static_cast<std::size_t>(j)]) {
                if (cc == c) continue;
                touch(cc);
                dense[cc] = modp::sub(dense[cc], modp::mul(f, vv, p_), p_);
            }
        }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (u64 c : touched) {
            if (dense[c] != 0) reduced[i].emplace_back(c, dense[c]);
            dense[c] = 0;
        }
    }
    std::vector<std::vector<u64>> out;
    std::vector<i64> free_slot(n_cols_, -1);
    for (u64 c = 0; c < n_cols_; ++c) {
        if (pivot_of_[c] < 0) {
            free_slot[c] = static_cast<i64>(out.size());
            std::vector<u64> v(n_cols_, 0);
            v[c] = 1;
            out.push_back(std::move(v));
        }
    }
    for (std::size_t i = 0; i < r; ++i) {
        for (const auto& [c, v] : reduced[i]) {
            if (c == pivots_[i].col) continue;
            out[static_cast<std::size_t>(free_slot[c])][pivots_[i].col] = modp::neg(v, p_);
        }
    }
    return out;
}

std::size_t rank_modp(const SparseRowMatrix& m, u64 p) {
    SparseEchelonModp ech(m.n_cols, p);
    for (const auto& row : m.rows) {
        ech.insert(row);
        if (ech.full_rank()) break;
    }
    return ech.rank();
}

// --- NullspaceTracker --------------------------------------------------------

NullspaceTracker::NullspaceTracker(std::size_t n_cols, u64 p, unsigned threads)
    : n_cols_(n_cols), stride_(n_cols), k_(n_cols), p_(p), threads_(threads),
      n_(n_cols * n_cols, 0), s_(n_cols, 0) {
    for (std::size_t i = 0; i < n_cols; ++i) n_[i * stride_ + i] = 1;
}

bool NullspaceTracker::annihilates(const u64* r) {
    if (k_ == 0) return true;
    std::fill(s_.begin(), s_.begin() + static_cast<std::ptrdiff_t>(k_), 0);
    const auto& kern = simd::active_kernels();
    for (std::size_t i = 0; i < n_cols_; ++i) {
        if (r[i] != 0) kern.axpy(s_.data(), n_.data() + i * stride_, k_, r[i], p_);
    }
    return std::all_of(s_.begin(), s_.begin() + static_cast<std::ptrdiff_t>(k_), [](u64 x) { return x == 0; });
}

bool NullspaceTracker::add_row(const u64* r) {
    if (k_ == 0) return false;
    std::fill(s_.begin(), s_.begin() + static_cast<std::ptrdiff_t>(k_), 0);
    const auto& kern = simd::active_kernels();
    for (std::size_t i = 0; i < n_cols_; ++i) {
        if (r[i] != 0) kern.axpy(s_.data(), n_.data() + i * stride_, k_, r[i], p_);
    }
    std::size_t j = k_;
    for (std::size_t t = 0; t < k_; ++t) {
        if (s_[t] != 0) {
            j = t;
            break;
        }
    }
    if (j == k_) return false;
    kern.scale(s_.data(), k_, modp::inverse(s_[j], p_), p_);
    const std::size_t last = k_ - 1;
    parallel_for(n_cols_, threads_, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            u64* row = n_.data() + i * stride_;
            const u64 x = row[j];
            if (x != 0) kern.axpy(row, s_.data(), k_, p_ - x, p_);
            row[j] = row[last];
            row[last] = 0;
        }
    });
    --k_;
    return true;
}

std::vector<u64> NullspaceTracker::basis_vector(std::size_t t) const {
    std::vector<u64> v(n_cols_);
    for (std::size_t i = 0; i < n_cols_; ++i) v[i] = n_[i * stride_ + t];
    return v;
}

// --- dense RREF -------------------------------------------------------------

std::size_t rref_modp(std::vector<u64>& m, std::size_t rows, std::size_t cols, u64 p, unsigned threads) {
    const auto& kern = simd::active_kernels();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t r = rank; r < rows; ++r) {
            if (m[r * cols + c] != 0) {
                piv = r;
                break;
            }
        }
        if (piv == rows) continue;
        if (piv != rank) {
            std::swap_ranges(m.begin() + static_cast<std::ptrdiff_t>(piv * cols),
                             m.begin() + static_cast<std::ptrdiff_t>((piv + 1) * cols),
                             m.begin() + static_cast<std::ptrdiff_t>(rank * cols));
        }
        u64* prow = m.data() + rank * cols;
        kern.scale(prow + c, cols - c, modp::inverse(prow[c], p), p);
        parallel_for(rows, threads, [&](std::size_t begin, std::size_t end) {
            for (std::size_t r = begin; r < end; ++r) {
                if (r == rank) continue;
                u64* row = m.data() + r * cols;
                const u64 f = row[c];
                if (f != 0) kern.axpy(row + c, prow + c, cols - c, p - f, p);
            }
        });
        ++rank;
    }
    return rank;
}

}  // namespace ncis
