#include <algorithm>
#include <functional>
#include <queue>

#include "ncis/errors.hpp"
#include "ncis/linalg.hpp"

namespace ncis {

ExactEchelon::ExactEchelon(u64 n_cols)
    : n_cols_(n_cols), pivot_of_(n_cols, -1), seen_(n_cols, 0), acc_(n_cols), mark_(n_cols, 0) {}

bool ExactEchelon::insert(const SparseRow& row) {
    std::vector<std::pair<u64, Integer>> entries;
    entries.reserve(row.size());
    for (std::size_t i = 0; i < row.size(); ++i)
        entries.emplace_back(row.cols[i], Integer(static_cast<long>(row.vals[i])));
    return insert(entries);
}

bool ExactEchelon::insert(const std::vector<std::pair<u64, Integer>>& row) {
    if (++epoch_ == 0) {
        std::fill(mark_.begin(), mark_.end(), 0);
        epoch_ = 1;
    }
    touched_.clear();
    for (const auto& [c, v] : row) {
        if (c >= n_cols_) throw InvalidArgument("row column out of range");
        if (mark_[c] != epoch_) {
            mark_[c] = epoch_;
            acc_[c] = 0;
            touched_.push_back(c);
        }
        acc_[c] += v;
    }
    return reduce_and_store();
}

bool ExactEchelon::reduce_and_store() {
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> queue;
    std::vector<char> queued(pivots_.size(), 0);
    for (u64 c : touched_) {
        const i64 idx = pivot_of_[c];
        if (idx >= 0 && !queued[idx]) {
            queued[idx] = 1;
            queue.push(static_cast<std::size_t>(idx));
        }
    }
    Integer g, a, b;
    while (!queue.empty()) {
        const std::size_t idx = queue.top();
        queue.pop();
        const Pivot& pv = pivots_[idx];
        if (acc_[pv.col] == 0) continue;
        const auto lead_pos = static_cast<std::size_t>(
            std::lower_bound(pv.cols.begin(), pv.cols.end(), pv.col) - pv.cols.begin());
        const Integer& lead = pv.vals[lead_pos];
        mpz_gcd(g.get_mpz_t(), lead.get_mpz_t(), acc_[pv.col].get_mpz_t());
        a = lead / g;
        b = acc_[pv.col] / g;
        if (a != 1) {
            for (u64 c : touched_) acc_[c] *= a;
        }
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
            acc_[c] -= b * pv.vals[t];
        }
    }

    u64 best = n_cols_;
    Integer content = 0;
    for (u64 c : touched_) {
        if (acc_[c] == 0) continue;
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), acc_[c].get_mpz_t());
        if (best == n_cols_ || seen_[c] < seen_[best] || (seen_[c] == seen_[best] && c < best)) best = c;
    }
    if (best == n_cols_) return false;
    if (acc_[best] < 0) content = -content;
    std::sort(touched_.begin(), touched_.end());
    Pivot fresh;
    fresh.col = best;
    for (u64 c : touched_) {
        if (acc_[c] == 0) continue;
        fresh.cols.push_back(c);
        fresh.vals.push_back(acc_[c] / content);
        ++seen_[c];
    }
    pivot_of_[best] = static_cast<i64>(pivots_.size());
    pivots_.push_back(std::move(fresh));
    return true;
}

std::vector<std::vector<Rational>> ExactEchelon::nullspace() const {
    const std::size_t r = pivots_.size();
    std::vector<std::vector<std::pair<u64, Rational>>> reduced(r);
    std::vector<Rational> dense(n_cols_);
    std::vector<char> live(n_cols_, 0);
    std::vector<u64> touched;
    for (std::size_t i = r; i-- > 0;) {
        const Pivot& pv = pivots_[i];
        const auto lead_pos = static_cast<std::size_t>(
            std::lower_bound(pv.cols.begin(), pv.cols.end(), pv.col) - pv.cols.begin());
        const Rational lead(pv.vals[lead_pos]);
        touched.clear();
        auto touch = [&](u64 c) {
            if (!live[c]) {
                live[c] = 1;
                dense[c] = 0;
                touched.push_back(c);
            }
        };
        for (std::size_t t = 0; t < pv.cols.size(); ++t) {
            const u64 c = pv.cols[t];
            if (c != pv.col && pivot_of_[c] >= 0) continue;
            touch(c);
            dense[c] += Rational(pv.vals[t]) / lead;
        }
        for (std::size_t t = 0; t < pv.cols.size(); ++t) {
            const u64 c = pv.cols[t];
            const i64 j = pivot_of_[c];
            if (c == pv.col || j < 0) continue;
            const Rational f = Rational(pv.vals[t]) / lead;
            for (const auto& [cc, vv] : reduced[static_cast<std::size_t>(j)]) {
                if (cc == c) continue;
                touch(cc);
                dense[cc] -= f * vv;
            }
        }
        std::sort(touched.begin(), touched.end());
        for (u64 c : touched) {
            if (dense[c] != 0) reduced[i].emplace_back(c, dense[c]);
            live[c] = 0;
        }
    }
    std::vector<std::vector<Rational>> out;
    std::vector<i64> free_slot(n_cols_, -1);
    for (u64 c = 0; c < n_cols_; ++c) {
        if (pivot_of_[c] < 0) {
            free_slot[c] = static_cast<i64>(out.size());
            std::vector<Rational> v(n_cols_);
            v[c] = 1;
            out.push_back(std::move(v));
        }
    }
    for (std::size_t i = 0; i < r; ++i) {
        for (const auto& [c, v] : reduced[i]) {
            if (c == pivots_[i].col) continue;
            out[static_cast<std::size_t>(free_slot[c])][pivots_[i].col] = -v;
        }
    }
    rref_exact(out);
    return out;
}

void rref_exact(std::vector<std::vector<Rational>>& rows) {
    if (rows.empty()) return;
    const std::size_t cols = rows.front().size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t piv = rows.size();
        for (std::size_t r = rank; r < rows.size(); ++r) {
            if (rows[r][c] != 0) {
                piv = r;
                break;
            }
        }
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        auto& prow = rows[rank];
        const Rational inv = 1 / prow[c];
        for (std::size_t j = c; j < cols; ++j)
            if (prow[j] != 0) prow[j] *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c] == 0) continue;
            const Rational f = rows[r][c];
            for (std::size_t j = c; j < cols; ++j)
                if (prow[j] != 0) rows[r][j] -= f * prow[j];
        }
        ++rank;
    }
    rows.resize(rank);
}

std::size_t rank_exact(const SparseRowMatrix& m) {
    ExactEchelon ech(m.n_cols);
    for (const auto& row : m.rows) {
        ech.insert(row);
        if (ech.full_rank()) break;
    }
    return ech.rank();
}

}  // namespace ncis
