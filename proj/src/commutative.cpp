#include "ncis/commutative.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

#include "ncis/errors.hpp"

namespace ncis {

namespace {

template <class Poly, class Key>
u64 rank_of(const std::vector<Poly>& polys, std::map<Key, std::size_t>& index) {
    for (const auto& p : polys)
        for (const auto& [m, c] : p.terms()) index.emplace(m, 0);
    std::size_t next = 0;
    for (auto& [m, i] : index) i = next++;
    std::vector<std::vector<Rational>> rows;
    for (const auto& p : polys) {
        std::vector<Rational> row(index.size());
        for (const auto& [m, c] : p.terms()) row[index.at(m)] = c;
        rows.push_back(std::move(row));
    }
    rref_exact(rows);
    return rows.size();
}

// Basis of the span of `polys`, all in n variables.
std::vector<CommPoly> reduce_to_basis(const std::vector<CommPoly>& polys, int n) {
    std::map<CommMonomial, std::size_t> index;
    for (const auto& p : polys)
        for (const auto& [m, c] : p.terms()) index.emplace(m, 0);
    std::vector<CommMonomial> order;
    for (auto& [m, i] : index) {
        i = order.size();
        order.push_back(m);
    }
    std::vector<std::vector<Rational>> rows;
    for (const auto& p : polys) {
        std::vector<Rational> row(index.size());
        for (const auto& [m, c] : p.terms()) row[index.at(m)] = c;
        rows.push_back(std::move(row));
    }
    rref_exact(rows);
    std::vector<CommPoly> out;
    for (const auto& row : rows) {
        CommPoly p(n);
        for (std::size_t i = 0; i < row.size(); ++i)
            if (row[i] != 0) p.add_term(order[i], row[i]);
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

u64 comm_perp_dimension(SystemId system, int n, int d, const PerpConfig& config) {
    if (is_free(system)) throw InvalidArgument("comm_perp_dimension needs SYM or QSYM");
    return perp_dimension(system, n, d, config).perp_dim;
}

int comm_degree_cutoff(int n) { return n * (n - 1) / 2 + n; }

u64 comm_perp_total(SystemId system, int n, const PerpConfig& config) {
    if (is_free(system)) throw InvalidArgument("comm_perp_total needs SYM or QSYM");
    return hilbert_series(system, n, comm_degree_cutoff(n), config).total();
}

std::vector<CommPoly> vandermonde_closure(int n) {
    if (n < 1) throw InvalidArgument("need n >= 1");
    std::vector<CommPoly> out;
    std::vector<CommPoly> level{vandermonde(n)};
    while (!level.empty()) {
        level = reduce_to_basis(level, n);
        out.insert(out.end(), level.begin(), level.end());
        std::vector<CommPoly> next;
        for (const auto& p : level) {
            for (int i = 1; i <= n; ++i) {
                CommPoly q = partial(i, p);
                if (!q.is_zero()) next.push_back(std::move(q));
            }
        }
        level = std::move(next);
    }
    return out;
}

u64 span_dimension(const std::vector<CommPoly>& polys) {
    std::map<CommMonomial, std::size_t> index;
    return rank_of(polys, index);
}

u64 span_dimension(const std::vector<FreePoly>& polys) {
    std::map<Word, std::size_t> index;
    return rank_of(polys, index);
}

bool lemma3_check(const FreePoly& f, const CommPoly& p) {
    const Rational lhs = apply_reversed(f, psi(p)).constant_term();
    const Rational rhs = comm_pairing(chi(f), p);
    return lhs == rhs;
}

CommMonomial rho(int n) {
    std::vector<int> e(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)] = n - 1 - i;
    return CommMonomial(std::move(e));
}

DeltaWScan delta_w_membership_scan(int n, int max_deg) {
    if (n < 1 || max_deg < 0) throw InvalidArgument("need n >= 1 and max_deg >= 0");
    DeltaWScan scan;
    scan.n = n;
    scan.max_deg = max_deg;
    const CommMonomial r = rho(n);
    for (int d = 0; d <= max_deg; ++d) {
        for (const Word& w : all_words(static_cast<std::size_t>(d), n)) {
            ++scan.words;
            const FreePoly delta = delta_w(w, n);
            const bool member = is_in_perp(delta, SystemId::NCSYM, n);
            const CommMonomial c = chi(w);
            std::vector<int> sorted = c.exponents();
            std::sort(sorted.begin(), sorted.end(), std::greater<>());
            const bool orbit = sorted == r.exponents();
            if (delta.is_zero()) ++scan.vanishing;
            if (member) ++scan.members;
            if (member != (delta.is_zero() || orbit)) {
                ++scan.counterexamples;
                scan.failures.push_back("w=" + w.to_string() + " member=" + (member ? "1" : "0"));
            }
            if (member && !delta.is_zero() && !(c == r)) ++scan.literal_exceptions;
        }
    }
    return scan;
}

u64 psi_preimage_perp_dimension(int n, int d) {
    if (n < 1 || d < 0) throw InvalidArgument("need n >= 1 and d >= 0");
    const auto monos = monomials_of_degree(d, n);
    if (d == 0) return monos.size();
    std::unordered_map<u64, std::vector<std::pair<u64, Integer>>> by_word;
    for (u64 col = 0; col < monos.size(); ++col) {
        const FreePoly image = psi(CommPoly(monos[col]));
        for (const auto& [w, c] : image.terms()) by_word[w.index()].emplace_back(col, c.get_num());
    }
    ExactEchelon ech(monos.size());
    IdealRowStream(SystemId::NCSYM, n, d).for_each([&](const SparseRow& r) {
        if (ech.full_rank()) return;
        std::map<u64, Integer> acc;
        for (std::size_t i = 0; i < r.size(); ++i) {
            auto it = by_word.find(r.cols[i]);
            if (it == by_word.end()) continue;
            for (const auto& [col, c] : it->second) acc[col] += c * Integer(static_cast<long>(r.vals[i]));
        }
        std::vector<std::pair<u64, Integer>> row;
        for (auto& [col, v] : acc)
            if (v != 0) row.emplace_back(col, std::move(v));
        if (!row.empty()) ech.insert(row);
    });
    return monos.size() - ech.rank();
}

}  // namespace ncis
