#include "ncis/altsys.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "ncis/errors.hpp"
#include "ncis/generators.hpp"

namespace ncis {

std::vector<GenSetComposition> alt_basis(int n, int d) {
    if (n < 1 || d < 0) throw InvalidArgument("alt_basis needs n >= 1 and d >= 0");
    return enumerate_ordered_gen_comps(d, n, 1);
}

namespace {

int inversion_sign(const std::vector<std::size_t>& order) {
    int s = 1;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j)
            if (order[i] > order[j]) s = -s;
    return s;
}

bool part_less(const Block& x, const Block& y) {
    if (x.empty() || y.empty()) return !x.empty() && y.empty();
    return x.front() < y.front();
}

// Indices of `parts` in canonical order: nonempty by minimum, empties last.
std::vector<std::size_t> canonical_order(const std::vector<Block>& parts, const std::vector<std::size_t>& slots) {
    std::vector<std::size_t> order = slots;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return part_less(parts[a], parts[b]); });
    return order;
}

Block shift_above(const Block& b, int cut) {
    Block out;
    for (int x : b)
        if (x > cut) out.push_back(x - cut);
    return out;
}

Block clip_to(const Block& b, int lo, int hi) {
    Block out;
    for (int x : b)
        if (x > lo && x <= hi) out.push_back(x - lo);
    return out;
}

std::vector<Block> nonempty_sorted(std::vector<Block> parts) {
    parts.erase(std::remove_if(parts.begin(), parts.end(), [](const Block& b) { return b.empty(); }), parts.end());
    std::sort(parts.begin(), parts.end(), part_less);
    return parts;
}

}  // namespace

SignedComposition canonicalize(const GenSetComposition& a) {
    if (a.empty_count() >= 2) return {0, a};
    std::vector<std::size_t> slots(a.parts().size());
    std::iota(slots.begin(), slots.end(), 0);
    const auto order = canonical_order(a.parts(), slots);
    std::vector<Block> parts;
    for (auto i : order) parts.push_back(a.parts()[i]);
    return {inversion_sign(order), GenSetComposition(std::move(parts), a.degree())};
}

SignedColored canonicalize_colored(const ColoredGenSetComposition& a) {
    const auto& parts = a.base().parts();
    std::vector<std::size_t> slots;
    int empty_positive = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (a.colors()[i] == 1) {
            slots.push_back(i);
            if (parts[i].empty()) ++empty_positive;
        }
    }
    if (empty_positive >= 2) return {0, a};
    const auto order = canonical_order(parts, slots);
    std::vector<Block> out = parts;
    for (std::size_t t = 0; t < slots.size(); ++t) out[slots[t]] = parts[order[t]];
    return {inversion_sign(order), ColoredGenSetComposition(GenSetComposition(std::move(out), a.base().degree()),
                                                            a.colors())};
}

FreePoly expand_alt(const GenSetComposition& phi) {
    const int n = phi.n_parts();
    FreePoly out(n);
    const Word w = word_of_gencomp(phi);
    for (const auto& sigma : all_permutations(static_cast<std::size_t>(n)))
        out.add_term(sigma_act(sigma, w), sigma.sign());
    return out;
}

FreePoly expand_colored(const ColoredGenSetComposition& a) {
    const int n = a.base().n_parts();
    FreePoly out(n);
    const Word w = word_of_gencomp(a.base());
    const auto t = a.positive_indices();
    for (const auto& tau : all_permutations(t.size())) {
        std::vector<int> image(static_cast<std::size_t>(n));
        std::iota(image.begin(), image.end(), 1);
        for (std::size_t i = 0; i < t.size(); ++i) image[t[i]] = t[tau(i)] + 1;
        out.add_term(sigma_act(Permutation::from_one_line(image), w), tau.sign());
    }
    return out;
}

std::optional<SignedColored> act(const SetPartition& psi, const GenSetComposition& a, const GenSetComposition& phi) {
    const int n = phi.n_parts();
    const int ell = a.degree();
    const int k = psi.ground();
    const int d = phi.degree();
    if (a.n_parts() != n) throw InvalidArgument("act: A and Φ need the same number of parts");
    if (k + ell > d) throw InvalidArgument("act: k + ℓ exceeds the degree of Φ");

    // Stage 1: terms σ∘Φ whose word starts with the word of A.
    std::vector<int> sigma(static_cast<std::size_t>(n), -1);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    std::vector<int> free_i;
    for (int i = 0; i < n; ++i) {
        const Block inter = clip_to(phi.parts()[i], 0, ell);
        if (inter.empty()) {
            free_i.push_back(i);
            continue;
        }
        const auto it = std::find(a.parts().begin(), a.parts().end(), inter);
        if (it == a.parts().end()) return std::nullopt;
        const int j = static_cast<int>(it - a.parts().begin());
        sigma[i] = j;
        used[j] = 1;
    }
    std::vector<int> free_j;
    for (int j = 0; j < n; ++j)
        if (!used[j]) {
            if (!a.parts()[j].empty()) return std::nullopt;
            free_j.push_back(j);
        }
    if (free_i.size() != free_j.size()) return std::nullopt;
    for (std::size_t t = 0; t < free_i.size(); ++t) sigma[free_i[t]] = free_j[t];

    std::vector<int> one_line(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) one_line[i] = sigma[i] + 1;
    const int sign1 = Permutation::from_one_line(one_line).sign();

    std::vector<Block> gamma(static_cast<std::size_t>(n));
    std::vector<int> eps(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) gamma[sigma[i]] = shift_above(phi.parts()[i], ell);
    for (int j = 0; j < n; ++j) eps[j] = a.parts()[j].empty() ? 1 : -1;

    // Stage 2: M_Ψ strips the length-k prefixes; all survive iff Γ induces Ψ on [k].
    std::vector<Block> head(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) head[j] = clip_to(gamma[j], 0, k);
    if (nonempty_sorted(head) != psi.blocks()) return std::nullopt;

    std::vector<Block> theta(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) theta[j] = shift_above(gamma[j], k);
    auto canon = canonicalize_colored(
        ColoredGenSetComposition(GenSetComposition(std::move(theta), d - ell - k), std::move(eps)));
    if (canon.sign == 0) return std::nullopt;
    canon.sign *= sign1;
    return canon;
}

FreePoly AltElement::expand() const {
    FreePoly out(n);
    for (const auto& [phi, c] : terms) out += expand_alt(phi) * c;
    return out;
}

std::string AltElement::to_string() const {
    if (terms.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [phi, c] : terms) {
        const bool neg = c < 0;
        s += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
        first = false;
        const Rational mag = neg ? Rational(-c) : c;
        if (mag != 1) s += ncis::to_string(mag) + "*";
        s += "A[" + phi.to_string() + "]";
    }
    return s;
}

namespace {

// Compact row key: ℓ, k, the word of A, the restricted-growth string of Ψ,
// the word of Θ and its colors.
std::string row_key(int ell, int k, const std::vector<Block>& a_parts, const SetPartition& psi,
                    const ColoredGenSetComposition& theta) {
    std::string key;
    key.push_back(static_cast<char>(ell));
    key.push_back(static_cast<char>(k));
    std::string a_word(static_cast<std::size_t>(ell), '\0');
    for (std::size_t i = 0; i < a_parts.size(); ++i)
        for (int p : a_parts[i]) a_word[p - 1] = static_cast<char>(i + 1);
    key += a_word;
    for (int r : psi.rgs()) key.push_back(static_cast<char>(r));
    std::string t_word(static_cast<std::size_t>(theta.base().degree()), '\0');
    for (std::size_t i = 0; i < theta.base().parts().size(); ++i)
        for (int p : theta.base().parts()[i]) t_word[p - 1] = static_cast<char>(i + 1);
    key += t_word;
    for (int c : theta.colors()) key.push_back(c == 1 ? '+' : '-');
    return key;
}

}  // namespace

AltSystem assemble_system(int n, int d) {
    if (n < 1 || d < 1) throw InvalidArgument("assemble_system needs n >= 1 and d >= 1");
    AltSystem sys;
    sys.n = n;
    sys.d = d;
    sys.unknowns = alt_basis(n, d);
    std::unordered_map<std::string, std::vector<std::pair<u64, i64>>> rows;
    for (u64 col = 0; col < sys.unknowns.size(); ++col) {
        const auto& phi = sys.unknowns[col];
        for (int ell = 0; ell < d; ++ell) {
            std::vector<Block> a_parts;
            for (const auto& part : phi.parts()) a_parts.push_back(clip_to(part, 0, ell));
            std::stable_sort(a_parts.begin(), a_parts.end(), part_less);
            const GenSetComposition a(a_parts, ell);
            for (int k = 1; ell + k <= d; ++k) {
                std::vector<Block> head;
                for (const auto& part : phi.parts()) head.push_back(clip_to(part, ell, ell + k));
                const SetPartition psi(nonempty_sorted(std::move(head)), k);
                const auto res = act(psi, a, phi);
                if (!res) continue;
                rows[row_key(ell, k, a_parts, psi, res->comp)].emplace_back(col, res->sign);
            }
        }
    }
    std::vector<std::string> keys;
    keys.reserve(rows.size());
    for (const auto& [key, entries] : rows) keys.push_back(key);
    std::sort(keys.begin(), keys.end(), std::greater<>());
    sys.matrix.n_cols = sys.unknowns.size();
    for (const auto& key : keys) {
        std::map<u64, i64> merged;
        for (const auto& [c, v] : rows[key]) merged[c] += v;
        SparseRow row;
        for (const auto& [c, v] : merged)
            if (v != 0) row.push(c, v);
        if (row.size()) sys.matrix.rows.push_back(std::move(row));
    }
    // Short rows first keeps elimination fill low.
    std::stable_sort(sys.matrix.rows.begin(), sys.matrix.rows.end(),
                     [](const SparseRow& x, const SparseRow& y) { return x.size() < y.size(); });
    return sys;
}

AltSolution solve_alt(int n, int d, const PerpConfig& config, bool want_basis) {
    if (n < 1 || d < 0) throw InvalidArgument("solve_alt needs n >= 1 and d >= 0");
    AltSolution sol;
    sol.n = n;
    sol.d = d;
    const auto unknowns = alt_basis(n, d);
    sol.alt_dim = unknowns.size();
    if (d == 0) {
        // Alt_n^{(0)} is spanned by the constant when n = 1 and is zero otherwise.
        sol.solution_dim = sol.alt_dim;
        sol.rank = {0, config.mode, std::nullopt, 0};
        if (want_basis && sol.alt_dim) {
            AltElement e{n, 0, {}};
            e.terms.emplace(unknowns.front(), 1);
            sol.basis.push_back(std::move(e));
        }
        return sol;
    }
    const AltSystem sys = assemble_system(n, d);
    sol.n_equations = sys.matrix.rows.size();
    const auto solved = solve_rows(RowSource::from_matrix(sys.matrix), config, want_basis);
    sol.rank = solved.rank;
    sol.solution_dim = solved.nullity;
    for (const auto& v : solved.basis) {
        AltElement e{n, d, {}};
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) e.terms.emplace(sys.unknowns[i], v[i]);
        sol.basis.push_back(std::move(e));
    }
    return sol;
}

u64 alt_oracle_dimension(int n, int d, const PerpConfig& config) {
    const auto unknowns = alt_basis(n, d);
    if (d == 0) return unknowns.size();
    std::unordered_map<u64, std::vector<std::pair<u64, i64>>> by_word;
    for (u64 col = 0; col < unknowns.size(); ++col) {
        const FreePoly f = expand_alt(unknowns[col]);
        for (const auto& [w, c] : f.terms()) by_word[w.index()].emplace_back(col, c.get_num().get_si());
    }
    SparseRowMatrix m;
    m.n_cols = unknowns.size();
    std::map<u64, i64> acc;
    IdealRowStream(SystemId::NCSYM, n, d).for_each([&](const SparseRow& r) {
        acc.clear();
        for (std::size_t i = 0; i < r.size(); ++i) {
            auto it = by_word.find(r.cols[i]);
            if (it == by_word.end()) continue;
            for (const auto& [col, c] : it->second) acc[col] += r.vals[i] * c;
        }
        SparseRow row;
        for (const auto& [col, v] : acc)
            if (v != 0) row.push(col, v);
        if (row.size()) m.rows.push_back(std::move(row));
    });
    return solve_rows(RowSource::from_matrix(m), config, false).nullity;
}

u64 alt_perp_intersection_dimension(int n, int d) {
    PerpConfig exact;
    exact.mode = Mode::Exact;
    const auto perp = perp_basis_free(SystemId::NCSYM, n, d, exact);
    const auto unknowns = alt_basis(n, d);
    const u64 words = ipow(static_cast<u64>(n), static_cast<unsigned>(d));
    ExactEchelon joint(words);
    auto insert = [&](const FreePoly& f) {
        std::vector<std::pair<u64, Integer>> row;
        Integer den = 1;
        for (const auto& [w, c] : f.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
        for (const auto& [w, c] : f.terms()) row.emplace_back(w.index(), Integer(c * den));
        std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        joint.insert(row);
    };
    for (const auto& p : perp) insert(p);
    for (const auto& phi : unknowns) insert(expand_alt(phi));
    return perp.size() + unknowns.size() - joint.rank();
}

}  // namespace ncis
