#include "ncis/generators.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "ncis/errors.hpp"

namespace ncis {

std::string to_string(SystemId s) {
    switch (s) {
        case SystemId::NCSYM: return "ncsym";
        case SystemId::NCQSYM: return "ncqsym";
        case SystemId::SYM: return "sym";
        case SystemId::QSYM: return "qsym";
    }
    return "?";
}

SystemId parse_system(std::string_view text) {
    std::string s(text);
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (s == "ncsym") return SystemId::NCSYM;
    if (s == "ncqsym") return SystemId::NCQSYM;
    if (s == "sym") return SystemId::SYM;
    if (s == "qsym") return SystemId::QSYM;
    throw InvalidArgument("unknown system '" + std::string(text) + "'");
}

namespace {

// Calls fn(letters) once per assignment of distinct letters to the parts.
void for_each_injection(std::size_t parts, int n, bool increasing,
                        const std::function<void(const std::vector<int>&)>& fn) {
    if (parts > static_cast<std::size_t>(n)) return;
    std::vector<int> chosen(parts);
    std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == parts) {
            fn(chosen);
            return;
        }
        const int lo = increasing && i ? chosen[i - 1] + 1 : 1;
        for (int x = lo; x <= n; ++x) {
            if (used[x]) continue;
            used[x] = 1;
            chosen[i] = x;
            rec(i + 1);
            used[x] = 0;
        }
    };
    rec(0);
}

FreePoly expand_blocks(const std::vector<Block>& blocks, int degree, int n, bool increasing) {
    FreePoly out(n);
    for_each_injection(blocks.size(), n, increasing, [&](const std::vector<int>& letters) {
        std::vector<Letter> w(static_cast<std::size_t>(degree));
        for (std::size_t b = 0; b < blocks.size(); ++b)
            for (int pos : blocks[b]) w[pos - 1] = static_cast<Letter>(letters[b]);
        out.add_term(Word(std::move(w), n), 1);
    });
    return out;
}

}  // namespace

FreePoly m_phi(const SetPartition& phi, int n) {
    if (n < 1) throw InvalidArgument("need n >= 1");
    return expand_blocks(phi.blocks(), phi.ground(), n, false);
}

FreePoly mcal_a(const SetComposition& a, int n) {
    if (n < 1) throw InvalidArgument("need n >= 1");
    if (!a.covers_initial_segment()) throw InvalidArgument("set composition must cover [d]");
    return expand_blocks(a.parts(), a.size(), n, true);
}

CommPoly p_k(int k, int n) {
    if (k < 1 || n < 1) throw InvalidArgument("p_k needs k >= 1 and n >= 1");
    CommPoly out(n);
    for (int i = 0; i < n; ++i) {
        std::vector<int> e(static_cast<std::size_t>(n), 0);
        e[i] = k;
        out.add_term(CommMonomial(e), 1);
    }
    return out;
}

CommPoly m_alpha(const Composition& alpha, int n) {
    if (n < 1) throw InvalidArgument("need n >= 1");
    for (int part : alpha.parts)
        if (part < 1) throw InvalidArgument("composition parts must be positive");
    CommPoly out(n);
    for_each_injection(alpha.parts.size(), n, true, [&](const std::vector<int>& vars) {
        std::vector<int> e(static_cast<std::size_t>(n), 0);
        for (std::size_t i = 0; i < vars.size(); ++i) e[vars[i] - 1] = alpha.parts[i];
        out.add_term(CommMonomial(e), 1);
    });
    return out;
}

std::vector<FreeGenerator> free_generators(SystemId system, int n, int max_degree) {
    if (!is_free(system)) throw InvalidArgument("free_generators needs NCSYM or NCQSYM");
    std::vector<FreeGenerator> out;
    auto push = [&](int k, std::string label, const FreePoly& f) {
        if (f.is_zero()) return;
        FreeGenerator g{k, std::move(label), {}};
        for (const auto& [w, c] : f.terms()) g.terms.emplace_back(w.index(), c.get_num().get_si());
        out.push_back(std::move(g));
    };
    for (int k = 1; k <= max_degree; ++k) {
        for (const auto& phi : enumerate_set_partitions(k)) {
            if (phi.length() > static_cast<std::size_t>(n)) continue;
            if (system == SystemId::NCSYM) {
                push(k, phi.to_string(), m_phi(phi, n));
                continue;
            }
            std::vector<std::size_t> order(phi.length());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            do {
                std::vector<Block> parts;
                for (auto i : order) parts.push_back(phi.blocks()[i]);
                SetComposition a(std::move(parts));
                push(k, a.to_string(), mcal_a(a, n));
            } while (std::next_permutation(order.begin(), order.end()));
        }
    }
    return out;
}

std::vector<CommGenerator> comm_generators(SystemId system, int n, int max_degree, const GeneratorOptions& opts) {
    std::vector<CommGenerator> out;
    if (system == SystemId::SYM) {
        const int top = opts.small_sym ? std::min(n, max_degree) : max_degree;
        for (int k = 1; k <= top; ++k) out.push_back({k, "p" + std::to_string(k), p_k(k, n)});
    } else if (system == SystemId::QSYM) {
        for (int k = 1; k <= max_degree; ++k) {
            for (const auto& alpha : enumerate_compositions(k)) {
                if (alpha.parts.size() > static_cast<std::size_t>(n)) continue;
                out.push_back({k, "M" + alpha.to_string(), m_alpha(alpha, n)});
            }
        }
    } else {
        throw InvalidArgument("comm_generators needs SYM or QSYM");
    }
    return out;
}

// --- IdealRowStream ---------------------------------------------------------

IdealRowStream::IdealRowStream(SystemId system, int n, int d, GeneratorOptions opts)
    : system_(system), n_(n), d_(d) {
    if (n < 1) throw InvalidArgument("need n >= 1");
    if (d < 1) throw InvalidArgument("row streams need d >= 1");
    if (is_free(system)) {
        n_cols_ = ipow(static_cast<u64>(n), static_cast<unsigned>(d));
        free_gens_ = free_generators(system, n, d);
    } else {
        monomials_ = monomials_of_degree(d, n);
        n_cols_ = monomials_.size();
        for (u64 i = 0; i < n_cols_; ++i) {
            column_.emplace(monomials_[i], i);
            const Integer f = monomials_[i].factorial();
            if (!f.fits_slong_p()) throw ResourceError("monomial factorial exceeds 64 bits");
            weight_.push_back(f.get_si());
        }
        comm_gens_ = comm_generators(system, n, d, opts);
    }
}

u64 IdealRowStream::column_of(const CommMonomial& m) const {
    auto it = column_.find(m);
    if (it == column_.end()) throw InvalidArgument("monomial not in this degree");
    return it->second;
}

void IdealRowStream::for_each(unsigned part, unsigned n_parts, const RowVisitor& visit) const {
    SparseRow row;
    u64 unit = 0;
    const u64 n = static_cast<u64>(n_);
    if (is_free(system_)) {
        for (const auto& g : free_gens_) {
            const int k = g.degree;
            const u64 nk = ipow(n, static_cast<unsigned>(k));
            for (int lu = 0; lu <= d_ - k; ++lu) {
                const int lv = d_ - k - lu;
                const u64 nu = ipow(n, static_cast<unsigned>(lu));
                const u64 nv = ipow(n, static_cast<unsigned>(lv));
                for (u64 u = 0; u < nu; ++u, ++unit) {
                    if (unit % n_parts != part) continue;
                    for (u64 v = 0; v < nv; ++v) {
                        row.clear();
                        for (const auto& [w, c] : g.terms) row.push((u * nk + w) * nv + v, c);
                        visit(row);
                    }
                }
            }
        }
        return;
    }
    for (const auto& g : comm_gens_) {
        for (const auto& m : monomials_of_degree(d_ - g.degree, n_)) {
            if (unit++ % n_parts != part) continue;
            row.clear();
            for (const auto& [mono, c] : g.poly.terms()) {
                const u64 col = column_.at(mono * m);
                row.push(col, c.get_num().get_si() * weight_[col]);
            }
            visit(row);
        }
    }
}

RowSource IdealRowStream::source() const {
    RowSource src;
    src.n_cols = n_cols_;
    src.for_each = [this](unsigned part, unsigned n_parts, const RowVisitor& visit) {
        for_each(part, n_parts, visit);
    };
    return src;
}

SparseRowMatrix IdealRowStream::materialize() const {
    SparseRowMatrix m;
    m.n_cols = n_cols_;
    for_each([&](const SparseRow& r) { m.rows.push_back(r); });
    return m;
}

FreePoly row_to_free_poly(const SparseRow& row, int n, int d) {
    FreePoly f(n);
    for (std::size_t i = 0; i < row.size(); ++i)
        f.add_term(Word::from_index(row.cols[i], static_cast<std::size_t>(d), n), Rational(row.vals[i]));
    return f;
}

}  // namespace ncis
