#pragma once

// Generators of the ideals I_n (NCSym, NCQSym, Sym, QSym truncated to n
// variables) and streams of spanning rows for each degree component.

#include <string>
#include <string_view>
#include <vector>

#include "ncis/combinat.hpp"
#include "ncis/commpoly.hpp"
#include "ncis/freealg.hpp"
#include "ncis/linalg.hpp"

namespace ncis {

enum class SystemId { NCSYM, NCQSYM, SYM, QSYM };

std::string to_string(SystemId s);
/// Accepts `ncsym`, `ncqsym`, `sym`, `qsym` (any case).
SystemId parse_system(std::string_view text);
inline bool is_free(SystemId s) { return s == SystemId::NCSYM || s == SystemId::NCQSYM; }

/// Σ_{∇(w)=Φ} w over words in n letters.
FreePoly m_phi(const SetPartition& phi, int n);
/// Σ_{∇̃(w)=A} w over words in n letters.
FreePoly mcal_a(const SetComposition& a, int n);
/// x1^k + ... + xn^k.
CommPoly p_k(int k, int n);
/// Quasi-monomial Σ_{i1<...<ik} x_{i1}^{α1} ... x_{ik}^{αk}.
CommPoly m_alpha(const Composition& alpha, int n);

struct GeneratorOptions {
    /// SYM only: use p_1..p_n instead of p_1..p_d.
    bool small_sym = false;
};

/// A free generator of degree k with terms given by word index among degree-k words.
struct FreeGenerator {
    int degree = 0;
    std::string label;
    std::vector<std::pair<u64, i64>> terms;
};

struct CommGenerator {
    int degree = 0;
    std::string label;
    CommPoly poly;
};

/// Nonzero generators of degree 1..max_degree, by degree then enumeration order.
std::vector<FreeGenerator> free_generators(SystemId system, int n, int max_degree);
std::vector<CommGenerator> comm_generators(SystemId system, int n, int max_degree,
                                           const GeneratorOptions& opts = {});

/// Spanning rows of the degree-d component of I_n.
///
/// Free systems: every u*g*v with deg u + deg g + deg v = d, emitted by
/// generator degree, generator, |u|, u, v; column = word index. Commutative
/// systems: every m*g, with the entry at monomial β scaled by β! so that the
/// coordinate dot product realizes the ∂-pairing.
class IdealRowStream {
public:
    IdealRowStream(SystemId system, int n, int d, GeneratorOptions opts = {});

    SystemId system() const { return system_; }
    int n() const { return n_; }
    int degree() const { return d_; }
    u64 n_cols() const { return n_cols_; }

    void for_each(unsigned part, unsigned n_parts, const RowVisitor& visit) const;
    void for_each(const RowVisitor& visit) const { for_each(0, 1, visit); }
    RowSource source() const;
    SparseRowMatrix materialize() const;

    /// Commutative column order (graded, descending lex).
    const std::vector<CommMonomial>& monomials() const { return monomials_; }
    u64 column_of(const CommMonomial& m) const;

private:
    SystemId system_;
    int n_;
    int d_;
    u64 n_cols_ = 0;
    std::vector<FreeGenerator> free_gens_;
    std::vector<CommGenerator> comm_gens_;
    std::vector<CommMonomial> monomials_;
    std::map<CommMonomial, u64> column_;
    std::vector<i64> weight_;  // β! per column
};

/// The row as a polynomial (free systems, unweighted).
FreePoly row_to_free_poly(const SparseRow& row, int n, int d);

}  // namespace ncis
