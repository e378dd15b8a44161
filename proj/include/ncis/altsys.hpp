#pragma once

// The alternating subspace Alt_n: the basis 𝒜_Φ, two-colored alternants,
// the combinatorial action of M_Ψ(d) d_A on 𝒜_Φ, and the induced linear
// system whose solutions are Har_n ∩ Alt_n.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncis/combinat.hpp"
#include "ncis/freealg.hpp"
#include "ncis/linalg.hpp"
#include "ncis/perp.hpp"

namespace ncis {

/// Ordered generalized set compositions of [d] with n parts, at most one empty.
std::vector<GenSetComposition> alt_basis(int n, int d);

struct SignedComposition {
    int sign = 0;  // 0 means the element vanishes
    GenSetComposition comp;
};

struct SignedColored {
    int sign = 0;
    ColoredGenSetComposition comp;
};

/// 𝒜_A = sign * 𝒜_{canonical}; sign 0 with two or more empty parts.
SignedComposition canonicalize(const GenSetComposition& a);
/// Sorts the +1 parts among their own slots (nonempty by minimum, then
/// empty); -1 parts stay where they are. Sign 0 with two empty +1 parts.
SignedColored canonicalize_colored(const ColoredGenSetComposition& a);

/// Σ_{σ∈S_n} sign(σ) σ∘Φ.
FreePoly expand_alt(const GenSetComposition& phi);
/// Σ_{σ∈S_T} sign(σ) σ∘A over permutations of the +1 letters T.
FreePoly expand_colored(const ColoredGenSetComposition& a);

/// M⃖_Ψ(d) d_{A⃖} 𝒜_Φ expressed as ±𝒜_{Θ^ε} (canonical), or nullopt for zero.
/// Ψ ⊢ [k], A has n parts over [ℓ], Φ has n parts over [d], k + ℓ ≤ d.
std::optional<SignedColored> act(const SetPartition& psi, const GenSetComposition& a,
                                 const GenSetComposition& phi);

/// Σ c_Φ 𝒜_Φ.
struct AltElement {
    int n = 0;
    int d = 0;
    std::map<GenSetComposition, Rational> terms;

    FreePoly expand() const;
    std::string to_string() const;
};

struct AltSystem {
    int n = 0;
    int d = 0;
    std::vector<GenSetComposition> unknowns;
    /// One row per (ℓ, k, A, Ψ, Θ^ε) with a nonzero entry; columns index `unknowns`.
    SparseRowMatrix matrix;
};

AltSystem assemble_system(int n, int d);

struct AltSolution {
    int n = 0;
    int d = 0;
    u64 alt_dim = 0;
    u64 solution_dim = 0;
    u64 n_equations = 0;
    RankResult rank;
    std::vector<AltElement> basis;
};

AltSolution solve_alt(int n, int d, const PerpConfig& config = {}, bool want_basis = false);

/// dim(Har_n ∩ Alt_n) in degree d from word-level pairings of every ideal row
/// with every 𝒜_Φ.
u64 alt_oracle_dimension(int n, int d, const PerpConfig& config = {});

/// The same dimension as dim P + dim A - dim(P + A) for the exact perp basis P
/// and the word span A of the alternating basis.
u64 alt_perp_intersection_dimension(int n, int d);

}  // namespace ncis
