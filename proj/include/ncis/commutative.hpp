#pragma once

// Commutative companion engine: perps of the symmetric and quasi-symmetric
// ideals, the Vandermonde derivative closure, and the Δ_w membership scan.

#include <string>
#include <vector>

#include "ncis/commpoly.hpp"
#include "ncis/freealg.hpp"
#include "ncis/generators.hpp"
#include "ncis/perp.hpp"

namespace ncis {

/// Degree-d perp dimension of ⟨p_k⟩ (SYM) or ⟨M_α⟩ (QSYM) under the ∂-pairing.
u64 comm_perp_dimension(SystemId system, int n, int d, const PerpConfig& config = {});

/// Degree cutoff for total commutative perp dimensions: n(n-1)/2 + n.
int comm_degree_cutoff(int n);

/// Σ_{d <= cutoff} of comm_perp_dimension.
u64 comm_perp_total(SystemId system, int n, const PerpConfig& config = {});

/// A basis of the span of all partial derivatives of Δ_n, degree by degree
/// from Δ_n down to 1.
std::vector<CommPoly> vandermonde_closure(int n);

/// Dimension of the rational span of `polys`.
u64 span_dimension(const std::vector<CommPoly>& polys);
u64 span_dimension(const std::vector<FreePoly>& polys);

/// [f⃖(d) ψ(P)]_{c.t.} == [χ(f)(∂) P]_{c.t.}, each side from its own engine.
bool lemma3_check(const FreePoly& f, const CommPoly& p);

/// ρ = (n-1, n-2, ..., 0).
CommMonomial rho(int n);

struct DeltaWScan {
    int n = 0;
    int max_deg = 0;
    u64 words = 0;
    u64 members = 0;
    u64 vanishing = 0;
    /// Words where membership disagrees with "Δ_w = 0 or χ(w) is an S_n-image of x^ρ".
    u64 counterexamples = 0;
    /// Members with Δ_w ≠ 0 and χ(w) ≠ x^ρ literally.
    u64 literal_exceptions = 0;
    std::vector<std::string> failures;

    bool pass() const { return counterexamples == 0; }
};

DeltaWScan delta_w_membership_scan(int n, int max_deg);

/// dim {P : ψ(P) ⊥ NCSYM ideal rows} in degree d, by direct elimination.
u64 psi_preimage_perp_dimension(int n, int d);

}  // namespace ncis
