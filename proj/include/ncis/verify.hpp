#pragma once

// Invariant suites shared by the CLI and the test programs.

#include <string>
#include <string_view>
#include <vector>

#include "ncis/perp.hpp"

namespace ncis {

struct VerifyOptions {
    int n = 3;
    int max_deg = 4;
    u64 trials = 1000;
    u64 seed = 1;
    PerpConfig config;
};

struct Report {
    std::string suite;
    bool pass = true;
    u64 cases = 0;
    /// Counterexamples in canonical text form; at most `kMaxListed` are kept.
    std::vector<std::string> failures;
    u64 failure_count = 0;

    static constexpr std::size_t kMaxListed = 20;
    void check(bool ok, const std::string& what);
};

/// Names accepted by run_suite.
const std::vector<std::string>& suite_names();

/// [f⃖(d) ψ(P)]_{c.t.} = [χ(f)(∂) P]_{c.t.} on random pairs.
Report verify_lemma3(const VerifyOptions& o);
/// ψ maps the SYM perp into the NCSYM perp and nothing else maps there;
/// n' <= n, d <= min(max_deg, 3).
Report verify_cor24(const VerifyOptions& o);
/// Δ_w ∈ Har_n exactly when Δ_w = 0 or χ(w) is an S_n-image of x^ρ.
Report verify_deltaw(const VerifyOptions& o);
/// act against word-level expansion, exhaustive for n' <= n, d <= max_deg.
Report verify_prop42(const VerifyOptions& o);
/// Quasi-shuffle product rules for m_α and 𝓜_A in n variables.
Report verify_products(const VerifyOptions& o);
/// Perp bases are closed under d_a (free) and ∂_i (commutative).
Report verify_closure(const VerifyOptions& o);

Report run_suite(std::string_view name, const VerifyOptions& o);

}  // namespace ncis
