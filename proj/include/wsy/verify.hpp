#pragma once

#include <memory>

#include "wsy/invariants.hpp"
#include "wsy/report.hpp"
#include "wsy/tensor.hpp"

namespace wsy {

// Every identity check below passes iff its residual normal-forms to the
// exact zero of U(p); there is no tolerance anywhere.

// All relation families (d401..d416 for shape (1^{m+n}), p701..p716 in
// general) instantiated over every admissible index tuple with free
// superscripts summing to at most `bound`. Families with no instances are
// reported as skipped. A nonempty `families` list restricts to those family
// numbers (1..16).
VerificationReport verify_all_relations(const GenSource& G, const json& pyramid_json, int bound,
                                        int jobs, bool drinfeld_ids,
                                        const std::vector<int>& families = {});

// Runs the Drinfeld suite on (1^{m+n}) and the parabolic suite on `mu`.
VerificationReport relations_suite(std::shared_ptr<const Algebra> A, const CompositionShape& mu,
                                   int bound, int jobs);

// pr_chi([a, w]) = 0 for every m-basis element a and every generator w with
// superscript <= r_bound.
VerificationReport verify_m_invariance(const GaussGenerators& G, int r_bound, int jobs);

// Cor 8.4 / Cor 8.5 at desk scale: exact rank of the ordered supermonomials
// in the generator alphabet equals the combinatorial dim F_d S(g^e).
VerificationReport pbw_rank_check(const GaussGenerators& G, int d_max);

// The four multiplication identities of the T-series, all admissible
// (x, y, i, j), orders <= r_max.
VerificationReport lemma92_suite(std::shared_ptr<const Algebra> A, int r_max);
Check lemma92_check(const TBuilder& tb, int kase, int x, int y, int i, int j, int r_max);

// Shape refinement: splitting block p of mu as x + y, the seven-branch
// dictionary between mu- and nu-higher-root E-series, orders <= r_max.
VerificationReport shape_refinement_check(std::shared_ptr<const Algebra> A, const CompositionShape& mu,
                                          int p, int x_split, int r_max);

// Higher-root independence of the contraction index.
VerificationReport higher_root_k_independence(const GaussGenerators& G, int r_bound);

// sigma = 0, ell = 1: generator images match the evaluation-map pattern.
VerificationReport evaluation_consistency(std::shared_ptr<const Algebra> A, int r_bound);

// Generators of the row-shifted pyramid satisfy the sigma-relations after
// the superscript reindexing E^(r) -> E^(r - s + s_vec).
VerificationReport iota_consistency(const Pyramid& pi, const Pyramid& pi_shifted,
                                    const CompositionShape& mu, int bound, int jobs);

// psi_R / psi_L: homomorphism property on the p-basis, the column-removal
// identities (Lemma 10.2 / 10.11) for two contraction choices, the
// displayed generator-image formulas, and the rank-injectivity probe.
VerificationReport psi_suite(const Pyramid& pi, int r_bound, int d_rank);

// Baby comultiplication: psi images against the Delta_R / Delta_L generator
// formulas, higher-root image formulas, injectivity probe.
VerificationReport baby_comult_consistency(const Pyramid& pi, int r_bound, int d_rank);

// Supporting data for psi_suite / baby_comult_consistency (exposed for
// tests and the CLI "describe" of case diagnosis).
struct PsiContext {
    bool case_R = true;
    std::shared_ptr<const Algebra> A;    // ambient, enumerated per case
    std::shared_ptr<const Algebra> Adot; // column-removed pyramid, tilde-matched
    std::shared_ptr<const Algebra> glpq; // single-column rectangle on Upsilon_z
    std::unique_ptr<TensorAlgebra> tensor;
    CompositionShape mu;
    int H = 0, p = 0, q = 0;
    int tilde_const = 0;         // (m-p) - (n-q)
    std::vector<int> J1, J2;     // boxes of the split column and its neighbour
    std::vector<TensorElem> gen_image; // psi on each generator of p (by gen id)

    TensorElem apply(const Elem& x) const;
    Elem glpq_tilde(int f, int g) const; // e~ in U(gl_{p|q}), 1-based f,g
};
PsiContext make_psi_context(const Pyramid& pi);

// Degree-filtered wrapper used by the rank probes: ordered supermonomials in
// the Cor 8.4 alphabet with total degree <= d.
struct PbwAlphabet {
    struct Entry {
        char family; // 'D','E','F'
        int a, b, i, j, r;
        int degree, parity;
        Elem value;
    };
    std::vector<Entry> entries;
    static PbwAlphabet build(const GaussGenerators& G);
    // All ordered supermonomial products of total degree <= d.
    std::vector<std::pair<int, Elem>> monomials(const Algebra& A, int d) const;
};

// dim F_d S(g^e) from the centralizer census.
std::vector<unsigned long long> symmetric_dim_table(const Algebra& A, int d_max);

} // namespace wsy
