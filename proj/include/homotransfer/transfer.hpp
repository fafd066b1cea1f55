#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "homotransfer/ainfinity.hpp"
#include "homotransfer/parallel.hpp"
#include "homotransfer/perturb.hpp"
#include "homotransfer/tensor.hpp"

namespace homotransfer {

enum class Method { hpt, recursive, kadeishvili, trees };
std::string to_string(Method m);
Method parse_method(const std::string& s);  // throws ParseError

struct TransferOptions {
    int max_arity = 5;
    Exec exec = Exec::parallel;
    std::size_t tree_budget = 200000;  // total planar trees over all arities
};

// Output of an A∞ transfer along a contraction (A ⇄ M, h) of the underlying
// complexes. `structure` lives on M and carries m_1 = d_M. `tau` holds the
// twisting cochain T^c[sM] -> A word by word (values in the unsuspended
// carrier of A); `morphism` is the A∞ morphism M -> A read off from it.
struct TransferResult {
    Method method = Method::hpt;
    AInfinityStructure structure;
    std::optional<AInfinityMorphism> morphism;
    OpTable tau;
};

// Perturbation lemma plus tensor trick, evaluated lazily word by word. Both
// forms of the transferred differential are computed and compared.
TransferResult transfer_hpt(const AInfinityStructure& a, const Contraction& c, const TransferOptions& o = {});
// τ^j = h(sum ± μ(τ^l, τ^{j-l})), components π(same sum). DG algebra input only.
TransferResult transfer_recursive(const DGAlgebra& a, const Contraction& c, const TransferOptions& o = {});
// Inductive construction with Ψ_n; needs a contraction onto homology (d_M = 0).
TransferResult transfer_kadeishvili(const DGAlgebra& a, const Contraction& c, const TransferOptions& o = {});
// Sign exponents in Ψ_n, pre = |a_1| + ... + |a_s| (resp. |a_1| + ... + |a_k|):
// ε1 = s + (n-s+1) pre, ε2 = k + j (n-k-j + pre).
long long kadeishvili_eps1(int n, int s, long long pre);
long long kadeishvili_eps2(int n, int k, int j, long long pre);
// Sum over labelled planar trees: leaves ∇, internal edges h, root π.
TransferResult transfer_trees(const AInfinityStructure& a, const Contraction& c, const TransferOptions& o = {});

TransferResult transfer(Method m, const DGAlgebra& a, const Contraction& c, const TransferOptions& o = {});

// Runs every method and throws MethodDivergence at the first word where two
// disagree, on operations and on morphisms.
std::vector<TransferResult> transfer_all(const DGAlgebra& a, const Contraction& c, const TransferOptions& o = {});
void require_agreement(const std::vector<TransferResult>& results);

// Rooted planar tree; a node without children is a leaf.
struct PlanarTree {
    std::vector<PlanarTree> children;
    int leaves() const;
    std::string to_string() const;  // "L" for a leaf, "(t1 t2 ...)" otherwise
};

// Trees with `leaves` leaves whose internal vertices have arities in
// `arities` (all >= 2), in lexicographic order of arity splittings. Throws
// ResourceError past `budget`.
std::vector<PlanarTree> enumerate_planar_trees(int leaves, const std::vector<int>& arities, std::size_t budget);

// The full perturbed contraction of bar constructions on words of length
// <= N, with materialized maps: (T^c[sIA], d + ∂) ⇄ (T^c[sM], d + D).
PerturbResult perturbed_bar_contraction(const DGAlgebra& a, const Contraction& c, int max_arity,
                                        Exec exec = Exec::parallel);

// ---- coalgebra side

struct CoalgebraTransferResult {
    AInfinityCoalgebra structure;  // on M, cobar[m] includes the linear part
    Derivation D;                  // arity >= 2 part of the transferred derivation on T[s^-1 M]
    std::vector<WordComb> tau;     // twisting cochain C -> Ω M, per basis element of C
};

// Recursion τ^1 = s^-1 π, τ^j = (sum τ^l ∪ τ^{j-l}) h, cross-checked against
// the perturbation lemma on the cobar side (MethodDivergence on mismatch).
CoalgebraTransferResult transfer_coalgebra(const DGCoalgebra& c, const Contraction& con, const TransferOptions& o = {},
                                           CobarRegime regime = CobarRegime::automatic);

// ---- finite-type duality: names gain or lose a trailing "*", degrees negate

BasisPtr dual_basis(const BasisPtr& b);
DGAlgebra dual_algebra(const DGCoalgebra& c);
DGCoalgebra dual_coalgebra(const DGAlgebra& a);
Contraction dualize(const Contraction& c);
AInfinityStructure dualize(const AInfinityCoalgebra& c);
AInfinityCoalgebra dualize(const AInfinityStructure& a);

// ---- identity checks

struct ResidualEntry {
    int arity = 0;
    int degree = 0;
    std::size_t words = 0;
    std::size_t failures = 0;
    std::string first_failure;  // name of the first offending word
};

struct IdentityReport {
    std::string identity;
    std::vector<ResidualEntry> entries;  // sorted by (arity, degree)
    bool pass() const;
    std::size_t failures() const;
    std::string first_failure() const;  // "" when passing
    std::string summary() const;
};

// Collects per (arity, degree) counts; the first failure recorded wins.
class ReportBuilder {
public:
    explicit ReportBuilder(std::string name);
    void record(int arity, int degree, bool ok, const std::string& name);
    IdentityReport build();

private:
    IdentityReport r_;
    std::map<std::pair<int, int>, ResidualEntry> slots_;
};

// Stasheff identities sum (-1)^{r+st} m_{r+1+t}(Id^r ⊗ m_s ⊗ Id^t) = 0, m_1 included.
IdentityReport check_stasheff(const AInfinityStructure& a, Exec exec = Exec::parallel);
// A∞ morphism identities for f : src -> tgt.
IdentityReport check_morphism(const AInfinityMorphism& f, const AInfinityStructure& src, const AInfinityStructure& tgt,
                              Exec exec = Exec::parallel);
// d_A τ + τ(d + D) = τ ∪ τ on words of length <= N of the small carrier.
IdentityReport check_twisting_cochain(const OpTable& tau, const AInfinityStructure& small, const DGAlgebra& target);
// d_Ω τ + τ d_C = τ ∪ τ, truncated at word length N.
IdentityReport check_twisting_cochain(const std::vector<WordComb>& tau, const AInfinityCoalgebra& small,
                                      const DGCoalgebra& source);
// d + D is a derivation of the shuffle product on words with total length <= N.
IdentityReport check_cinfinity(const AInfinityStructure& a);

// b_n <-> m_n with b_n = -(-1)^{sum (n-1-i)|x_i|} s m_n; an involution.
OpTable bar_dictionary(const OpTable& ops, const GradedBasis& carrier);
// f_n = (-1)^{sum (n-1-i)|x_i|} s^-1 F_n; an involution.
OpTable morphism_dictionary(const OpTable& comps, const GradedBasis& carrier);

}  // namespace homotransfer
