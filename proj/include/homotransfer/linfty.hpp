#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "homotransfer/algebra.hpp"
#include "homotransfer/perturb.hpp"
#include "homotransfer/tensor.hpp"
#include "homotransfer/transfer.hpp"

namespace homotransfer {

// Sorted form of w under the graded symmetric action, with the Koszul sign ε
// such that P(w) = ε P(sorted). nullopt when the sorted word repeats an odd
// letter (its symmetrization vanishes).
std::optional<std::pair<Word, Scalar>> sort_word(const Word& w, const GradedBasis& letters);

// Averaging projector P = (1/n!) sum_σ ±σ on each word length.
WordComb symmetrize(const WordComb& v, const GradedBasis& letters);

// S^c[letters] up to word length N, realized inside T^c as symmetrized words.
// Basis element k is P(w_k) for the k-th sorted word. Needs 2 invertible and
// n! invertible for n <= N (UnsupportedField otherwise).
class SymWordSpace {
public:
    SymWordSpace(BasisPtr letters, int max_arity);

    const BasisPtr& letters() const { return letters_; }
    int max_arity() const { return n_; }
    const std::vector<Word>& words() const { return words_; }
    BasisPtr materialize() const;  // names "(sa·sb)"
    std::optional<Index> find(const Word& sorted) const;

    WordComb element(Index k) const { return elements_[k]; }
    // coordinates of a symmetric tensor; reads the sorted words only
    SparseVec coordinates(const WordComb& symmetric) const;

private:
    BasisPtr letters_;
    int n_;
    std::vector<Word> words_;
    std::vector<WordComb> elements_;
    std::vector<Scalar> weight_;  // n!/prod m_i!, inverse of the sorted word's coefficient in P(w)
    std::map<Word, Index> index_;
};

void require_lie_field(const Field& f, int max_arity);

// m_1 = d, m_2 = ½[ , ]: the bracket as a non-associative product whose bar
// coderivation is the Cartan-Chevalley-Eilenberg one on symmetric tensors.
AInfinityStructure half_bracket_structure(const DGLieAlgebra& g, int max_arity);

struct CCECoalgebra {
    SymWordSpace space;                          // on s g
    Coderivation total;                          // d + ∂ on T^c[s g]
    std::optional<std::string> bracket_failure;  // first symmetric word with ∂∂ != 0
    std::optional<std::string> total_failure;    // first symmetric word with (d + ∂)^2 != 0
    bool square_zero() const { return !bracket_failure && !total_failure; }
};

// Jacobi is not required; ∂∂ = 0 holds exactly when it holds.
CCECoalgebra cce_coalgebra(const DGLieAlgebra& g, int max_arity);

// L∞ structure on M as a coderivation of S^c[sM]: the linear part is the
// suspended d, comps[w] (w sorted, length >= 2) the corestriction on P(w).
struct LInfinityStructure {
    BasisPtr carrier;
    BasisPtr letters;  // s carrier
    int max_arity = 4;
    GradedMap d;
    OpTable comps;

    // component on any word: ε(u) comps[sorted u]
    SparseVec component(const Word& u) const;
    // d + D on T^c, symmetric components
    Coderivation coderivation() const;
    Coderivation higher() const;  // arity >= 2 part
};

// Lie twisting cochain S^c[sM] -> g, one value per sorted word.
struct LieTwistingCochain {
    BasisPtr letters;  // s M
    int degree = -1;
    OpTable values;
    SparseVec on(const Word& u) const;  // ε(u) values[sorted u]
};

// [a, b] = [ , ] ∘ (a ⊗ b) ∘ Δ on symmetric words up to the common arity.
LieTwistingCochain cup_bracket(const LieTwistingCochain& a, const LieTwistingCochain& b, const DGLieAlgebra& g,
                               int max_arity);

struct LInfinityTransferResult {
    LInfinityStructure structure;
    LieTwistingCochain tau;
    // (S^c[s g], d + ∂) ⇄ (S^c[sM], d + D) from the perturbation lemma with
    // homotopy P∘Th, on materialized symmetric bases
    PerturbResult perturbed;
};

// Recursion τ^j = ½ h(sum [τ^l, τ^{j-l}]) on T^c words, read off on
// symmetric tensors and cross-checked against the perturbation lemma on S^c
// (MethodDivergence on mismatch).
LInfinityTransferResult transfer_linf(const DGLieAlgebra& g, const Contraction& c, const TransferOptions& o = {});

// d_g τ + τ(d + D) - ½[τ, τ] on every symmetric word of length <= N.
IdentityReport check_master(const LieTwistingCochain& tau, const LInfinityStructure& s, const DGLieAlgebra& g);
// (d + D)^2 on symmetric words; nullopt when it vanishes.
std::optional<std::string> linf_square_zero_failure(const LInfinityStructure& s);

}  // namespace homotransfer
