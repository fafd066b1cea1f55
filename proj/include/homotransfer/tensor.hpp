#pragma once

#include <map>
#include <unordered_map>
#include <vector>

#include "homotransfer/ainfinity.hpp"
#include "homotransfer/complexes.hpp"
#include "homotransfer/words.hpp"

namespace homotransfer {

// Coderivation of the tensor coalgebra on `letters`, determined by its
// corestrictions b_j : (letters)^{⊗j} -> letters, j = 1..N.
class Coderivation {
public:
    Coderivation(BasisPtr letters, int degree, int max_arity);

    const BasisPtr& letters() const { return letters_; }
    int degree() const { return degree_; }
    int max_arity() const { return n_; }

    void set(const Word& input, SparseVec output);  // replaces; checks degree and arity
    const SparseVec& component(const Word& input) const;
    std::map<Word, SparseVec> components() const;  // sorted copy
    std::vector<int> arities() const;
    bool is_zero() const { return comps_.empty(); }

    // co-Leibniz extension: sum_r sum_j ± Id^r ⊗ b_j ⊗ Id^t
    WordComb apply(const Word& w) const;
    WordComb apply(const WordComb& v) const;
    // keeps the components with lo <= arity <= hi
    Coderivation restricted(int lo, int hi) const;
    // arity-j corestriction as a map from the j-word basis
    GradedMap component_map(int j) const;

private:
    BasisPtr letters_;
    int degree_;
    int n_;
    std::unordered_map<Word, SparseVec, WordHash> comps_;
    std::vector<int> arities_;
};

// Derivation of the tensor algebra on `letters`, determined by the images of
// the letters; words longer than N are dropped.
class Derivation {
public:
    Derivation(BasisPtr letters, int degree, int max_arity);

    const BasisPtr& letters() const { return letters_; }
    int degree() const { return degree_; }
    int max_arity() const { return n_; }

    void set(Index letter, WordComb image);
    const WordComb& image(Index letter) const { return images_[letter]; }
    WordComb apply(const Word& w) const;
    WordComb apply(const WordComb& v) const;
    // keeps image words with lo <= length <= hi
    Derivation restricted(int lo, int hi) const;
    bool is_zero() const;

private:
    BasisPtr letters_;
    int degree_;
    int n_;
    std::vector<WordComb> images_;
};

// Residual of (d + ∂)^2 on every word of length <= N; empty when square zero.
std::optional<Word> square_zero_failure(const Coderivation& total, int max_len);
std::optional<Word> square_zero_failure(const Derivation& total, int max_len);

// Coderivation with only the linear component f (used for letter differentials).
Coderivation linear_coderivation(const GradedMap& f, int max_arity);
Derivation linear_derivation(const GradedMap& f, int max_arity);

// Bar construction perturbation: arity-2 coderivation on the suspended
// augmentation ideal induced by the product. Throws AxiomError when
// (d + ∂)^2 ≠ 0 on words of length <= N.
Coderivation bar_perturbation(const DGAlgebra& a, int max_arity);

enum class CobarRegime { automatic, simply_connected, nonpositive, truncated };

// Cobar construction perturbation: derivation on the desuspended coideal
// induced by the reduced diagonal. Refuses inputs outside the simply
// connected and non-positive regimes unless truncation is requested.
Derivation cobar_perturbation(const DGCoalgebra& c, int max_arity, CobarRegime regime = CobarRegime::automatic);
CobarRegime classify_regime(const GradedBasis& coideal);

// m_j = -(-1)^{sum (j-1-i)|x_i|} s^{-1} b_j s^{⊗j} and back. The coderivation
// lives on the suspended carrier.
Coderivation coderivation_from_components(const AInfinityStructure& a);
AInfinityStructure components_from_coderivation(const Coderivation& d, const BasisPtr& carrier);

enum class TensorSide { algebra, coalgebra };

// Tensor trick: lifts a contraction of letters to the word spaces of length
// 1..N with Tπ, T∇ and Th = sum Id^i ⊗ h ⊗ (∇π)^{rest}.
Contraction lift_contraction_tensor(const Contraction& letters, TensorSide side, int max_arity);

}  // namespace homotransfer
