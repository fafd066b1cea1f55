#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homotransfer/complexes.hpp"
#include "homotransfer/words.hpp"

namespace homotransfer {

using PairKey = std::pair<Index, Index>;
using StructureConstants = std::map<PairKey, SparseVec>;

// Augmented DG algebra given by its augmentation ideal; the unit is formal.
struct DGAlgebra {
    BasisPtr basis;
    GradedMap d;
    StructureConstants mu;

    // validates d∘d = 0, associativity and the Leibniz rule
    static DGAlgebra make(BasisPtr basis, GradedMap d, StructureConstants mu);
    // skips the algebra axioms (degree checks still apply)
    static DGAlgebra unchecked(BasisPtr basis, GradedMap d, StructureConstants mu);

    SparseVec mul(Index a, Index b) const;
    SparseVec mul(const SparseVec& u, const SparseVec& v) const;
    ChainComplex complex() const { return ChainComplex(basis, d); }

    std::optional<std::string> associativity_failure() const;
    std::optional<std::string> leibniz_failure() const;
    bool graded_commutative() const;
};

// Coaugmented DG coalgebra given by its coaugmentation coideal; delta[x] is
// the reduced diagonal as a combination of two-letter words.
struct DGCoalgebra {
    BasisPtr basis;
    GradedMap d;
    std::vector<WordComb> delta;

    static DGCoalgebra make(BasisPtr basis, GradedMap d, std::vector<WordComb> delta);
    static DGCoalgebra unchecked(BasisPtr basis, GradedMap d, std::vector<WordComb> delta);
    ChainComplex complex() const { return ChainComplex(basis, d); }

    std::optional<std::string> coassociativity_failure() const;
    std::optional<std::string> coleibniz_failure() const;
};

// DG Lie algebra; the bracket table may list one or both orders of a pair
// but must be graded skew.
struct DGLieAlgebra {
    BasisPtr basis;
    GradedMap d;
    StructureConstants bracket;

    // validates skewness, d∘d = 0, Leibniz and (unless disabled) Jacobi
    static DGLieAlgebra make(BasisPtr basis, GradedMap d, StructureConstants bracket, bool require_jacobi = true);
    SparseVec br(Index a, Index b) const;
    SparseVec br(const SparseVec& u, const SparseVec& v) const;
    ChainComplex complex() const { return ChainComplex(basis, d); }

    std::optional<std::string> skew_failure() const;
    std::optional<std::string> leibniz_failure() const;
    std::optional<std::string> jacobi_failure() const;
};

// Commutator Lie algebra [x,y] = xy - (-1)^{|x||y|} yx of a DG algebra.
DGLieAlgebra commutator_lie(const DGAlgebra& a);

}  // namespace homotransfer
