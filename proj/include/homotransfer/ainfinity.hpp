#pragma once

#include <map>
#include <string>
#include <vector>

#include "homotransfer/algebra.hpp"
#include "homotransfer/words.hpp"

namespace homotransfer {

// input word (carrier indices) -> value in the target carrier
using OpTable = std::map<Word, SparseVec>;

// A∞-algebra on a carrier (the augmentation ideal): m_n of degree n-2 for
// n = 1..N. m_1 is the differential.
struct AInfinityStructure {
    BasisPtr carrier;
    int max_arity = 5;
    OpTable ops;

    // drops zero entries, checks degrees and arities
    static AInfinityStructure make(BasisPtr carrier, int max_arity, OpTable ops);
    static AInfinityStructure from_dga(const DGAlgebra& a, int max_arity);

    const SparseVec& op(const Word& w) const;
    GradedMap m1() const;
    std::vector<int> arities() const;  // arities with a nonzero entry
    bool is_minimal() const;           // m_1 = 0
    AInfinityStructure truncated(int n) const;
    friend bool operator==(const AInfinityStructure& a, const AInfinityStructure& b);
};

// f_n : M^{⊗n} -> A of degree n-1.
struct AInfinityMorphism {
    BasisPtr source;
    BasisPtr target;
    int max_arity = 5;
    OpTable comps;

    const SparseVec& comp(const Word& w) const;
    friend bool operator==(const AInfinityMorphism& a, const AInfinityMorphism& b);
};

// A∞-coalgebra on a carrier (the coaugmentation coideal), stored as the
// derivation of its cobar construction: cobar[x] is the image of the
// desuspended letter of x, a combination of words in desuspended letters
// (same indices as the carrier), lengths 1..N.
struct AInfinityCoalgebra {
    BasisPtr carrier;
    int max_arity = 5;
    std::vector<WordComb> cobar;

    static AInfinityCoalgebra from_dgc(const DGCoalgebra& c, int max_arity);
    friend bool operator==(const AInfinityCoalgebra& a, const AInfinityCoalgebra& b);
};

// The first word (in arity order) where two tables disagree, if any.
std::optional<Word> first_difference(const OpTable& a, const OpTable& b);

// (-1)^{sum_i (n-1-i)|x_i|}: sign of the tensor power of the suspension.
long long suspension_exponent(const Word& w, const GradedBasis& carrier);

}  // namespace homotransfer
