#pragma once

#include <string>
#include <vector>

#include "homotransfer/linalg.hpp"

namespace homotransfer {

// Chain complex with differential of degree -1; d∘d = 0 is checked on construction.
class ChainComplex {
public:
    ChainComplex() = default;
    ChainComplex(BasisPtr basis, GradedMap d);
    static ChainComplex zero_differential(const BasisPtr& basis);

    const BasisPtr& basis() const { return basis_; }
    const GradedMap& d() const { return d_; }
    std::size_t dim() const { return basis_->size(); }

private:
    BasisPtr basis_;
    GradedMap d_;
};

// (big ⇄ small, h): pi: big -> small, nabla: small -> big, h on big of degree +1.
struct Contraction {
    ChainComplex big;
    ChainComplex small;
    GradedMap pi;
    GradedMap nabla;
    GradedMap h;
};

// Same carrier; pi∘nabla = Id is not required.
using WeakSystem = Contraction;

struct AxiomResult {
    std::string name;
    bool pass = true;
    std::string witness;  // first offending basis element
};

struct ContractionReport {
    std::vector<AxiomResult> axioms;
    bool all_pass() const;
    const AxiomResult& operator[](const std::string& name) const;
    std::string summary() const;
};

// Axiom names used in reports.
inline constexpr const char* kPiNablaId = "pi_nabla_identity";
inline constexpr const char* kHomotopy = "homotopy_relation";
inline constexpr const char* kPiH = "pi_h_zero";
inline constexpr const char* kHNabla = "h_nabla_zero";
inline constexpr const char* kHH = "h_h_zero";
inline constexpr const char* kPiChain = "pi_chain_map";
inline constexpr const char* kNablaChain = "nabla_chain_map";

ContractionReport verify_contraction(const Contraction& c);

// Homology basis element (degree g, k-th echelon representative) is named "H(g;k)".
Contraction homology_contraction(const ChainComplex& c);
Contraction trivial_contraction(const ChainComplex& c);

// Shifts both complexes by k (odd k flips the signs of d and h).
ChainComplex suspend(const ChainComplex& c, int k);
Contraction suspend(const Contraction& c, int k);

struct BlockDecomposition {
    std::vector<SparseVec> small_image;       // N1 = pi nabla (N), small coordinates
    std::vector<SparseVec> small_complement;  // N2 = (Id - pi nabla)(N)
    std::vector<SparseVec> big_image;         // M1 = nabla (N1), big coordinates
    std::vector<SparseVec> big_kernel;        // M2 = ker pi
    bool direct_sum = false;                  // big = M1 ⊕ M2
    bool h_vanishes_on_image = false;
    bool h_preserves_kernel = false;
    bool nabla_complement_in_kernel = false;
    bool pi_iso_on_image = false;  // pi restricted to M1 inverts nabla_1
    bool block_form() const {
        return direct_sum && h_vanishes_on_image && h_preserves_kernel && nabla_complement_in_kernel &&
               pi_iso_on_image;
    }
};

struct NormalizedSystem {
    Contraction contraction;   // big ⇄ N1
    ChainComplex complement;   // N2
    BlockDecomposition blocks;
};

// throws AxiomError when pi∘nabla is not idempotent or the homotopy
// relation / annihilation conditions fail
NormalizedSystem normalize_weak_system(const WeakSystem& w);

struct HodgeParts {
    SparseVec boundary;  // d h x
    SparseVec harmonic;  // nabla pi x
    SparseVec h_part;    // h d x
};
HodgeParts hodge_split(const Contraction& c, const SparseVec& x);

}  // namespace homotransfer
