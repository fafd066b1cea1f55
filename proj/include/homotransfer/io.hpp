#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "homotransfer/linfty.hpp"
#include "homotransfer/transfer.hpp"

namespace homotransfer::io {

using Json = nlohmann::ordered_json;

enum class Kind { complex, dga, dgc, dgla, ainf, ainfc, linf, contraction };
std::string to_string(Kind k);

// A parsed structure file. Exactly the members belonging to `kind` are set.
struct Document {
    Kind kind = Kind::complex;
    Field field;
    std::optional<int> max_arity;
    std::optional<ChainComplex> complex;  // complex, dga, dgc, dgla
    std::optional<DGAlgebra> dga;
    std::optional<DGCoalgebra> dgc;
    std::optional<DGLieAlgebra> dgla;
    std::optional<AInfinityStructure> ainf;
    std::optional<AInfinityMorphism> morphism;  // ainf only: M -> morphism_target
    std::optional<DGAlgebra> morphism_target;
    std::optional<AInfinityCoalgebra> ainfc;
    std::optional<LInfinityStructure> linf;
    std::optional<Contraction> contraction;
};

// Parses a structure file. `field` overrides the declared field when given.
// Throws ParseError for malformed text and AxiomError when the declared
// kind's axioms fail (Jacobi is not required of dgla files).
Document parse(const std::string& text, const std::optional<Field>& field = std::nullopt);
Document load(const std::string& path, const std::optional<Field>& field = std::nullopt);

// Canonical text: entries in basis order, two-space indent, trailing newline.
std::string emit(const Document& d);
Json to_json(const Document& d);

Document complex_document(const ChainComplex& c);
Document dga_document(const DGAlgebra& a);
Document dgc_document(const DGCoalgebra& c);
Document dgla_document(const DGLieAlgebra& g);
Document ainf_document(const AInfinityStructure& a, const std::optional<AInfinityMorphism>& f = std::nullopt,
                       const std::optional<DGAlgebra>& target = std::nullopt);
Document ainfc_document(const AInfinityCoalgebra& c);
Document linf_document(const LInfinityStructure& l);
Document contraction_document(const Contraction& c);

// Writes via a temporary file and a rename.
void write_atomic(const std::string& path, const std::string& text);

}  // namespace homotransfer::io
