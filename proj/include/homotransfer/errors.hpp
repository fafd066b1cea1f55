#pragma once

#include <stdexcept>
#include <string>

namespace homotransfer {

// Process exit codes used by the command line front end.
enum class ExitCode : int {
    ok = 0,
    parse = 2,
    axiom = 3,
    divergence = 4,
    resource = 5,
};

class Error : public std::runtime_error {
public:
    Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ExitCode code() const noexcept { return code_; }

private:
    ExitCode code_;
};

// malformed input text, unknown names, bad coefficients
class ParseError : public Error {
public:
    explicit ParseError(const std::string& w) : Error(ExitCode::parse, w) {}
};

// an algebraic axiom of the input fails (d^2, associativity, Jacobi, ...)
class AxiomError : public Error {
public:
    explicit AxiomError(const std::string& w) : Error(ExitCode::axiom, w) {}
};

// bases do not match; raised by compose and friends
class StructuralError : public Error {
public:
    explicit StructuralError(const std::string& w) : Error(ExitCode::axiom, w) {}
};

class UnsupportedField : public Error {
public:
    explicit UnsupportedField(const std::string& w) : Error(ExitCode::axiom, w) {}
};

// two transfer methods disagree; always a bug in sign bookkeeping
class MethodDivergence : public Error {
public:
    explicit MethodDivergence(const std::string& w) : Error(ExitCode::divergence, w) {}
};

// budgets: tree counts, arity caps, non-terminating series
class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& w) : Error(ExitCode::resource, w) {}
};

// perturbation does not lower the filtration, so the series cannot terminate
class SeriesDivergence : public ResourceError {
public:
    explicit SeriesDivergence(const std::string& w) : ResourceError(w) {}
};

}  // namespace homotransfer
