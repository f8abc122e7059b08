#pragma once

#include <stdexcept>
#include <string>

namespace quantinv {

struct DivisionByZero : std::domain_error {
    explicit DivisionByZero(const std::string& what) : std::domain_error(what) {}
};

struct ZeroPolynomial : std::domain_error {
    explicit ZeroPolynomial(const std::string& what) : std::domain_error(what) {}
};

struct NotPrimitive : std::invalid_argument {
    explicit NotPrimitive(const std::string& what) : std::invalid_argument(what) {}
};

struct NotSquarefree : std::invalid_argument {
    explicit NotSquarefree(const std::string& what) : std::invalid_argument(what) {}
};

struct NoRootInInterval : std::invalid_argument {
    explicit NoRootInInterval(const std::string& what) : std::invalid_argument(what) {}
};

struct MultipleRootsInInterval : std::invalid_argument {
    explicit MultipleRootsInInterval(const std::string& what) : std::invalid_argument(what) {}
};

struct ReducibleByRationalRoot : std::invalid_argument {
    explicit ReducibleByRationalRoot(const std::string& what) : std::invalid_argument(what) {}
};

struct NonConvergence : std::runtime_error {
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct IndeterminateOutput : std::runtime_error {
    explicit IndeterminateOutput(const std::string& what) : std::runtime_error(what) {}
};

struct ContractiveUnsupported : std::invalid_argument {
    explicit ContractiveUnsupported(const std::string& what) : std::invalid_argument(what) {}
};

struct IntervalEmpty : std::invalid_argument {
    explicit IntervalEmpty(const std::string& what) : std::invalid_argument(what) {}
};

struct NotApplicable : std::invalid_argument {
    explicit NotApplicable(const std::string& what) : std::invalid_argument(what) {}
};

struct ConstructionStalled : std::logic_error {
    explicit ConstructionStalled(const std::string& what) : std::logic_error(what) {}
};

struct NoConsistentInput : std::runtime_error {
    explicit NoConsistentInput(const std::string& what) : std::runtime_error(what) {}
};

struct AmbiguousInput : std::logic_error {
    explicit AmbiguousInput(const std::string& what) : std::logic_error(what) {}
};

struct DepthCapExceeded : std::runtime_error {
    explicit DepthCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct CellWindowExceeded : std::runtime_error {
    explicit CellWindowExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct SearchBudgetExceeded : std::runtime_error {
    explicit SearchBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::invalid_argument {
    explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace quantinv
