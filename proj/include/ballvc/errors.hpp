#pragma once

#include <stdexcept>
#include <string>

namespace ballvc {

// Raised when an exact solver is asked for an instance beyond its documented
// size cap. Callers can catch this and fall back to greedy/budgeted modes.
struct SolverCapExceeded : std::runtime_error {
    explicit SolverCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an exact problem has no feasible solution (e.g. hitting set of
// a hypergraph with an empty hyperedge).
struct InfeasibleInstance : std::runtime_error {
    explicit InfeasibleInstance(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a structure that is supposed to be guaranteed by a verified
// precondition fails to materialize. Indicates a bug, not bad input.
struct InternalInvariantViolation : std::logic_error {
    explicit InternalInvariantViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace ballvc
