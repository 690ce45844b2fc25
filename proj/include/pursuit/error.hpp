#pragma once

#include <stdexcept>
#include <string>

namespace pursuit {

// Base class for all domain errors raised by this library. Precondition
// violations that are plain programming errors (negative time, non-unit
// heading fed to a closed-form helper) throw std::invalid_argument instead.
struct PursuitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The four players do not define a proper game: duplicate points, collinear
// pursuers, or an evader not strictly inside the pursuer triangle.
struct NotATriangle : PursuitError {
  using PursuitError::PursuitError;
};

// A construction that is exact in real arithmetic lost too much precision in
// doubles (near-parallel bisectors, assignment cross-check mismatch, ...).
struct NumericalDegeneracy : PursuitError {
  using PursuitError::PursuitError;
};

// A point that must lie strictly inside a given triangle does not.
struct EvaderOutsideCell : PursuitError {
  using PursuitError::PursuitError;
};

// A cell whose shape does not support the requested construction (zero-area
// triangle, evader on the boundary).
struct DegenerateCell : PursuitError {
  using PursuitError::PursuitError;
};

// An intersection of two lines that numerically fails to exist.
struct ParallelLines : PursuitError {
  using PursuitError::PursuitError;
};

// A time-indexed plan was queried at or past its final time.
struct GameOver : PursuitError {
  using PursuitError::PursuitError;
};

// A family-specific controller was applied to a game the family did not
// generate, or family parameters leave its parameter domain.
struct OutOfFamily : PursuitError {
  using PursuitError::PursuitError;
};

// An input violates a structural assumption a controller depends on (for the
// coupled flat-cell controller: the evader left the admissible half-plane
// during its first phase).
struct AssumptionViolated : PursuitError {
  using PursuitError::PursuitError;
};

// Direction set too degenerate for the min-max guarantee value to be
// meaningful (guarantee level at or below zero).
struct DegenerateDirections : PursuitError {
  using PursuitError::PursuitError;
};

// A policy handed the engine a malformed heading (non-finite, or norm > 1).
struct PolicyError : PursuitError {
  using PursuitError::PursuitError;
};

// A rejection sampler hit its retry cap without producing a sample.
struct SamplerExhausted : PursuitError {
  using PursuitError::PursuitError;
};

}  // namespace pursuit
