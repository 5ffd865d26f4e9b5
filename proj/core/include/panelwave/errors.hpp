#pragma once

#include <stdexcept>
#include <string>

namespace panelwave {

// Base class for everything this library throws on its own behalf.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad or inconsistent user-facing configuration (CLI flags, config files,
// out-of-domain physical inputs).
struct ConfigError : Error {
  using Error::Error;
};

// The cavity resonance denominator 1 - k^2 V / (2a) is (numerically) zero;
// the effective panel parameter tau is undefined there.
struct ResonanceError : Error {
  using Error::Error;
};

// An eigenvalue of the boundary matrix vanished on the contour, so the
// factorization problem is degenerate.
struct DegenerateError : Error {
  using Error::Error;
};

// A branch cut of the square-root surface touches the integration contour.
struct CutOnContourError : Error {
  using Error::Error;
};

// Path planning on the cut plane failed (detour budget exhausted).
struct PathError : Error {
  using Error::Error;
};

// A logarithm branch could not be tracked consistently along the contour
// (nonzero winding of an eigenvalue around the origin).
struct BranchError : Error {
  using Error::Error;
};

// A genericity assumption failed (theta function vanished at a base point,
// or the pole-placement equation degenerated).
struct GenericityError : Error {
  using Error::Error;
};

// The lattice-inversion step produced non-integer cycle multiples on both
// sheet candidates.
struct NonIntegerError : Error {
  using Error::Error;
};

// Evaluation requested at (or too close to) a constructed pole.
struct PoleError : Error {
  using Error::Error;
};

// The incident-wave pole sits too close to a contour node.
struct NearPoleError : Error {
  using Error::Error;
};

// The 2x2 linear system for the solution constants is numerically singular.
struct SingularSystemError : Error {
  using Error::Error;
};

}  // namespace panelwave
