#pragma once

#include <stdexcept>
#include <string>

namespace droplet {

// Invalid physical or numerical parameter (bad wetting angle, negative slip, ...).
struct InvalidParameterError : std::runtime_error {
  explicit InvalidParameterError(const std::string& msg) : std::runtime_error(msg) {}
};

// Mesh fails a structural invariant (orientation, boundary topology, labels).
struct GeometryError : std::runtime_error {
  explicit GeometryError(const std::string& msg) : std::runtime_error(msg) {}
};

// A vertex update produced a non-positive triangle area.
struct TangledMeshError : GeometryError {
  explicit TangledMeshError(const std::string& msg) : GeometryError(msg) {}
};

// Remeshing could not produce a valid mesh or broke conservation.
struct AdaptationError : std::runtime_error {
  explicit AdaptationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Linear solve failed (structural singularity, zero pivot, bad residual).
struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

// A time step failed after all retries.
struct StepFailureError : std::runtime_error {
  explicit StepFailureError(const std::string& msg) : std::runtime_error(msg) {}
};

// Config file problem; line is 1-based, 0 when not tied to a line.
struct ConfigError : std::runtime_error {
  ConfigError(const std::string& msg, int line_no = 0)
      : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
        line(line_no) {}
  int line;
};

}  // namespace droplet
