#pragma once

#include <stdexcept>
#include <string>

namespace spinrefl {

// Direction vector expected to be unit length (or field magnitude zero where
// a direction is required).
struct ZeroDirection : std::runtime_error {
    explicit ZeroDirection(const std::string& what) : std::runtime_error(what) {}
};

// Two-layer composition formulas require strictly in-plane fields (bz = 0).
struct FieldOutOfPlane : std::runtime_error {
    explicit FieldOutOfPlane(const std::string& what) : std::runtime_error(what) {}
};

// The 2x2 vacuum boundary extraction system is numerically singular.
struct SingularBoundarySystem : std::runtime_error {
    SingularBoundarySystem(const std::string& what, double condition)
        : std::runtime_error(what), condition_estimate(condition) {}
    double condition_estimate;
};

// Interior eigenvalues of the helix companion matrix coincide beyond tolerance.
struct DegenerateModes : std::runtime_error {
    explicit DegenerateModes(const std::string& what) : std::runtime_error(what) {}
};

// A probability channel computed below -1e-12 (numerical guard).
struct NegativeProbability : std::runtime_error {
    explicit NegativeProbability(const std::string& what) : std::runtime_error(what) {}
};

// A CSV handed to the plot emitter does not carry the expected header.
struct HeaderMismatch : std::runtime_error {
    explicit HeaderMismatch(const std::string& what) : std::runtime_error(what) {}
};

// Config file failed to parse or validate against module preconditions.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spinrefl
