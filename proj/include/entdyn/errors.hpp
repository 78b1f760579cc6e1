#pragma once

#include <stdexcept>

namespace entdyn {

// Physical parameter outside its valid range (separation, probability, rate).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Invalid run setup (step size, grid, bracket).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Integrator left the physical manifold (trace drift beyond tolerance).
struct IntegrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One-photon coherences above threshold: the block structure the evolution
// is supposed to preserve is broken, which signals a setup or integrator bug.
struct StructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sample grid too coarse to bracket an event for refinement.
struct ResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace entdyn
