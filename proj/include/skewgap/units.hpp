#pragma once

#include "skewgap/error.hpp"

namespace skewgap {

/// Reduced Planck constant and particle mass. Solvers work in the dimensionless
/// eigenvalue lambda; energies are E = hbar^2 / (2 m) * lambda.
struct PhysicalUnits {
    double hbar = 1.0;
    double mass = 1.0;

    double energy_factor() const
    {
        if (!(hbar > 0.0) || !(mass > 0.0)) {
            throw DomainError("physical units require hbar > 0 and mass > 0");
        }
        return hbar * hbar / (2.0 * mass);
    }

    double to_energy(double lambda) const { return energy_factor() * lambda; }
};

} // namespace skewgap
