#pragma once

#include "vortex/profiles.hpp"

namespace vortex {

struct KernelSpec {
    int n = 1;
};

// K_n(r) = r^(n-1)/2 for r <= 1, r^(-n-1)/2 for r > 1.
double eval_kernel(const KernelSpec& spec, double r);

// (1/2pi) * integral over [-pi, pi] of sin(b) sin(n b) / (1 + r^2 - 2 r cos b).
double kernel_trig_oracle(const KernelSpec& spec, double r, double tol = 1e-12);

struct AngularVelocityReport {
    double quadrature;   // integral of varpi_eps'(s) K_1(r/s) ds over (0, inf)
    double closed_form;  // -partial_mass(r) / r^2
    double difference;
};

// Both sides of c(r) = int varpi' K_1(r/s) ds = -P(r)/r^2; throws IdentityViolation past tol.
AngularVelocityReport angular_velocity_identity(const VortexProfile& p, double r, double tol = 1e-9);

}  // namespace vortex
