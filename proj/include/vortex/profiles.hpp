#pragma once

#include <utility>

namespace vortex {

inline constexpr double kDefaultEps0 = 0.15;

// log(2)/2, the angular velocity of the base profile at r = 1 with sign flipped.
double lambda0();

double base_profile(double r);
double base_profile_derivative(double r);

struct VortexProfile {
    double epsilon = 0.0;

    explicit VortexProfile(double eps = 0.0);
    double inner() const { return 1.0 - 0.5 * epsilon; }
    double outer() const { return 1.0 + 0.5 * epsilon; }
    // varpi_0(1+eps/2) - varpi_0(1-eps/2)
    double jump() const;
};

enum class ProfileKind { base, perturbed, derivative };

double eval_profile(const VortexProfile& p, double r, ProfileKind which);

// Integral of s * varpi_eps(s) over [0, r].
double partial_mass(const VortexProfile& p, double r);

enum class Side { left, right };
enum class COrder { value, d_eps, d_x, d2_eps };

struct SideCoefficient {
    Side side = Side::left;
    double epsilon = 0.0;
};

// c_L(x, eps) = c(x(1 - eps/2)) and c_R(x, eps) = c(x(1 + eps/2)) via their closed forms,
// analytically continued past x = 1. d_eps and d2_eps are derivatives in eps at the
// coefficient's epsilon; d_x is the derivative in x.
double eval_c(const SideCoefficient& s, double x, COrder order = COrder::value);

// Physical angular velocity c(r) = -partial_mass(r)/r^2 (value or d_x only).
double eval_c(const VortexProfile& p, double r, COrder order = COrder::value);

// lambda0 + c(x, 0); Taylor expansion about x = 1 keeps the simple zero there exact.
double limit_gap(double x);

// (-c_R(1, eps), -c_L(1, eps)).
std::pair<double, double> lambda_bracket(double epsilon, double eps0 = kDefaultEps0);

// sup |varpi_0'| located by golden-section search.
struct DerivativeSup {
    double value;
    double location;
};
DerivativeSup base_derivative_sup();

struct HolderReport {
    double sup_norm;
    double seminorm;
    double norm;   // sup_norm + seminorm
    double bound;  // sup|varpi_0'| * eps^(1 - alpha)
};

HolderReport holder_distance(double epsilon, double alpha, int grid_resolution = 600);

}  // namespace vortex
