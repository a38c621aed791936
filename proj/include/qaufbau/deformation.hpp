#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace qaufbau {

/// Deformation parameter of the quantum algebra. Valid values are finite
/// and strictly positive; q = 1 is an ordinary interior point and never
/// needs special handling downstream.
class Deformation {
public:
    explicit Deformation(double q) : q_(q) {
        if (!std::isfinite(q) || q <= 0.0)
            throw std::invalid_argument("deformation parameter q must be finite and > 0, got " +
                                        std::to_string(q));
    }

    double q() const { return q_; }

private:
    double q_;
};

/// q-integer [x]_q evaluated with the finite sum
///   [x]_q = q^(x-1) + q^(x-3) + ... + q^(-x+1)
/// which is exact at q = 1 (a sum of x ones) and vanishes for x = 0.
/// The sum is palindromic in q <-> 1/q.
inline double q_integer(int x, Deformation d) {
    if (x < 0)
        throw std::invalid_argument("q_integer requires x >= 0, got " + std::to_string(x));
    const double q = d.q();
    double sum = 0.0;
    for (int k = 0; k < x; ++k)
        sum += std::pow(q, static_cast<double>(x - 1 - 2 * k));
    return sum;
}

/// Linear deformation law alpha(q) = 3 - (5/3) q.
/// alpha(1) = 4/3 recovers the undeformed asymmetric rotor; alpha(9/5) = 0
/// removes the orbital term entirely (hydrogenic limit).
inline double alpha(Deformation d) {
    return 3.0 - (5.0 / 3.0) * d.q();
}

/// Casimir eigenvalue [l]_q [l+1]_q of so(3)_q; reduces to l(l+1) at q = 1.
inline double casimir_factor(int l, Deformation d) {
    if (l < 0)
        throw std::invalid_argument("casimir_factor requires l >= 0, got " + std::to_string(l));
    return q_integer(l, d) * q_integer(l + 1, d);
}

} // namespace qaufbau
