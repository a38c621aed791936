#pragma once

#include <stdexcept>
#include <string>

#include "deformation.hpp"
#include "orbital.hpp"

namespace qaufbau {

/// Rotor scale parameters. Only the overall energy scale depends on them;
/// the level ordering does not. The defaults make the q = 9/5 limit print
/// the familiar hydrogen spectrum (-13.6, -3.4, ...).
struct RotorParameters {
    double inertia = 0.5;
    double ground_energy = -13.6;
};

inline void validate_inertia(const RotorParameters& p) {
    if (!(p.inertia > 0.0))
        throw std::invalid_argument("rotor inertia must be > 0, got " + std::to_string(p.inertia));
}

inline void validate_ground_energy(const RotorParameters& p) {
    if (!(p.ground_energy < 0.0))
        throw std::invalid_argument("rotor ground energy must be < 0, got " +
                                    std::to_string(p.ground_energy));
}

/// Dimensionless ordering key for one orbital. `value` holds
/// n^2 + alpha(q) [l]_q [l+1]_q, i.e. the quantity under the square root of
/// the ordering functional. The square root is omitted: it is strictly
/// monotone and cannot change any ordering.
struct EnergyKey {
    Orbital orbital;
    double value = 0.0;
};

/// Ordering key eps_q(n,l) + 1 = n^2 + alpha(q) [l]_q [l+1]_q.
/// For l = 0,1,2,3 this expands to the explicit s/p/d/f row formulas; the
/// Casimir factor extends it to any l.
inline EnergyKey epsilon_key(Orbital o, Deformation d) {
    const double value = static_cast<double>(o.n) * o.n + alpha(d) * casimir_factor(o.l, d);
    return EnergyKey{o, value};
}

/// Eigenvalue of the deformed rotor Hamiltonian
///   h_q = (1/2I) (Lambda^2 + alpha(q) [l]_q [l+1]_q)
/// with Lambda^2 eigenvalue (n-1)(n+1) = n^2 - 1.
inline double h_q_eigenvalue(Orbital o, Deformation d, RotorParameters p = {}) {
    validate_inertia(p);
    const double lambda_term = static_cast<double>(o.n - 1) * (o.n + 1);
    return (lambda_term + alpha(d) * casimir_factor(o.l, d)) / (2.0 * p.inertia);
}

/// Eigenvalue of the undeformed asymmetric-rotor Hamiltonian
///   h = (1/2I) (Lambda^2 + alpha L^2),
/// the alpha = 4/3 special case of which reproduces h_q at q = 1.
inline double novaro_h_eigenvalue(Orbital o, double alpha_const, RotorParameters p = {}) {
    validate_inertia(p);
    const double lambda_term = static_cast<double>(o.n - 1) * (o.n + 1);
    const double l_term = static_cast<double>(o.l) * (o.l + 1);
    return (lambda_term + alpha_const * l_term) / (2.0 * p.inertia);
}

/// Shell energy E_0 / (h_q + 1). Strictly negative and strictly increasing
/// in h_q for E_0 < 0, so it induces the same ordering as the key above.
/// The denominator can only degenerate for strongly negative alpha
/// (q > 9/5 with large l).
inline double spectral_energy(Orbital o, Deformation d, RotorParameters p = {}) {
    validate_inertia(p);
    validate_ground_energy(p);
    const double h = h_q_eigenvalue(o, d, p);
    const double denom = h + 1.0;
    if (denom <= 0.0)
        throw std::domain_error("degenerate spectral denominator: h_q + 1 = " +
                                std::to_string(denom) + " for orbital " + o.label());
    return p.ground_energy / denom;
}

} // namespace qaufbau
