#pragma once

#include <complex>
#include <cstddef>

#include "qrws/angle.hpp"
#include "qrws/dense_matrix.hpp"

namespace qrws {

/// An m x m unitary with one value on the main diagonal and another value
/// everywhere else. Stored as the pair (diag, offdiag); that makes it an
/// identity-plus-rank-one operator, so applying it to a length-m fiber
/// costs O(m) instead of O(m^2).
struct CoinMatrix {
    int dim = 0;
    Complex diag{};
    Complex offdiag{};

    static CoinMatrix identity(int m);

    /// Same coin with every entry multiplied by `factor`.
    [[nodiscard]] CoinMatrix scaled(Complex factor) const;

    /// In-place product with a fiber of `dim` amplitudes spaced `stride`
    /// apart: v_i <- diag*v_i + offdiag*sum_{j != i} v_j.
    void apply(Complex* fiber, std::size_t stride) const;

    [[nodiscard]] DenseMatrix materialize() const;
};

/// Phase parameters that fully determine both coins of a walk:
/// phi drives the reflection, zeta the traversing-coin phase multiplier,
/// omega the marking-coin phase. m is the coin dimension, equal to the
/// hypercube dimension.
struct CoinParams {
    PhaseAngle phi{};
    PhaseAngle zeta{};
    PhaseAngle omega{};
    int m = 2;
};

/// Reflection about the equal-weight superposition of the m coin basis
/// states, generalized by the phase phi:
///   M(phi) = I - (1 - e^{i phi}) |chi><chi|,  |chi> = (1/sqrt(m)) sum_i |i>.
/// In two-value form: diag = 1 - (1 - e^{i phi})/m, offdiag = -(1 - e^{i phi})/m.
CoinMatrix householder_reflection(PhaseAngle phi, int m);

/// Traversing coin e^{i zeta} M(phi): the reflection with an additional
/// phase multiplier. phi = zeta = pi gives the Grover coin 2|chi><chi| - I;
/// phi = zeta = 0 gives the identity.
CoinMatrix traversing_coin(PhaseAngle phi, PhaseAngle zeta, int m);

/// Marking coin -e^{i omega} I. omega = 0 gives -I, omega = pi gives +I.
CoinMatrix marking_coin(PhaseAngle omega, int m);

/// Traversing coin reparameterized for the marking-free circuit:
/// e^{i (zeta - pi)} M(phi). Equals traversing_coin(phi, zeta - pi, m).
CoinMatrix alt_traversing_coin(PhaseAngle phi, PhaseAngle zeta, int m);

/// A rule zeta(phi) tying the traversing-coin phase to the reflection phase.
/// All sine variants share the template zeta = -2*phi + offset + alpha*sin(2*phi):
///   ConstantPi       zeta = pi, independent of phi (the unmodified walk)
///   Sine             offset = pi       (tuned for marking phase omega = 0)
///   SineMarking      offset = omega + pi (compensates a marking phase omega)
///   SineMarkingFree  offset = 0        (tuned for the marking-free circuit)
enum class RelationKind { ConstantPi, Sine, SineMarking, SineMarkingFree };

struct PhaseRelation {
    RelationKind kind = RelationKind::ConstantPi;
    double alpha = 0.0;
    PhaseAngle omega{}; // used by SineMarking only
};

/// Evaluates the relation at phi and reduces the result to [0, 2*pi).
PhaseAngle eval_phase_relation(const PhaseRelation& relation, PhaseAngle phi);

} // namespace qrws
