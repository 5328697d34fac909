#pragma once

#include <cstdint>
#include <random>
#include <variant>
#include <vector>

#include "qrws/walk.hpp"

namespace qrws {

/// Portable uniform draw in [0, 1): the top 53 bits of one mt19937_64 output.
/// Used for every randomized sweep so that a seed pins the exact sample list
/// on any platform (std::uniform_real_distribution is not bit-portable).
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// One success-probability evaluation of the walk at fixed phases.
struct LandscapeSample {
    double phi = 0.0;
    double zeta = 0.0;
    double omega = 0.0;
    int m = 0;
    int k = 0;
    double p = 0.0;
};

/// Evenly spaced half-open lattice over [0, 2*pi)^2: phi_i = i * 2*pi/n_phi,
/// zeta_j = j * 2*pi/n_zeta. Samples are emitted phi-major (index i*n_zeta + j).
struct GridSweep {
    int n_phi = 33;
    int n_zeta = 33;
};

/// n_samples independent (phi, zeta) pairs drawn uniformly from [0, 2*pi),
/// two draws per sample in sample order, from mt19937_64(seed).
struct RandomSweep {
    int n_samples = 1000;
    std::uint64_t seed = 1;
};

using SweepMode = std::variant<GridSweep, RandomSweep>;

/// Success probability over the (phi, zeta) phase plane at fixed omega.
/// Every sample runs the standard circuit for k = iteration_count(m) steps.
std::vector<LandscapeSample> sample_landscape(int m, PhaseAngle omega, const SweepMode& mode);

struct CurvePoint {
    double phi = 0.0;  // raw grid value in [0, 2*pi], endpoints included
    double zeta = 0.0; // canonical value of the phase relation at phi
    double p = 0.0;
};

struct ProbabilityCurve {
    int m = 0;
    PhaseAngle omega{};
    PhaseRelation relation{};
    Circuit circuit = Circuit::Standard;
    std::vector<CurvePoint> points;
};

/// p(phi, zeta(phi)) on the inclusive n_phi-point grid over [0, 2*pi], with
/// zeta tied to phi by the relation. Requires n_phi >= 2.
ProbabilityCurve probability_curve(int m, PhaseAngle omega, const PhaseRelation& relation,
                                   int n_phi, Circuit circuit = Circuit::Standard);

enum class ThresholdMode { RelativeToMax, Absolute };

/// Plateau metrics of one curve: the grid measure of {phi : p >= cutoff}.
struct RobustnessReport {
    double alpha = 0.0;
    double width = 0.0; // radians, in [0, 2*pi]
    double p_max = 0.0;
    PhaseAngle phi_max{};
    ThresholdMode threshold_mode = ThresholdMode::RelativeToMax;
    double threshold_value = 0.9;
};

/// Finds p_max (ties toward the smallest phi) and measures the qualifying
/// set as (number of qualifying grid points) * (grid spacing), clamped to
/// one full period so that a curve that qualifies everywhere reports 2*pi.
/// cutoff = threshold_value * p_max (RelativeToMax) or threshold_value
/// (Absolute).
RobustnessReport robustness_width(const ProbabilityCurve& curve, ThresholdMode mode,
                                  double threshold_value);

struct AlphaRange {
    double lo = -1.0;
    double hi = 1.0;
};

/// Maximizes plateau width over alpha for one sine-family relation: a coarse
/// scan in steps of 0.01 over the range, then golden-section refinement of
/// the bracketing interval down to 1e-4. Width ties break toward smaller
/// |alpha|, then toward smaller alpha; output is deterministic.
/// SineMarkingFree curves run on the marking-free circuit, the others on the
/// standard circuit.
RobustnessReport optimize_alpha(int m, PhaseAngle omega, RelationKind family,
                                AlphaRange alpha_range = {}, int n_phi = 512,
                                ThresholdMode mode = ThresholdMode::RelativeToMax,
                                double threshold_value = 0.9);

/// Draws n_samples (phi, zeta, omega) triples uniformly from [0, 2*pi) and
/// returns the largest |p(phi, zeta, omega) - p(phi, zeta - omega, 0)|.
/// Exercises the claim that only the phase difference zeta - omega matters.
double check_phase_equivalence(int m, int n_samples, std::uint64_t seed);

} // namespace qrws
