#include "qrws/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qrws {

namespace {

double run_probability(int m, double phi, double zeta, PhaseAngle omega, Circuit circuit,
                       std::optional<int> iterations = {}) {
    WalkConfig config{m, CoinParams{PhaseAngle{phi}, PhaseAngle{zeta}, omega, m}, circuit, 0,
                      iterations};
    return qrws_run(config).success_probability;
}

bool better_candidate(const RobustnessReport& candidate, const RobustnessReport& best) {
    if (candidate.width != best.width) return candidate.width > best.width;
    if (std::abs(candidate.alpha) != std::abs(best.alpha))
        return std::abs(candidate.alpha) < std::abs(best.alpha);
    return candidate.alpha < best.alpha;
}

} // namespace

std::vector<LandscapeSample> sample_landscape(int m, PhaseAngle omega, const SweepMode& mode) {
    if (m < 2) throw std::invalid_argument("sample_landscape: dimension must be at least 2");
    const int k = iteration_count(m);
    std::vector<LandscapeSample> samples;

    auto evaluate = [&](double phi, double zeta) {
        const double p = run_probability(m, phi, zeta, omega, Circuit::Standard, k);
        samples.push_back({phi, zeta, omega.value(), m, k, p});
    };

    if (const auto* grid = std::get_if<GridSweep>(&mode)) {
        if (grid->n_phi < 1 || grid->n_zeta < 1)
            throw std::invalid_argument("sample_landscape: grid sizes must be positive");
        const double h_phi = two_pi / grid->n_phi;
        const double h_zeta = two_pi / grid->n_zeta;
        samples.reserve(static_cast<std::size_t>(grid->n_phi) * grid->n_zeta);
        for (int i = 0; i < grid->n_phi; ++i)
            for (int j = 0; j < grid->n_zeta; ++j) evaluate(i * h_phi, j * h_zeta);
    } else {
        const auto& random = std::get<RandomSweep>(mode);
        if (random.n_samples < 1)
            throw std::invalid_argument("sample_landscape: sample count must be positive");
        std::mt19937_64 rng(random.seed);
        samples.reserve(static_cast<std::size_t>(random.n_samples));
        for (int i = 0; i < random.n_samples; ++i) {
            const double phi = two_pi * uniform_unit(rng);
            const double zeta = two_pi * uniform_unit(rng);
            evaluate(phi, zeta);
        }
    }
    return samples;
}

ProbabilityCurve probability_curve(int m, PhaseAngle omega, const PhaseRelation& relation,
                                   int n_phi, Circuit circuit) {
    if (n_phi < 2) throw std::invalid_argument("probability_curve: need at least 2 grid points");
    ProbabilityCurve curve{m, omega, relation, circuit, {}};
    curve.points.reserve(static_cast<std::size_t>(n_phi));
    for (int i = 0; i < n_phi; ++i) {
        const double phi = two_pi * i / (n_phi - 1);
        const double zeta = eval_phase_relation(relation, PhaseAngle{phi}).value();
        curve.points.push_back({phi, zeta, run_probability(m, phi, zeta, omega, circuit)});
    }
    return curve;
}

RobustnessReport robustness_width(const ProbabilityCurve& curve, ThresholdMode mode,
                                  double threshold_value) {
    const auto& pts = curve.points;
    if (pts.empty()) throw std::invalid_argument("robustness_width: empty curve");

    double p_max = pts.front().p;
    double phi_at_max = pts.front().phi;
    for (const CurvePoint& pt : pts) {
        if (pt.p > p_max) {
            p_max = pt.p;
            phi_at_max = pt.phi;
        }
    }

    const double cutoff = mode == ThresholdMode::RelativeToMax ? threshold_value * p_max
                                                               : threshold_value;
    const auto qualifying = static_cast<double>(
        std::count_if(pts.begin(), pts.end(), [&](const CurvePoint& pt) { return pt.p >= cutoff; }));
    const double spacing =
        pts.size() > 1 ? (pts.back().phi - pts.front().phi) / static_cast<double>(pts.size() - 1)
                       : two_pi;
    return {curve.relation.alpha, std::min(qualifying * spacing, two_pi),
            p_max,                PhaseAngle{phi_at_max},
            mode,                 threshold_value};
}

RobustnessReport optimize_alpha(int m, PhaseAngle omega, RelationKind family,
                                AlphaRange alpha_range, int n_phi, ThresholdMode mode,
                                double threshold_value) {
    if (family == RelationKind::ConstantPi)
        throw std::invalid_argument("optimize_alpha: relation family has no alpha");
    if (!(alpha_range.lo <= alpha_range.hi))
        throw std::invalid_argument("optimize_alpha: empty alpha range");

    const Circuit circuit =
        family == RelationKind::SineMarkingFree ? Circuit::MarkingFree : Circuit::Standard;
    auto width_at = [&](double alpha) {
        const PhaseRelation relation{family, alpha, omega};
        return robustness_width(probability_curve(m, omega, relation, n_phi, circuit), mode,
                                threshold_value);
    };

    constexpr double coarse_step = 0.01;
    const int steps =
        static_cast<int>(std::floor((alpha_range.hi - alpha_range.lo) / coarse_step + 1e-9));
    RobustnessReport best = width_at(alpha_range.lo);
    for (int i = 1; i <= steps; ++i) {
        const RobustnessReport candidate = width_at(alpha_range.lo + i * coarse_step);
        if (better_candidate(candidate, best)) best = candidate;
    }
    if (alpha_range.lo + steps * coarse_step < alpha_range.hi) { // cover the far endpoint
        const RobustnessReport candidate = width_at(alpha_range.hi);
        if (better_candidate(candidate, best)) best = candidate;
    }

    // golden-section refinement of the coarse bracket
    double lo = std::max(alpha_range.lo, best.alpha - coarse_step);
    double hi = std::min(alpha_range.hi, best.alpha + coarse_step);
    constexpr double inv_phi = 0.6180339887498949; // (sqrt(5) - 1) / 2
    constexpr double alpha_resolution = 1e-4;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    RobustnessReport f1 = width_at(x1);
    RobustnessReport f2 = width_at(x2);
    while (hi - lo > alpha_resolution) {
        if (better_candidate(f1, best)) best = f1;
        if (better_candidate(f2, best)) best = f2;
        if (f1.width >= f2.width) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = width_at(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = width_at(x2);
        }
    }
    if (better_candidate(f1, best)) best = f1;
    if (better_candidate(f2, best)) best = f2;
    return best;
}

double check_phase_equivalence(int m, int n_samples, std::uint64_t seed) {
    if (n_samples < 1)
        throw std::invalid_argument("check_phase_equivalence: sample count must be positive");
    std::mt19937_64 rng(seed);
    double max_deviation = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const double phi = two_pi * uniform_unit(rng);
        const double zeta = two_pi * uniform_unit(rng);
        const double omega = two_pi * uniform_unit(rng);
        const double p_marked = run_probability(m, phi, zeta, PhaseAngle{omega}, Circuit::Standard);
        const double p_shifted = run_probability(m, phi, zeta - omega, PhaseAngle{}, Circuit::Standard);
        max_deviation = std::max(max_deviation, std::abs(p_marked - p_shifted));
    }
    return max_deviation;
}

} // namespace qrws
