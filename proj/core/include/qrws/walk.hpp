#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qrws/coin.hpp"
#include "qrws/dense_matrix.hpp"

namespace qrws {

/// Iterations for a single-solution search on the m-dimensional hypercube:
/// ceil((pi/2) * sqrt(2^{m-1})).
int iteration_count(int m);

/// Which circuit drives one iteration.
///   Standard:    traversing coin e^{i zeta} M(phi) on unmarked nodes,
///                marking coin -e^{i omega} I on the marked node.
///   MarkingFree: the marked node's coin fiber is left untouched (identity);
///                the traversing coin carries the whole phase budget. Driving
///                it with zeta = -2*phi + alpha*sin(2*phi) reproduces the
///                standard circuit at omega = 0 with
///                zeta = -2*phi + pi + alpha*sin(2*phi).
enum class Circuit { Standard, MarkingFree };

struct WalkConfig {
    int m = 2;
    CoinParams coin{};
    Circuit circuit = Circuit::Standard;
    std::uint64_t marked = 0;
    std::optional<int> iterations{}; // default: iteration_count(m)
};

/// Joint coin+node state over the hypercube. Amplitudes are direction-major:
/// index = d * 2^m + x for direction d in [0, m) and node x in [0, 2^m).
struct WalkState {
    int m = 0;
    std::vector<Complex> amplitudes;

    [[nodiscard]] std::size_t node_count() const { return std::size_t{1} << m; }
};

/// Equal-weight superposition over all (direction, node) pairs. Requires m >= 2.
WalkState uniform_initial_state(int m);

double l2_norm(const WalkState& state);

/// Hypercube shift: amplitude at (d, x) moves to (d, x XOR 2^d). An exact
/// permutation and an involution.
void apply_shift(WalkState& state);

/// Multiplies each node's m-amplitude coin fiber by `unmarked_coin`, except
/// the fiber at `marked_node`, which gets `marked_coin`.
void apply_conditional_coins(WalkState& state, const CoinMatrix& unmarked_coin,
                             const CoinMatrix& marked_coin, std::uint64_t marked_node);

/// Per-node probabilities: sum over directions of |amplitude|^2.
std::vector<double> node_distribution(const WalkState& state);

struct RunResult {
    double success_probability = 0.0;
    std::vector<double> node_distribution;
    int iterations_used = 0;
};

/// Runs the configured circuit from the uniform state for the configured
/// number of iterations (coins, then shift, per iteration) and measures the
/// node marginal. Throws if the state norm drifts beyond 1e-8.
RunResult qrws_run(const WalkConfig& config);

/// One full iteration as an explicit dense matrix (shift times conditional
/// coins), assembled from materialized coin blocks and the shift permutation.
/// Guarded to state dimensions m * 2^m <= 4096.
DenseMatrix build_full_step_unitary(const WalkConfig& config);

/// Differential-test oracle: same result contract as qrws_run, but computed
/// by repeated dense matrix-vector products with build_full_step_unitary.
RunResult qrws_run_dense(const WalkConfig& config);

} // namespace qrws
