#include "qrws/walk.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace qrws {

namespace {

constexpr double norm_drift_limit = 1e-8;

void validate(const WalkConfig& config) {
    if (config.m < 2)
        throw std::invalid_argument("walk dimension must be at least 2");
    if (config.m > 30)
        throw std::invalid_argument("walk dimension too large for this simulator");
    if (config.coin.m != config.m)
        throw std::invalid_argument("coin dimension must equal the walk dimension");
    if (config.marked >= (std::uint64_t{1} << config.m))
        throw std::invalid_argument("marked node index out of range");
    if (config.iterations && *config.iterations < 0)
        throw std::invalid_argument("iteration count must be non-negative");
}

std::pair<CoinMatrix, CoinMatrix> circuit_coins(const WalkConfig& config) {
    const CoinParams& c = config.coin;
    CoinMatrix unmarked = traversing_coin(c.phi, c.zeta, config.m);
    CoinMatrix marked = config.circuit == Circuit::Standard ? marking_coin(c.omega, config.m)
                                                            : CoinMatrix::identity(config.m);
    return {unmarked, marked};
}

RunResult measure(const std::vector<double>& dist, std::uint64_t marked, int k) {
    return {dist[marked], dist, k};
}

} // namespace

int iteration_count(int m) {
    if (m < 1) throw std::invalid_argument("iteration_count: dimension must be positive");
    return static_cast<int>(
        std::ceil(std::numbers::pi / 2.0 * std::sqrt(std::pow(2.0, m - 1))));
}

WalkState uniform_initial_state(int m) {
    if (m < 2) throw std::invalid_argument("uniform_initial_state: dimension must be at least 2");
    if (m > 30) throw std::invalid_argument("uniform_initial_state: dimension too large");
    const std::size_t total = static_cast<std::size_t>(m) << m;
    WalkState state{m, {}};
    state.amplitudes.assign(total, Complex{1.0 / std::sqrt(static_cast<double>(total)), 0.0});
    return state;
}

double l2_norm(const WalkState& state) {
    double sum = 0.0;
    for (const Complex& a : state.amplitudes) sum += std::norm(a);
    return std::sqrt(sum);
}

void apply_shift(WalkState& state) {
    const std::size_t n = state.node_count();
    for (int d = 0; d < state.m; ++d) {
        const std::size_t bit = std::size_t{1} << d;
        Complex* block = state.amplitudes.data() + static_cast<std::size_t>(d) * n;
        for (std::size_t x = 0; x < n; ++x)
            if (!(x & bit)) std::swap(block[x], block[x | bit]);
    }
}

void apply_conditional_coins(WalkState& state, const CoinMatrix& unmarked_coin,
                             const CoinMatrix& marked_coin, std::uint64_t marked_node) {
    if (unmarked_coin.dim != state.m || marked_coin.dim != state.m)
        throw std::invalid_argument("apply_conditional_coins: coin dimension mismatch");
    const std::size_t n = state.node_count();
    if (marked_node >= n)
        throw std::invalid_argument("apply_conditional_coins: marked node out of range");
    Complex* amps = state.amplitudes.data();
    for (std::size_t x = 0; x < n; ++x)
        (x == marked_node ? marked_coin : unmarked_coin).apply(amps + x, n);
}

std::vector<double> node_distribution(const WalkState& state) {
    const std::size_t n = state.node_count();
    std::vector<double> dist(n, 0.0);
    for (int d = 0; d < state.m; ++d) {
        const Complex* block = state.amplitudes.data() + static_cast<std::size_t>(d) * n;
        for (std::size_t x = 0; x < n; ++x) dist[x] += std::norm(block[x]);
    }
    return dist;
}

RunResult qrws_run(const WalkConfig& config) {
    validate(config);
    const int k = config.iterations.value_or(iteration_count(config.m));
    const auto [unmarked, marked] = circuit_coins(config);

    WalkState state = uniform_initial_state(config.m);
    for (int it = 0; it < k; ++it) {
        apply_conditional_coins(state, unmarked, marked, config.marked);
        apply_shift(state);
        if (std::abs(l2_norm(state) - 1.0) > norm_drift_limit)
            throw std::runtime_error("qrws_run: state norm drifted beyond tolerance");
    }
    return measure(node_distribution(state), config.marked, k);
}

DenseMatrix build_full_step_unitary(const WalkConfig& config) {
    validate(config);
    const std::size_t n = std::size_t{1} << config.m;
    const std::size_t total = static_cast<std::size_t>(config.m) * n;
    if (total > 4096)
        throw std::invalid_argument("build_full_step_unitary: state dimension exceeds 4096");

    const auto [unmarked, marked] = circuit_coins(config);
    DenseMatrix step(total);
    for (std::size_t x = 0; x < n; ++x) {
        const CoinMatrix& block = x == config.marked ? marked : unmarked;
        for (int d1 = 0; d1 < config.m; ++d1)
            for (int d2 = 0; d2 < config.m; ++d2)
                step(static_cast<std::size_t>(d1) * n + x, static_cast<std::size_t>(d2) * n + x) =
                    d1 == d2 ? block.diag : block.offdiag;
    }
    // left-multiply by the shift permutation: swap the row pairs it transposes
    for (int d = 0; d < config.m; ++d) {
        const std::size_t bit = std::size_t{1} << d;
        for (std::size_t x = 0; x < n; ++x)
            if (!(x & bit))
                step.swap_rows(static_cast<std::size_t>(d) * n + x,
                               static_cast<std::size_t>(d) * n + (x | bit));
    }
    return step;
}

RunResult qrws_run_dense(const WalkConfig& config) {
    const DenseMatrix step = build_full_step_unitary(config);
    const int k = config.iterations.value_or(iteration_count(config.m));
    const std::size_t n = std::size_t{1} << config.m;
    const std::size_t total = static_cast<std::size_t>(config.m) * n;

    std::vector<Complex> state(total, Complex{1.0 / std::sqrt(static_cast<double>(total)), 0.0});
    for (int it = 0; it < k; ++it) state = step.apply(state);

    std::vector<double> dist(n, 0.0);
    for (int d = 0; d < config.m; ++d)
        for (std::size_t x = 0; x < n; ++x)
            dist[x] += std::norm(state[static_cast<std::size_t>(d) * n + x]);
    return measure(dist, config.marked, k);
}

} // namespace qrws
