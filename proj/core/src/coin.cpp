#include "qrws/coin.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qrws {

namespace {

void require_positive_dim(int m) {
    if (m < 1) throw std::invalid_argument("coin dimension must be a positive integer");
}

} // namespace

CoinMatrix CoinMatrix::identity(int m) {
    require_positive_dim(m);
    return {m, Complex{1.0, 0.0}, Complex{}};
}

CoinMatrix CoinMatrix::scaled(Complex factor) const {
    return {dim, factor * diag, factor * offdiag};
}

void CoinMatrix::apply(Complex* fiber, std::size_t stride) const {
    Complex sum{};
    for (int d = 0; d < dim; ++d) sum += fiber[static_cast<std::size_t>(d) * stride];
    const Complex keep = diag - offdiag;
    const Complex mix = offdiag * sum;
    for (int d = 0; d < dim; ++d) {
        Complex& v = fiber[static_cast<std::size_t>(d) * stride];
        v = keep * v + mix;
    }
}

DenseMatrix CoinMatrix::materialize() const {
    DenseMatrix m(static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) m(i, j) = i == j ? diag : offdiag;
    return m;
}

CoinMatrix householder_reflection(PhaseAngle phi, int m) {
    require_positive_dim(m);
    // |chi><chi| has every entry equal to 1/m for the equal-weight |chi>
    const Complex w = (1.0 - std::polar(1.0, phi.value())) / static_cast<double>(m);
    return {m, 1.0 - w, -w};
}

CoinMatrix traversing_coin(PhaseAngle phi, PhaseAngle zeta, int m) {
    return householder_reflection(phi, m).scaled(std::polar(1.0, zeta.value()));
}

CoinMatrix marking_coin(PhaseAngle omega, int m) {
    require_positive_dim(m);
    return {m, -std::polar(1.0, omega.value()), Complex{}};
}

CoinMatrix alt_traversing_coin(PhaseAngle phi, PhaseAngle zeta, int m) {
    return householder_reflection(phi, m).scaled(std::polar(1.0, zeta.value() - std::numbers::pi));
}

PhaseAngle eval_phase_relation(const PhaseRelation& relation, PhaseAngle phi) {
    const double p = phi.value();
    switch (relation.kind) {
        case RelationKind::ConstantPi:
            return PhaseAngle{std::numbers::pi};
        case RelationKind::Sine:
            return PhaseAngle{-2.0 * p + std::numbers::pi + relation.alpha * std::sin(2.0 * p)};
        case RelationKind::SineMarking:
            return PhaseAngle{-2.0 * p + relation.omega.value() + std::numbers::pi +
                              relation.alpha * std::sin(2.0 * p)};
        case RelationKind::SineMarkingFree:
            return PhaseAngle{-2.0 * p + relation.alpha * std::sin(2.0 * p)};
    }
    throw std::logic_error("eval_phase_relation: unhandled relation kind");
}

} // namespace qrws
