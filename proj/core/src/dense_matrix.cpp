#include "qrws/dense_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace qrws {

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::adjoint() const {
    DenseMatrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& rhs) const {
    if (rhs.n_ != n_) throw std::invalid_argument("DenseMatrix: size mismatch in product");
    DenseMatrix r(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t k = 0; k < n_; ++k) {
            const Complex c = (*this)(i, k);
            if (c == Complex{}) continue;
            const Complex* src = &rhs.data_[k * n_];
            Complex* dst = &r.data_[i * n_];
            for (std::size_t j = 0; j < n_; ++j) dst[j] += c * src[j];
        }
    }
    return r;
}

std::vector<Complex> DenseMatrix::apply(const std::vector<Complex>& v) const {
    if (v.size() != n_) throw std::invalid_argument("DenseMatrix: size mismatch in apply");
    std::vector<Complex> r(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        Complex acc{};
        const Complex* row = &data_[i * n_];
        for (std::size_t j = 0; j < n_; ++j) acc += row[j] * v[j];
        r[i] = acc;
    }
    return r;
}

void DenseMatrix::swap_rows(std::size_t r1, std::size_t r2) {
    if (r1 == r2) return;
    std::swap_ranges(data_.begin() + static_cast<std::ptrdiff_t>(r1 * n_),
                     data_.begin() + static_cast<std::ptrdiff_t>((r1 + 1) * n_),
                     data_.begin() + static_cast<std::ptrdiff_t>(r2 * n_));
}

double max_entry_distance(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.size() != b.size()) throw std::invalid_argument("DenseMatrix: size mismatch in distance");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

double unitarity_defect(const DenseMatrix& a) {
    const DenseMatrix gram = a.adjoint() * a;
    return max_entry_distance(gram, DenseMatrix::identity(a.size()));
}

} // namespace qrws
