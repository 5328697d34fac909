#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qrws {

using Complex = std::complex<double>;

/// Minimal square complex matrix, row-major. Sized for differential-test
/// oracles and coin materialization, not for large-scale linear algebra.
class DenseMatrix {
  public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n) {}

    static DenseMatrix identity(std::size_t n);

    [[nodiscard]] std::size_t size() const { return n_; }

    Complex& operator()(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const { return data_[row * n_ + col]; }

    [[nodiscard]] DenseMatrix adjoint() const;
    [[nodiscard]] DenseMatrix operator*(const DenseMatrix& rhs) const;
    [[nodiscard]] std::vector<Complex> apply(const std::vector<Complex>& v) const;

    void swap_rows(std::size_t r1, std::size_t r2);

  private:
    std::size_t n_ = 0;
    std::vector<Complex> data_;
};

/// Largest entrywise deviation between two equally sized matrices.
double max_entry_distance(const DenseMatrix& a, const DenseMatrix& b);

/// Max-norm of A^dagger A - I; zero for a unitary matrix.
double unitarity_defect(const DenseMatrix& a);

} // namespace qrws
