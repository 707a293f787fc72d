#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

namespace wavejets {

/// Row of trig-polynomial coefficients for one order k: entry n (0 <= n <= k)
/// holds phi_{k,n}; negative-n values are the conjugates and are never stored.
/// Entries whose n has a different parity than k are identically zero.
using WavejetRow = std::vector<std::complex<double>>;

/// Order-k 2-dimensional symmetric tensor in compressed form.
///
/// coeffs()[j] is the entry with j indices equal to x and (k - j) equal to y;
/// for a differential tensor this is d^k f / dx^j dy^(k-j). Symmetry collapses
/// the full 2^k array onto these k + 1 numbers. Order 0 is a scalar.
class SymTensor2 {
public:
    SymTensor2() : coeffs_(1, 0.0) {}

    SymTensor2(int order, std::vector<double> coeffs);

    /// Builds the differential tensor from the partial derivatives
    /// [d^k f/dy^k, d^k f/dx dy^(k-1), ..., d^k f/dx^k].
    static SymTensor2 from_derivatives(std::vector<double> partials, int order);

    static SymTensor2 zero(int order) {
        return SymTensor2(order, std::vector<double>(order + 1, 0.0));
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    double operator[](int j) const { return coeffs_[j]; }

private:
    std::vector<double> coeffs_;
};

/// T v: contracts one index, lowering the order by one. Requires order >= 1.
SymTensor2 contract(const SymTensor2& t, const Eigen::Vector2d& v);

/// T v^k, the full k-fold application (a scalar).
double apply_full(const SymTensor2& t, const Eigen::Vector2d& v);

/// Gradient of v -> T v^k, equal to k T v^(k-1). Requires order >= 1.
Eigen::Vector2d tensor_gradient(const SymTensor2& t, const Eigen::Vector2d& v);

/// Coefficients phi_{k,n} of the angular polynomial
///   T (cos t, sin t)^k / k! = sum_{n=-k..k} phi_{k,n} e^{int}.
/// Computed by an exact DFT on 2k+1 equispaced samples.
WavejetRow tensor_to_wavejet_row(const SymTensor2& t);

/// Inverse of tensor_to_wavejet_row. The row must respect the parity zeros
/// and have a real phi_{k,0}.
SymTensor2 wavejet_row_to_tensor(const WavejetRow& row, int order);

} // namespace wavejets
