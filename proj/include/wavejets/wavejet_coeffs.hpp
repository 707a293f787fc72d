#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "wavejets/sym_tensor.hpp"

namespace wavejets {

/// Angular value of one coefficient row:
///   g(theta) = phi_0 + 2 sum_{n>=1} (Re phi_n cos n.theta - Im phi_n sin n.theta)
double row_g(const WavejetRow& row, double theta);
/// First angular derivative of row_g.
double row_g_deriv(const WavejetRow& row, double theta);
/// Second angular derivative of row_g.
double row_g_second(const WavejetRow& row, double theta);

/// Full Wavejets expansion up to max order K. For each order k only the
/// coefficients phi_{k,n} with n >= 0 and n == k (mod 2) are stored; the
/// negative-n half is the conjugate and the off-parity entries are zero.
///
/// Coefficients are stored scale-normalized: phi_stored = phi * scale^k,
/// where scale is the neighborhood radius used by the regression. scale = 1
/// means unnormalized (physical) units.
class WavejetCoeffs {
public:
    explicit WavejetCoeffs(int max_order, double scale = 1.0);

    int max_order() const { return static_cast<int>(rows_.size()) - 1; }
    double scale() const { return scale_; }

    /// phi_{k,n}; negative n returns the conjugate, off-parity n returns 0.
    std::complex<double> get(int k, int n) const;
    void set(int k, int n, std::complex<double> value);

    const WavejetRow& row(int k) const;
    /// Row divided by scale^k: coefficients in physical units.
    WavejetRow unnormalized_row(int k) const;

    /// f(r, theta) = sum_k r^k g_k(theta), with r in normalized units
    /// (r = 1 corresponds to the scale radius).
    double evaluate(double r, double theta) const;

    double g(int k, double theta) const;
    double g_deriv(int k, double theta) const;
    double g_second(int k, double theta) const;

    /// Largest stored coefficient magnitude across all orders.
    double max_magnitude() const;

    /// One line per stored (k, n): "k n re im".
    void write_text(std::ostream& os) const;
    static WavejetCoeffs read_text(std::istream& is, double scale = 1.0);

private:
    void check_order(int k) const;

    std::vector<WavejetRow> rows_;
    double scale_;
};

} // namespace wavejets
