#include "wavejets/sym_tensor.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace wavejets {

namespace {

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

double binomial(int k, int i) {
    double b = 1.0;
    for (int j = 0; j < i; ++j) b = b * (k - j) / (j + 1);
    return b;
}

/// Real value of sum_{n=-k..k} phi_{k,n} e^{int} from the n >= 0 half.
double row_value(const WavejetRow& row, double theta) {
    double s = row[0].real();
    for (int n = 1; n < static_cast<int>(row.size()); ++n) {
        s += 2.0 * (row[n].real() * std::cos(n * theta) -
                    row[n].imag() * std::sin(n * theta));
    }
    return s;
}

} // namespace

SymTensor2::SymTensor2(int order, std::vector<double> coeffs)
    : coeffs_(std::move(coeffs)) {
    if (order < 0 || coeffs_.size() != static_cast<size_t>(order) + 1) {
        throw std::invalid_argument(
            "SymTensor2: coefficient count must equal order + 1");
    }
}

SymTensor2 SymTensor2::from_derivatives(std::vector<double> partials, int order) {
    return SymTensor2(order, std::move(partials));
}

SymTensor2 contract(const SymTensor2& t, const Eigen::Vector2d& v) {
    const int k = t.order();
    if (k < 1) {
        throw std::invalid_argument("contract: tensor order must be >= 1");
    }
    std::vector<double> out(k);
    for (int j = 0; j < k; ++j) {
        out[j] = v.x() * t[j + 1] + v.y() * t[j];
    }
    return SymTensor2(k - 1, std::move(out));
}

double apply_full(const SymTensor2& t, const Eigen::Vector2d& v) {
    const int k = t.order();
    double s = 0.0;
    double xp = 1.0; // v.x()^i accumulated in the loop
    for (int i = 0; i <= k; ++i) {
        s += binomial(k, i) * t[i] * xp * std::pow(v.y(), k - i);
        xp *= v.x();
    }
    return s;
}

Eigen::Vector2d tensor_gradient(const SymTensor2& t, const Eigen::Vector2d& v) {
    const int k = t.order();
    if (k < 1) {
        throw std::invalid_argument("tensor_gradient: tensor order must be >= 1");
    }
    SymTensor2 s = t;
    for (int i = 0; i < k - 1; ++i) s = contract(s, v);
    // order-1 tensor: slot 1 is the x component, slot 0 the y component
    return k * Eigen::Vector2d(s[1], s[0]);
}

WavejetRow tensor_to_wavejet_row(const SymTensor2& t) {
    const int k = t.order();
    const double kfac = factorial(k);
    const int m = 2 * k + 1;
    std::vector<double> samples(m);
    for (int j = 0; j < m; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / m;
        samples[j] = apply_full(t, {std::cos(theta), std::sin(theta)}) / kfac;
    }
    // Discrete Fourier sum: exact for a trig polynomial of degree k.
    WavejetRow row(k + 1, {0.0, 0.0});
    for (int n = 0; n <= k; ++n) {
        if ((n & 1) != (k & 1)) continue; // parity zeros are structural
        std::complex<double> acc{0.0, 0.0};
        for (int j = 0; j < m; ++j) {
            const double a = 2.0 * std::numbers::pi * n * j / m;
            acc += samples[j] * std::complex<double>(std::cos(a), -std::sin(a));
        }
        row[n] = acc / static_cast<double>(m);
    }
    row[0].imag(0.0);
    return row;
}

SymTensor2 wavejet_row_to_tensor(const WavejetRow& row, int order) {
    if (row.size() != static_cast<size_t>(order) + 1) {
        throw std::invalid_argument("wavejet_row_to_tensor: row length mismatch");
    }
    double mag = 0.0;
    for (const auto& c : row) mag = std::max(mag, std::abs(c));
    const double tol = 1e-9 * std::max(1.0, mag);
    for (int n = 0; n <= order; ++n) {
        if ((n & 1) != (order & 1) && std::abs(row[n]) > tol) {
            throw std::invalid_argument(
                "wavejet_row_to_tensor: parity-violating entry");
        }
    }
    if (std::abs(row[0].imag()) > tol) {
        throw std::invalid_argument("wavejet_row_to_tensor: phi_{k,0} must be real");
    }

    // k! g(theta) = sum_i binom(k,i) c_i cos^i sin^(k-i); the monomials are
    // independent, so 2k+1 equispaced samples overdetermine the k+1 unknowns.
    const int k = order;
    const int m = 2 * k + 1;
    const double kfac = factorial(k);
    Eigen::MatrixXd a(m, k + 1);
    Eigen::VectorXd b(m);
    for (int j = 0; j < m; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / m;
        const double c = std::cos(theta), s = std::sin(theta);
        for (int i = 0; i <= k; ++i) {
            a(j, i) = binomial(k, i) * std::pow(c, i) * std::pow(s, k - i);
        }
        b(j) = kfac * row_value(row, theta);
    }
    Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);
    std::vector<double> coeffs(x.data(), x.data() + k + 1);
    return SymTensor2(k, std::move(coeffs));
}

} // namespace wavejets
