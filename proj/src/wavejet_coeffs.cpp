#include "wavejets/wavejet_coeffs.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace wavejets {

double row_g(const WavejetRow& row, double theta) {
    double s = row.empty() ? 0.0 : row[0].real();
    for (int n = 1; n < static_cast<int>(row.size()); ++n) {
        s += 2.0 * (row[n].real() * std::cos(n * theta) -
                    row[n].imag() * std::sin(n * theta));
    }
    return s;
}

double row_g_deriv(const WavejetRow& row, double theta) {
    double s = 0.0;
    for (int n = 1; n < static_cast<int>(row.size()); ++n) {
        s += -2.0 * n * (row[n].imag() * std::cos(n * theta) +
                         row[n].real() * std::sin(n * theta));
    }
    return s;
}

double row_g_second(const WavejetRow& row, double theta) {
    double s = 0.0;
    for (int n = 1; n < static_cast<int>(row.size()); ++n) {
        s += -2.0 * n * n * (row[n].real() * std::cos(n * theta) -
                             row[n].imag() * std::sin(n * theta));
    }
    return s;
}

WavejetCoeffs::WavejetCoeffs(int max_order, double scale) : scale_(scale) {
    if (max_order < 0) throw std::invalid_argument("WavejetCoeffs: max_order < 0");
    if (!(scale > 0.0)) throw std::invalid_argument("WavejetCoeffs: scale <= 0");
    rows_.resize(max_order + 1);
    for (int k = 0; k <= max_order; ++k) rows_[k].assign(k + 1, {0.0, 0.0});
}

void WavejetCoeffs::check_order(int k) const {
    if (k < 0 || k > max_order()) {
        throw std::invalid_argument("WavejetCoeffs: order out of range");
    }
}

std::complex<double> WavejetCoeffs::get(int k, int n) const {
    check_order(k);
    const int an = std::abs(n);
    if (an > k || (an & 1) != (k & 1)) return {0.0, 0.0};
    return n < 0 ? std::conj(rows_[k][an]) : rows_[k][an];
}

void WavejetCoeffs::set(int k, int n, std::complex<double> value) {
    check_order(k);
    if (n < 0 || n > k) throw std::invalid_argument("WavejetCoeffs: n out of range");
    if ((n & 1) != (k & 1)) {
        throw std::invalid_argument("WavejetCoeffs: n and k must share parity");
    }
    if (n == 0 && value.imag() != 0.0) {
        throw std::invalid_argument("WavejetCoeffs: phi_{k,0} must be real");
    }
    rows_[k][n] = value;
}

const WavejetRow& WavejetCoeffs::row(int k) const {
    check_order(k);
    return rows_[k];
}

WavejetRow WavejetCoeffs::unnormalized_row(int k) const {
    check_order(k);
    WavejetRow out = rows_[k];
    const double f = std::pow(scale_, k);
    for (auto& c : out) c /= f;
    return out;
}

double WavejetCoeffs::evaluate(double r, double theta) const {
    double s = 0.0;
    double rk = 1.0;
    for (int k = 0; k <= max_order(); ++k) {
        s += rk * row_g(rows_[k], theta);
        rk *= r;
    }
    return s;
}

double WavejetCoeffs::g(int k, double theta) const {
    check_order(k);
    return row_g(rows_[k], theta);
}

double WavejetCoeffs::g_deriv(int k, double theta) const {
    check_order(k);
    return row_g_deriv(rows_[k], theta);
}

double WavejetCoeffs::g_second(int k, double theta) const {
    check_order(k);
    return row_g_second(rows_[k], theta);
}

double WavejetCoeffs::max_magnitude() const {
    double m = 0.0;
    for (const auto& row : rows_)
        for (const auto& c : row) m = std::max(m, std::abs(c));
    return m;
}

void WavejetCoeffs::write_text(std::ostream& os) const {
    os.precision(17);
    for (int k = 0; k <= max_order(); ++k) {
        for (int n = k & 1; n <= k; n += 2) {
            os << k << ' ' << n << ' ' << rows_[k][n].real() << ' '
               << rows_[k][n].imag() << '\n';
        }
    }
}

WavejetCoeffs WavejetCoeffs::read_text(std::istream& is, double scale) {
    struct Entry { int k, n; double re, im; };
    std::vector<Entry> entries;
    int max_order = 0;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        Entry e;
        if (!(ls >> e.k >> e.n >> e.re >> e.im)) {
            throw std::invalid_argument("WavejetCoeffs: malformed line: " + line);
        }
        max_order = std::max(max_order, e.k);
        entries.push_back(e);
    }
    WavejetCoeffs c(max_order, scale);
    for (const auto& e : entries) c.set(e.k, e.n, {e.re, e.im});
    return c;
}

} // namespace wavejets
