#include "wavejets/directions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace wavejets {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double theta) {
    theta = std::fmod(theta, kTwoPi);
    if (theta < 0.0) theta += kTwoPi;
    return theta;
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

/// Derivative magnitude scale A = max(1, sum n |phi_n|).
double deriv_scale(const WavejetRow& row) {
    double s = 0.0;
    for (int n = 1; n < static_cast<int>(row.size()); ++n) {
        s += n * std::abs(row[n]);
    }
    return std::max(1.0, s);
}

double second_deriv_scale(const WavejetRow& row) {
    double s = 0.0;
    for (int n = 1; n < static_cast<int>(row.size()); ++n) {
        s += static_cast<double>(n) * n * std::abs(row[n]);
    }
    return std::max(1.0, s);
}

/// Polishes a bracketed sign change of g' with Newton steps, falling back to
/// bisection whenever Newton leaves the bracket.
double polish_root(const WavejetRow& row, double lo, double hi, double tol) {
    double flo = row_g_deriv(row, lo);
    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double fx = row_g_deriv(row, x);
        if (std::abs(fx) < tol) return x;
        if ((fx > 0.0) == (flo > 0.0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        const double dfx = row_g_second(row, x);
        double next = 0.5 * (lo + hi);
        if (dfx != 0.0) {
            const double newton = x - fx / dfx;
            if (newton > lo && newton < hi) next = newton;
        }
        if (next == x) return x;
        x = next;
    }
    return x;
}

} // namespace

std::vector<double> find_roots(const WavejetRow& row, double umbilic_ref) {
    const int k = static_cast<int>(row.size()) - 1;
    if (k < 1) throw std::invalid_argument("find_roots: order must be >= 1");

    double row_max = 0.0, angular_max = 0.0;
    for (int n = 0; n <= k; ++n) {
        row_max = std::max(row_max, std::abs(row[n]));
        if (n >= 1) angular_max = std::max(angular_max, std::abs(row[n]));
    }
    const double ref = umbilic_ref >= 0.0 ? umbilic_ref : row_max;
    if (angular_max <= kUmbilicEps * ref) return {}; // umbilical at this order

    const double tol = 1e-13 * deriv_scale(row);
    const int samples = std::max(16 * k, 64);
    std::vector<double> values(samples + 1);
    for (int m = 0; m <= samples; ++m) {
        values[m] = row_g_deriv(row, kTwoPi * m / samples);
    }

    std::vector<double> roots;
    for (int m = 0; m < samples; ++m) {
        const double lo = kTwoPi * m / samples;
        const double hi = kTwoPi * (m + 1) / samples;
        // a sample sitting on (or within rounding of) a root would otherwise
        // be lost: the two wrap samples of the same angle can round to
        // opposite tiny signs and never bracket
        if (std::abs(values[m]) <= tol) {
            roots.push_back(lo);
            continue;
        }
        if (values[m] * values[m + 1] < 0.0) {
            roots.push_back(polish_root(row, lo, hi, tol));
            continue;
        }
        // same sign at both ends can still hide a close root pair (or a
        // double root) around an interior extremum of g'; g'' changing sign
        // marks such an interval
        double glo = row_g_second(row, lo);
        const double ghi = row_g_second(row, hi);
        if (glo * ghi < 0.0) {
            double a = lo, b = hi;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (a + b);
                const double gmid = row_g_second(row, mid);
                if (gmid * glo < 0.0) {
                    b = mid;
                } else {
                    a = mid;
                    glo = gmid;
                }
            }
            const double e = 0.5 * (a + b);
            const double ge = row_g_deriv(row, e);
            if (std::abs(ge) <= tol) {
                roots.push_back(e); // double root at the extremum itself
            } else if (ge * values[m] < 0.0) {
                roots.push_back(polish_root(row, lo, e, tol));
                roots.push_back(polish_root(row, e, hi, tol));
            }
        }
    }

    for (double& r : roots) r = wrap_angle(r);
    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    for (double r : roots) {
        if (!out.empty() && r - out.back() < 1e-8) continue;
        out.push_back(r);
    }
    // wrap dedup: last root against first + 2pi
    if (out.size() > 1 && kTwoPi - out.back() + out.front() < 1e-8) {
        out.pop_back();
    }
    return out;
}

std::vector<PrincipalDirection> classify_and_build(const WavejetRow& row,
                                                   const std::vector<double>& roots,
                                                   const LocalFrame& frame,
                                                   double scale) {
    const int k = static_cast<int>(row.size()) - 1;
    const double a2 = second_deriv_scale(row);
    const double eig_factor = factorial(k) / std::pow(scale, k);

    std::vector<PrincipalDirection> dirs;
    for (double theta : roots) {
        const double g2 = row_g_second(row, theta);
        ExtremumKind kind;
        if (std::abs(g2) >= kDegenEps * a2) {
            kind = g2 < 0.0 ? ExtremumKind::Maximum : ExtremumKind::Minimum;
        } else {
            // near-degenerate: sample around the root; flat -> inflection
            const double delta = 1e-4;
            const double g0 = row_g(row, theta);
            const double gm = row_g(row, theta - delta);
            const double gp = row_g(row, theta + delta);
            if (g0 > gm && g0 > gp) {
                kind = ExtremumKind::Maximum;
            } else if (g0 < gm && g0 < gp) {
                kind = ExtremumKind::Minimum;
            } else {
                continue;
            }
        }
        PrincipalDirection d;
        d.order = k;
        d.angle = wrap_angle(theta);
        d.direction3d = std::cos(theta) * frame.e1 + std::sin(theta) * frame.e2;
        d.eigenvalue = eig_factor * row_g(row, theta);
        d.kind = kind;
        dirs.push_back(d);
    }

    std::sort(dirs.begin(), dirs.end(),
              [](const auto& a, const auto& b) { return a.angle < b.angle; });

    // Extrema of a smooth function alternate; a same-kind adjacent pair can
    // only come from a missed or spurious degenerate root. Keep the more
    // extreme of the two.
    bool changed = true;
    while (changed && dirs.size() > 1) {
        changed = false;
        for (size_t i = 0; i < dirs.size(); ++i) {
            const size_t j = (i + 1) % dirs.size();
            if (i == j || dirs[i].kind != dirs[j].kind) continue;
            const bool keep_i =
                dirs[i].kind == ExtremumKind::Maximum
                    ? dirs[i].eigenvalue >= dirs[j].eigenvalue
                    : dirs[i].eigenvalue <= dirs[j].eigenvalue;
            dirs.erase(dirs.begin() + static_cast<ptrdiff_t>(keep_i ? j : i));
            changed = true;
            break;
        }
    }
    return dirs;
}

std::vector<PrincipalDirection> principal_directions(const WavejetCoeffs& c, int k,
                                                     const LocalFrame& frame) {
    if (k < 2 || k > c.max_order()) {
        throw std::invalid_argument("principal_directions: order must be in [2, K]");
    }
    const auto roots = find_roots(c.row(k), c.max_magnitude());
    return classify_and_build(c.row(k), roots, frame, c.scale());
}

RosyFeasibility rosy_feasibility(const std::array<double, 3>& angles) {
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            if (std::abs(angles[i] - angles[j]) < 1e-12) {
                throw std::invalid_argument("rosy_feasibility: duplicate angles");
            }
        }
    }

    // g'_3(theta) = 0 in unknowns (Re phi_31, Im phi_31, Re phi_33, Im phi_33):
    //   Im phi_31 cos t + Re phi_31 sin t + 3 Im phi_33 cos 3t + 3 Re phi_33 sin 3t
    Eigen::MatrixXd m(6, 4);
    int r = 0;
    for (double base : angles) {
        for (double t : {base, base + std::numbers::pi}) {
            m(r, 0) = std::sin(t);
            m(r, 1) = std::cos(t);
            m(r, 2) = 3.0 * std::sin(3.0 * t);
            m(r, 3) = 3.0 * std::cos(3.0 * t);
            ++r;
        }
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double tol = 6.0 * std::numeric_limits<double>::epsilon() * sv(0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv(i) > tol) ++rank;
    }

    RosyFeasibility out;
    out.rank = rank;
    for (int i = rank; i < 4; ++i) {
        const Eigen::Vector4d x = svd.matrixV().col(i);
        WavejetRow row(4, {0.0, 0.0});
        row[1] = {x(0), x(1)};
        row[3] = {x(2), x(3)};
        out.solution_basis.push_back(std::move(row));
    }
    return out;
}

} // namespace wavejets
