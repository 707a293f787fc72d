#pragma once

#include <array>
#include <vector>

#include "wavejets/local_frame.hpp"
#include "wavejets/sym_tensor.hpp"
#include "wavejets/wavejet_coeffs.hpp"

namespace wavejets {

enum class ExtremumKind { Maximum, Minimum };

/// A principal direction of order k: unit tangent vector at an extremum of
/// the angular function g_k, together with the tensor eigenvalue it realizes.
struct PrincipalDirection {
    int order = 0;
    double angle = 0.0;                         // theta_e in [0, 2pi), local frame
    Eigen::Vector3d direction3d{1.0, 0.0, 0.0}; // cos(theta) e1 + sin(theta) e2
    double eigenvalue = 0.0;                    // k! g_k(theta_e), physical units
    ExtremumKind kind = ExtremumKind::Maximum;
};

/// Coefficient magnitudes below umbilic_ref * 1e-10 leave the row
/// indistinguishable from noise: no directions are reported.
inline constexpr double kUmbilicEps = 1e-10;
/// Second-derivative threshold below which a root is treated as a possible
/// inflection and re-examined by sampling.
inline constexpr double kDegenEps = 1e-8;

/// All zeros of g'_k on [0, 2pi) for the order-k row, deduplicated across the
/// wrap. umbilic_ref is the magnitude the umbilic test is relative to
/// (defaults to the row's own largest coefficient magnitude).
std::vector<double> find_roots(const WavejetRow& row, double umbilic_ref = -1.0);

/// Classifies roots into maxima/minima by the sign of g''_k, drops
/// inflections, and builds the direction records. Eigenvalues are
/// k! g_k(theta) / scale^k. The result alternates max/min circularly.
std::vector<PrincipalDirection> classify_and_build(const WavejetRow& row,
                                                   const std::vector<double>& roots,
                                                   const LocalFrame& frame,
                                                   double scale = 1.0);

/// Principal directions of order k (2 <= k <= max order) from a fitted
/// coefficient set. The umbilic test is relative to the largest coefficient
/// magnitude across all orders of c.
std::vector<PrincipalDirection> principal_directions(const WavejetCoeffs& c, int k,
                                                     const LocalFrame& frame);

struct RosyFeasibility {
    int rank = 0;
    /// Order-3 rows spanning the null space; empty when only the trivial
    /// solution exists.
    std::vector<WavejetRow> solution_basis;
};

/// Rank analysis of the order-3 extremum-placement system: given 3 distinct
/// angles in [0, pi), which coefficient rows make g'_3 vanish at all of them
/// (and at their antipodes)?
RosyFeasibility rosy_feasibility(const std::array<double, 3>& angles);

} // namespace wavejets
