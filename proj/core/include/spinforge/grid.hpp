#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "spinforge/errors.hpp"

namespace spinforge {

// Uniform grid x_i = start + i * step, i = 0 .. count-1.
struct GridSpec {
    double start = 0.0;
    double step = 0.0;
    int count = 0;

    double point(int i) const { return start + step * i; }
    bool operator==(const GridSpec&) const = default;
};

// Single-particle orbital sampled on a grid. Trapezoid quadrature is the inner
// product everywhere, and samples are normalized against it: <phi|phi> = 1.
struct GridOrbital {
    GridSpec grid;
    double center = 0.0;
    std::vector<double> samples;
};

GridOrbital gaussian_orbital(const GridSpec& grid, double center, double sigma);

// Trapezoid-rule overlap; GridMismatch when the grids differ.
double grid_overlap(const GridOrbital& phi, const GridOrbital& psi);

// Singular-value data of one exchange branch, normalized to unit Frobenius
// norm, plus the same-side probability mass.
struct BranchSpectrum {
    double sv1 = 0.0;
    double sv2 = 0.0;
    double sv3plus = 0.0;  // sqrt of whatever squared weight the top two miss
    double p_same = 0.0;   // both particles in the same orbital's region
};

struct ScanRow {
    double distance = 0.0;
    double overlap = 0.0;
    BranchSpectrum symmetric;
    // The antisymmetric branch vanishes identically at coincident centers.
    std::optional<BranchSpectrum> antisymmetric;
};

struct ScanParams {
    double sigma = 1.0;
    double grid_step = 1.0 / 64;
    double padding = 8.0;  // grid extends this far beyond both centers
    std::function<GridOrbital(const GridSpec&, double center)> make_orbital;
};

// Gaussian orbitals of width sigma, step sigma/64, padding 8*sigma.
ScanParams default_scan_params(double sigma);

// Two-particle exchange analysis phi_0(x1)phi_d(x2) +- phi_d(x1)phi_0(x2) at
// each separation. Distances must be nonnegative and ascending. The region
// split assigns each grid point to the nearest orbital center, ties to the
// left, so at d = 0 the left region is the whole line and p_same = 1 exactly.
std::vector<ScanRow> separation_scan(const ScanParams& params,
                                     const std::vector<double>& distances);

}  // namespace spinforge
