#include "spinforge/grid.hpp"

#include <cmath>

namespace spinforge {

namespace {

double trapezoid_weight(const GridSpec& grid, int i) {
    return (i == 0 || i == grid.count - 1) ? grid.step / 2.0 : grid.step;
}

void check_grid(const GridSpec& grid) {
    if (grid.count < 2 || !(grid.step > 0.0)) {
        throw Error(ErrorCode::GridMismatch, "grid needs step > 0 and at least 2 points");
    }
}

}  // namespace

GridOrbital gaussian_orbital(const GridSpec& grid, double center, double sigma) {
    check_grid(grid);
    if (!(sigma > 0.0)) {
        throw Error(ErrorCode::DimensionMismatch, "orbital width sigma must be positive");
    }
    GridOrbital phi{grid, center, std::vector<double>(static_cast<std::size_t>(grid.count))};
    double norm2 = 0.0;
    for (int i = 0; i < grid.count; ++i) {
        double z = (grid.point(i) - center) / sigma;
        double s = std::exp(-z * z / 2.0);
        phi.samples[static_cast<std::size_t>(i)] = s;
        norm2 += trapezoid_weight(grid, i) * s * s;
    }
    double scale = 1.0 / std::sqrt(norm2);
    for (double& s : phi.samples) s *= scale;
    return phi;
}

double grid_overlap(const GridOrbital& phi, const GridOrbital& psi) {
    if (!(phi.grid == psi.grid)) {
        throw Error(ErrorCode::GridMismatch, "orbitals are sampled on different grids");
    }
    double total = 0.0;
    for (int i = 0; i < phi.grid.count; ++i) {
        total += trapezoid_weight(phi.grid, i) * phi.samples[static_cast<std::size_t>(i)] *
                 psi.samples[static_cast<std::size_t>(i)];
    }
    return total;
}

ScanParams default_scan_params(double sigma) {
    if (!(sigma > 0.0)) {
        throw Error(ErrorCode::DimensionMismatch, "orbital width sigma must be positive");
    }
    ScanParams params;
    params.sigma = sigma;
    params.grid_step = sigma / 64.0;
    params.padding = 8.0 * sigma;
    params.make_orbital = [sigma](const GridSpec& grid, double center) {
        return gaussian_orbital(grid, center, sigma);
    };
    return params;
}

namespace {

// One branch A = u v^T + s * v u^T of the weighted two-particle amplitude
// matrix, reduced to its exact rank-2 factorization. nu, nv, p are the norms
// and inner product of the weighted sample vectors.
BranchSpectrum branch_spectrum(double nu, double nv, double p, int sign, double frob2,
                               double same_mass) {
    double proj = p / nu;
    BranchSpectrum out;
    double norm = std::sqrt(frob2);
    if (sign > 0) {
        // Symmetric combination: singular values nu*(nv +- proj).
        out.sv1 = nu * (nv + proj) / norm;
        out.sv2 = nu * std::fabs(nv - proj) / norm;
    } else {
        // Antisymmetric combination: a degenerate pair nu*t, t^2 = nv^2 - proj^2.
        double t = std::sqrt(std::max(0.0, nv * nv - proj * proj));
        out.sv1 = nu * t / norm;
        out.sv2 = out.sv1;
    }
    out.sv3plus = std::sqrt(std::max(0.0, 1.0 - out.sv1 * out.sv1 - out.sv2 * out.sv2));
    out.p_same = same_mass / frob2;
    return out;
}

}  // namespace

std::vector<ScanRow> separation_scan(const ScanParams& params,
                                     const std::vector<double>& distances) {
    if (!params.make_orbital) {
        throw Error(ErrorCode::GridMismatch, "scan parameters carry no orbital generator");
    }
    if (!(params.grid_step > 0.0) || !(params.padding > 0.0)) {
        throw Error(ErrorCode::GridMismatch, "scan needs positive grid step and padding");
    }
    for (std::size_t k = 0; k < distances.size(); ++k) {
        if (!(distances[k] >= 0.0)) {
            throw Error(ErrorCode::DimensionMismatch, "distances must be nonnegative");
        }
        if (k > 0 && !(distances[k] > distances[k - 1])) {
            throw Error(ErrorCode::DimensionMismatch, "distances must be ascending");
        }
    }

    std::vector<ScanRow> rows;
    rows.reserve(distances.size());
    for (double d : distances) {
        GridSpec grid;
        grid.start = -params.padding;
        grid.step = params.grid_step;
        grid.count =
            static_cast<int>(std::llround((d + 2.0 * params.padding) / params.grid_step)) + 1;
        GridOrbital phi0 = params.make_orbital(grid, 0.0);
        GridOrbital phid = params.make_orbital(grid, d);

        ScanRow row;
        row.distance = d;
        row.overlap = grid_overlap(phi0, phid);

        // Weighted vectors u, v absorb the quadrature, so plain sums below are
        // trapezoid integrals of the underlying two-particle amplitude.
        int npts = grid.count;
        double nu2 = 0.0, nv2 = 0.0, p = 0.0;
        double al = 0.0, bl = 0.0, cl = 0.0;  // left-region masses
        for (int i = 0; i < npts; ++i) {
            double w = trapezoid_weight(grid, i);
            double ui = std::sqrt(w) * phi0.samples[static_cast<std::size_t>(i)];
            double vi = std::sqrt(w) * phid.samples[static_cast<std::size_t>(i)];
            nu2 += ui * ui;
            nv2 += vi * vi;
            p += ui * vi;
            double x = grid.point(i);
            if (std::fabs(x) <= std::fabs(x - d)) {  // nearest center, ties left
                al += ui * ui;
                bl += vi * vi;
                cl += ui * vi;
            }
        }
        double nu = std::sqrt(nu2);
        double nv = std::sqrt(nv2);
        double ar = nu2 - al;
        double br = nv2 - bl;
        double cr = p - cl;

        double frob_sym = 2.0 * (nu2 * nv2 + p * p);
        double same_sym = 2.0 * (al * bl + cl * cl) + 2.0 * (ar * br + cr * cr);
        row.symmetric = branch_spectrum(nu, nv, p, +1, frob_sym, same_sym);

        double frob_anti = 2.0 * (nu2 * nv2 - p * p);
        if (frob_anti > 1e-20) {
            double same_anti = 2.0 * (al * bl - cl * cl) + 2.0 * (ar * br - cr * cr);
            row.antisymmetric = branch_spectrum(nu, nv, p, -1, frob_anti, same_anti);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace spinforge
