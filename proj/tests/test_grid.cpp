#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "spinforge/grid.hpp"

using namespace spinforge;

namespace {

GridSpec spec_for(double sigma, double dmax) {
    // padding is already an absolute length (8 * sigma).
    ScanParams p = default_scan_params(sigma);
    GridSpec g;
    g.start = -p.padding;
    g.step = p.grid_step;
    g.count = static_cast<int>(std::lround((dmax + 2 * p.padding) / p.grid_step)) + 1;
    return g;
}

}  // namespace

TEST_CASE("gaussian orbitals are unit-normalized under trapezoid quadrature") {
    GridSpec g{-8.0, 1.0 / 64, 1025};
    for (double center : {0.0, 1.5, -2.0}) {
        GridOrbital phi = gaussian_orbital(g, center, 1.0);
        CHECK(phi.center == center);
        CHECK(static_cast<int>(phi.samples.size()) == g.count);
        CHECK(grid_overlap(phi, phi) == doctest::Approx(1.0).epsilon(1e-12));
        // Peak sits at the grid point nearest the center.
        double peak = 0.0;
        int peak_i = 0;
        for (int i = 0; i < g.count; ++i) {
            if (phi.samples[static_cast<std::size_t>(i)] > peak) {
                peak = phi.samples[static_cast<std::size_t>(i)];
                peak_i = i;
            }
        }
        CHECK(std::fabs(g.point(peak_i) - center) <= g.step / 2 + 1e-12);
    }
}

TEST_CASE("overlap of displaced gaussians matches exp(-d^2/(4 sigma^2))") {
    GridSpec g = spec_for(1.0, 6.0);
    GridOrbital at0 = gaussian_orbital(g, 0.0, 1.0);
    for (double d : {0.0, 0.5, 1.0, 2.0, 3.5, 6.0}) {
        GridOrbital atd = gaussian_orbital(g, d, 1.0);
        double expected = std::exp(-d * d / 4.0);
        CHECK(grid_overlap(at0, atd) == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("grid mismatch is rejected") {
    GridSpec a{-8.0, 1.0 / 64, 1025};
    GridSpec b{-8.0, 1.0 / 64, 1026};
    GridOrbital phi = gaussian_orbital(a, 0.0, 1.0);
    GridOrbital psi = gaussian_orbital(b, 0.0, 1.0);
    try {
        grid_overlap(phi, psi);
        FAIL("expected GridMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::GridMismatch);
    }
}

TEST_CASE("default scan params") {
    // Step and padding scale with the orbital width: sigma/64 and 8*sigma.
    ScanParams p = default_scan_params(2.0);
    CHECK(p.sigma == 2.0);
    CHECK(p.grid_step == doctest::Approx(2.0 / 64).epsilon(1e-15));
    CHECK(p.padding == 16.0);
    CHECK(p.make_orbital != nullptr);
}

TEST_CASE("scan row invariants") {
    ScanParams p = default_scan_params(1.0);
    std::vector<double> ds = {0.0, 1.0, 3.0, 6.0, 9.0, 12.0};
    auto rows = separation_scan(p, ds);
    REQUIRE(rows.size() == ds.size());

    double prev_overlap = 2.0;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const ScanRow& row = rows[k];
        CHECK(row.distance == ds[k]);
        // Overlap tracks the closed form and decreases strictly.
        double model = std::exp(-row.distance * row.distance / 4.0);
        CHECK(row.overlap == doctest::Approx(model).epsilon(1e-6));
        CHECK(row.overlap < prev_overlap);
        prev_overlap = row.overlap;

        // Each branch spectrum sums to one in squared singular values.
        auto check_branch = [](const BranchSpectrum& b) {
            double total = b.sv1 * b.sv1 + b.sv2 * b.sv2 + b.sv3plus * b.sv3plus;
            CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(b.sv1 >= b.sv2);
            CHECK(b.sv2 >= 0.0);
            CHECK(b.p_same >= 0.0);
            CHECK(b.p_same <= 1.0 + 1e-12);
        };
        check_branch(row.symmetric);
        if (row.antisymmetric) check_branch(*row.antisymmetric);
    }
}

TEST_CASE("coincident centers: exact limits and no antisymmetric branch") {
    ScanParams p = default_scan_params(1.0);
    auto rows = separation_scan(p, {0.0});
    REQUIRE(rows.size() == 1);
    const ScanRow& row = rows[0];
    // Identical orbitals: overlap is 1 to rounding, the product state has a
    // single singular value, and the ties-left region split puts the whole
    // line in one region so p_same is exactly 1.
    CHECK(row.overlap == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(row.symmetric.sv1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(row.symmetric.p_same == 1.0);
    CHECK(!row.antisymmetric.has_value());
}

TEST_CASE("separated centers: antisymmetric branch has a degenerate top pair") {
    ScanParams p = default_scan_params(1.0);
    for (double d : {0.5, 2.0, 6.0, 12.0}) {
        auto rows = separation_scan(p, {d});
        REQUIRE(rows[0].antisymmetric.has_value());
        const BranchSpectrum& anti = *rows[0].antisymmetric;
        // (phi0 phi_d - phi_d phi0)/norm always splits into two equal singular
        // values 1/sqrt2; nothing is left for the tail.
        double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        CHECK(anti.sv1 == doctest::Approx(inv_sqrt2).epsilon(1e-9));
        CHECK(anti.sv2 == doctest::Approx(inv_sqrt2).epsilon(1e-9));
        CHECK(anti.sv3plus <= 1e-6);
    }
}

TEST_CASE("same-side probability decays to zero at wide separation") {
    ScanParams p = default_scan_params(1.0);
    auto rows = separation_scan(p, {12.0});
    const ScanRow& row = rows[0];
    CHECK(row.overlap < 1e-8);
    CHECK(row.symmetric.p_same < 1e-6);
    CHECK(row.antisymmetric->p_same < 1e-6);
}

TEST_CASE("scan input validation") {
    ScanParams p = default_scan_params(1.0);
    auto expect_code = [](auto&& fn, ErrorCode code) {
        try {
            fn();
            FAIL("expected error");
        } catch (const Error& e) {
            CHECK(e.code() == code);
        }
    };
    expect_code([&] { separation_scan(p, {1.0, 1.0}); }, ErrorCode::DimensionMismatch);
    expect_code([&] { separation_scan(p, {2.0, 1.0}); }, ErrorCode::DimensionMismatch);
    expect_code([&] { separation_scan(p, {-1.0}); }, ErrorCode::DimensionMismatch);
    expect_code([&] { default_scan_params(0.0); }, ErrorCode::DimensionMismatch);
    ScanParams bad = p;
    bad.grid_step = 0.0;
    expect_code([&] { separation_scan(bad, {1.0}); }, ErrorCode::GridMismatch);
    ScanParams no_gen = p;
    no_gen.make_orbital = nullptr;
    expect_code([&] { separation_scan(no_gen, {1.0}); }, ErrorCode::GridMismatch);
    // An empty distance list is not an error, just an empty scan.
    CHECK(separation_scan(p, {}).empty());
}
