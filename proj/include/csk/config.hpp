#pragma once

namespace csk {

// Central numeric defaults. Every numeric routine takes one of these; the
// CLI overrides fields from flags or a config file, never from the
// environment.
struct NumericConfig {
    int quad_nodes = 256;          // starting Gauss-Chebyshev node count
    double quad_refine_tol = 1e-11;  // node doubling stops at this difference
    int quad_max_doublings = 14;
    double transform_tol = 1e-10;  // advertised absolute accuracy of G and K
    double bisect_tol = 1e-12;     // residual |k(theta) - m| for inversions
    double extrap_tol = 1e-9;      // limit extrapolation agreement
    int extrap_max_levels = 40;
    unsigned series_order = 16;    // default truncation order N
};

}  // namespace csk
