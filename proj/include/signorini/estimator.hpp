#pragma once

#include "signorini/vi_solver.hpp"

#include <vector>

namespace signorini {

struct ElementIndicator {
    double eta_k = 0.0;  ///< diam(K)^2 ||-Lap U + U - f||_{L^p(K)}
    double eta_j = 0.0;  ///< diam(K)^(1+1/p) ||[grad U]||_{L^p(dK)}
};

struct IndicatorField {
    double p = 4.0;
    std::vector<ElementIndicator> per_element;
    /// sum_K (eta_K^p + eta_J^p / 2)
    double global_p_power = 0.0;
    /// global_p_power^(1/p), computed with max-scaling.
    double global = 0.0;

    /// eta_K^p + eta_J^p / 2 divided by (max indicator)^p; same ordering and
    /// ratios as the unscaled values but free of underflow for large p.
    std::vector<double> scaled_element_values() const;
};

struct EstimatorOptions {
    /// Include the normal flux on every boundary edge, contact edges too. By
    /// default edges with both endpoints in contact contribute nothing.
    bool include_boundary_flux = false;
};

/// Per-element residual indicators for exponent p > 1 (the bound is proved for
/// p > 4). `active` flags the boundary vertices in contact.
IndicatorField element_indicators(const FeFunction& u, const std::vector<char>& active,
                                  const ScalarField& f, double p, const EstimatorOptions& opts = {});
IndicatorField element_indicators(const ViSolution& sol, const ScalarField& f, double p,
                                  const EstimatorOptions& opts = {});

/// (sum_K eta_K^p + eta_J^p / 2)^(1/p)
double global_estimate(const IndicatorField& ind);

/// Elementwise -Lap U for P1 data; identically zero.
double discrete_laplacian(const FeFunction& u, Index triangle);

} // namespace signorini
