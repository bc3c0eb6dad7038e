#pragma once

#include "signorini/vi_solver.hpp"

#include <vector>

namespace signorini {

/// Maximal run of consecutive contact vertices along one boundary loop,
/// as positions into the walk.
struct ContactComponent {
    std::size_t first = 0;
    std::size_t count = 0;
    bool whole_loop = false;
};

struct CriticalPoint {
    double arc = 0.0;
    Point location;
};

struct ContactReport {
    std::vector<Index> contact_vertices;
    std::vector<ContactComponent> components;
    /// Midpoints of the boundary edges along which contact status changes.
    std::vector<CriticalPoint> critical_points;
    std::size_t n_h = 0;
    std::vector<Index> singleton_violations;
    std::vector<Index> corner_violations;
    /// Active vertices whose value is not zero to 1e-12, or inactive ones that are.
    std::vector<Index> cross_check_mismatches;
    bool condition_ah = false;
    /// Total arc length of the walk, used for periodic distances.
    double perimeter = 0.0;
};

/// Contact set, components, critical points and the a posteriori check of
/// Condition (a_h) from the boundary nodal values, walked in boundary order.
ContactReport extract_contact(const ViSolution& sol, const std::vector<BoundaryNode>& walk);

struct DriftResult {
    double distance = 0.0;
    bool count_mismatch = false;
};

/// Hausdorff distance along arc length (periodic in the perimeter) between the
/// reported and exact critical points; +inf with count_mismatch when the
/// counts differ.
DriftResult critical_point_drift(const ContactReport& report, const std::vector<double>& exact_arcs);

} // namespace signorini
