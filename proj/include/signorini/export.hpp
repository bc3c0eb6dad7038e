#pragma once

#include "signorini/adapt.hpp"

#include <string>

namespace signorini {

inline constexpr const char* summary_header =
    "cycle,dofs,h_max,estimate,err_pos,err_neg,err_total,effectivity,N_h,condition_ah";

/// Creates output_dir if needed and starts summary.csv with its header line.
/// Throws IoError.
void begin_summary(const std::string& output_dir);

/// One summary.csv line (no newline). Error columns are "nan" when the
/// example has no exact solution; condition_ah is written as 1 or 0.
std::string summary_row(const CycleRecord& rec);

/// Writes cycle_NNN.vtk (legacy ASCII: points, triangles, point data U, cell
/// data eta_K and eta_J), cycle_NNN_boundary.csv (arc_length,x,y,u,contact),
/// cycle_NNN_critical.csv (arc_length,x,y) and appends the row to
/// summary.csv. Numbers carry 17 significant digits. Throws IoError.
void export_cycle(const CycleState& state, const std::string& output_dir);

void write_vtk(const std::string& path, const Mesh& mesh, const FeFunction& u, const IndicatorField& ind);

} // namespace signorini
