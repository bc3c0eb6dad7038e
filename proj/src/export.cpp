#include "signorini/export.hpp"

#include "signorini/errors.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace signorini {

namespace {

std::ofstream open_file(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out)
{
    std::ofstream out(path, mode);
    if (!out) throw IoError("cannot open " + path.string());
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path)
{
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
}

std::string cycle_stem(int cycle)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "cycle_%03d", cycle);
    return buf;
}

} // namespace

void begin_summary(const std::string& output_dir)
{
    std::error_code ec;
    std::filesystem::create_directories(output_dir, ec);
    if (ec) throw IoError("cannot create " + output_dir + ": " + ec.message());
    const auto path = std::filesystem::path(output_dir) / "summary.csv";
    auto out = open_file(path, std::ios::out | std::ios::trunc);
    out << summary_header << '\n';
    finish(out, path);
}

std::string summary_row(const CycleRecord& rec)
{
    const double nan = std::nan("");
    const SignedErrors e = rec.errors.value_or(SignedErrors{nan, nan, nan});
    std::string row = std::to_string(rec.cycle) + "," + std::to_string(rec.dofs);
    for (double v : {rec.h_max, rec.estimate, e.pos, e.neg, e.total, rec.effectivity}) row += "," + format_double(v);
    row += "," + std::to_string(rec.n_h) + "," + (rec.condition_ah ? "1" : "0");
    return row;
}

void write_vtk(const std::string& path, const Mesh& mesh, const FeFunction& u, const IndicatorField& ind)
{
    auto out = open_file(path);
    out << "# vtk DataFile Version 3.0\nsignorini P1 solution\nASCII\nDATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << mesh.vertex_count() << " double\n";
    for (const Point& x : mesh.vertices()) out << format_double(x.x) << ' ' << format_double(x.y) << " 0\n";
    const std::size_t nt = mesh.triangle_count();
    out << "CELLS " << nt << ' ' << 4 * nt << '\n';
    for (const Triangle& t : mesh.triangles()) out << "3 " << t.v[0] << ' ' << t.v[1] << ' ' << t.v[2] << '\n';
    out << "CELL_TYPES " << nt << '\n';
    for (std::size_t t = 0; t < nt; ++t) out << "5\n";

    out << "POINT_DATA " << mesh.vertex_count() << "\nSCALARS U double 1\nLOOKUP_TABLE default\n";
    for (double v : u.coefficients) out << format_double(v) << '\n';

    out << "CELL_DATA " << nt << "\nSCALARS eta_K double 1\nLOOKUP_TABLE default\n";
    for (const auto& e : ind.per_element) out << format_double(e.eta_k) << '\n';
    out << "SCALARS eta_J double 1\nLOOKUP_TABLE default\n";
    for (const auto& e : ind.per_element) out << format_double(e.eta_j) << '\n';
    finish(out, path);
}

void export_cycle(const CycleState& state, const std::string& output_dir)
{
    const std::filesystem::path dir(output_dir);
    const std::string stem = cycle_stem(state.record.cycle);

    write_vtk((dir / (stem + ".vtk")).string(), state.mesh, state.solution.u, state.indicators);

    {
        const auto path = dir / (stem + "_boundary.csv");
        auto out = open_file(path);
        out << "arc_length,x,y,u,contact\n";
        for (const BoundaryNode& node : state.mesh.boundary_walk()) {
            const Point& x = state.mesh.vertex(node.vertex);
            out << format_double(node.arc) << ',' << format_double(x.x) << ',' << format_double(x.y) << ','
                << format_double(state.solution.u.coefficients[node.vertex]) << ','
                << (state.solution.is_active(node.vertex) ? 1 : 0) << '\n';
        }
        finish(out, path);
    }
    {
        const auto path = dir / (stem + "_critical.csv");
        auto out = open_file(path);
        out << "arc_length,x,y\n";
        for (const CriticalPoint& c : state.contact.critical_points) {
            out << format_double(c.arc) << ',' << format_double(c.location.x) << ',' << format_double(c.location.y)
                << '\n';
        }
        finish(out, path);
    }
    {
        const auto path = dir / "summary.csv";
        auto out = open_file(path, std::ios::out | std::ios::app);
        out << summary_row(state.record) << '\n';
        finish(out, path);
    }
}

} // namespace signorini
