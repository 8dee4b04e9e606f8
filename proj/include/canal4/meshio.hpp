#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "canal4/canal.hpp"

namespace canal4 {

// (u,v) sampling grid: nu samples over [u_a,u_b] inclusive, nv samples over
// the half-open [0, 2*pi) closed seam in v.
struct GridSpec {
    std::size_t nu = 2, nv = 2;
    double u_a = 0.0, u_b = 1.0;
};

struct FieldSample {
    double u = 0.0, v = 0.0;
    double E = 0.0, F = 0.0, G = 0.0;
    double f = 0.0, g = 0.0;
    CurvatureData cd;
    Vec4 hvec_frame;  // Hvec components along (T,M1,M2,M3)
};

// Row-major sampled patch, u outer, v inner.
struct PatchGrid {
    GridSpec gs;
    std::vector<Vec4> points;
    std::vector<FieldSample> fields;  // empty unless sampled with curvature
    std::size_t irregular_count = 0;
    std::size_t formula_mismatch_count = 0;
};

struct TriMesh {
    std::vector<std::array<double, 3>> vertices;
    std::vector<std::array<std::size_t, 3>> faces;  // 0-based indices
    std::vector<double> K, H;                       // optional per-vertex channels
};

PatchGrid sample_patch(const FramedCurve& fc, const RadiusFunction& rad, const GridSpec& gs,
                       bool with_curvature);

// The projection E^4 -> E^3, (x1,x2,x3,x4) -> (x1, x2, x3+x4).
std::array<double, 3> project3(const Vec4& p);

// Projects the grid and stitches 2*(nu-1)*nv triangles across the closed
// v-seam (no duplicated seam vertices).
TriMesh make_trimesh(const PatchGrid& grid);

// Wavefront OBJ, vertices with shortest round-trip formatting, LF endings.
void write_obj(const TriMesh& mesh, const std::string& path);

// CSV schema u,v,E,F,G,f,g,K,H,Hvec_T,Hvec_M1,Hvec_M2,Hvec_M3,regular.
void write_csv_fields(const PatchGrid& grid, const std::string& path);

// parse of write_obj output, for round-trip tests
TriMesh read_obj(const std::string& path);

}  // namespace canal4
