#include "canal4/meshio.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "canal4/errors.hpp"

namespace canal4 {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

void validate(const GridSpec& gs) {
    if (gs.nu < 2 || gs.nv < 2) throw InvalidSpec("grid: nu and nv must be >= 2");
    if (gs.nu * gs.nv > 10'000'000) throw InvalidSpec("grid: nu*nv exceeds 1e7");
    if (!(gs.u_b > gs.u_a)) throw InvalidSpec("grid: u_b must exceed u_a");
}

}  // namespace

PatchGrid sample_patch(const FramedCurve& fc, const RadiusFunction& rad, const GridSpec& gs,
                       bool with_curvature) {
    validate(gs);
    PatchGrid out;
    out.gs = gs;
    out.points.reserve(gs.nu * gs.nv);
    if (with_curvature) out.fields.reserve(gs.nu * gs.nv);

    for (std::size_t i = 0; i < gs.nu; ++i) {
        const double u = gs.u_a + (gs.u_b - gs.u_a) * i / double(gs.nu - 1);
        for (std::size_t j = 0; j < gs.nv; ++j) {
            const double v = kTwoPi * j / double(gs.nv);
            if (!with_curvature) {
                out.points.push_back(surface_point(fc, rad, u, v));
                continue;
            }
            const SurfaceJet jet = surface_jet(fc, rad, u, v);
            out.points.push_back(jet.X);
            FieldSample fs;
            fs.u = u;
            fs.v = v;
            fs.f = jet.f;
            fs.g = jet.g;
            try {
                const FirstFundamental ff = first_form(jet);
                fs.E = ff.E;
                fs.F = ff.F;
                fs.G = ff.G;
                fs.cd.K = gauss_K(jet, SurfaceMode::general);
                fs.cd.Hvec = mean_vector(jet, SurfaceMode::general);
                fs.cd.H = mean_scalar(jet, SurfaceMode::general);
                fs.hvec_frame = {dot(fs.cd.Hvec, jet.frame.T), dot(fs.cd.Hvec, jet.frame.M1),
                                 dot(fs.cd.Hvec, jet.frame.M2), dot(fs.cd.Hvec, jet.frame.M3)};
            } catch (const Irregular&) {
                fs.cd.regular = false;
                ++out.irregular_count;
            } catch (const FormulaMismatch&) {
                fs.cd.H = norm(fs.cd.Hvec);
                ++out.formula_mismatch_count;
            }
            out.fields.push_back(fs);
        }
    }
    return out;
}

std::array<double, 3> project3(const Vec4& p) { return {p[0], p[1], p[2] + p[3]}; }

TriMesh make_trimesh(const PatchGrid& grid) {
    const std::size_t nu = grid.gs.nu, nv = grid.gs.nv;
    TriMesh mesh;
    mesh.vertices.reserve(nu * nv);
    for (const Vec4& p : grid.points) mesh.vertices.push_back(project3(p));
    if (!grid.fields.empty()) {
        mesh.K.reserve(grid.fields.size());
        mesh.H.reserve(grid.fields.size());
        for (const FieldSample& fs : grid.fields) {
            mesh.K.push_back(fs.cd.K);
            mesh.H.push_back(fs.cd.H);
        }
    }
    mesh.faces.reserve(2 * (nu - 1) * nv);
    for (std::size_t i = 0; i + 1 < nu; ++i) {
        for (std::size_t j = 0; j < nv; ++j) {
            const std::size_t j2 = (j + 1) % nv;  // seam wrap
            const std::size_t a = i * nv + j, b = (i + 1) * nv + j;
            const std::size_t c = (i + 1) * nv + j2, d = i * nv + j2;
            mesh.faces.push_back({a, b, c});
            mesh.faces.push_back({a, c, d});
        }
    }
    return mesh;
}

void write_obj(const TriMesh& mesh, const std::string& path) {
    if (mesh.vertices.empty() || mesh.faces.empty())
        throw InvalidMesh("write_obj: empty mesh");
    for (const auto& f : mesh.faces)
        for (std::size_t idx : f)
            if (idx >= mesh.vertices.size()) throw InvalidMesh("write_obj: index out of range");
    std::ofstream out(path, std::ios::binary);  // binary: LF only, no translation
    if (!out) throw IoError("cannot open " + path);
    char buf[128];
    for (const auto& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v[0], v[1], v[2]);
        out << buf;
    }
    for (const auto& f : mesh.faces)
        out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
    if (!out) throw IoError("write failed: " + path);
}

TriMesh read_obj(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    TriMesh mesh;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string tag;
        row >> tag;
        if (tag == "v") {
            std::array<double, 3> v{};
            row >> v[0] >> v[1] >> v[2];
            mesh.vertices.push_back(v);
        } else if (tag == "f") {
            std::array<std::size_t, 3> f{};
            row >> f[0] >> f[1] >> f[2];
            for (auto& idx : f) --idx;
            mesh.faces.push_back(f);
        }
    }
    return mesh;
}

void write_csv_fields(const PatchGrid& grid, const std::string& path) {
    if (grid.fields.empty()) throw InvalidSpec("write_csv_fields: grid has no field data");
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path);
    out << "u,v,E,F,G,f,g,K,H,Hvec_T,Hvec_M1,Hvec_M2,Hvec_M3,regular\n";
    char buf[32];
    auto put = [&](double v, char sep) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf << sep;
    };
    for (const FieldSample& fs : grid.fields) {
        put(fs.u, ',');
        put(fs.v, ',');
        put(fs.E, ',');
        put(fs.F, ',');
        put(fs.G, ',');
        put(fs.f, ',');
        put(fs.g, ',');
        put(fs.cd.K, ',');
        put(fs.cd.H, ',');
        for (int k = 0; k < 4; ++k) put(fs.hvec_frame[k], ',');
        out << (fs.cd.regular ? 1 : 0) << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace canal4
