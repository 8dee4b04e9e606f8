// canal4: command-line frontend for the canal-surface library.
//
//   canal4 frame   --config c.json --out framed.csv
//   canal4 surface --config c.json --out mesh.obj [--fields fields.csv]
//   canal4 check   --config c.json --suite <name> --out report.json
//   canal4 figures --out dir/
//
// Exit codes: 0 success, 1 input error, 2 numerical failure (irregular or
// formula-mismatch points encountered under --strict).

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "canal4/analysis.hpp"
#include "canal4/canal.hpp"
#include "canal4/curve.hpp"
#include "canal4/errors.hpp"
#include "canal4/meshio.hpp"
#include "canal4/ptframe.hpp"
#include "canal4/radius.hpp"

using json = nlohmann::json;
using namespace canal4;

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

struct Config {
    CurvePtr curve;
    RadiusFunction radius = RadiusFunction::constant(1.0);
    double u0 = 0.0;
    double h = 1e-3;
    double seed_rotation_deg = 0.0;
    std::size_t nu = 32, nv = 32;
    OracleConfig oracle;
};

double require_number(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_number())
        throw InvalidSpec(std::string("config: missing numeric field '") + field + "'");
    return j[field].get<double>();
}

Vec4 parse_vec4(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_array() || j[field].size() != 4)
        throw InvalidSpec(std::string("config: '") + field + "' must be a 4-array");
    Vec4 v;
    for (int i = 0; i < 4; ++i) v[i] = j[field][i].get<double>();
    return v;
}

CurvePtr parse_curve(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw InvalidSpec("config: curve.kind is required");
    const std::string kind = j["kind"].get<std::string>();
    if (!j.contains("domain") || !j["domain"].is_array() || j["domain"].size() != 2)
        throw InvalidSpec("config: curve.domain must be [a, b]");
    const double a = j["domain"][0].get<double>(), b = j["domain"][1].get<double>();
    if (!(b > a)) throw InvalidSpec("config: curve.domain must satisfy a < b");

    CurvePtr curve;
    if (kind == "torus") {
        curve = make_torus_curve(require_number(j, "a"), require_number(j, "b"),
                                 require_number(j, "c"), require_number(j, "d"), a, b);
    } else if (kind == "line") {
        curve = make_line(parse_vec4(j, "origin"), parse_vec4(j, "direction"), a, b);
    } else if (kind == "sampled") {
        if (!j.contains("csv"))
            throw InvalidSpec("config: sampled curve requires a 'csv' path");
        curve = load_sampled_curve_csv(j["csv"].get<std::string>());
    } else {
        throw InvalidSpec("config: unknown curve.kind '" + kind + "'");
    }
    if (j.value("reparam", 0) > 0) curve = arclength_reparam(*curve, j["reparam"].get<int>());
    return curve;
}

RadiusFunction parse_radius(const json& j, double dom_a, double dom_b) {
    if (!j.is_object() || !j.contains("kind"))
        throw InvalidSpec("config: radius.kind is required");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "constant") return RadiusFunction::constant(require_number(j, "r0"));
    if (kind == "linear")
        return RadiusFunction::linear(require_number(j, "a"), require_number(j, "b"));
    if (kind == "quadratic") return RadiusFunction::quadratic();
    if (kind == "cos_sq") return RadiusFunction::cos_sq();
    if (kind == "cosh_scaled")
        return RadiusFunction::cosh_scaled(require_number(j, "c1"), require_number(j, "C"));
    if (kind == "minimal")
        return minimal_radius({require_number(j, "c1"), require_number(j, "c2")}, dom_a,
                              dom_b);
    if (kind == "sampled") {
        if (!j.contains("csv"))
            throw InvalidSpec("config: sampled radius requires a 'csv' path");
        return RadiusFunction::from_csv(j["csv"].get<std::string>());
    }
    throw InvalidSpec("config: unknown radius.kind '" + kind + "'");
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InvalidSpec(std::string("config: JSON parse error: ") + e.what());
    }

    Config cfg;
    if (!j.contains("curve")) throw InvalidSpec("config: 'curve' is required");
    cfg.curve = parse_curve(j["curve"]);
    if (!j.contains("radius")) throw InvalidSpec("config: 'radius' is required");
    cfg.radius = parse_radius(j["radius"], cfg.curve->u_min(), cfg.curve->u_max());
    if (!j.contains("frame")) throw InvalidSpec("config: 'frame' is required");
    cfg.u0 = require_number(j["frame"], "u0");
    cfg.h = require_number(j["frame"], "h");
    cfg.seed_rotation_deg = j["frame"].value("seed_rotation_deg", 0.0);
    if (!j.contains("grid")) throw InvalidSpec("config: 'grid' is required");
    cfg.nu = static_cast<std::size_t>(require_number(j["grid"], "nu"));
    cfg.nv = static_cast<std::size_t>(require_number(j["grid"], "nv"));
    if (j.contains("oracle")) {
        cfg.oracle.h_u = cfg.oracle.h_v = require_number(j["oracle"], "h");
        cfg.oracle.order = static_cast<int>(require_number(j["oracle"], "order"));
    }
    return cfg;
}

// Rotates the (M2, M3) pair of the seed by the configured angle; this phases
// the v-coordinate of the canal patch without changing the surface set.
Frame4 rotated_seed(const Curve& curve, double u0, double deg) {
    Frame4 fr = seed_frame(curve, u0);
    if (deg == 0.0) return fr;
    const double a = deg * kTwoPi / 360.0;
    const Vec4 m2 = fr.M2 * std::cos(a) + fr.M3 * std::sin(a);
    const Vec4 m3 = fr.M3 * std::cos(a) - fr.M2 * std::sin(a);
    fr.M2 = m2;
    fr.M3 = m3;
    return fr;
}

// Propagates from u0 toward both domain ends and splices the two halves.
FramedCurve build_frame(const Config& cfg) {
    const Curve& c = *cfg.curve;
    const double a = c.u_min(), b = c.u_max();
    if (cfg.u0 < a || cfg.u0 > b) throw OutOfDomain("frame.u0 outside curve domain");
    const Frame4 seed = rotated_seed(c, cfg.u0, cfg.seed_rotation_deg);
    if (cfg.u0 <= a) return propagate(c, a, b, cfg.h, seed);
    if (cfg.u0 >= b) return propagate(c, b, a, cfg.h, seed);

    const FramedCurve back = propagate(c, cfg.u0, a, cfg.h, seed);
    const FramedCurve fwd = propagate(c, cfg.u0, b, cfg.h, seed);
    std::vector<double> grid(back.grid());
    std::vector<Vec4> pts;
    std::vector<Frame4> frames;
    std::vector<double> k1, k2, k3;
    for (std::size_t i = 0; i < back.size(); ++i) {
        pts.push_back(back.point(i));
        frames.push_back(back.frame(i));
        k1.push_back(back.k1(i));
        k2.push_back(back.k2(i));
        k3.push_back(back.k3(i));
    }
    for (std::size_t i = 1; i < fwd.size(); ++i) {  // skip the shared u0 node
        grid.push_back(fwd.grid()[i]);
        pts.push_back(fwd.point(i));
        frames.push_back(fwd.frame(i));
        k1.push_back(fwd.k1(i));
        k2.push_back(fwd.k2(i));
        k3.push_back(fwd.k3(i));
    }
    return FramedCurve(std::move(grid), std::move(pts), std::move(frames), std::move(k1),
                       std::move(k2), std::move(k3));
}

void write_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path);
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

void enforce_strict(const PatchGrid& grid, bool strict) {
    if (!strict) return;
    if (grid.irregular_count > 0)
        throw Irregular("--strict: " + std::to_string(grid.irregular_count) +
                        " irregular grid points");
    if (grid.formula_mismatch_count > 0)
        throw FormulaMismatch("--strict: " + std::to_string(grid.formula_mismatch_count) +
                              " formula-mismatch grid points");
}

int run_frame(const std::string& config_path, const std::string& out_path) {
    const Config cfg = load_config(config_path);
    build_frame(cfg).write_csv(out_path);
    std::cout << "wrote " << out_path << '\n';
    return 0;
}

int run_surface(const std::string& config_path, const std::string& out_path,
                const std::string& fields_path, bool strict) {
    const Config cfg = load_config(config_path);
    const FramedCurve fc = build_frame(cfg);
    const GridSpec gs{cfg.nu, cfg.nv, cfg.curve->u_min(), cfg.curve->u_max()};
    const bool with_fields = !fields_path.empty();
    const PatchGrid grid = sample_patch(fc, cfg.radius, gs, with_fields || strict);
    enforce_strict(grid, strict);
    write_obj(make_trimesh(grid), out_path);
    std::cout << "wrote " << out_path << " (" << grid.points.size() << " vertices)\n";
    if (with_fields) {
        write_csv_fields(grid, fields_path);
        std::cout << "wrote " << fields_path << '\n';
    }
    return 0;
}

json suite_equivalence(const Config& cfg, const FramedCurve& fc, bool strict) {
    // Inset the u-window so the oracle stencils stay inside the frame domain.
    const double margin = 4.0 * std::max(cfg.oracle.h_u, cfg.oracle.h_v);
    const double ua = cfg.curve->u_min() + margin, ub = cfg.curve->u_max() - margin;
    if (!(ub > ua)) throw InvalidSpec("equivalence: domain too small for the oracle margin");
    const SurfaceSampler X = [&](double u, double v) {
        return surface_point(fc, cfg.radius, u, v);
    };
    double max_rel_K = 0.0, max_rel_H = 0.0;
    std::size_t irregular = 0;
    for (std::size_t i = 0; i < cfg.nu; ++i) {
        const double u = ua + (ub - ua) * i / double(cfg.nu - 1);
        for (std::size_t j = 0; j < cfg.nv; ++j) {
            const double v = kTwoPi * j / double(cfg.nv);
            try {
                const SurfaceJet jet = surface_jet(fc, cfg.radius, u, v);
                const double K = gauss_K(jet, SurfaceMode::general);
                const Vec4 H = mean_vector(jet, SurfaceMode::general);
                const OracleResult oracle = oracle_curvature(X, u, v, cfg.oracle);
                max_rel_K = std::max(max_rel_K, std::fabs(K - oracle.K) /
                                                    std::max(1.0, std::fabs(K)));
                max_rel_H = std::max(max_rel_H,
                                     norm(H - oracle.Hvec) / std::max(1.0, norm(H)));
            } catch (const Irregular&) {
                if (strict) throw;
                ++irregular;
            }
        }
    }
    json rep;
    rep["max_rel_err_K"] = max_rel_K;
    rep["max_rel_err_Hvec"] = max_rel_H;
    rep["irregular_points"] = irregular;
    rep["pass"] = max_rel_K <= 1e-5 && max_rel_H <= 1e-5;
    return rep;
}

json suite_weingarten(const Config& cfg, const FramedCurve& fc) {
    const double ua = cfg.curve->u_min(), ub = cfg.curve->u_max();
    const double du = (ub - ua) / double(cfg.nu - 1), dv = kTwoPi / double(cfg.nv);
    std::vector<double> K(cfg.nu * cfg.nv), H(cfg.nu * cfg.nv);
    for (std::size_t i = 0; i < cfg.nu; ++i)
        for (std::size_t j = 0; j < cfg.nv; ++j) {
            const SurfaceJet jet = surface_jet(fc, cfg.radius, ua + du * i, dv * j);
            K[i * cfg.nv + j] = gauss_K(jet, SurfaceMode::general);
            H[i * cfg.nv + j] = mean_scalar(jet, SurfaceMode::general);
        }
    const WeingartenReport w = weingarten_check(K, H, cfg.nu, cfg.nv, du, dv);
    json rep;
    rep["max_jacobian"] = w.max_jacobian;
    rep["max_Kv"] = w.max_Kv;
    rep["max_Hv"] = w.max_Hv;
    rep["pass"] = w.is_weingarten;
    return rep;
}

json suite_flat(const Config& cfg, const FramedCurve& fc) {
    const FlatnessReport f = flatness_check(fc, cfg.radius, cfg.curve->u_min(),
                                            cfg.curve->u_max(), cfg.nu, cfg.nv);
    json rep;
    rep["max_abs_K"] = f.max_abs_K;
    rep["pass"] = f.is_flat;
    return rep;
}

json suite_minimal(const Config& cfg, const FramedCurve& fc) {
    const double worst = verify_minimal(fc, cfg.radius, cfg.curve->u_min(),
                                        cfg.curve->u_max(), cfg.nu, cfg.nv);
    json rep;
    rep["max_abs_H"] = worst;
    rep["pass"] = worst <= 1e-10;
    return rep;
}

json suite_linear_weingarten(const Config& cfg, const FramedCurve& fc) {
    const LinearWeingartenCert cert = linear_weingarten_cert(fc, cfg.radius, 1.0);
    json rep;
    rep["a"] = cert.a;
    rep["b"] = cert.b;
    rep["c"] = cert.c;
    rep["residual"] = cert.residual;
    rep["pass"] = cert.residual <= 1e-12;
    return rep;
}

int run_check(const std::string& config_path, const std::string& suite,
              const std::string& out_path, bool strict) {
    const Config cfg = load_config(config_path);
    const FramedCurve fc = build_frame(cfg);
    json rep;
    if (suite == "equivalence")
        rep = suite_equivalence(cfg, fc, strict);
    else if (suite == "weingarten")
        rep = suite_weingarten(cfg, fc);
    else if (suite == "flat")
        rep = suite_flat(cfg, fc);
    else if (suite == "minimal")
        rep = suite_minimal(cfg, fc);
    else if (suite == "linear-weingarten")
        rep = suite_linear_weingarten(cfg, fc);
    else
        throw InvalidSpec("unknown suite '" + suite + "'");
    rep["suite"] = suite;
    write_json(rep, out_path);
    std::cout << "wrote " << out_path << " (pass=" << (rep["pass"].get<bool>() ? "true" : "false")
              << ")\n";
    return 0;
}

struct FigureSpec {
    const char* name;
    RadiusFunction radius;
    double u_a, u_b;
};

int run_figures(const std::string& out_dir, bool strict) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    // Spine shared by all three figures.
    const double sa = 0.0, sb = kTwoPi;
    auto spine_curve = make_torus_curve(0.6, 0.4, 1.0, 2.0, sa, sb);
    const FramedCurve fc = propagate(*spine_curve, sa, sb, 1e-3, seed_frame(*spine_curve, sa));

    const std::size_t nu = 60, nv = 40;
    const FigureSpec figs[] = {
        // The figures' u-windows trim the domain where the radius would be
        // nonpositive (quadratic at u = 0, cos u^2 past its first zero).
        {"figure1", RadiusFunction::linear(2.0, 6.0), 0.0, kTwoPi},
        {"figure2", RadiusFunction::quadratic(), 0.5, kTwoPi},
        {"figure3", RadiusFunction::cos_sq(), 0.0, 1.2},
    };

    json manifest;
    manifest["spine"] = {{"kind", "torus"}, {"a", 0.6},        {"b", 0.4},
                         {"c", 1.0},        {"d", 2.0},        {"domain", {sa, sb}},
                         {"frame_u0", sa},  {"frame_h", 1e-3}};
    manifest["projection"] = "(x1, x2, x3, x4) -> (x1, x2, x3 + x4)";
    manifest["figures"] = json::array();

    for (const FigureSpec& fig : figs) {
        const GridSpec gs{nu, nv, fig.u_a, fig.u_b};
        const PatchGrid grid = sample_patch(fc, fig.radius, gs, false);
        enforce_strict(grid, strict);
        const TriMesh mesh = make_trimesh(grid);
        const std::string obj_path = out_dir + "/" + fig.name + ".obj";
        write_obj(mesh, obj_path);

        // gnuplot-compatible 4D point dump beside each mesh
        const std::string pts_path = out_dir + "/" + fig.name + "_points4.csv";
        std::ofstream pts(pts_path);
        if (!pts) throw IoError("cannot open " + pts_path);
        pts << "u,v,x1,x2,x3,x4\n";
        char buf[32];
        for (std::size_t i = 0; i < nu; ++i) {
            const double u = fig.u_a + (fig.u_b - fig.u_a) * i / double(nu - 1);
            for (std::size_t j = 0; j < nv; ++j) {
                const double v = kTwoPi * j / double(nv);
                pts << u << ',' << v;
                const Vec4& p = grid.points[i * nv + j];
                for (int k = 0; k < 4; ++k) {
                    std::snprintf(buf, sizeof buf, "%.17g", p[k]);
                    pts << ',' << buf;
                }
                pts << '\n';
            }
        }
        if (!pts) throw IoError("write failed: " + pts_path);

        json entry;
        entry["name"] = fig.name;
        entry["obj"] = fig.name + std::string(".obj");
        entry["points4_csv"] = fig.name + std::string("_points4.csv");
        entry["u_window"] = {fig.u_a, fig.u_b};
        entry["grid"] = {{"nu", nu}, {"nv", nv}};
        switch (fig.radius.kind()) {
            case RadiusFunction::Kind::Linear:
                entry["radius"] = {{"kind", "linear"},
                                   {"a", fig.radius.param(0)},
                                   {"b", fig.radius.param(1)}};
                break;
            case RadiusFunction::Kind::Quadratic:
                entry["radius"] = {{"kind", "quadratic"}};
                break;
            case RadiusFunction::Kind::CosSq:
                entry["radius"] = {{"kind", "cos_sq"}};
                break;
            default:
                entry["radius"] = {{"kind", "other"}};
        }
        entry["vertices"] = mesh.vertices.size();
        entry["faces"] = mesh.faces.size();
        manifest["figures"].push_back(entry);
        std::cout << "wrote " << obj_path << " (" << mesh.vertices.size() << " vertices, "
                  << mesh.faces.size() << " faces)\n";
    }
    write_json(manifest, out_dir + "/manifest.json");
    std::cout << "wrote " << out_dir << "/manifest.json\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parallel-transport canal surfaces in E^4"};
    app.require_subcommand(1);
    bool strict = false;
    app.add_flag("--strict", strict,
                 "treat irregular / formula-mismatch points as failures (exit 2)");

    std::string config_path, out_path, fields_path, suite;

    CLI::App* cmd_frame = app.add_subcommand("frame", "propagate and dump a framed curve");
    cmd_frame->add_option("--config", config_path, "config JSON")->required();
    cmd_frame->add_option("--out", out_path, "output CSV")->required();

    CLI::App* cmd_surface = app.add_subcommand("surface", "sample, project, export OBJ");
    cmd_surface->add_option("--config", config_path, "config JSON")->required();
    cmd_surface->add_option("--out", out_path, "output OBJ")->required();
    cmd_surface->add_option("--fields", fields_path, "optional curvature-field CSV");

    CLI::App* cmd_check = app.add_subcommand("check", "run an analysis suite");
    cmd_check->add_option("--config", config_path, "config JSON")->required();
    cmd_check
        ->add_option("--suite", suite,
                     "one of equivalence|weingarten|flat|minimal|linear-weingarten")
        ->required();
    cmd_check->add_option("--out", out_path, "output report JSON")->required();

    CLI::App* cmd_figures = app.add_subcommand("figures", "regenerate the example meshes");
    cmd_figures->add_option("--out", out_path, "output directory")->required();

    try {
        app.parse(argc, argv);
        if (cmd_frame->parsed()) return run_frame(config_path, out_path);
        if (cmd_surface->parsed())
            return run_surface(config_path, out_path, fields_path, strict);
        if (cmd_check->parsed()) return run_check(config_path, suite, out_path, strict);
        if (cmd_figures->parsed()) return run_figures(out_path, strict);
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const Irregular& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const FormulaMismatch& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const TubeSingular& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
