#include "lightcone/mesh_io.hpp"

#include <cstdio>
#include <iterator>
#include <ostream>

#include "lightcone/error.hpp"

namespace lightcone {

using nlohmann::json;

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

SampledSurface sampled_from_grid(const SurfaceGrid& grid) {
    SampledSurface s;
    s.spec = grid.spec;
    s.x.reserve(grid.nodes.size());
    s.valid.reserve(grid.nodes.size());
    for (const GridNode& n : grid.nodes) {
        s.x.push_back(n.x);
        s.valid.push_back(n.valid ? 1 : 0);
    }
    return s;
}

namespace {

void write_vertex(std::ostream& os, const Herm2& x) {
    const auto p = stereographic_project(x);
    os << "v " << format_double(p[0]) << ' ' << format_double(p[1]) << ' ' << format_double(p[2]) << '\n';
}

}  // namespace

void write_obj(std::ostream& os, const SampledSurface& s, const std::vector<std::vector<Herm2>>& polylines,
               const std::string& name) {
    const GridSpec& g = s.spec;
    os << "# lightcone surface " << g.nu << "x" << g.nv << "\n";
    os << "o " << name << '\n';
    // OBJ indices are 1-based; 0 marks a dropped node.
    std::vector<long> id(s.x.size(), 0);
    long next = 1;
    for (std::size_t k = 0; k < s.x.size(); ++k) {
        if (!s.valid[k]) continue;
        write_vertex(os, s.x[k]);
        id[k] = next++;
    }
    auto tri = [&](std::size_t a, std::size_t b, std::size_t c) {
        if (id[a] && id[b] && id[c]) os << "f " << id[a] << ' ' << id[b] << ' ' << id[c] << '\n';
    };
    for (int j = 0; j + 1 < g.nv; ++j) {
        for (int i = 0; i + 1 < g.nu; ++i) {
            const std::size_t a = g.index(i, j), b = g.index(i + 1, j);
            const std::size_t c = g.index(i + 1, j + 1), d = g.index(i, j + 1);
            tri(a, b, c);
            tri(a, c, d);
        }
    }
    for (const auto& line : polylines) {
        if (line.size() < 2) continue;
        const long first = next;
        for (const Herm2& x : line) {
            write_vertex(os, x);
            ++next;
        }
        os << 'l';
        for (long k = first; k < next; ++k) os << ' ' << k;
        os << '\n';
    }
}

const char* const kDiagnosticsHeader =
    "u,v,valid,phi2,E,F,G,conformality_defect,H,K,Lff,M,N,m_symmetry,"
    "gauss_nn,gauss_nxu,gauss_nxv,gauss_nx,lightcone_residual,det_drift";

void write_diagnostics_csv(std::ostream& os, const std::vector<NodeDiagnostics>& rows) {
    os << kDiagnosticsHeader << '\n';
    for (const NodeDiagnostics& r : rows) {
        const PointDiagnostics& p = r.point;
        os << format_double(p.u) << ',' << format_double(p.v) << ',' << (r.valid ? 1 : 0);
        const double values[] = {p.phi2,      p.e,         p.f,         p.g,         p.conformality_defect,
                                 p.h,         p.k,         p.second.lff, p.second.m, p.second.n,
                                 p.m_symmetry, p.gauss_residuals[0], p.gauss_residuals[1], p.gauss_residuals[2],
                                 p.gauss_residuals[3], r.lightcone_residual, r.det_drift};
        // Geometry columns are undefined on invalid nodes; the last two are
        // integration data and stay meaningful.
        constexpr std::size_t kGeometry = std::size(values) - 2;
        for (std::size_t k = 0; k < std::size(values); ++k)
            os << ',' << (r.valid || k >= kGeometry ? format_double(values[k]) : std::string("nan"));
        os << '\n';
    }
}

namespace {

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const Mat2C& m) {
    return json::array({complex_json(m.m11), complex_json(m.m12), complex_json(m.m21), complex_json(m.m22)});
}

template <class T>
T field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) throw SchemaError(where + ": missing '" + key + "'");
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw SchemaError(where + "/" + key + ": wrong type");
    }
}

Complex complex_from(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw SchemaError(where + ": expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

Mat2C matrix_from(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 4) throw SchemaError(where + ": expected four complex entries");
    return {complex_from(j[0], where + "/0"), complex_from(j[1], where + "/1"), complex_from(j[2], where + "/2"),
            complex_from(j[3], where + "/3")};
}

}  // namespace

json grid_to_json(const SurfaceGrid& grid) {
    const GridSpec& g = grid.spec;
    json doc;
    doc["format"] = "lightcone-grid";
    doc["version"] = 1;
    doc["grid"] = {{"u", {g.u0, g.u1}}, {"v", {g.v0, g.v1}}, {"nu", g.nu}, {"nv", g.nv}};
    doc["weierstrass"] = {{"g", grid.wd.g.to_string()}, {"omega", grid.wd.omega.to_string()}, {"chart", grid.wd.chart}};
    doc["base_u"] = grid.base_u;
    doc["base_frame"] = matrix_json(grid.base_frame);
    json nodes = json::array();
    for (const GridNode& n : grid.nodes) {
        json node = {{"u", n.u}, {"v", n.v}, {"valid", n.valid}};
        if (n.valid) {
            node["f"] = matrix_json(n.f);
        } else {
            node["error"] = n.error;
        }
        nodes.push_back(std::move(node));
    }
    doc["nodes"] = std::move(nodes);
    return doc;
}

SurfaceGrid grid_from_json(const json& doc) {
    if (!doc.is_object() || doc.value("format", "") != "lightcone-grid")
        throw SchemaError("/: not a lightcone-grid document");
    SurfaceGrid out;
    const json& g = doc.contains("grid") ? doc["grid"] : json();
    const auto u = field<std::vector<double>>(g, "u", "/grid");
    const auto v = field<std::vector<double>>(g, "v", "/grid");
    if (u.size() != 2 || v.size() != 2) throw SchemaError("/grid: u and v must be [min, max]");
    out.spec = {u[0], u[1], v[0], v[1], field<int>(g, "nu", "/grid"), field<int>(g, "nv", "/grid")};
    out.spec.validate();
    const json& w = doc.contains("weierstrass") ? doc["weierstrass"] : json();
    try {
        out.wd.g = parse(field<std::string>(w, "g", "/weierstrass"));
        out.wd.omega = parse(field<std::string>(w, "omega", "/weierstrass"));
    } catch (const SyntaxError& e) {
        throw SchemaError(std::string("/weierstrass: ") + e.what());
    }
    out.wd.chart = w.value("chart", "w");
    out.base_u = field<double>(doc, "base_u", "/");
    if (doc.contains("base_frame")) out.base_frame = matrix_from(doc["base_frame"], "/base_frame");
    if (!doc.contains("nodes") || !doc["nodes"].is_array()) throw SchemaError("/nodes: expected array");
    const json& nodes = doc["nodes"];
    if (nodes.size() != static_cast<std::size_t>(out.spec.nu) * out.spec.nv)
        throw SchemaError("/nodes: expected nu*nv entries");
    out.nodes.resize(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const std::string where = "/nodes/" + std::to_string(k);
        GridNode& n = out.nodes[k];
        n.u = field<double>(nodes[k], "u", where);
        n.v = field<double>(nodes[k], "v", where);
        n.valid = field<bool>(nodes[k], "valid", where);
        if (n.valid) {
            n.f = matrix_from(nodes[k].contains("f") ? nodes[k]["f"] : json(), where + "/f");
            n.x = surface_point(n.f);
            n.det_drift = std::abs(n.f.det() - 1.0);
        } else {
            n.error = nodes[k].value("error", "invalid");
        }
    }
    return out;
}

}  // namespace lightcone
