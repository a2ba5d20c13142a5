#include "lightcone/job.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <set>

#include "lightcone/diagnostics.hpp"
#include "lightcone/error.hpp"
#include "lightcone/mesh_io.hpp"

namespace lightcone {

using nlohmann::json;
namespace fs = std::filesystem;

std::string_view mode_name(Mode m) {
    switch (m) {
        case Mode::Check: return "check";
        case Mode::Solve: return "solve";
        case Mode::Catenoid: return "catenoid";
        case Mode::Diagnose: return "diagnose";
        case Mode::Extend: return "extend";
    }
    return {};
}

Mode parse_mode(std::string_view name) {
    for (Mode m : {Mode::Check, Mode::Solve, Mode::Catenoid, Mode::Diagnose, Mode::Extend})
        if (mode_name(m) == name) return m;
    throw SchemaError("/mode: unknown mode '" + std::string(name) + "'");
}

namespace {

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Small validator over nlohmann::json: every accessor names the offending
// location, and unknown keys are rejected.
class Reader {
public:
    Reader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
        if (!j_.is_object()) fail("expected object");
    }

    void allow(std::initializer_list<const char*> keys) const {
        const std::set<std::string> known(keys.begin(), keys.end());
        for (const auto& [k, _] : j_.items())
            if (!known.count(k)) throw SchemaError(where_ + "/" + k + ": unknown key");
    }

    bool has(const char* key) const { return j_.contains(key); }
    Reader object(const char* key) const { return Reader(j_.at(key), path(key)); }

    std::string string(const char* key) const {
        const json& v = at(key);
        if (!v.is_string()) throw SchemaError(path(key) + ": expected string");
        return v.get<std::string>();
    }
    double number(const char* key) const {
        const json& v = at(key);
        if (!v.is_number()) throw SchemaError(path(key) + ": expected number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) throw SchemaError(path(key) + ": expected finite number");
        return d;
    }
    double positive(const char* key) const {
        const double d = number(key);
        if (!(d > 0.0)) throw SchemaError(path(key) + ": expected positive number");
        return d;
    }
    int integer(const char* key, int min) const {
        const json& v = at(key);
        if (!v.is_number_integer()) throw SchemaError(path(key) + ": expected integer");
        const long long n = v.get<long long>();
        if (n < min || n > 1'000'000) throw SchemaError(path(key) + ": out of range (min " + std::to_string(min) + ")");
        return static_cast<int>(n);
    }
    bool boolean(const char* key) const {
        const json& v = at(key);
        if (!v.is_boolean()) throw SchemaError(path(key) + ": expected boolean");
        return v.get<bool>();
    }
    std::pair<double, double> range(const char* key) const {
        const json& v = at(key);
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            throw SchemaError(path(key) + ": expected [min, max]");
        const double a = v[0].get<double>(), b = v[1].get<double>();
        if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
            throw SchemaError(path(key) + ": expected finite min < max");
        return {a, b};
    }
    const json& raw() const { return j_; }
    std::string path(const char* key) const { return where_ + "/" + key; }

private:
    const json& at(const char* key) const {
        if (!j_.contains(key)) throw SchemaError(path(key) + ": required");
        return j_.at(key);
    }
    [[noreturn]] void fail(const std::string& what) const { throw SchemaError((where_.empty() ? "/" : where_) + ": " + what); }

    const json& j_;
    std::string where_;
};

CurveStrings read_curve(const Reader& r) {
    r.allow({"m11", "m12", "m21", "m22"});
    CurveStrings c{r.string("m11"), r.string("m12"), r.string("m22"), std::nullopt};
    if (r.has("m21")) c.m21 = r.string("m21");
    return c;
}

TangentBranch parse_branch(const Reader& r) {
    if (!r.has("branch")) return TangentBranch::Accepted;
    const std::string b = r.string("branch");
    if (b == "accepted") return TangentBranch::Accepted;
    if (b == "rejected") return TangentBranch::Rejected;
    throw SchemaError(r.path("branch") + ": expected 'accepted' or 'rejected'");
}

}  // namespace

JobSpec parse_job(const json& doc) {
    const Reader root(doc, "");
    root.allow({"mode", "bjorling", "catenoid", "nonrotational", "grid", "output", "input_grid", "tolerances",
                "integrator", "diagnostics", "gauge_test", "threads"});
    JobSpec job;
    job.mode = parse_mode(root.string("mode"));

    if (root.has("bjorling")) {
        const Reader b = root.object("bjorling");
        b.allow({"gamma", "tangent", "interval", "samples", "parameters"});
        BjorlingInput in;
        in.gamma = read_curve(b.object("gamma"));
        in.tangent = read_curve(b.object("tangent"));
        std::tie(in.u_min, in.u_max) = b.range("interval");
        if (b.has("samples")) in.samples = b.integer("samples", BjorlingData::kMinSamples);
        if (b.has("parameters")) {
            const Reader p = b.object("parameters");
            for (const auto& [k, v] : p.raw().items()) in.parameters[k] = p.number(k.c_str());
        }
        job.bjorling = std::move(in);
    }
    if (root.has("catenoid")) {
        const Reader c = root.object("catenoid");
        c.allow({"family", "parameter", "branch"});
        CatenoidSpec spec;
        try {
            spec.family = parse_family(c.string("family"));
        } catch (const ValidationError& e) {
            throw SchemaError(c.path("family") + ": " + e.what());
        }
        spec.parameter = c.number("parameter");
        job.catenoid = spec;
        job.branch = parse_branch(c);
    }
    if (root.has("nonrotational")) {
        const Reader n = root.object("nonrotational");
        n.allow({"c"});
        job.nonrotational_c = n.number("c");
    }
    if (root.has("grid")) {
        const Reader g = root.object("grid");
        g.allow({"u", "v", "nu", "nv"});
        GridSpec spec;
        std::tie(spec.u0, spec.u1) = g.range("u");
        std::tie(spec.v0, spec.v1) = g.range("v");
        spec.nu = g.integer("nu", 2);
        spec.nv = g.integer("nv", 2);
        job.grid = spec;
    }
    if (root.has("output")) {
        const Reader o = root.object("output");
        o.allow({"dir"});
        job.out_dir = o.string("dir");
    }
    if (root.has("input_grid")) job.grid_file = root.string("input_grid");
    if (root.has("tolerances")) {
        const Reader t = root.object("tolerances");
        t.allow({"conformality", "orientability", "consistency", "trace_identity", "hermitian"});
        if (t.has("conformality")) job.tol.conformality = t.positive("conformality");
        if (t.has("orientability")) job.tol.orientability = t.positive("orientability");
        if (t.has("consistency")) job.tol.consistency = t.positive("consistency");
        if (t.has("trace_identity")) job.tol.trace_identity = t.positive("trace_identity");
        if (t.has("hermitian")) job.tol.hermitian = t.positive("hermitian");
    }
    if (root.has("integrator")) {
        const Reader s = root.object("integrator");
        s.allow({"h_max", "local_tol", "h_min", "renormalize_det"});
        if (s.has("h_max")) job.step.h_max = s.positive("h_max");
        if (s.has("local_tol")) job.step.local_tol = s.positive("local_tol");
        if (s.has("h_min")) job.step.h_min = s.positive("h_min");
        if (s.has("renormalize_det")) job.step.renormalize_det = s.boolean("renormalize_det");
    }
    if (root.has("diagnostics")) {
        const Reader d = root.object("diagnostics");
        d.allow({"relative_step"});
        if (d.has("relative_step")) job.relative_step = d.positive("relative_step");
    }
    if (root.has("gauge_test")) job.gauge_test = root.boolean("gauge_test");
    if (root.has("threads")) job.threads = static_cast<unsigned>(root.integer("threads", 0));

    const int sources = int(job.bjorling.has_value()) + int(job.catenoid.has_value()) +
                        int(job.nonrotational_c.has_value());
    switch (job.mode) {
        case Mode::Check:
        case Mode::Solve:
            if (sources != 1) throw SchemaError("/: exactly one of bjorling, catenoid, nonrotational is required");
            break;
        case Mode::Catenoid:
            if (!job.catenoid) throw SchemaError("/catenoid: required for mode catenoid");
            break;
        case Mode::Diagnose:
            if (job.grid_file.empty()) throw SchemaError("/input_grid: required for mode diagnose");
            break;
        case Mode::Extend:
            if (!job.nonrotational_c) job.nonrotational_c = 0.5;
            break;
    }
    return job;
}

BjorlingData make_bjorling_data(const JobSpec& job) {
    if (job.bjorling) {
        const BjorlingInput& in = *job.bjorling;
        auto curve = [&](const CurveStrings& c) {
            const std::optional<std::string_view> m21 = c.m21 ? std::optional<std::string_view>(*c.m21) : std::nullopt;
            return HermitianCurve::parse(c.m11, c.m12, m21, c.m22, in.parameters);
        };
        return BjorlingData(curve(in.gamma), curve(in.tangent), in.u_min, in.u_max, in.samples);
    }
    if (job.catenoid) return catenoid_bjorling_data(*job.catenoid, job.branch);
    if (job.nonrotational_c) return nonrotational_bjorling_data(*job.nonrotational_c);
    throw ValidationError("job has no Björling data");
}

GridSpec default_grid(const JobSpec& job) {
    if (job.grid) return *job.grid;
    switch (job.mode) {
        case Mode::Extend: return {std::log(0.5), std::log(2.0), -std::numbers::pi, std::numbers::pi, 41, 41};
        default: break;
    }
    if (job.catenoid) return catenoid_chart(job.catenoid->family);
    if (job.bjorling) return {job.bjorling->u_min, job.bjorling->u_max, -1.0, 1.0, 41, 21};
    return {0.5, 2.0, -1.0, 1.0, 41, 21};
}

namespace {

std::ofstream open_output(const JobSpec& job, const std::string& name) {
    std::error_code ec;
    fs::create_directories(job.out_dir, ec);
    if (ec) throw IoFailure("cannot create output directory " + job.out_dir + ": " + ec.message());
    const fs::path p = fs::path(job.out_dir) / name;
    std::ofstream os(p, std::ios::binary);
    if (!os) throw IoFailure("cannot write " + p.string());
    return os;
}

void close_output(std::ofstream& os, const std::string& name) {
    os.close();
    if (!os) throw IoFailure("write failed for " + name);
}

template <class Fn>
void write_file(const JobSpec& job, const std::string& name, Fn&& fn) {
    std::ofstream os = open_output(job, name);
    fn(os);
    close_output(os, name);
}

struct Summary {
    double max_h = 0.0;
    double max_k = 0.0;
    double max_gauss = 0.0;
    double max_lightcone = 0.0;
    std::size_t valid = 0;
};

Summary summarize(const std::vector<NodeDiagnostics>& rows) {
    Summary s;
    for (const NodeDiagnostics& r : rows) {
        if (!r.valid) continue;
        ++s.valid;
        s.max_h = std::max(s.max_h, std::abs(r.point.h));
        s.max_k = std::max(s.max_k, std::abs(r.point.k));
        s.max_lightcone = std::max(s.max_lightcone, r.lightcone_residual);
        for (double g : r.point.gauss_residuals) s.max_gauss = std::max(s.max_gauss, g);
    }
    return s;
}

void print_summary(std::ostream& out, const std::string& label, const Summary& s, std::size_t total) {
    out << label << ": " << s.valid << "/" << total << " nodes diagnosed, max |H| = " << format_double(s.max_h)
        << ", max |K| = " << format_double(s.max_k) << ", max gauss residual = " << format_double(s.max_gauss)
        << ", max |<X,X>| = " << format_double(s.max_lightcone) << '\n';
}

int run_check(const JobSpec& job, std::ostream& out) {
    const BjorlingData data = make_bjorling_data(job);
    const ConformalityReport conf = check_conformality(data, job.tol);
    out << conf.summary() << '\n';
    if (!conf.pass) return kExitValidation;
    const OrientabilityReport orient = check_orientability(data, job.tol);
    out << orient.summary() << '\n';
    if (!orient.pass) return kExitValidation;
    const WeierstrassData wd = weierstrass_from_bjorling(data, job.tol);
    out << "PASS extraction: G = " << wd.g.to_string() << '\n';
    out << "                 omega = " << wd.omega.to_string() << '\n';
    out << "  route mismatch G " << format_double(wd.check.g_mismatch) << ", omega "
        << format_double(wd.check.omega_mismatch) << ", trace identity " << format_double(wd.check.trace_identity)
        << ", reconstruction " << format_double(wd.check.reconstruction) << '\n';
    return kExitOk;
}

SolveOptions solve_options(const JobSpec& job) {
    SolveOptions o;
    o.step = job.step;
    o.tol = job.tol;
    o.threads = job.threads;
    return o;
}

int run_solve(const JobSpec& job, std::ostream& out) {
    const BjorlingData data = make_bjorling_data(job);
    const GridSpec grid = default_grid(job);
    SolveOptions opts = solve_options(job);
    const SurfaceGrid surface = solve_bjorling(data, grid, opts);

    double pos = 0.0, tan = 0.0, drift = 0.0;
    for (const BoundarySample& b : surface.boundary) {
        if (!b.valid) continue;
        pos = std::max(pos, b.position / b.scale);
        tan = std::max(tan, b.tangent / b.scale);
    }
    for (const GridNode& n : surface.nodes)
        if (n.valid) drift = std::max(drift, n.det_drift);
    out << "solve: " << surface.valid_count() << "/" << surface.nodes.size() << " valid nodes\n";
    out << "  boundary |X(u,0) - gamma| = " << format_double(pos) << ", |X_v(u,0) - L| = " << format_double(tan)
        << ", max |det F - 1| = " << format_double(drift) << '\n';

    const auto diag = diagnose_grid(surface, job.relative_step, job.step, job.threads);
    print_summary(out, "  diagnostics", summarize(diag), diag.size());

    write_file(job, "surface.obj", [&](std::ostream& os) { write_obj(os, sampled_from_grid(surface)); });
    write_file(job, "diagnostics.csv", [&](std::ostream& os) { write_diagnostics_csv(os, diag); });
    write_file(job, "grid.json", [&](std::ostream& os) { os << grid_to_json(surface).dump(1) << '\n'; });

    if (surface.valid_count() == 0) {
        out << "FAIL solve: no node could be integrated\n";
        return kExitNumerical;
    }
    if (job.gauge_test) {
        constexpr double theta = 0.7, s = 0.3;
        opts.gauge = Mat2C{std::polar(1.0, theta), s, 0.0, std::polar(1.0, -theta)};
        const SurfaceGrid other = solve_bjorling(data, grid, opts);
        double diff = 0.0;
        for (std::size_t k = 0; k < surface.nodes.size(); ++k) {
            if (surface.nodes[k].valid != other.nodes[k].valid) {
                diff = INFINITY;
                break;
            }
            if (surface.nodes[k].valid) diff = std::max(diff, (surface.nodes[k].x - other.nodes[k].x).norm());
        }
        const bool ok = diff <= 1e-9;
        out << (ok ? "PASS" : "FAIL") << " gauge test: max |X - X_R| = " << format_double(diff) << " (limit 1e-9)\n";
        if (!ok) return kExitNumerical;
    }
    return kExitOk;
}

int run_catenoid(const JobSpec& job, std::ostream& out) {
    const CatenoidSpec spec = *job.catenoid;
    spec.validate();
    const GridSpec grid = default_grid(job);
    grid.validate();
    SampledSurface s{grid, {}, {}};
    double ring = 0.0;
    for (int j = 0; j < grid.nv; ++j) {
        for (int i = 0; i < grid.nu; ++i) {
            const Herm2 x = catenoid_closed_form(spec, grid.u_at(i), grid.v_at(j));
            s.x.push_back(x);
            s.valid.push_back(is_lightcone_point(x, 1e-9).in_cone ? 1 : 0);
        }
    }
    // Distance of the v = 0 row (when present) from the rotation orbit.
    for (int j = 0; j < grid.nv; ++j) {
        if (grid.v_at(j) != 0.0) continue;
        for (int i = 0; i < grid.nu; ++i)
            ring = std::max(ring, (s.x[grid.index(i, j)] - circle(spec.family, grid.u_at(i))).norm());
        out << "catenoid " << family_name(spec.family) << " " << format_double(spec.parameter)
            << ": v = 0 ring distance from circle = " << format_double(ring) << '\n';
    }
    const JetFunction jet = [spec](double u, double v) { return catenoid_jet(spec, u, v); };
    const auto diag = diagnose_parametrization(jet, grid, job.relative_step, job.threads);
    print_summary(out, "  diagnostics", summarize(diag), diag.size());
    write_file(job, "catenoid.obj", [&](std::ostream& os) { write_obj(os, s, {}, std::string(family_name(spec.family))); });
    write_file(job, "diagnostics.csv", [&](std::ostream& os) { write_diagnostics_csv(os, diag); });
    return kExitOk;
}

int run_diagnose(const JobSpec& job, std::ostream& out) {
    std::ifstream in(job.grid_file, std::ios::binary);
    if (!in) throw IoFailure("cannot read " + job.grid_file);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError(job.grid_file + ": " + e.what());
    }
    const SurfaceGrid grid = grid_from_json(doc);
    const auto diag = diagnose_grid(grid, job.relative_step, job.step, job.threads);
    print_summary(out, "diagnose", summarize(diag), diag.size());
    write_file(job, "diagnostics.csv", [&](std::ostream& os) { write_diagnostics_csv(os, diag); });
    return kExitOk;
}

int run_extend(const JobSpec& job, std::ostream& out) {
    const double c = *job.nonrotational_c;
    if (c == 0.0) throw ValidationError("non-rotational example requires c != 0");
    const GridSpec chart = default_grid(job);
    chart.validate();
    // Second chart: s = e^u continued through s <= 0, same v range; an odd
    // node count puts s = 0 on the grid.
    const double s_max = std::exp(chart.u1);
    const GridSpec ext{-s_max, s_max, chart.v0, chart.v1, chart.nu % 2 ? chart.nu : chart.nu + 1, chart.nv};

    SampledSurface xs{chart, {}, {}}, xe{ext, {}, {}};
    double agree = 0.0, metric = 0.0;
    for (int j = 0; j < chart.nv; ++j) {
        for (int i = 0; i < chart.nu; ++i) {
            const auto [x, xt] = nonrotational_example(c, chart.u_at(i), chart.v_at(j));
            xs.x.push_back(x);
            xs.valid.push_back(1);
            agree = std::max(agree, (x - xt).norm());
        }
    }
    for (int j = 0; j < ext.nv; ++j) {
        for (int i = 0; i < ext.nu; ++i) {
            const double s = ext.u_at(i), v = ext.v_at(j);
            const SurfaceJet jt = nonrotational_extension_jet(c, s, v);
            xe.x.push_back(jt.x);
            xe.valid.push_back(1);
            metric = std::max(metric, std::abs(minkowski_inner(jt.xv, jt.xv) - std::exp(2.0 * c * v) * s * s));
        }
    }
    std::vector<Herm2> circle_line;
    for (int j = 0; j < ext.nv; ++j) circle_line.push_back(lightlike_circle(c, ext.v_at(j)));

    out << "extend c = " << format_double(c) << ": |X(u,v) - X~(e^u,v)| = " << format_double(agree)
        << ", |<X~_v,X~_v> - e^{2cv} s^2| = " << format_double(metric) << '\n';

    const JetFunction jx = [c](double u, double v) { return nonrotational_jet(c, u, v); };
    const JetFunction je = [c](double s, double v) { return nonrotational_extension_jet(c, s, v); };
    const auto dx = diagnose_parametrization(jx, chart, job.relative_step, job.threads);
    const auto de = diagnose_parametrization(je, ext, job.relative_step, job.threads);
    print_summary(out, "  chart X", summarize(dx), dx.size());
    print_summary(out, "  chart X~", summarize(de), de.size());
    out << "  nodes on the lightlike circle s = 0 have a degenerate metric and are flagged valid=0\n";

    write_file(job, "chart_x.obj", [&](std::ostream& os) { write_obj(os, xs, {}, "nonrotational"); });
    write_file(job, "chart_extension.obj", [&](std::ostream& os) { write_obj(os, xe, {circle_line}, "extension"); });
    write_file(job, "diagnostics_x.csv", [&](std::ostream& os) { write_diagnostics_csv(os, dx); });
    write_file(job, "diagnostics_extension.csv", [&](std::ostream& os) { write_diagnostics_csv(os, de); });
    return kExitOk;
}

}  // namespace

int run_job(const JobSpec& job, std::ostream& out, std::ostream& err) {
    try {
        switch (job.mode) {
            case Mode::Check: return run_check(job, out);
            case Mode::Solve: return run_solve(job, out);
            case Mode::Catenoid: return run_catenoid(job, out);
            case Mode::Diagnose: return run_diagnose(job, out);
            case Mode::Extend: return run_extend(job, out);
        }
    } catch (const SchemaError& e) {
        err << "schema error: " << e.what() << '\n';
        return kExitIo;
    } catch (const IoFailure& e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ValidationError& e) {
        err << "validation failed: " << e.what() << '\n';
        return kExitValidation;
    } catch (const DataInconsistencyError& e) {
        err << "validation failed: " << e.what() << '\n';
        return kExitValidation;
    } catch (const SyntaxError& e) {
        err << "expression error: " << e.what() << '\n';
        return kExitIo;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const fs::filesystem_error& e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitOk;
}

int run_document(const json& doc, std::ostream& out, std::ostream& err) {
    JobSpec job;
    try {
        job = parse_job(doc);
    } catch (const SchemaError& e) {
        err << "schema error: " << e.what() << '\n';
        return kExitIo;
    }
    return run_job(job, out, err);
}

}  // namespace lightcone
