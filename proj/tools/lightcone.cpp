// lightcone: Björling problem solver for zero mean curvature surfaces in the
// light cone. See README.md for modes and exit codes.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lightcone/error.hpp"
#include "lightcone/job.hpp"

using nlohmann::json;
using namespace lightcone;

namespace {

double default_parameter(const std::string& family) {
    return family == "parabolic" ? 0.5 : 1.5;
}

json parse_grid_flag(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        try {
            v.push_back(std::stod(item, &used));
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw SchemaError("--grid: '" + item + "' is not a number");
    }
    if (v.size() != 6) throw SchemaError("--grid expects u0,u1,v0,v1,nu,nv");
    auto count = [](double d) {
        if (d != static_cast<int>(d)) throw SchemaError("--grid: node counts must be integers");
        return static_cast<int>(d);
    };
    return {{"u", {v[0], v[1]}}, {"v", {v[2], v[3]}}, {"nu", count(v[4])}, {"nv", count(v[5])}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Björling problem for zero mean curvature surfaces in the light cone"};
    std::string mode, input, out_dir, family, branch, grid, grid_file;
    std::optional<double> param, tol;
    bool gauge_test = false, renormalize = false;

    app.add_option("mode", mode, "check | solve | catenoid | diagnose | extend (overrides the input's mode)");
    app.add_option("--input", input, "Job document (JSON)");
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--family", family, "Catenoid family: elliptic | hyperbolic | parabolic");
    app.add_option("--param", param, "Catenoid parameter a, b or c (for extend: c)");
    app.add_option("--branch", branch, "Tangent field branch: accepted | rejected");
    app.add_option("--grid", grid, "u0,u1,v0,v1,nu,nv");
    app.add_option("--grid-file", grid_file, "Stored grid for diagnose (grid.json written by solve)");
    app.add_option("--tol", tol, "Conformality tolerance");
    app.add_flag("--gauge-test", gauge_test, "Re-solve with a gauged initial frame and compare");
    app.add_flag("--renormalize-det", renormalize, "Project F back to det F = 1 after each step");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitIo;
    }

    json doc = json::object();
    try {
        if (!input.empty()) {
            std::ifstream in(input, std::ios::binary);
            if (!in) {
                std::cerr << "i/o error: cannot read " << input << '\n';
                return kExitIo;
            }
            doc = json::parse(in);
            if (!doc.is_object()) throw SchemaError("/: job document must be an object");
        }
        if (!mode.empty()) doc["mode"] = mode;
        const bool extend = doc.value("mode", "") == "extend";
        if (!family.empty()) {
            doc["catenoid"]["family"] = family;
            if (!doc["catenoid"].contains("parameter")) doc["catenoid"]["parameter"] = default_parameter(family);
        }
        if (param) {
            if (extend) {
                doc["nonrotational"]["c"] = *param;
            } else {
                doc["catenoid"]["parameter"] = *param;
            }
        }
        if (!branch.empty()) doc["catenoid"]["branch"] = branch;
        if (!grid.empty()) doc["grid"] = parse_grid_flag(grid);
        if (!grid_file.empty()) doc["input_grid"] = grid_file;
        if (!out_dir.empty()) doc["output"]["dir"] = out_dir;
        if (tol) doc["tolerances"]["conformality"] = *tol;
        if (gauge_test) doc["gauge_test"] = true;
        if (renormalize) doc["integrator"]["renormalize_det"] = true;
    } catch (const json::exception& e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return kExitIo;
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return kExitIo;
    }

    JobSpec job;
    try {
        job = parse_job(doc);
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return kExitIo;
    }
    if (const char* env = std::getenv("LIGHTCONE_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap > 0 && job.threads > static_cast<unsigned>(cap)) job.threads = static_cast<unsigned>(cap);
    }
    return run_job(job, std::cout, std::cerr);
}
