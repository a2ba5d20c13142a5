#pragma once

// Job documents and the five CLI modes. A job is a single JSON object (see
// docs/job.schema.json); command-line flags are folded into it before
// parsing so that both routes share one validator.

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "lightcone/bjorling.hpp"
#include "lightcone/catenoids.hpp"
#include "lightcone/frame.hpp"

namespace lightcone {

enum class Mode { Check, Solve, Catenoid, Diagnose, Extend };

std::string_view mode_name(Mode m);
// Throws SchemaError.
Mode parse_mode(std::string_view name);

enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 2,  // conformality, orientability or extraction consistency
    kExitNumerical = 3,   // integration failure, degenerate metric, gauge test failure
    kExitIo = 4,          // unreadable input, unwritable output, schema violation
};

struct CurveStrings {
    std::string m11, m12, m22;
    std::optional<std::string> m21;
};

struct BjorlingInput {
    CurveStrings gamma;
    CurveStrings tangent;
    double u_min = 0.0, u_max = 1.0;
    int samples = 33;
    ParameterMap parameters;
};

struct JobSpec {
    Mode mode = Mode::Check;
    // Exactly one data source for check/solve: explicit expressions, a
    // catenoid family, or the non-rotational example.
    std::optional<BjorlingInput> bjorling;
    std::optional<CatenoidSpec> catenoid;
    TangentBranch branch = TangentBranch::Accepted;
    std::optional<double> nonrotational_c;
    std::optional<GridSpec> grid;
    std::string out_dir = ".";
    std::string grid_file;  // diagnose only
    Tolerances tol;
    StepControl step;
    double relative_step = 1e-4;  // diagnostics h relative to min(du, dv)
    bool gauge_test = false;
    unsigned threads = 0;
};

// Validates the document and throws SchemaError with a JSON-pointer style
// location on the first violation.
JobSpec parse_job(const nlohmann::json& doc);

BjorlingData make_bjorling_data(const JobSpec& job);

// Grid used when the job does not give one.
GridSpec default_grid(const JobSpec& job);

// Runs the job, writing files under out_dir and a human-readable report to
// `out`. Errors are reported on `err` and mapped to exit codes; this never
// throws for lightcone::Error, JSON or filesystem failures.
int run_job(const JobSpec& job, std::ostream& out, std::ostream& err);

// Parses then runs; schema errors map to kExitIo.
int run_document(const nlohmann::json& doc, std::ostream& out, std::ostream& err);

}  // namespace lightcone
