#pragma once

// OBJ meshes (stereographic image of a sampled surface), diagnostics CSV and
// the stored-grid JSON document read back by `diagnose`.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "lightcone/diagnostics.hpp"
#include "lightcone/frame.hpp"
#include "lightcone/lorentz.hpp"

namespace lightcone {

// Every float written by this module uses %.12g.
std::string format_double(double x);

// Surface samples on a (u, v) lattice, v-major like GridSpec::index.
struct SampledSurface {
    GridSpec spec;
    std::vector<Herm2> x;
    std::vector<char> valid;
};

SampledSurface sampled_from_grid(const SurfaceGrid& grid);

// Vertices are the stereographic images of the valid nodes in index order.
// Each lattice cell is split along its (i,j)-(i+1,j+1) diagonal into two
// triangles, counter-clockwise in (u, v); a triangle is emitted only when
// all three corners are valid. Polylines become `l` elements.
void write_obj(std::ostream& os, const SampledSurface& surface, const std::vector<std::vector<Herm2>>& polylines = {},
               const std::string& name = "surface");

// Header: u,v,valid,phi2,E,F,G,conformality_defect,H,K,Lff,M,N,m_symmetry,
// gauss_nn,gauss_nxu,gauss_nxv,gauss_nx,lightcone_residual,det_drift
extern const char* const kDiagnosticsHeader;
void write_diagnostics_csv(std::ostream& os, const std::vector<NodeDiagnostics>& rows);

// Stored grid: spec, Weierstrass expressions, base point and per-node F.
nlohmann::json grid_to_json(const SurfaceGrid& grid);
// Throws SchemaError on malformed documents; X is recomputed from F.
SurfaceGrid grid_from_json(const nlohmann::json& doc);

}  // namespace lightcone
