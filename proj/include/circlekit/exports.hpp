#pragma once

#include <string>

#include "circlekit/mesh_io.hpp"
#include "circlekit/sisothermic.hpp"

namespace circlekit {

// Native quad document of the central extension: positions, kite faces, vertex
// colors and the +/- edge labels.
MeshFile s_isothermic_mesh_file(const SIsothermicSurface& s);

// Kite mesh of the central extension for external viewers.
void write_kite_obj(const std::string& path, const SIsothermicSurface& s);

// Proxy geometry for viewers: circles as closed polylines, spheres as
// icosphere meshes, contacts as degenerate single-point lines.
void write_proxy_obj(const std::string& path, const SIsothermicSurface& s, int circle_segments = 48,
                     int sphere_subdivisions = 1);

}  // namespace circlekit
