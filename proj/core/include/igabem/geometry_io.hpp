#pragma once

#include <iosfwd>
#include <string>

#include "igabem/geometry.hpp"

namespace igabem {

/// JSON export of a multi-patch surface.  Schema: an object with
///   patches:    [{degrees:[d1,d2], knots_u:[...], knots_v:[...],
///                 control_points:[[x,y,z],...], weights:[...]}]   (row-major, t1 major)
///   interfaces: [{patch_a, edge_a, patch_b, edge_b, reversed}]
std::string surface_to_json(const MultiPatchSurface& surface);
void write_surface_json(const MultiPatchSurface& surface, const std::string& path);

/// JSON import; the stored interfaces are validated against the geometry.
MultiPatchSurface surface_from_json(const std::string& json_text);
MultiPatchSurface read_surface_json(const std::string& path);

}  // namespace igabem
