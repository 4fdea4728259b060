#pragma once

#include "igabem/geometry.hpp"

namespace igabem {

/// Unit sphere as 6 quartic rational patches on cube topology (smooth,
/// singularity-free parameterization).  Normals point out of the ball.
MultiPatchSurface make_sphere();

/// Torus with centerline radius 2 and tube radius 1 (inner radius 1, outer 3)
/// as 16 biquadratic rational patches; t1 runs along the toroidal direction.
/// Normals point out of the solid.
MultiPatchSurface make_torus();

/// Bilinear patch through four corners (weights 1).
NurbsPatch make_bilinear_patch(const Vec3& p00, const Vec3& p10, const Vec3& p01, const Vec3& p11);

/// Unit-radius quarter cylinder: a 90-degree rational arc times the segment
/// z in [0,1].
NurbsPatch make_cylinder_patch();

/// Single sphere patch (the one covering the cube face with center (0,0,-1)).
NurbsPatch make_sphere_patch();

}  // namespace igabem
