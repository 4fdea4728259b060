#pragma once

#include "igabem/types.hpp"

namespace igabem {

/// Helmholtz fundamental solution G_kappa(x,y) = e^{i kappa r}/(4 pi r).
Complex sl_kernel(double kappa, double r);

/// Normal derivative dG/dn_y for r_vec = x - y and normal nu at y.  With
/// `unit_normal` false, nu is the non-normalized surface normal and the
/// result is premultiplied by |nu| (i.e. it already contains the area factor).
Complex dl_kernel(double kappa, const Vec3& r_vec, const Vec3& nu, bool unit_normal = true);

/// c(x) for a smooth closed surface.
inline double c_coefficient() { return 0.5; }

// Smooth cofactors of the real/imaginary kernel pieces (all functions of
// r^2, hence smooth in the surface parameters; the 1/(4 pi) factor and the
// singular factors 1/r, (r.nu)/r^3, (r.nu)/r^2 are applied by the caller).

/// cos(kappa r): cofactor of the weakly singular real single-layer piece.
double sl_real_cofactor(double kappa, double r);

/// sin(kappa r)/r: the entire (removable) imaginary single-layer piece,
/// with limit kappa at r = 0.
double sl_imag_smooth(double kappa, double r);

/// cos(kappa r) + kappa r sin(kappa r): cofactor of the real double-layer piece.
double dl_real_cofactor(double kappa, double r);

/// sin(kappa r)/r - kappa cos(kappa r): cofactor of the imaginary double-layer
/// piece; has a double zero at r = 0.
double dl_imag_cofactor(double kappa, double r);

}  // namespace igabem
