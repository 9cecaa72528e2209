#ifndef HYPTESS_CONSTANTS_HPP
#define HYPTESS_CONSTANTS_HPP

#include <cmath>

// All geometric tolerances live here so kernels and tests agree on them.
namespace hyptess::tol {

// Unit-norm requirement on stored hyperplane normals.
inline constexpr double kUnitNorm = 1e-12;

// A point x counts as lying on a hyperplane when |<x,u> - tau| <= on_plane(x).
// Solved vertices carry backward error ~1e-14 relative, so this still leaves
// two orders of headroom while keeping spurious degeneracy refusals rare in
// dense d=3 samples (the pair count grows like cells * hyperplanes).
inline double on_plane(double point_norm) { return 1e-10 * (1.0 + point_norm); }

// Two enumerated vertices closer than this are the same vertex.
inline constexpr double kVertexDedup = 1e-9;

// Relative slack for the cell-volume partition check.
inline constexpr double kVolumeConservationRel = 1e-6;

// Enclosing-ball containment slack: every point within radius + this.
inline constexpr double kMinBallSlack = 1e-9;

// Smallest pivot accepted by the dense solver before a system is
// declared singular (scaled by the matrix max-entry).
inline constexpr double kSingularPivot = 1e-12;

// Circumcenter recentering requirement on construction targets.
inline constexpr double kRecenter = 1e-9;

// Default tolerance for general-position diagnostics.
inline constexpr double kGeneralPosition = 1e-9;

}  // namespace hyptess::tol

#endif
