#pragma once

// All geometric tolerances live here. Predicates are tolerance based, not
// exact; see the individual call sites for which one applies.
namespace sphlayout::tol {

// Two unit vectors closer than this (chord) are the same point.
inline constexpr double kCoincident = 1e-12;

// |a . (b x c)| below this: the three points lie on one great circle.
inline constexpr double kCollinear = 1e-12;

// Pivot threshold for the 2x2 weighted-circumcenter solve and the minimum
// norm of the planar circumcenter before projection.
inline constexpr double kLinearSolve = 1e-9;

// Minimum chord between hull input points.
inline constexpr double kDuplicateChord = 1e-10;

// Signed volume below which a point counts as lying on a hull face plane.
inline constexpr double kCoplanarVolume = 1e-12;

// Margin for the weighted local-regularity (wrong edge) test.
inline constexpr double kWrongEdge = 1e-12;

// Renormalization tolerance for UnitVec.
inline constexpr double kUnitNorm = 1e-12;

}  // namespace sphlayout::tol
