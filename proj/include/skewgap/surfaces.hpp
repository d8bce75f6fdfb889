#pragma once

#include "skewgap/mesh.hpp"
#include "skewgap/profile.hpp"

#include <vector>

namespace skewgap {

/// Regular icosahedron inscribed in the sphere of the given radius.
TriangleMesh icosahedron(double radius = 1.0);

/// Icosahedron with `subdivisions` rounds of 1-to-4 midpoint refinement, every
/// vertex projected onto the sphere. V = 10 * 4^subdivisions + 2.
TriangleMesh icosphere(int subdivisions, double radius = 1.0);

/// Axis-aligned ellipsoid with semi-axes (a, b, c), built from an icosphere.
TriangleMesh ellipsoid(double a, double b, double c, int subdivisions);

/// Round torus with major radius R and tube radius r on an n_major x n_minor grid.
TriangleMesh torus(double major_radius, double minor_radius, int n_major, int n_minor);

/// Connected sum of two tori, joined by a short triangular tube. Genus 2.
TriangleMesh genus_two();

/// Generator curve together with the analytic potential V = H^2 - K sampled at
/// each profile point. Revolving it reproduces the surface; the spectral module
/// builds its separable operator from it.
struct RevolutionSurface {
    ProfileCurve profile;
    std::vector<double> potential;
    Closure closure = Closure::capped;
};

/// Half circle from the south to the north pole, uniformly sampled in angle.
RevolutionSurface sphere_of_revolution(double radius, int n_samples);

/// Spheroid with equatorial semi-axis a and polar semi-axis c.
RevolutionSurface spheroid_of_revolution(double a, double c, int n_samples);

/// Closed meridian circle of the round torus (first sample repeated at the end).
RevolutionSurface torus_of_revolution(double major_radius, double minor_radius, int n_samples);

} // namespace skewgap
