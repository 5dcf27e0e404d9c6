#pragma once

#include "tsteer/field.hpp"

namespace tsteer {

// Spectral partial derivative along axis 0 (x1) or 1 (x2).
ScalarField derivative(const ScalarField& f, int axis);

ScalarField laplacian(const ScalarField& f);

// Unique zero-mean solution of -lap(phi) = z. Requires mean(z) = 0.
ScalarField solve_poisson(const ScalarField& z);

// Div-curl operator: the unique g with curl g = z, div g = 0, integral g = A.
// g = (d2 phi, -d1 phi) + A / (4 pi^2) with -lap(phi) = z.
VectorField2 biot_savart(const ScalarField& z, Vec2 A);

// curl g = d1 g2 - d2 g1 (average-free by construction).
ScalarField curl(const VectorField2& u);

ScalarField divergence(const VectorField2& u);

// Sobolev norm ||f||_m via Parseval with the (1 + |l|^2)^m weight;
// ||f||_0 is the L2 norm on [0, 2*pi)^2. Supported orders m <= 4.
double sobolev_norm(const ScalarField& f, int m);

double sobolev_norm(const VectorField2& u, int m);

inline double l2_norm(const ScalarField& f) { return sobolev_norm(f, 0); }

// Relative check that the curl of u vanishes spectrally.
double divergence_residual(const VectorField2& u);

}  // namespace tsteer
