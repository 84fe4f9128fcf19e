#pragma once

#include <complex>
#include <span>
#include <vector>

namespace qpj {

using cplx = std::complex<double>;

// A point of the d-torus, coordinates in [0,1).
using TorusPoint = std::vector<double>;

// Fractional part in [0,1).
double frac(double t);

// exp(2*pi*i*t), exact at quarter turns so that zeros of sampling functions
// located at x = 1/2 evaluate to exactly zero.
cplx unit_phase(double t);

// frac(x + n*alpha) with the product n*alpha carried in double-double.
double shift_coordinate(double x, double alpha, long n);

// Distance on R/Z, in [0, 1/2].
double circle_distance(double a, double b);

// Max over coordinates of circle_distance.
double torus_distance(std::span<const double> a, std::span<const double> b);

}  // namespace qpj
