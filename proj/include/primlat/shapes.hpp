#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "primlat/intmat.hpp"
#include "primlat/lattice.hpp"
#include "primlat/primitive.hpp"

namespace primlat {

// Covolume-normalized, reduction-canonicalized Gram matrix of a lattice:
// a concrete representative of its shape (lattice modulo rotation and
// scaling). det = 1 within 1e-9.
struct ShapePoint {
    int m = 0;
    std::vector<double> gram;  // m*m, symmetric, row-major

    double at(int i, int j) const { return gram[std::size_t(i) * m + j]; }
};

// Small dense double matrix, columns are basis vectors.
struct DMat {
    int rows = 0, cols = 0;
    std::vector<double> e;
    double& at(int i, int j) { return e[std::size_t(i) * cols + j]; }
    double at(int i, int j) const { return e[std::size_t(i) * cols + j]; }
};

DMat to_dmat(const IntMat& a);

// Z^d intersected with the hyperplane orthogonal to a primitive vector v.
// covolume^2 = |v|^2 (checked by the tests through the exact Gram).
LatticeBasis orthogonal_lattice(const IntMat& v);

// Drop the last coordinate of every basis vector of a rank-m lattice in R^d
// (d = m+1). For v = (u, k) with u k-primitive the image has covolume k.
LatticeBasis project_first_m(const LatticeBasis& basis);

ShapePoint lattice_shape(const LatticeBasis& basis);
ShapePoint lattice_shape(const DMat& columns);
ShapePoint shape_from_gram(DMat g);

// Symmetric comparison score: Frobenius distance between the det-1 reduced
// Grams, minimized over the finite signed-permutation tie orbit. Zero iff
// the canonical forms agree. This is a documented surrogate score, not an
// intrinsic metric on the shape space.
double shape_distance(const ShapePoint& a, const ShapePoint& b);

// Point of the standard modular fundamental domain |x| <= 1/2, x^2+y^2 >= 1
// representing a two-dimensional shape; ties resolved toward x >= 0.
std::array<double, 2> fundamental_domain_coords(const LatticeBasis& basis);
std::array<double, 2> fundamental_domain_coords_gram(double g00, double g01, double g11);

// Axis box inside a face of the sup-norm unit sphere. Coordinates are
// half-open [lo, hi) except that hi = 1 closes at the face boundary, so a
// partition of the face partitions the integer points exactly.
struct FaceWindow {
    int dim = 3;                                  // ambient dimension d
    int fixed_coord = -1;                         // -1 means last coordinate
    int sign = +1;                                // which of the two parallel faces
    std::vector<std::array<double, 2>> box;       // m = d-1 intervals within [0,1]

    static FaceWindow full_face(int d);
    static FaceWindow boxed(int d, const std::vector<std::array<double, 2>>& b);
    std::vector<double> center() const;           // reference point (m coords)
};

// Primitive integer vectors v with the fixed coordinate equal to sign*k and
// the remaining coordinates u satisfying u/k in the window box.
// Lexicographic order.
std::vector<IntMat> face_points(int d, long long k, const FaceWindow& window,
                                std::uint64_t budget = kDefaultBudget);

struct SchmidtResult {
    std::vector<IntMat> vectors;
    std::vector<ShapePoint> shapes;          // [Lambda_v]
    std::vector<ShapePoint> lifted_shapes;   // [S(p(Lambda_v))] for the window's center
    std::vector<std::array<double, 2>> domain_coords;  // m == 2 only
    double max_distortion = 0.0;
};

// Shapes of the orthogonal lattices over a face window, paired with the
// shapes obtained by projecting to the first m coordinates and lifting back
// with the linear section through the window center; reports the largest
// shape discrepancy between the two routes.
SchmidtResult schmidt_experiment(int d, long long k, const FaceWindow& window,
                                 std::uint64_t budget = kDefaultBudget);

struct ShellResult {
    std::vector<IntMat> vectors;
    std::vector<ShapePoint> shapes;
    std::vector<std::array<double, 2>> domain_coords;  // d == 3 only
};

// Shapes of orthogonal lattices over the primitive vectors of a sphere
// |v|^2 = r_squared. Empty shells are allowed.
ShellResult sphere_shell_experiment(int d, const mpz_class& r_squared,
                                    std::uint64_t budget = kDefaultBudget);

}  // namespace primlat
