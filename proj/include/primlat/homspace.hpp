#pragma once

#include "primlat/intmat.hpp"
#include "primlat/lattice.hpp"
#include "primlat/normal_forms.hpp"

namespace primlat {

// Exact rational point of a torus Mat(R)/Mat(Z): numerators over a common
// positive denominator, reduced into [0, den).
struct TorusPoint {
    IntMat nums;
    mpz_class den = 1;

    TorusPoint() = default;
    TorusPoint(IntMat numerators, mpz_class denominator);

    int rows() const { return nums.rows(); }
    int cols() const { return nums.cols(); }

    // Reduces num/den mod 1 and divides out the common gcd.
    TorusPoint canonical() const;
    bool operator==(const TorusPoint& other) const;
};

// a(k)-pushed point of the horospherical torus, represented exactly by the
// integer blocks (A, B) of the group element [[k^{-n/m} A, k^{-n/m} B],[0, I]].
// det(A) = k^n always.
struct YPoint {
    IntMat A;
    IntMat B;
    long long k = 1;
    int n = 0;
    int m = 1;
};

// gamma in SL_d(Z) such that gamma^{-1} has bottom n rows (u  kI).  The
// result is canonical: the top-left block A is the column Hermite form of
// the integer lattice {a : u a = 0 mod k} and A^{-1}B has entries in (-1,0].
// `shear` adds [[I,S],[0,I]]-type freedom on the completion side and is the
// alternate deterministic path used by independence checks; the projected
// data (lattice of A, fiber coordinate mod 1) do not depend on it.
IntMat complete_gamma(const IntMat& u, long long k);
IntMat complete_gamma_sheared(const IntMat& u, long long k, const IntMat& shear);

YPoint push_point(const IntMat& u, long long k);

// The m-dimensional lattice A Z^m with symbolic normalization k^{-n/m}.
LatticeBasis pi3(const YPoint& y);

// Exact check of the two integer identities equivalent to the bottom block
// row of a(k) g_{u/k} gamma being (0  I):  u A + k C = 0  and  u B + k D = I.
bool verify_H_membership(const IntMat& u, long long k, const IntMat& gamma);

// m = n only: the push lands in the opposite unipotent orbit at the point
// with torus coordinate u*/k, u* the inverse of u mod k. Also verifies the
// exactness certificate: the rational matrix moving one representative to
// the other is integral with determinant one.
TorusPoint inverse_coset_point(const IntMat& u, long long k);

// A^{-1} B mod 1 as an exact rational torus point (denominator divides k^n).
TorusPoint fiber_coordinate(const YPoint& y);

}  // namespace primlat
