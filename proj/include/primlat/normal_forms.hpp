#pragma once

#include <optional>
#include <vector>

#include "primlat/intmat.hpp"

namespace primlat {

// Smith normal form: left * a * right = diag(divisors), with unimodular
// transforms and nonnegative divisors forming a divisibility chain
// (zeros placed last).
struct SnfResult {
    std::vector<mpz_class> divisors;
    IntMat left;
    IntMat right;
};

SnfResult snf(const IntMat& a);

// Divisors only; skips the transform bookkeeping.
std::vector<mpz_class> snf_divisors(const IntMat& a);

// Column-style Hermite normal form of a full-row-rank matrix (rows <= cols):
// a * u = h with u unimodular, h lower triangular, positive pivots on the
// diagonal, and entries left of each pivot reduced into [0, pivot).
// u_inv = u^{-1} is maintained alongside so callers can read off rows of
// u^{-1} without a separate inversion; u_det records det(u) in {+1,-1}.
struct HnfResult {
    IntMat h;
    IntMat u;
    IntMat u_inv;
    int u_det = 1;
};

HnfResult hnf(const IntMat& a);

// Basis of {x in Z^d : v x = 0} for a nonzero row vector v (1 x d).
// The returned d x (d-1) matrix has saturated column span.
IntMat integer_kernel(const IntMat& v);

// A matrix in SL_d(Z) whose bottom n rows equal `bottom` (n x d). Requires
// the row span of `bottom` to be primitive (all SNF divisors 1); the result
// is deterministic and has determinant +1.
IntMat unimodular_completion(const IntMat& bottom);

// v with u*v = I (mod k) and entries in [0, k), when it exists.
std::optional<IntMat> mod_right_inverse(const IntMat& u, const mpz_class& k);

}  // namespace primlat
