#pragma once

#include <cmath>

#include "primlat/intmat.hpp"

namespace primlat {

// Scalar k^{-n/m}, kept symbolic so exact computations never evaluate it.
struct SymScale {
    long long k = 1;
    int n = 0;
    int m = 1;
    bool trivial() const { return k == 1 || n == 0; }
    double value() const { return std::pow(double(k), -double(n) / double(m)); }
};

// Basis of a rank-r lattice given by integer columns in some ambient
// dimension, together with an optional symbolic normalization scalar that
// multiplies every vector.
struct LatticeBasis {
    IntMat cols;
    SymScale scale;

    int ambient_dim() const { return cols.rows(); }
    int rank() const { return cols.cols(); }
};

// Exact Gram determinant of the integer part (scale excluded).
inline mpz_class covolume_squared_exact(const LatticeBasis& b) { return gram(b.cols).det(); }

}  // namespace primlat
