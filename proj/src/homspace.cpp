#include "primlat/homspace.hpp"

#include "primlat/errors.hpp"
#include "primlat/primitive.hpp"

namespace primlat {

TorusPoint::TorusPoint(IntMat numerators, mpz_class denominator)
    : nums(std::move(numerators)), den(std::move(denominator)) {
    if (den <= 0) throw InputError("torus denominator must be positive");
    nums = nums.reduced_mod(den);
}

TorusPoint TorusPoint::canonical() const {
    TorusPoint t(nums, den);
    mpz_class g = t.den;
    for (int i = 0; i < t.nums.rows() && g != 1; ++i)
        for (int j = 0; j < t.nums.cols() && g != 1; ++j)
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.nums.at(i, j).get_mpz_t());
    if (g > 1) {
        for (int i = 0; i < t.nums.rows(); ++i)
            for (int j = 0; j < t.nums.cols(); ++j) t.nums.at(i, j) /= g;
        t.den /= g;
    }
    return t;
}

bool TorusPoint::operator==(const TorusPoint& other) const {
    TorusPoint a = canonical(), b = other.canonical();
    return a.den == b.den && a.nums == b.nums;
}

namespace {

struct GammaBlocks {
    IntMat A, B, C, D;
};

GammaBlocks split_gamma(const IntMat& gamma, int n) {
    const int d = gamma.rows();
    const int m = d - n;
    return {gamma.block(0, 0, m, m), gamma.block(0, m, m, n), gamma.block(m, 0, n, m),
            gamma.block(m, m, n, n)};
}

// Raw completion from the Hermite transform of (u  kI); bottom n rows of the
// inverse equal (u  kI) and det = +1, but the blocks are not canonical yet.
IntMat raw_gamma(const IntMat& u, long long k) {
    if (!is_k_primitive(u, k)) throw NotPrimitive();
    const int n = u.rows(), m = u.cols(), d = n + m;
    IntMat bottom = hstack(u, zz(k) * IntMat::identity(n));
    HnfResult r = hnf(bottom);
    for (int i = 0; i < n; ++i)
        if (r.h.at(i, i) != 1) throw NotPrimitive();
    // delta = P * u_inv with the first n rows rotated to the bottom; its
    // inverse gamma = u * P^T is a column rotation of the Hermite transform.
    IntMat gamma(d, d);
    for (int c = 0; c < m; ++c)
        for (int rr = 0; rr < d; ++rr) gamma.at(rr, c) = r.u.at(rr, n + c);
    for (int c = 0; c < n; ++c)
        for (int rr = 0; rr < d; ++rr) gamma.at(rr, m + c) = r.u.at(rr, c);
    int sign = ((std::uint64_t(n) * m) % 2 == 0) ? 1 : -1;
    sign *= r.u_det;
    if (sign < 0) gamma.negate_col(0);  // flips det(delta) via its first row
    return gamma;
}

mpq_class q_ceil(const mpq_class& q) {
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return mpq_class(c);
}

}  // namespace

IntMat complete_gamma(const IntMat& u, long long k) {
    const int n = u.rows(), m = u.cols(), d = n + m;
    IntMat gamma = raw_gamma(u, k);
    GammaBlocks g = split_gamma(gamma, n);

    // Canonical A: Hermite form of the column lattice {a : u a = 0 mod k}.
    HnfResult ha = hnf(g.A);
    IntMat Acan = ha.h;
    IntMat Cw = g.C * ha.u;
    // Canonical fiber representative in (-1, 0]: shift B by Acan * ceil(Acan^{-1} B).
    RatMat f0 = solve_exact(Acan, g.B);
    IntMat shift(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) shift.at(i, j) = q_ceil(f0.at(i, j)).get_num();
    IntMat Bcan = g.B - Acan * shift;
    IntMat Dcan = Cw * shift + g.D;

    IntMat out(d, d);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) out.at(i, j) = Acan.at(i, j);
        for (int j = 0; j < n; ++j) out.at(i, m + j) = Bcan.at(i, j);
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) out.at(m + i, j) = Cw.at(i, j);
        for (int j = 0; j < n; ++j) out.at(m + i, m + j) = Dcan.at(i, j);
    }
    return out;
}

IntMat complete_gamma_sheared(const IntMat& u, long long k, const IntMat& shear) {
    const int n = u.rows(), m = u.cols(), d = n + m;
    if (shear.rows() != m || shear.cols() != n) throw InputError("shear must be m x n");
    IntMat gamma = raw_gamma(u, k);
    // gamma * [[I, -S],[0, I]]: another valid completion.
    IntMat out = gamma;
    for (int rr = 0; rr < d; ++rr)
        for (int j = 0; j < n; ++j) {
            mpz_class acc = 0;
            for (int i = 0; i < m; ++i) acc += gamma.at(rr, i) * shear.at(i, j);
            out.at(rr, m + j) = gamma.at(rr, m + j) - acc;
        }
    return out;
}

YPoint push_point(const IntMat& u, long long k) {
    const int n = u.rows(), m = u.cols();
    IntMat gamma = complete_gamma(u, k);
    GammaBlocks g = split_gamma(gamma, n);
    return YPoint{std::move(g.A), std::move(g.B), k, n, m};
}

LatticeBasis pi3(const YPoint& y) { return LatticeBasis{y.A, SymScale{y.k, y.n, y.m}}; }

bool verify_H_membership(const IntMat& u, long long k, const IntMat& gamma) {
    const int n = u.rows();
    if (gamma.rows() != gamma.cols() || gamma.rows() != n + u.cols()) return false;
    GammaBlocks g = split_gamma(gamma, n);
    mpz_class kz = zz(k);
    IntMat lower_left = u * g.A + kz * g.C;
    if (!lower_left.is_zero()) return false;
    IntMat lower_right = u * g.B + kz * g.D;
    return lower_right == IntMat::identity(n);
}

TorusPoint inverse_coset_point(const IntMat& u, long long k) {
    const int n = u.rows();
    if (u.cols() != n) throw InputError("inverse_coset_point requires a square matrix");
    auto ustar = mod_right_inverse(u, zz(k));
    if (!ustar) throw NotPrimitive();
    // Exactness certificate: conjugating the push back to the V-coset
    // representative must give an integral matrix of determinant one.
    mpz_class kz = zz(k);
    IntMat t = IntMat::identity(n) - (*ustar) * u;
    IntMat cert(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (t.at(i, j) % kz != 0) throw std::logic_error("inverse certificate not integral");
            cert.at(i, j) = t.at(i, j) / kz;
            cert.at(i, n + j) = -ustar->at(i, j);
            cert.at(n + i, j) = u.at(i, j);
            cert.at(n + i, n + j) = (i == j) ? kz : mpz_class(0);
        }
    if (cert.det() != 1) throw std::logic_error("inverse certificate not unimodular");
    return TorusPoint(*ustar, kz);
}

TorusPoint fiber_coordinate(const YPoint& y) {
    RatMat x = solve_exact(y.A, y.B);
    const int m = y.A.rows(), n = y.B.cols();
    mpz_class den = 1;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.at(i, j).get_den().get_mpz_t());
    IntMat nums(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            mpz_class scaled = x.at(i, j).get_num() * (den / x.at(i, j).get_den());
            nums.at(i, j) = mod_floor(scaled, den);
        }
    return TorusPoint(std::move(nums), den).canonical();
}

}  // namespace primlat
