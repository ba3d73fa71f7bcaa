#include "primlat/normal_forms.hpp"

#include <algorithm>
#include <cstdlib>

namespace primlat {

namespace {

// xgcd(a,b) -> g, x, y with x a + y b = g, g >= 0.
void xgcd(const mpz_class& a, const mpz_class& b, mpz_class& g, mpz_class& x, mpz_class& y) {
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

struct SnfWork {
    IntMat m, left, right;
    bool with_transforms;

    // rows i <- x*row_i + y*row_j ; row_j <- -(b/g)*row_i + (a/g)*row_j, det +1.
    // When a | b a plain subtraction is used so row i never changes
    // (gcdext may otherwise return coefficients that merely permute rows
    // and stall the reduction).
    void row_combine(int i, int j, const mpz_class& a, const mpz_class& b) {
        if (a != 0 && b % a == 0) {
            mpz_class q = b / a;
            for (int c = 0; c < m.cols(); ++c) m.at(j, c) -= q * m.at(i, c);
            if (with_transforms)
                for (int c = 0; c < left.cols(); ++c) left.at(j, c) -= q * left.at(i, c);
            return;
        }
        mpz_class g, x, y;
        xgcd(a, b, g, x, y);
        mpz_class ag = a / g, bg = b / g;
        for (int c = 0; c < m.cols(); ++c) {
            mpz_class mi = m.at(i, c), mj = m.at(j, c);
            m.at(i, c) = x * mi + y * mj;
            m.at(j, c) = ag * mj - bg * mi;
        }
        if (!with_transforms) return;
        for (int c = 0; c < left.cols(); ++c) {
            mpz_class li = left.at(i, c), lj = left.at(j, c);
            left.at(i, c) = x * li + y * lj;
            left.at(j, c) = ag * lj - bg * li;
        }
    }

    void col_combine(int i, int j, const mpz_class& a, const mpz_class& b) {
        if (a != 0 && b % a == 0) {
            mpz_class q = b / a;
            for (int r = 0; r < m.rows(); ++r) m.at(r, j) -= q * m.at(r, i);
            if (with_transforms)
                for (int r = 0; r < right.rows(); ++r) right.at(r, j) -= q * right.at(r, i);
            return;
        }
        mpz_class g, x, y;
        xgcd(a, b, g, x, y);
        mpz_class ag = a / g, bg = b / g;
        for (int r = 0; r < m.rows(); ++r) {
            mpz_class mi = m.at(r, i), mj = m.at(r, j);
            m.at(r, i) = x * mi + y * mj;
            m.at(r, j) = ag * mj - bg * mi;
        }
        if (!with_transforms) return;
        for (int r = 0; r < right.rows(); ++r) {
            mpz_class ri = right.at(r, i), rj = right.at(r, j);
            right.at(r, i) = x * ri + y * rj;
            right.at(r, j) = ag * rj - bg * ri;
        }
    }

    void add_row(int dst, int src) {  // row_dst += row_src
        for (int c = 0; c < m.cols(); ++c) m.at(dst, c) += m.at(src, c);
        if (with_transforms)
            for (int c = 0; c < left.cols(); ++c) left.at(dst, c) += left.at(src, c);
    }
};

std::vector<mpz_class> snf_core(const IntMat& a, bool with_transforms, IntMat* lout, IntMat* rout) {
    SnfWork w{a, IntMat::identity(a.rows()), IntMat::identity(a.cols()), with_transforms};
    int r = std::min(a.rows(), a.cols());
    for (int t = 0; t < r; ++t) {
        for (;;) {
            // move a nonzero entry of minimal magnitude to the pivot slot
            int pi = -1, pj = -1;
            mpz_class best;
            for (int i = t; i < w.m.rows(); ++i)
                for (int j = t; j < w.m.cols(); ++j) {
                    if (w.m.at(i, j) == 0) continue;
                    mpz_class v = abs(w.m.at(i, j));
                    if (pi < 0 || v < best) { best = v; pi = i; pj = j; }
                }
            if (pi < 0) goto done;  // all remaining entries zero
            if (pi != t) {
                w.m.swap_rows(t, pi);
                if (with_transforms) w.left.swap_rows(t, pi);
            }
            if (pj != t) {
                w.m.swap_cols(t, pj);
                if (with_transforms) w.right.swap_cols(t, pj);
            }
            bool dirty = false;
            for (int i = t + 1; i < w.m.rows(); ++i)
                if (w.m.at(i, t) != 0) { w.row_combine(t, i, w.m.at(t, t), w.m.at(i, t)); dirty = true; }
            for (int j = t + 1; j < w.m.cols(); ++j)
                if (w.m.at(t, j) != 0) { w.col_combine(t, j, w.m.at(t, t), w.m.at(t, j)); dirty = true; }
            if (dirty) {
                // column ops may have re-dirtied the pivot column
                bool clean = true;
                for (int i = t + 1; i < w.m.rows(); ++i)
                    if (w.m.at(i, t) != 0) clean = false;
                if (!clean) continue;
            }
            // pivot must divide every remaining entry for the chain to hold
            int bi = -1;
            for (int i = t + 1; i < w.m.rows() && bi < 0; ++i)
                for (int j = t + 1; j < w.m.cols(); ++j)
                    if (w.m.at(i, j) % w.m.at(t, t) != 0) { bi = i; break; }
            if (bi >= 0) { w.add_row(t, bi); continue; }
            break;
        }
        if (w.m.at(t, t) < 0) {
            w.m.negate_row(t);
            if (with_transforms) w.left.negate_row(t);
        }
    }
done:
    std::vector<mpz_class> d(r);
    for (int t = 0; t < r; ++t) d[t] = w.m.at(t, t);
    if (with_transforms) {
        *lout = std::move(w.left);
        *rout = std::move(w.right);
    }
    return d;
}

}  // namespace

SnfResult snf(const IntMat& a) {
    if (a.empty()) throw InputError("snf of empty matrix");
    SnfResult res;
    res.divisors = snf_core(a, true, &res.left, &res.right);
    return res;
}

std::vector<mpz_class> snf_divisors(const IntMat& a) {
    if (a.empty()) throw InputError("snf of empty matrix");
    return snf_core(a, false, nullptr, nullptr);
}

HnfResult hnf(const IntMat& a) {
    const int n = a.rows(), d = a.cols();
    if (n > d) throw RankDeficient();
    HnfResult res{a, IntMat::identity(d), IntMat::identity(d), 1};
    IntMat& m = res.h;
    IntMat& u = res.u;
    IntMat& v = res.u_inv;

    auto col_swap = [&](int i, int j) {
        if (i == j) return;
        m.swap_cols(i, j);
        u.swap_cols(i, j);
        v.swap_rows(i, j);
        res.u_det = -res.u_det;
    };
    auto col_negate = [&](int j) {
        m.negate_col(j);
        u.negate_col(j);
        v.negate_row(j);
        res.u_det = -res.u_det;
    };
    // cols (i,j): c_i <- x c_i + y c_j ; c_j <- -(b/g) c_i + (a/g) c_j (det +1);
    // the inverse transform acts on rows of v.
    auto col_combine = [&](int i, int j, const mpz_class& a0, const mpz_class& b0) {
        if (a0 != 0 && b0 % a0 == 0) {
            mpz_class q = b0 / a0;
            for (int r = 0; r < m.rows(); ++r) m.at(r, j) -= q * m.at(r, i);
            for (int r = 0; r < d; ++r) u.at(r, j) -= q * u.at(r, i);
            for (int c = 0; c < d; ++c) v.at(i, c) += q * v.at(j, c);
            return;
        }
        mpz_class g, x, y;
        xgcd(a0, b0, g, x, y);
        mpz_class ag = a0 / g, bg = b0 / g;
        for (int r = 0; r < m.rows(); ++r) {
            mpz_class mi = m.at(r, i), mj = m.at(r, j);
            m.at(r, i) = x * mi + y * mj;
            m.at(r, j) = ag * mj - bg * mi;
        }
        for (int r = 0; r < d; ++r) {
            mpz_class ui = u.at(r, i), uj = u.at(r, j);
            u.at(r, i) = x * ui + y * uj;
            u.at(r, j) = ag * uj - bg * ui;
        }
        for (int c = 0; c < d; ++c) {
            mpz_class vi = v.at(i, c), vj = v.at(j, c);
            v.at(i, c) = ag * vi + bg * vj;
            v.at(j, c) = -y * vi + x * vj;
        }
    };
    // c_j -= q c_i
    auto col_axpy = [&](int j, int i, const mpz_class& q) {
        if (q == 0) return;
        for (int r = 0; r < m.rows(); ++r) m.at(r, j) -= q * m.at(r, i);
        for (int r = 0; r < d; ++r) u.at(r, j) -= q * u.at(r, i);
        for (int c = 0; c < d; ++c) v.at(i, c) += q * v.at(j, c);
    };

    for (int i = 0; i < n; ++i) {
        int p = -1;
        for (int j = i; j < d; ++j)
            if (m.at(i, j) != 0) { p = j; break; }
        if (p < 0) throw RankDeficient();
        col_swap(i, p);
        for (int j = i + 1; j < d; ++j)
            if (m.at(i, j) != 0) col_combine(i, j, m.at(i, i), m.at(i, j));
        if (m.at(i, i) < 0) col_negate(i);
        for (int j = 0; j < i; ++j) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), m.at(i, j).get_mpz_t(), m.at(i, i).get_mpz_t());
            col_axpy(j, i, q);
        }
    }
    return res;
}

IntMat integer_kernel(const IntMat& v) {
    if (v.rows() != 1) throw InputError("integer_kernel expects a single row");
    if (v.is_zero()) throw ZeroVector();
    const int d = v.cols();
    HnfResult r = hnf(v);
    IntMat basis(d, d - 1);
    for (int i = 0; i < d; ++i)
        for (int j = 1; j < d; ++j) basis.at(i, j - 1) = r.u.at(i, j);
    return basis;
}

IntMat unimodular_completion(const IntMat& bottom) {
    const int n = bottom.rows(), d = bottom.cols();
    if (n > d) throw NotCompletable();
    HnfResult r;
    try {
        r = hnf(bottom);
    } catch (const RankDeficient&) {
        throw NotCompletable();
    }
    for (int i = 0; i < n; ++i)
        if (r.h.at(i, i) != 1) throw NotCompletable();
    // rows of u_inv start with the input rows; rotate them to the bottom
    IntMat delta(d, d);
    for (int t = 0; t < d - n; ++t)
        for (int c = 0; c < d; ++c) delta.at(t, c) = r.u_inv.at(n + t, c);
    for (int j = 0; j < n; ++j)
        for (int c = 0; c < d; ++c) delta.at(d - n + j, c) = r.u_inv.at(j, c);
    // det(delta) = sign(rotation) * det(u_inv)
    int sign = ((std::uint64_t(n) * (d - n)) % 2 == 0) ? 1 : -1;
    sign *= r.u_det;
    if (sign < 0) {
        if (d == n) throw NotCompletable();  // bottom is all of delta, det fixed at -1
        delta.negate_row(0);
    }
    return delta;
}

std::optional<IntMat> mod_right_inverse(const IntMat& u, const mpz_class& k) {
    const int n = u.rows(), m = u.cols();
    SnfResult s = snf(u);
    if (n > m) return std::nullopt;  // columns cannot span
    std::vector<mpz_class> dinv(n);
    for (int i = 0; i < n; ++i)
        if (!invert_mod(s.divisors[i], k, dinv[i])) return std::nullopt;
    // u = left^{-1} D right^{-1}  =>  v = right * D^+ * left
    IntMat dplus(m, n);
    for (int i = 0; i < n; ++i) dplus.at(i, i) = dinv[i];
    IntMat v = s.right * dplus * s.left;
    return v.reduced_mod(k);
}

}  // namespace primlat
