#include "primlat/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "primlat/errors.hpp"
#include "primlat/normal_forms.hpp"

namespace primlat {

DMat to_dmat(const IntMat& a) {
    DMat d{a.rows(), a.cols(), std::vector<double>(std::size_t(a.rows()) * a.cols())};
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) d.at(i, j) = a.at(i, j).get_d();
    return d;
}

LatticeBasis orthogonal_lattice(const IntMat& v) {
    if (v.rows() != 1) throw InputError("expected a row vector");
    if (v.is_zero()) throw ZeroVector();
    mpz_class g = 0;
    for (int j = 0; j < v.cols(); ++j)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.at(0, j).get_mpz_t());
    if (g != 1) throw NotPrimitive();
    return LatticeBasis{integer_kernel(v), SymScale{}};
}

LatticeBasis project_first_m(const LatticeBasis& basis) {
    const int d = basis.ambient_dim(), m = basis.rank();
    if (d != m + 1) throw InputError("projection expects corank one");
    IntMat proj = basis.cols.block(0, 0, m, m);
    if (proj.det() == 0) throw DegenerateProjection();
    return LatticeBasis{std::move(proj), basis.scale};
}

namespace {

double det_sym(const DMat& g) {
    // small symmetric determinant via LU without pivot scaling (m <= 4)
    int n = g.rows;
    DMat a = g;
    double det = 1.0;
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i)
            if (std::fabs(a.at(i, k)) > std::fabs(a.at(p, k))) p = i;
        if (a.at(p, k) == 0.0) return 0.0;
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(a.e[std::size_t(p) * n + j], a.e[std::size_t(k) * n + j]);
            det = -det;
        }
        det *= a.at(k, k);
        for (int i = k + 1; i < n; ++i) {
            double f = a.at(i, k) / a.at(k, k);
            for (int j = k; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
        }
    }
    return det;
}

// b_j <- b_j - q b_i on a Gram matrix.
void gram_axpy(DMat& g, int j, int i, double q) {
    if (q == 0) return;
    int n = g.rows;
    for (int t = 0; t < n; ++t) {
        g.at(j, t) -= q * g.at(i, t);
    }
    for (int t = 0; t < n; ++t) {
        g.at(t, j) -= q * g.at(t, i);
    }
}

void gram_swap(DMat& g, int i, int j) {
    int n = g.rows;
    for (int t = 0; t < n; ++t) std::swap(g.e[std::size_t(i) * n + t], g.e[std::size_t(j) * n + t]);
    for (int t = 0; t < n; ++t) std::swap(g.e[std::size_t(t) * n + i], g.e[std::size_t(t) * n + j]);
}

void lagrange_reduce(DMat& g) {
    for (int iter = 0; iter < 64; ++iter) {
        if (g.at(0, 0) > g.at(1, 1)) gram_swap(g, 0, 1);
        double q = std::round(g.at(0, 1) / g.at(0, 0));
        if (q == 0 && g.at(0, 0) <= g.at(1, 1)) break;
        gram_axpy(g, 1, 0, q);
    }
}

// Textbook LLL (delta = 0.99) acting on the Gram matrix only, followed by a
// greedy size-reduction sweep. Adequate for shape identity at 1e-9 for the
// m <= 4 scales used here.
void lll_reduce(DMat& g) {
    const double delta = 0.99;
    const int n = g.rows;
    auto gs = [&](std::vector<double>& bstar, std::vector<std::vector<double>>& mu) {
        // Gram-Schmidt data from the Gram matrix
        bstar.assign(n, 0.0);
        mu.assign(n, std::vector<double>(n, 0.0));
        std::vector<std::vector<double>> r(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j <= i; ++j) {
                double s = g.at(i, j);
                for (int t = 0; t < j; ++t) s -= mu[i][t] * r[j][t];
                r[i][j] = s;
                if (j < i) mu[i][j] = s / r[j][j];
            }
            bstar[i] = r[i][i];
        }
    };
    std::vector<double> bstar;
    std::vector<std::vector<double>> mu;
    int k = 1;
    int guard = 0;
    while (k < n && ++guard < 10000) {
        gs(bstar, mu);
        for (int j = k - 1; j >= 0; --j) {
            double q = std::round(mu[k][j]);
            if (q != 0) {
                gram_axpy(g, k, j, q);
                gs(bstar, mu);
            }
        }
        if (bstar[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1]) {
            ++k;
        } else {
            gram_swap(g, k, k - 1);
            k = std::max(k - 1, 1);
        }
    }
    // greedy size reduction sweep
    for (int pass = 0; pass < 4; ++pass) {
        bool changed = false;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                double q = std::round(g.at(i, j) / g.at(j, j));
                if (q != 0 && g.at(i, i) > g.at(i, i) - 2 * q * g.at(i, j) + q * q * g.at(j, j)) {
                    gram_axpy(g, i, j, q);
                    changed = true;
                }
            }
        if (!changed) break;
    }
}

// Enumerate signed permutations; keep images with ascending diagonal and
// pick the lexicographically largest off-diagonal sequence (first nonzero
// off-diagonal entries end up nonnegative).
ShapePoint canonicalize(const DMat& g) {
    const int n = g.rows;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<double> best;
    do {
        bool ascending = true;
        for (int i = 0; i + 1 < n; ++i)
            if (g.at(perm[i], perm[i]) > g.at(perm[i + 1], perm[i + 1]) + 1e-12) ascending = false;
        if (!ascending) continue;
        for (int smask = 0; smask < (1 << (n - 1)); ++smask) {
            std::vector<int> s(n, 1);
            for (int i = 1; i < n; ++i)
                if (smask & (1 << (i - 1))) s[i] = -1;
            std::vector<double> cand(std::size_t(n) * n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    cand[std::size_t(i) * n + j] = s[i] * s[j] * g.at(perm[i], perm[j]);
            // compare: diagonal first (ascending already), then off-diagonals, larger wins
            if (best.empty() || std::lexicographical_compare(best.begin(), best.end(),
                                                             cand.begin(), cand.end())) {
                best = std::move(cand);
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    ShapePoint sp;
    sp.m = n;
    sp.gram = std::move(best);
    return sp;
}

}  // namespace

ShapePoint shape_from_gram(DMat g) {
    const int n = g.rows;
    double d = det_sym(g);
    if (!(d > 0)) throw Singular();
    if (n >= 2) {
        if (n == 2)
            lagrange_reduce(g);
        else
            lll_reduce(g);
    }
    double scale = std::pow(det_sym(g), -1.0 / n);
    for (auto& v : g.e) v *= scale;
    return canonicalize(g);
}

ShapePoint lattice_shape(const DMat& columns) {
    const int n = columns.cols;
    DMat g{n, n, std::vector<double>(std::size_t(n) * n)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0;
            for (int r = 0; r < columns.rows; ++r) s += columns.at(r, i) * columns.at(r, j);
            g.at(i, j) = s;
        }
    return shape_from_gram(std::move(g));
}

ShapePoint lattice_shape(const LatticeBasis& basis) {
    IntMat gi = gram(basis.cols);
    if (gi.det() == 0) throw Singular();
    DMat g = to_dmat(gi);  // scale cancels in the det-1 normalization
    return shape_from_gram(std::move(g));
}

double shape_distance(const ShapePoint& a, const ShapePoint& b) {
    if (a.m != b.m) throw SpaceMismatch();
    const int n = a.m;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = 1e300;
    do {
        for (int smask = 0; smask < (1 << (n - 1)); ++smask) {
            std::vector<int> s(n, 1);
            for (int i = 1; i < n; ++i)
                if (smask & (1 << (i - 1))) s[i] = -1;
            double acc = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double d = a.at(i, j) - s[i] * s[j] * b.at(perm[i], perm[j]);
                    acc += d * d;
                }
            best = std::min(best, acc);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::sqrt(best);
}

std::array<double, 2> fundamental_domain_coords_gram(double g00, double g01, double g11) {
    double det = g00 * g11 - g01 * g01;
    if (!(det > 0) || !(g00 > 0)) throw Singular();
    double x = g01 / g00;
    double y = std::sqrt(det) / g00;
    for (int iter = 0; iter < 512; ++iter) {
        x -= std::round(x);
        double n2 = x * x + y * y;
        if (n2 < 1.0 - 1e-13) {
            x = -x / n2;
            y = y / n2;
            continue;
        }
        break;
    }
    // boundary ties toward x >= 0
    if (std::fabs(x + 0.5) < 1e-12) x = 0.5;
    if (std::fabs(x * x + y * y - 1.0) < 1e-12 && x < 0) x = -x;
    if (std::fabs(x) < 1e-15) x = 0.0;
    return {x, y};
}

std::array<double, 2> fundamental_domain_coords(const LatticeBasis& basis) {
    if (basis.rank() != 2) throw NotTwoDim();
    IntMat gi = gram(basis.cols);
    return fundamental_domain_coords_gram(gi.at(0, 0).get_d(), gi.at(0, 1).get_d(),
                                          gi.at(1, 1).get_d());
}

FaceWindow FaceWindow::full_face(int d) {
    FaceWindow w;
    w.dim = d;
    w.box.assign(d - 1, {0.0, 1.0});
    return w;
}

FaceWindow FaceWindow::boxed(int d, const std::vector<std::array<double, 2>>& b) {
    FaceWindow w;
    w.dim = d;
    w.box = b;
    if (int(b.size()) != d - 1) throw InputError("window box must have d-1 intervals");
    return w;
}

std::vector<double> FaceWindow::center() const {
    std::vector<double> c(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) c[i] = 0.5 * (box[i][0] + box[i][1]);
    return c;
}

std::vector<IntMat> face_points(int d, long long k, const FaceWindow& window,
                                std::uint64_t budget) {
    if (int(window.box.size()) != d - 1) throw InputError("window does not match dimension");
    const int m = d - 1;
    int fixed = window.fixed_coord < 0 ? d - 1 : window.fixed_coord;
    std::vector<long long> lo(m), hi(m);
    std::uint64_t total = 1;
    for (int i = 0; i < m; ++i) {
        double a = window.box[i][0], b = window.box[i][1];
        if (!(a <= b) || a < 0 || b > 1) throw InputError("window box must lie in [0,1]");
        lo[i] = (long long)std::ceil(a * double(k) - 1e-9);
        hi[i] = (b >= 1.0) ? k : (long long)std::ceil(b * double(k) - 1e-9) - 1;
        if (hi[i] < lo[i]) return {};
        total *= std::uint64_t(hi[i] - lo[i] + 1);
        if (total > budget) throw BudgetExceeded(total, budget);
    }
    std::vector<IntMat> out;
    std::vector<long long> u(m, 0);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == m) {
            mpz_class g = zz(k);
            for (int i = 0; i < m; ++i)
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), zz(u[i]).get_mpz_t());
            if (g != 1) return;
            IntMat v(1, d);
            int t = 0;
            for (int c = 0; c < d; ++c) {
                if (c == fixed)
                    v.at(0, c) = zz(window.sign * k);
                else
                    v.at(0, c) = zz(u[t++]);
            }
            out.push_back(std::move(v));
            return;
        }
        for (long long x = lo[pos]; x <= hi[pos]; ++x) {
            u[pos] = x;
            rec(pos + 1);
        }
    };
    rec(0);
    return out;
}

SchmidtResult schmidt_experiment(int d, long long k, const FaceWindow& window,
                                 std::uint64_t budget) {
    const int m = d - 1;
    SchmidtResult res;
    res.vectors = face_points(d, k, window, budget);
    std::vector<double> c = window.center();
    res.shapes.reserve(res.vectors.size());
    res.lifted_shapes.reserve(res.vectors.size());
    for (const auto& v : res.vectors) {
        LatticeBasis lam = orthogonal_lattice(v);
        ShapePoint s = lattice_shape(lam);
        LatticeBasis p = project_first_m(lam);
        // lift through the section onto the hyperplane orthogonal to the
        // window center (w, t) with t = -<c, w>
        DMat lifted{m + 1, m, std::vector<double>(std::size_t(m + 1) * m)};
        for (int j = 0; j < m; ++j) {
            double t = 0;
            for (int i = 0; i < m; ++i) {
                double w = p.cols.at(i, j).get_d();
                lifted.at(i, j) = w;
                t += c[i] * w;
            }
            lifted.at(m, j) = -t;
        }
        ShapePoint sl = lattice_shape(lifted);
        res.max_distortion = std::max(res.max_distortion, shape_distance(s, sl));
        if (m == 2) {
            res.domain_coords.push_back(fundamental_domain_coords(lam));
        }
        res.shapes.push_back(std::move(s));
        res.lifted_shapes.push_back(std::move(sl));
    }
    return res;
}

ShellResult sphere_shell_experiment(int d, const mpz_class& r_squared, std::uint64_t budget) {
    if (r_squared < 1) throw InputError("r_squared must be >= 1");
    ShellResult res;
    long long rmax = (long long)std::floor(std::sqrt(r_squared.get_d()) + 1e-9);
    std::uint64_t total = 1;
    for (int i = 0; i < d; ++i) {
        total *= std::uint64_t(2 * rmax + 1);
        if (total > budget) throw BudgetExceeded(total, budget);
    }
    std::vector<long long> v(d, 0);
    std::function<void(int, mpz_class)> rec = [&](int pos, mpz_class rest) {
        if (pos == d) {
            if (rest != 0) return;
            mpz_class g = 0;
            for (int i = 0; i < d; ++i)
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), zz(v[i]).get_mpz_t());
            if (g != 1) return;
            IntMat vm(1, d);
            for (int i = 0; i < d; ++i) vm.at(0, i) = zz(v[i]);
            LatticeBasis lam = orthogonal_lattice(vm);
            res.shapes.push_back(lattice_shape(lam));
            if (d == 3) res.domain_coords.push_back(fundamental_domain_coords(lam));
            res.vectors.push_back(std::move(vm));
            return;
        }
        for (long long x = -rmax; x <= rmax; ++x) {
            mpz_class x2 = zz(x) * zz(x);
            if (x2 > rest) continue;
            v[pos] = x;
            rec(pos + 1, rest - x2);
        }
    };
    rec(0, r_squared);
    return res;
}

}  // namespace primlat
