#include "primlat/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "primlat/errors.hpp"
#include "primlat/normal_forms.hpp"
#include "primlat/parallel.hpp"

namespace primlat {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Kahan {
    double sum = 0.0, c = 0.0;
    void add(double v) {
        double y = v - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

// e^{2 pi i r / k} for r in [0, k)
std::vector<std::complex<double>> root_table(long long k) {
    std::vector<std::complex<double>> t(k);
    for (long long r = 0; r < k; ++r)
        t[r] = std::polar(1.0, kTwoPi * double(r) / double(k));
    return t;
}

long long ll_inv_mod(long long a, long long k) {  // -1 if not invertible
    long long t = 0, newt = 1, r = k, newr = ((a % k) + k) % k;
    while (newr != 0) {
        long long q = r / newr;
        long long tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) return -1;
    return ((t % k) + k) % k;
}

long long ll_mod(long long a, long long k) { return ((a % k) + k) % k; }

std::vector<long long> freq_to_ll(const IntMat& f) {
    std::vector<long long> out;
    out.reserve(std::size_t(f.rows()) * f.cols());
    for (int i = 0; i < f.rows(); ++i)
        for (int j = 0; j < f.cols(); ++j) out.push_back(to_ll(f.at(i, j)));
    return out;
}

}  // namespace

mpz_class euler_phi(long long k) {
    mpz_class phi = 1;
    for (const auto& [p, e] : factorize(zz(k))) {
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e - 1);
        phi *= pe * (p - 1);
    }
    return phi;
}

std::complex<double> kloosterman(long long a, long long b, long long k) {
    if (k < 1) throw InputError("k must be positive");
    if (k == 1) return {1.0, 0.0};
    auto table = root_table(k);
    Kahan re, im;
    for (long long x = 1; x <= k; ++x) {
        long long xs = ll_inv_mod(x, k);
        if (xs < 0) continue;
        long long r = ll_mod(a * ll_mod(x, k) + b * xs, k);
        re.add(table[r].real());
        im.add(table[r].imag());
    }
    return {re.sum, im.sum};
}

double kloosterman_identity_check(long long a, long long b, long long k) {
    if (k < 2) throw InputError("k must be at least 2");
    std::complex<double> lhs = kloosterman(a, b, k);
    EmpiricalMeasure theta = inverse_pair_measure(k);
    // integral of e^{2 pi i (a t + b s)} against theta, through the measure path
    auto table = root_table(k);
    Kahan re, im;
    const std::uint64_t N = theta.size();
    for (std::uint64_t i = 0; i < N; ++i) {
        const long long* nums = theta.pair_nums(i);
        long long den = theta.torus_den(i);
        long long r = ll_mod(a * nums[0] + b * nums[1], den);
        // all denominators equal k here
        re.add(table[r * (k / den)].real());
        im.add(table[r * (k / den)].imag());
    }
    std::complex<double> integral(re.sum / double(N), im.sum / double(N));
    mpz_class phi = euler_phi(k);
    return std::abs(lhs - phi.get_d() * integral);
}

std::complex<double> weyl_sum(const EmpiricalMeasure& mu, const IntMat& freq) {
    if (mu.tag() != SpaceTag::Torus) throw SpaceMismatch();
    const int n = mu.n(), m = mu.m();
    if (freq.rows() != m || freq.cols() != n) throw SpaceMismatch();
    std::vector<long long> f = freq_to_ll(freq);  // f[a*n + c] = freq(a,c)
    // tr(freq u) = sum_{a,c} freq(a,c) u(c,a)
    std::vector<long long> coef(std::size_t(n) * m);
    for (int a = 0; a < m; ++a)
        for (int c = 0; c < n; ++c) coef[std::size_t(c) * m + a] = f[std::size_t(a) * n + c];

    std::map<long long, std::vector<std::complex<double>>> tables;
    Kahan re, im, wsum;
    const std::uint64_t N = mu.size();
    const int stride = n * m;
    for (std::uint64_t i = 0; i < N; ++i) {
        const long long* nums = mu.torus_nums(i);
        long long den = mu.torus_den(i);
        long long acc = 0;
        for (int t = 0; t < stride; ++t) acc += coef[t] * nums[t];
        long long r = ll_mod(acc, den);
        double w = mu.weight(i);
        auto it = tables.find(den);
        if (it == tables.end()) it = tables.emplace(den, root_table(den)).first;
        re.add(w * it->second[r].real());
        im.add(w * it->second[r].imag());
        wsum.add(w);
    }
    return {re.sum / wsum.sum, im.sum / wsum.sum};
}

WeylReport weyl_spectrum(const EmpiricalMeasure& mu, int cutoff) {
    const int n = mu.n(), m = mu.m();
    const int cells = n * m;
    std::uint64_t nfreq = 1;
    for (int i = 0; i < cells; ++i) nfreq *= std::uint64_t(2 * cutoff + 1);
    std::vector<std::vector<long long>> keys(nfreq);
    for (std::uint64_t idx = 0; idx < nfreq; ++idx) {
        std::uint64_t rest = idx;
        std::vector<long long> key(cells);
        for (int t = cells - 1; t >= 0; --t) {
            key[t] = (long long)(rest % std::uint64_t(2 * cutoff + 1)) - cutoff;
            rest /= std::uint64_t(2 * cutoff + 1);
        }
        keys[idx] = std::move(key);
    }
    std::vector<std::complex<double>> vals(nfreq);
    parallel_for_chunks(nfreq, 1, [&](std::uint64_t b, std::uint64_t e) {
        for (std::uint64_t idx = b; idx < e; ++idx) {
            IntMat f(m, n);
            for (int a = 0; a < m; ++a)
                for (int c = 0; c < n; ++c) f.at(a, c) = zz(keys[idx][std::size_t(a) * n + c]);
            vals[idx] = weyl_sum(mu, f);
        }
    });
    WeylReport rep;
    rep.cutoff = cutoff;
    for (std::uint64_t idx = 0; idx < nfreq; ++idx) {
        bool zero = std::all_of(keys[idx].begin(), keys[idx].end(),
                                [](long long v) { return v == 0; });
        if (!zero) rep.max_nonzero_modulus = std::max(rep.max_nonzero_modulus, std::abs(vals[idx]));
        rep.values.emplace(std::move(keys[idx]), vals[idx]);
    }
    return rep;
}

namespace {

// Flattened (u, u*) tables over GL_2(Z/k); int16 entries, so k < 2^15.
struct Gl2Tables {
    long long k = 0;
    std::uint64_t count = 0;
    std::vector<std::int16_t> v;  // count * 8: u11 u12 u21 u22 s11 s12 s21 s22

    static Gl2Tables build(long long k, std::optional<long long> det_class,
                           std::uint64_t budget) {
        if (k < 2 || k >= (1 << 15)) throw InputError("k out of range for the joint sum tables");
        double sz = std::pow(double(k), 4.0);
        if (sz > double(budget)) throw BudgetExceeded(std::uint64_t(sz), budget);
        std::vector<long long> inv(k, -1);
        for (long long x = 0; x < k; ++x) inv[x] = ll_inv_mod(x, k);
        long long want = det_class ? ll_mod(*det_class, k) : -1;
        Gl2Tables t;
        t.k = k;
        for (long long a = 0; a < k; ++a)
            for (long long b = 0; b < k; ++b)
                for (long long c = 0; c < k; ++c)
                    for (long long d = 0; d < k; ++d) {
                        long long det = ll_mod(a * d - b * c, k);
                        long long ji = inv[det];
                        if (ji < 0) continue;
                        if (want >= 0 && det != want) continue;
                        t.v.push_back(std::int16_t(a));
                        t.v.push_back(std::int16_t(b));
                        t.v.push_back(std::int16_t(c));
                        t.v.push_back(std::int16_t(d));
                        t.v.push_back(std::int16_t(ll_mod(ji * d, k)));
                        t.v.push_back(std::int16_t(ll_mod(-ji * b, k)));
                        t.v.push_back(std::int16_t(ll_mod(-ji * c, k)));
                        t.v.push_back(std::int16_t(ll_mod(ji * a, k)));
                        ++t.count;
                    }
        return t;
    }

    // histogram of (c . v(u)) mod k over all stored u
    std::complex<double> pair_sum(const std::array<long long, 8>& c,
                                  const std::vector<std::complex<double>>& table) const {
        long long bound = 0;
        for (long long ci : c) bound += std::abs(ci) * (k - 1);
        std::vector<std::uint64_t> hist(std::size_t(2 * bound + 1), 0);
        const std::int16_t* p = v.data();
        for (std::uint64_t i = 0; i < count; ++i, p += 8) {
            long long s = 0;
            for (int t = 0; t < 8; ++t) s += c[t] * p[t];
            ++hist[std::size_t(s + bound)];
        }
        Kahan re, im;
        for (long long s = -bound; s <= bound; ++s) {
            std::uint64_t h = hist[std::size_t(s + bound)];
            if (!h) continue;
            const auto& z = table[ll_mod(s, k)];
            re.add(double(h) * z.real());
            im.add(double(h) * z.imag());
        }
        return {re.sum / double(count), im.sum / double(count)};
    }
};

std::complex<double> joint_generic(long long k, const IntMat& A, const IntMat& B,
                                   std::optional<long long> det_class, std::uint64_t budget) {
    const int n = A.rows();
    double sz = std::pow(double(k), double(n) * n);
    if (sz > double(budget)) throw BudgetExceeded(std::uint64_t(sz), budget);
    auto table = root_table(k);
    mpz_class kz = zz(k);
    Kahan re, im;
    std::uint64_t cnt = 0;
    std::vector<long long> cell(std::size_t(n) * n, 0);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == n * n) {
            IntMat u(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) u.at(i, j) = zz(cell[std::size_t(i) * n + j]);
            auto us = mod_right_inverse(u, kz);
            if (!us) return;
            if (det_class && mod_floor(u.det(), kz) != mod_floor(zz(*det_class), kz)) return;
            mpz_class acc = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    acc += A.at(i, j) * u.at(j, i) + B.at(i, j) * us->at(j, i);
            long long r = to_ll(mod_floor(acc, kz));
            re.add(table[r].real());
            im.add(table[r].imag());
            ++cnt;
            return;
        }
        for (long long x = 0; x < k; ++x) {
            cell[pos] = x;
            rec(pos + 1);
        }
    };
    rec(0);
    if (cnt == 0) throw InputError("no invertible matrices mod k");
    return {re.sum / double(cnt), im.sum / double(cnt)};
}

}  // namespace

std::complex<double> joint_weyl_sum(long long k, const IntMat& freqA, const IntMat& freqB,
                                    std::optional<long long> det_class, std::uint64_t budget) {
    const int n = freqA.rows();
    if (freqA.cols() != n || freqB.rows() != n || freqB.cols() != n)
        throw InputError("frequency matrices must be square of equal size");
    if (n == 1) {
        // reduces to the Kloosterman sum over units (optionally one unit class)
        long long a = to_ll(freqA.at(0, 0)), b = to_ll(freqB.at(0, 0));
        if (det_class) {
            long long u = ll_mod(*det_class, k);
            long long us = ll_inv_mod(u, k);
            if (us < 0) throw NotInvertible();
            return std::polar(1.0, kTwoPi * double(ll_mod(a * u + b * us, k)) / double(k));
        }
        std::complex<double> kk = kloosterman(a, b, k);
        return kk / euler_phi(k).get_d();
    }
    if (n == 2) {
        Gl2Tables t = Gl2Tables::build(k, det_class, budget);
        auto table = root_table(k);
        std::array<long long, 8> c{};
        auto fa = freq_to_ll(freqA), fb = freq_to_ll(freqB);
        // tr(A u) pairs A(i,j) with u(j,i)
        c[0] = fa[0]; c[1] = fa[2]; c[2] = fa[1]; c[3] = fa[3];
        c[4] = fb[0]; c[5] = fb[2]; c[6] = fb[1]; c[7] = fb[3];
        return t.pair_sum(c, table);
    }
    return joint_generic(k, freqA, freqB, det_class, budget);
}

JointReport joint_weyl_spectrum(long long k, int cutoff, std::optional<long long> det_class,
                                std::uint64_t budget) {
    Gl2Tables tables = Gl2Tables::build(k, det_class, budget);
    auto rt = root_table(k);
    const std::uint64_t base = std::uint64_t(2 * cutoff + 1);
    std::uint64_t nfreq = 1;
    for (int i = 0; i < 8; ++i) nfreq *= base;
    std::vector<std::complex<double>> vals(nfreq);
    parallel_for_chunks(nfreq, 64, [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            std::uint64_t rest = idx;
            std::array<long long, 8> f{};
            for (int t = 7; t >= 0; --t) {
                f[t] = (long long)(rest % base) - cutoff;
                rest /= base;
            }
            bool zero = std::all_of(f.begin(), f.end(), [](long long v) { return v == 0; });
            if (zero) {
                vals[idx] = {1.0, 0.0};
                continue;
            }
            // f holds (A11,A12,A21,A22,B11,B12,B21,B22); pair with transposed cells
            std::array<long long, 8> c{f[0], f[2], f[1], f[3], f[4], f[6], f[5], f[7]};
            vals[idx] = tables.pair_sum(c, rt);
        }
    });
    JointReport rep;
    rep.cutoff = cutoff;
    for (std::uint64_t idx = 0; idx < nfreq; ++idx) {
        std::uint64_t rest = idx;
        std::vector<long long> key(8);
        for (int t = 7; t >= 0; --t) {
            key[t] = (long long)(rest % base) - cutoff;
            rest /= base;
        }
        bool zero = std::all_of(key.begin(), key.end(), [](long long v) { return v == 0; });
        if (!zero) rep.max_nonzero_modulus = std::max(rep.max_nonzero_modulus, std::abs(vals[idx]));
        rep.values.emplace(std::move(key), vals[idx]);
    }
    return rep;
}

bool w_coset_check(const IntMat& u, long long k, long long p, long long q) {
    if (u.rows() != 2 || u.cols() != 2) throw InputError("w_coset_check expects a 2x2 matrix");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), zz(p).get_mpz_t(), zz(q).get_mpz_t());
    if (g != 1) throw InputError("p and q must be coprime");
    mpz_class kz = zz(k);
    mpz_class det = mod_floor(u.det(), kz);
    mpz_class dinv;
    if (!invert_mod(det, kz, dinv)) throw NotInvertible();
    // adj and u* = det^{-1} adj(u)
    IntMat adj(2, 2);
    adj.at(0, 0) = u.at(1, 1);
    adj.at(0, 1) = -u.at(0, 1);
    adj.at(1, 0) = -u.at(1, 0);
    adj.at(1, 1) = u.at(0, 0);
    IntMat ustar = (dinv * adj).reduced_mod(kz);
    IntMat lhs = (zz(q) * ustar).reduced_mod(kz);
    IntMat rhs = (zz(p) * adj).reduced_mod(kz);
    return lhs == rhs;
}

double ball_volume(int m, double radius) {
    // pi^{m/2} / Gamma(m/2 + 1) * R^m
    return std::pow(std::numbers::pi, m / 2.0) / std::tgamma(m / 2.0 + 1.0) *
           std::pow(radius, m);
}

namespace {

// Counts nonzero points of quadratic norm <= bound in the lattice with the
// given exact Gram (Fincke-Pohst over a Cholesky factorization).
std::uint64_t count_points(const IntMat& gi, double bound) {
    const int n = gi.rows();
    std::vector<std::vector<double>> q(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) q[i][j] = gi.at(i, j).get_d();
    // q -> R^T R with R upper triangular (Cholesky)
    std::vector<std::vector<double>> r(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double s = q[i][j];
            for (int t = 0; t < i; ++t) s -= r[t][i] * r[t][j];
            if (i == j) {
                if (s <= 0) throw Singular();
                r[i][i] = std::sqrt(s);
            } else {
                r[i][j] = s / r[i][i];
            }
        }
    }
    std::uint64_t count = 0;
    std::vector<long long> c(n, 0);
    // enumerate coordinates from the last row upward
    std::function<void(int, double, double)> rec = [&](int i, double rem, double center0) {
        (void)center0;
        if (i < 0) {
            bool zero = std::all_of(c.begin(), c.end(), [](long long v) { return v == 0; });
            if (!zero) ++count;
            return;
        }
        // offset from already fixed coordinates
        double off = 0;
        for (int j = i + 1; j < n; ++j) off += r[i][j] * double(c[j]);
        double radius = std::sqrt(std::max(rem, 0.0)) / r[i][i];
        double center = -off / r[i][i];
        long long lo = (long long)std::ceil(center - radius - 1e-12);
        long long hi = (long long)std::floor(center + radius + 1e-12);
        for (long long x = lo; x <= hi; ++x) {
            c[i] = x;
            double term = r[i][i] * double(x) + off;
            rec(i - 1, rem - term * term, 0.0);
        }
        c[i] = 0;
    };
    rec(n - 1, bound * (1.0 + 1e-12) + 1e-9, 0.0);
    return count;
}

}  // namespace

double siegel_average(const std::vector<LatticeBasis>& lattices, double radius) {
    if (lattices.empty()) throw EmptyFamily();
    if (!(radius > 0)) throw InputError("radius must be positive");
    Kahan acc;
    for (const auto& lat : lattices) {
        IntMat gi = gram(lat.cols);
        // scale multiplies every vector by k^{-n/m}: norm^2 scales by k^{-2n/m}
        double s = lat.scale.value();
        double bound = (radius / s) * (radius / s);
        acc.add(double(count_points(gi, bound)));
    }
    return acc.sum / double(lattices.size());
}

DomainRegion DomainRegion::above(double y0) {
    DomainRegion r;
    r.kind = Kind::AboveY;
    r.y0 = y0;
    return r;
}

DomainRegion DomainRegion::box(double x0, double x1, double y0, double y1) {
    DomainRegion r;
    r.kind = Kind::Box;
    r.x0 = x0;
    r.x1 = x1;
    r.y0 = y0;
    r.y1 = y1;
    return r;
}

double domain_histogram(const EmpiricalMeasure& mu, const DomainRegion& region) {
    if (mu.tag() != SpaceTag::ModularDomain) throw SpaceMismatch();
    Kahan acc;
    const std::uint64_t N = mu.size();
    for (std::uint64_t i = 0; i < N; ++i) {
        const auto& p = mu.domain_point(i);
        bool in = false;
        if (region.kind == DomainRegion::Kind::AboveY) {
            in = p[1] >= region.y0;
        } else {
            in = p[0] >= region.x0 && p[0] <= region.x1 && p[1] >= region.y0 && p[1] <= region.y1;
        }
        if (in) acc.add(mu.weight(i));
    }
    return acc.sum;
}

double domain_reference_mass(const DomainRegion& region) {
    const double pi = std::numbers::pi;
    if (region.kind == DomainRegion::Kind::AboveY) {
        double y0 = region.y0;
        const double floor_y = std::sqrt(3.0) / 2.0;
        if (y0 <= floor_y) return 1.0;
        if (y0 >= 1.0) return 3.0 / (pi * y0);
        double xs = std::sqrt(1.0 - y0 * y0);
        return (3.0 / pi) * (2.0 * std::asin(xs) + (1.0 - 2.0 * xs) / y0);
    }
    if (region.y0 < 1.0) throw InputError("box reference requires y0 >= 1");
    double x0 = std::max(region.x0, -0.5), x1 = std::min(region.x1, 0.5);
    if (x1 <= x0) return 0.0;
    double inv1 = 1.0 / region.y0;
    double inv2 = region.y1 > 1e290 ? 0.0 : 1.0 / region.y1;
    return (3.0 / pi) * (x1 - x0) * (inv1 - inv2);
}

}  // namespace primlat
