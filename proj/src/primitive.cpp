#include "primlat/primitive.hpp"

#include <numeric>
#include <random>

#include "primlat/errors.hpp"

namespace primlat {

namespace {

// gcd over Z of the determinantal divisor D_n (product of all SNF divisors)
// with k decides primitivity; for small n the n x n minors are cheaper than
// a full SNF.
mpz_class minor_gcd(const IntMat& u) {
    const int n = u.rows(), m = u.cols();
    std::vector<int> sel(n);
    for (int i = 0; i < n; ++i) sel[i] = i;
    mpz_class g = 0;
    for (;;) {
        IntMat sub(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) sub.at(i, j) = u.at(i, sel[j]);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), sub.det().get_mpz_t());
        int i = n - 1;
        while (i >= 0 && sel[i] == m - n + i) --i;
        if (i < 0) break;
        ++sel[i];
        for (int j = i + 1; j < n; ++j) sel[j] = sel[j - 1] + 1;
    }
    return g;
}

long long binom(int m, int n) {
    long long r = 1;
    for (int i = 0; i < n; ++i) r = r * (m - i) / (i + 1);
    return r;
}

}  // namespace

bool is_k_primitive(const IntMat& u, long long k) {
    if (k == 1) return true;
    const int n = u.rows(), m = u.cols();
    if (n > m) return false;
    mpz_class dn;
    if (binom(m, n) <= 20 && n <= 3) {
        dn = minor_gcd(u);
    } else {
        dn = 1;
        for (const auto& d : snf_divisors(u)) dn *= d;
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), dn.get_mpz_t(), zz(k).get_mpz_t());
    return g == 1;
}

std::vector<std::pair<mpz_class, int>> factorize(const mpz_class& k) {
    const long long kFactorSteps = 2'000'000;
    std::vector<std::pair<mpz_class, int>> out;
    mpz_class rest = k;
    mpz_class p = 2;
    long long steps = 0;
    while (rest > 1) {
        if (p * p > rest) {
            out.emplace_back(rest, 1);
            break;
        }
        if (rest % p == 0) {
            int e = 0;
            while (rest % p == 0) {
                rest /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
        p = (p == 2) ? mpz_class(3) : mpz_class(p + 2);
        if (++steps > kFactorSteps) throw FactoringBudgetExceeded();
    }
    return out;
}

mpz_class count_Pk(int n, int m, long long k) {
    if (k < 1) throw InputError("k must be positive");
    // multiplicative over prime powers: over Z/p^e the count is
    // p^{(e-1)nm} * prod_{i=0}^{n-1} (p^m - p^i)
    mpz_class total = 1;
    for (const auto& [p, e] : factorize(zz(k))) {
        mpz_class pm;
        mpz_pow_ui(pm.get_mpz_t(), p.get_mpz_t(), m);
        mpz_class local = 1;
        mpz_class pi = 1;
        for (int i = 0; i < n; ++i) {
            local *= (pm - pi);
            pi *= p;
        }
        mpz_class lift;
        mpz_pow_ui(lift.get_mpz_t(), p.get_mpz_t(), (unsigned long)(e - 1) * n * m);
        total *= local * lift;
    }
    return total;
}

IntMat lambda_act(const IntMat& delta1, const IntMat& delta2, const IntMat& u, long long k) {
    if (delta1.det() != 1 || delta2.det() != 1) throw NotUnimodular();
    IntMat d1inv = inverse_unimodular(delta1);
    return (delta2 * u * d1inv).reduced_mod(zz(k));
}

DivisorTuple orbit_tuple(const IntMat& u, long long k) {
    if (!is_k_primitive(u, k)) throw NotPrimitive();
    const int n = u.rows(), m = u.cols();
    DivisorTuple t;
    t.values.assign(n, 1);
    if (n == m && k > 1) t.values[n - 1] = mod_floor(u.det(), zz(k));
    return t;
}

PrimitiveSet PrimitiveSet::full(int n, int m, long long k, std::uint64_t budget) {
    if (n < 1 || m < 1 || k < 1) throw InputError("dimensions and k must be positive");
    PrimitiveSet s;
    s.n_ = n;
    s.m_ = m;
    s.k_ = k;
    s.mode_ = Mode::Full;
    // raw residue count k^{nm}, guarded against the budget
    mpz_class raw;
    mpz_pow_ui(raw.get_mpz_t(), zz(k).get_mpz_t(), (unsigned long)n * m);
    if (!fits_ll(raw) || std::uint64_t(to_ll(raw)) > budget)
        throw BudgetExceeded(fits_ll(raw) ? std::uint64_t(to_ll(raw)) : UINT64_MAX, budget);
    s.raw_count_ = std::uint64_t(to_ll(raw));
    mpz_class c = count_Pk(n, m, k);
    s.count_ = std::uint64_t(to_ll(c));
    return s;
}

PrimitiveSet PrimitiveSet::sampled(int n, int m, long long k, std::uint64_t count, std::uint64_t seed) {
    if (n < 1 || m < 1 || k < 1) throw InputError("dimensions and k must be positive");
    if (count < 1) throw InputError("sample count must be positive");
    PrimitiveSet s;
    s.n_ = n;
    s.m_ = m;
    s.k_ = k;
    s.mode_ = Mode::Sampled;
    s.count_ = count;
    s.seed_ = seed;
    std::mt19937_64 rng(seed);
    s.samples_.reserve(count * std::size_t(n) * m);
    IntMat u(n, m);
    for (std::uint64_t t = 0; t < count; ++t) {
        for (;;) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < m; ++j) u.at(i, j) = zz(uniform_below(rng, k));
            if (is_k_primitive(u, k)) break;
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) s.samples_.push_back(to_ll(u.at(i, j)));
    }
    return s;
}

std::uint64_t PrimitiveSet::size() const { return count_; }

IntMat PrimitiveSet::decode(std::uint64_t index) const {
    IntMat u(n_, m_);
    const int nm = n_ * m_;
    for (int t = nm - 1; t >= 0; --t) {
        u.at(t / m_, t % m_) = zz((long long)(index % std::uint64_t(k_)));
        index /= std::uint64_t(k_);
    }
    return u;
}

void PrimitiveSet::for_each(const std::function<void(const IntMat&)>& fn) const {
    if (mode_ == Mode::Full) {
        for (std::uint64_t idx = 0; idx < raw_count_; ++idx) {
            IntMat u = decode(idx);
            if (is_k_primitive(u, k_)) fn(u);
        }
    } else {
        const int nm = n_ * m_;
        for (std::uint64_t t = 0; t < count_; ++t) {
            IntMat u(n_, m_);
            for (int i = 0; i < nm; ++i) u.at(i / m_, i % m_) = zz(samples_[t * nm + i]);
            fn(u);
        }
    }
}

std::vector<IntMat> PrimitiveSet::materialize() const {
    std::vector<IntMat> out;
    out.reserve(count_);
    for_each([&](const IntMat& u) { out.push_back(u); });
    return out;
}

}  // namespace primlat
