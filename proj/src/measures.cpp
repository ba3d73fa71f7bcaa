#include "primlat/measures.hpp"

#include <cmath>

#include "primlat/errors.hpp"

namespace primlat {

EmpiricalMeasure EmpiricalMeasure::torus(int n, int m) {
    EmpiricalMeasure e;
    e.tag_ = SpaceTag::Torus;
    e.n_ = n;
    e.m_ = m;
    e.stride_ = n * m;
    return e;
}

EmpiricalMeasure EmpiricalMeasure::torus_pair(int n, int m) {
    EmpiricalMeasure e;
    e.tag_ = SpaceTag::TorusPair;
    e.n_ = n;
    e.m_ = m;
    e.stride_ = 2 * n * m;
    return e;
}

EmpiricalMeasure EmpiricalMeasure::modular_domain() {
    EmpiricalMeasure e;
    e.tag_ = SpaceTag::ModularDomain;
    return e;
}

EmpiricalMeasure EmpiricalMeasure::shape_space(int m) {
    EmpiricalMeasure e;
    e.tag_ = SpaceTag::ShapeSpace;
    e.m_ = m;
    return e;
}

std::uint64_t EmpiricalMeasure::size() const {
    switch (tag_) {
        case SpaceTag::Torus:
        case SpaceTag::TorusPair:
            return dens_.size();
        case SpaceTag::ModularDomain:
            return plane_.size();
        case SpaceTag::ShapeSpace:
            return shapes_.size();
    }
    return 0;
}

void EmpiricalMeasure::add_torus_point(const TorusPoint& p) {
    if (tag_ != SpaceTag::Torus) throw SpaceMismatch();
    if (p.rows() != n_ || p.cols() != m_) throw SpaceMismatch();
    if (!fits_ll(p.den)) throw std::overflow_error("torus denominator too large");
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < m_; ++j) nums_.push_back(to_ll(p.nums.at(i, j)));
    dens_.push_back(to_ll(p.den));
}

void EmpiricalMeasure::add_torus_raw(const long long* nums, long long den) {
    if (tag_ != SpaceTag::Torus) throw SpaceMismatch();
    nums_.insert(nums_.end(), nums, nums + stride_);
    dens_.push_back(den);
}

void EmpiricalMeasure::add_pair(const TorusPoint& a, const TorusPoint& b) {
    if (tag_ != SpaceTag::TorusPair) throw SpaceMismatch();
    TorusPoint ca = a, cb = b;
    if (ca.den != cb.den) {
        // common denominator
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), ca.den.get_mpz_t(), cb.den.get_mpz_t());
        ca = TorusPoint((l / ca.den) * ca.nums, l);
        cb = TorusPoint((l / cb.den) * cb.nums, l);
    }
    if (!fits_ll(ca.den)) throw std::overflow_error("torus denominator too large");
    for (int i = 0; i < ca.rows(); ++i)
        for (int j = 0; j < ca.cols(); ++j) nums_.push_back(to_ll(ca.nums.at(i, j)));
    for (int i = 0; i < cb.rows(); ++i)
        for (int j = 0; j < cb.cols(); ++j) nums_.push_back(to_ll(cb.nums.at(i, j)));
    dens_.push_back(to_ll(ca.den));
}

void EmpiricalMeasure::add_domain_point(double x, double y) {
    if (tag_ != SpaceTag::ModularDomain) throw SpaceMismatch();
    plane_.push_back({x, y});
}

void EmpiricalMeasure::add_shape(ShapePoint s) {
    if (tag_ != SpaceTag::ShapeSpace) throw SpaceMismatch();
    shapes_.push_back(std::move(s));
}

double EmpiricalMeasure::weight(std::uint64_t i) const {
    if (weights_.empty()) return 1.0 / double(size());
    return weights_[i];
}

void EmpiricalMeasure::set_weights(std::vector<double> w) {
    if (w.size() != size()) throw InputError("weight count mismatch");
    weights_ = std::move(w);
}

bool EmpiricalMeasure::weights_ok(double tol) const {
    if (weights_.empty()) return size() > 0;
    double s = 0;
    for (double w : weights_) s += w;
    return std::fabs(s - 1.0) <= tol;
}

const long long* EmpiricalMeasure::torus_nums(std::uint64_t i) const {
    return nums_.data() + i * std::uint64_t(stride_);
}
long long EmpiricalMeasure::torus_den(std::uint64_t i) const { return dens_[i]; }
const long long* EmpiricalMeasure::pair_nums(std::uint64_t i) const {
    return nums_.data() + i * std::uint64_t(stride_);
}
const std::array<double, 2>& EmpiricalMeasure::domain_point(std::uint64_t i) const {
    return plane_[i];
}
const ShapePoint& EmpiricalMeasure::shape(std::uint64_t i) const { return shapes_[i]; }

EmpiricalMeasure measure_Pk(int n, int m, long long k, std::uint64_t budget) {
    EmpiricalMeasure mu = EmpiricalMeasure::torus(n, m);
    PrimitiveSet pk = PrimitiveSet::full(n, m, k, budget);
    std::vector<long long> buf(std::size_t(n) * m);
    pk.for_each([&](const IntMat& u) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) buf[std::size_t(i) * m + j] = to_ll(u.at(i, j));
        mu.add_torus_raw(buf.data(), k);
    });
    return mu;
}

EmpiricalMeasure inverse_pair_measure(long long k) {
    EmpiricalMeasure mu = EmpiricalMeasure::torus_pair(1, 1);
    mpz_class kz = zz(k);
    for (long long l = 1; l <= k; ++l) {
        mpz_class inv;
        if (!invert_mod(zz(l), kz, inv)) continue;
        IntMat a(1, 1), b(1, 1);
        a.at(0, 0) = zz(l % k);
        b.at(0, 0) = inv;
        mu.add_pair(TorusPoint(a, kz), TorusPoint(b, kz));
    }
    return mu;
}

EmpiricalMeasure domain_measure(const std::vector<std::array<double, 2>>& pts) {
    EmpiricalMeasure mu = EmpiricalMeasure::modular_domain();
    for (const auto& p : pts) mu.add_domain_point(p[0], p[1]);
    return mu;
}

EmpiricalMeasure shape_measure(const std::vector<ShapePoint>& shapes, int m) {
    EmpiricalMeasure mu = EmpiricalMeasure::shape_space(m);
    for (const auto& s : shapes) mu.add_shape(s);
    return mu;
}

}  // namespace primlat
