#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "primlat/homspace.hpp"
#include "primlat/primitive.hpp"
#include "primlat/shapes.hpp"

namespace primlat {

enum class SpaceTag { Torus, TorusPair, ModularDomain, ShapeSpace };

// Weighted sample list tagged with its ambient space. Torus points are kept
// as exact integer numerators over per-point denominators (64-bit at desk
// scale); domain and shape samples are floating point. Weights are uniform
// unless set explicitly, and always sum to 1 within 1e-12.
class EmpiricalMeasure {
public:
    static EmpiricalMeasure torus(int n, int m);
    static EmpiricalMeasure torus_pair(int n, int m);
    static EmpiricalMeasure modular_domain();
    static EmpiricalMeasure shape_space(int m);

    SpaceTag tag() const { return tag_; }
    int n() const { return n_; }
    int m() const { return m_; }
    std::uint64_t size() const;

    void add_torus_point(const TorusPoint& p);
    void add_torus_raw(const long long* nums, long long den);  // n*m entries
    void add_pair(const TorusPoint& a, const TorusPoint& b);
    void add_domain_point(double x, double y);
    void add_shape(ShapePoint s);

    // Weight of sample i (uniform unless explicit weights were set).
    double weight(std::uint64_t i) const;
    void set_weights(std::vector<double> w);
    bool weights_ok(double tol = 1e-12) const;

    const long long* torus_nums(std::uint64_t i) const;
    long long torus_den(std::uint64_t i) const;
    const long long* pair_nums(std::uint64_t i) const;  // 2*n*m entries
    const std::array<double, 2>& domain_point(std::uint64_t i) const;
    const ShapePoint& shape(std::uint64_t i) const;

private:
    SpaceTag tag_ = SpaceTag::Torus;
    int n_ = 0, m_ = 0;
    int stride_ = 0;
    std::vector<long long> nums_;
    std::vector<long long> dens_;
    std::vector<std::array<double, 2>> plane_;
    std::vector<ShapePoint> shapes_;
    std::vector<double> weights_;
};

// Normalized counting measure on P_k as rational points of the torus.
EmpiricalMeasure measure_Pk(int n, int m, long long k,
                            std::uint64_t budget = kDefaultBudget);

// Normalized counting measure on {(l/k, l*/k) : gcd(l,k)=1}.
EmpiricalMeasure inverse_pair_measure(long long k);

EmpiricalMeasure domain_measure(const std::vector<std::array<double, 2>>& pts);
EmpiricalMeasure shape_measure(const std::vector<ShapePoint>& shapes, int m);

}  // namespace primlat
