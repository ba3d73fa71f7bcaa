#pragma once

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "primlat/lattice.hpp"
#include "primlat/measures.hpp"

namespace primlat {

// K(a,b,k) = sum over units x mod k of e^{2 pi i (a x + b x*)/k}.
// Phases are exact residues mod k; one trigonometric table entry per
// residue; accumulation is compensated in ascending-x order.
std::complex<double> kloosterman(long long a, long long b, long long k);

// | K(a,b,k) - phi(k) * integral of e^{2 pi i (a t + b s)} d theta(k) |
// where theta(k) is the normalized counting measure on {(l/k, l*/k)}.
// The integral goes through the empirical-measure path, so the two sides
// are computed independently.
double kloosterman_identity_check(long long a, long long b, long long k);

mpz_class euler_phi(long long k);

// Sum of w_j e^{2 pi i tr(freq u_j)} over an empirical measure on a torus;
// freq is m x n integer, points are exact rationals.
std::complex<double> weyl_sum(const EmpiricalMeasure& mu, const IntMat& freq);

struct WeylReport {
    std::map<std::vector<long long>, std::complex<double>> values;  // key: flattened freq
    double max_nonzero_modulus = 0.0;
    int cutoff = 0;
};

// All frequencies with sup-norm <= cutoff.
WeylReport weyl_spectrum(const EmpiricalMeasure& mu, int cutoff);

// Normalized sum over u in GL_n(Z/k) (optionally only det u = det_class) of
// e^{2 pi i (tr(freqA u) + tr(freqB u*)) / k}, u* the inverse mod k.
std::complex<double> joint_weyl_sum(long long k, const IntMat& freqA, const IntMat& freqB,
                                    std::optional<long long> det_class = std::nullopt,
                                    std::uint64_t budget = kDefaultBudget);

struct JointReport {
    std::map<std::vector<long long>, std::complex<double>> values;  // freqA|freqB flattened
    double max_nonzero_modulus = 0.0;
    int cutoff = 0;
};

// Every nonzero frequency pair with entries in [-cutoff, cutoff]; shares one
// pass of precomputed (u, u*) tables across all pairs. n = 2 only.
JointReport joint_weyl_spectrum(long long k, int cutoff,
                                std::optional<long long> det_class = std::nullopt,
                                std::uint64_t budget = kDefaultBudget);

// Membership of (u, u*) mod k in the invariant graph subspace
//   W = {(q M, p adj M)} with gcd(p,q) = 1:
// equivalent to the entrywise congruence q u* = p adj(u) (mod k), i.e.
// p det(u) = q (mod k).
bool w_coset_check(const IntMat& u, long long k, long long p, long long q);

// Mean number of nonzero lattice points of euclidean norm <= radius over a
// family of covolume-one lattices; the flat reference is the ball volume.
double siegel_average(const std::vector<LatticeBasis>& lattices, double radius);

double ball_volume(int m, double radius);

// Region of the modular fundamental domain.
struct DomainRegion {
    enum class Kind { AboveY, Box } kind = Kind::AboveY;
    double y0 = 2.0;
    double x0 = -0.5, x1 = 0.5, y1 = 1e300;

    static DomainRegion above(double y0);
    static DomainRegion box(double x0, double x1, double y0, double y1);
};

// Empirical mass of the region under a modular-domain measure.
double domain_histogram(const EmpiricalMeasure& mu, const DomainRegion& region);

// Closed-form mass of the region under the normalized hyperbolic measure
// (3/pi) dx dy / y^2 on the fundamental domain.
double domain_reference_mass(const DomainRegion& region);

}  // namespace primlat
