#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "primlat/intmat.hpp"
#include "primlat/normal_forms.hpp"

namespace primlat {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

// Columns of u mod k span (Z/kZ)^n; equivalently a right inverse mod k
// exists; equivalently all SNF divisors are coprime to k.
bool is_k_primitive(const IntMat& u, long long k);

mpz_class count_Pk(int n, int m, long long k);

// Factorization helper shared with count_Pk; trial division with a step
// budget, FactoringBudgetExceeded beyond it.
std::vector<std::pair<mpz_class, int>> factorize(const mpz_class& k);

// delta2 * u * delta1^{-1} reduced mod k. Requires det(delta1)=det(delta2)=1.
IntMat lambda_act(const IntMat& delta1, const IntMat& delta2, const IntMat& u, long long k);

// Elementary-divisors tuple with entries coprime to k, each the canonical
// representative in [1,k). For n = m the tuple is (1,...,1, det u mod k),
// which classifies the orbit of u under the two-sided SL x SL action mod k;
// for n < m that action is transitive on k-primitive matrices and the tuple
// is (1,...,1).
struct DivisorTuple {
    std::vector<mpz_class> values;
    bool operator==(const DivisorTuple&) const = default;
};

DivisorTuple orbit_tuple(const IntMat& u, long long k);

// The k-primitive residue classes P_k in [0,k)^{n x m}, either enumerated in
// full (row-major lexicographic order) or sampled.
//
// Sampling is rejection from the uniform distribution on all residues; the
// acceptance probability is |P_k| / k^{nm} = prod over prime powers p^e | k
// of prod_{i=0}^{n-1} (1 - p^{i-m}), bounded below by a product of factors
// (1 - p^{-(m-n+1)}), so the expected number of rejected draws per sample is
// modest for m >= n (worst at n = m, p = 2: about one extra draw each).
class PrimitiveSet {
public:
    enum class Mode { Full, Sampled };

    static PrimitiveSet full(int n, int m, long long k, std::uint64_t budget = kDefaultBudget);
    static PrimitiveSet sampled(int n, int m, long long k, std::uint64_t count, std::uint64_t seed);

    int n() const { return n_; }
    int m() const { return m_; }
    long long k() const { return k_; }
    Mode mode() const { return mode_; }
    std::uint64_t seed() const { return seed_; }

    // Number of matrices the iteration yields.
    std::uint64_t size() const;

    // Visit every member in deterministic order.
    void for_each(const std::function<void(const IntMat&)>& fn) const;

    // Decode a full-enumeration residue index (row-major base-k digits).
    IntMat decode(std::uint64_t index) const;
    std::uint64_t raw_count() const { return raw_count_; }  // k^{nm} in full mode

    std::vector<IntMat> materialize() const;

private:
    PrimitiveSet() = default;
    int n_ = 0, m_ = 0;
    long long k_ = 1;
    Mode mode_ = Mode::Full;
    std::uint64_t raw_count_ = 0;
    std::uint64_t count_ = 0;
    std::uint64_t seed_ = 0;
    std::vector<long long> samples_;  // flattened sampled entries
};

// Deterministic uniform draw in [0, bound) from a 64-bit generator;
// rejection keeps the stream identical across platforms.
template <class Rng>
long long uniform_below(Rng& rng, long long bound) {
    const std::uint64_t b = std::uint64_t(bound);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
    for (;;) {
        std::uint64_t r = rng();
        if (r < limit) return (long long)(r % b);
    }
}

}  // namespace primlat
