#pragma once

#include <cstdint>
#include <vector>

#include "primlat/intmat.hpp"
#include "primlat/primitive.hpp"

namespace primlat {

// Elementary-divisor tuple (l_1 | l_2 | ... | l_m) of a finite-index
// sublattice; the product is the index.
struct HeckeType {
    std::vector<mpz_class> values;
    bool operator==(const HeckeType&) const = default;

    mpz_class index() const;
    bool chain_ok() const;
};

HeckeType hecke_type(const IntMat& basis);

// One column-Hermite representative per index-`index` sublattice of Z^m.
std::vector<IntMat> enumerate_sublattices(int m, const mpz_class& index,
                                          std::uint64_t budget = kDefaultBudget);

// Count without materializing (classical divisor-sum recursion).
mpz_class count_sublattices(int m, const mpz_class& index);

std::vector<IntMat> enumerate_hecke_orbit(int m, const HeckeType& type,
                                          std::uint64_t budget = kDefaultBudget);

// All divisibility chains (l_1 | ... | l_m) with product `index`.
std::vector<HeckeType> types_of_index(int m, const mpz_class& index);

struct Pi3ImageReport {
    bool orbit_match = false;
    std::uint64_t multiplicity = 0;
    std::uint64_t support_size = 0;
    std::uint64_t total_points = 0;
};

// Pushes every u in P_k, projects to the lattice A Z^m, and compares the
// resulting multiset with the full Hecke orbit of type (1..1, k..k):
// the support must be the whole orbit and every member must appear with the
// same multiplicity.
Pi3ImageReport verify_pi3_image(int n, int m, long long k,
                                std::uint64_t budget = kDefaultBudget);

}  // namespace primlat
