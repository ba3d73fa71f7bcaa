#include "primlat/hecke.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <string>

#include "primlat/errors.hpp"
#include "primlat/homspace.hpp"
#include "primlat/normal_forms.hpp"

namespace primlat {

mpz_class HeckeType::index() const {
    mpz_class p = 1;
    for (const auto& v : values) p *= v;
    return p;
}

bool HeckeType::chain_ok() const {
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        if (values[i] <= 0 || values[i + 1] % values[i] != 0) return false;
    }
    return !values.empty() && values.back() > 0;
}

HeckeType hecke_type(const IntMat& basis) {
    if (basis.rows() != basis.cols()) throw NotSquare();
    if (basis.det() == 0) throw Singular();
    return HeckeType{snf_divisors(basis)};
}

namespace {

std::vector<mpz_class> divisors_of(const mpz_class& n) {
    std::vector<mpz_class> divs{1};
    for (const auto& [p, e] : factorize(n)) {
        std::size_t sz = divs.size();
        mpz_class pe = 1;
        for (int i = 1; i <= e; ++i) {
            pe *= p;
            for (std::size_t j = 0; j < sz; ++j) divs.push_back(divs[j] * pe);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

// Recursive fill of lower-triangular Hermite matrices with fixed diagonal.
void fill_below(IntMat& h, int i, int j, std::vector<IntMat>& out) {
    const int m = h.rows();
    if (i == m) {
        out.push_back(h);
        return;
    }
    if (j == i) {
        fill_below(h, i + 1, 0, out);
        return;
    }
    mpz_class pivot = h.at(i, i);
    for (mpz_class v = 0; v < pivot; ++v) {
        h.at(i, j) = v;
        fill_below(h, i, j + 1, out);
    }
    h.at(i, j) = 0;
}

}  // namespace

mpz_class count_sublattices(int m, const mpz_class& index) {
    if (m == 1) return 1;
    mpz_class total = 0;
    for (const auto& d : divisors_of(index)) {
        mpz_class dm;
        mpz_pow_ui(dm.get_mpz_t(), d.get_mpz_t(), m - 1);
        total += dm * count_sublattices(m - 1, index / d);
    }
    return total;
}

std::vector<IntMat> enumerate_sublattices(int m, const mpz_class& index, std::uint64_t budget) {
    if (index < 1) throw InputError("index must be positive");
    mpz_class total = count_sublattices(m, index);
    if (!fits_ll(total) || std::uint64_t(to_ll(total)) > budget)
        throw BudgetExceeded(fits_ll(total) ? std::uint64_t(to_ll(total)) : UINT64_MAX, budget);

    // all ordered diagonal factorizations, then the free entries below
    std::vector<IntMat> out;
    std::vector<mpz_class> diag(m);
    std::function<void(int, const mpz_class&)> rec = [&](int pos, const mpz_class& rest) {
        if (pos == m - 1) {
            diag[pos] = rest;
            IntMat h(m, m);
            for (int i = 0; i < m; ++i) h.at(i, i) = diag[i];
            fill_below(h, 0, 0, out);
            return;
        }
        for (const auto& d : divisors_of(rest)) {
            diag[pos] = d;
            rec(pos + 1, rest / d);
        }
    };
    rec(0, index);
    return out;
}

std::vector<HeckeType> types_of_index(int m, const mpz_class& index) {
    std::vector<HeckeType> out;
    std::vector<mpz_class> cur(m);
    std::function<void(int, const mpz_class&, const mpz_class&)> rec =
        [&](int pos, const mpz_class& rest, const mpz_class& prev) {
            if (pos == m) {
                if (rest == 1) out.push_back(HeckeType{cur});
                return;
            }
            for (const auto& d : divisors_of(rest)) {
                if (d % prev != 0) continue;
                cur[pos] = d;
                rec(pos + 1, rest / d, d);
            }
        };
    rec(0, index, 1);
    return out;
}

std::vector<IntMat> enumerate_hecke_orbit(int m, const HeckeType& type, std::uint64_t budget) {
    if (int(type.values.size()) != m || !type.chain_ok())
        throw InputError("invalid elementary-divisor tuple");
    std::vector<IntMat> out;
    for (auto& h : enumerate_sublattices(m, type.index(), budget)) {
        if (hecke_type(h) == type) out.push_back(std::move(h));
    }
    return out;
}

Pi3ImageReport verify_pi3_image(int n, int m, long long k, std::uint64_t budget) {
    PrimitiveSet pk = PrimitiveSet::full(n, m, k, budget);
    std::map<std::string, std::uint64_t> counts;
    pk.for_each([&](const IntMat& u) {
        YPoint y = push_point(u, k);
        // push_point already returns the Hermite representative of A Z^m
        counts[y.A.str()] += 1;
    });

    HeckeType want;
    want.values.assign(m, 1);
    for (int i = m - n; i < m; ++i) want.values[i] = zz(k);
    auto orbit = enumerate_hecke_orbit(m, want, budget);

    Pi3ImageReport rep;
    rep.support_size = counts.size();
    rep.total_points = pk.size();
    if (counts.size() != orbit.size()) return rep;
    std::uint64_t mult = counts.begin()->second;
    for (const auto& [key, c] : counts)
        if (c != mult) return rep;
    for (const auto& h : orbit)
        if (counts.find(h.str()) == counts.end()) return rep;
    rep.orbit_match = true;
    rep.multiplicity = mult;
    return rep;
}

}  // namespace primlat
