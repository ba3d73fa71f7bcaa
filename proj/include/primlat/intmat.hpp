#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "primlat/errors.hpp"

namespace primlat {

// long long -> mpz (gmpxx has no long long overloads; LP64 long is wide enough)
inline mpz_class zz(long long v) { return mpz_class(static_cast<long>(v)); }

// Dense matrix over Z with arbitrary-precision entries, row-major.
// All arithmetic in this module is exact; no floating point anywhere.
class IntMat {
public:
    IntMat() = default;
    IntMat(int rows, int cols) : rows_(rows), cols_(cols), e_(std::size_t(rows) * cols) {}

    static IntMat identity(int n);
    static IntMat zeros(int rows, int cols) { return IntMat(rows, cols); }
    static IntMat from_rows(std::initializer_list<std::initializer_list<long long>> rows);
    static IntMat row_vector(const std::vector<long long>& v);
    static IntMat diagonal(const std::vector<mpz_class>& d);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    mpz_class& at(int i, int j) { return e_[std::size_t(i) * cols_ + j]; }
    const mpz_class& at(int i, int j) const { return e_[std::size_t(i) * cols_ + j]; }

    IntMat transpose() const;
    IntMat block(int r0, int c0, int nr, int nc) const;
    // Entries reduced into [0, k).
    IntMat reduced_mod(const mpz_class& k) const;
    bool is_zero() const;

    // Exact determinant by fraction-free (Bareiss) elimination.
    mpz_class det() const;

    void swap_rows(int i, int j);
    void swap_cols(int i, int j);
    void negate_row(int i);
    void negate_col(int j);

    std::string str() const;

    friend IntMat operator*(const IntMat& a, const IntMat& b);
    friend IntMat operator+(const IntMat& a, const IntMat& b);
    friend IntMat operator-(const IntMat& a, const IntMat& b);
    friend IntMat operator-(const IntMat& a);
    friend IntMat operator*(const mpz_class& c, const IntMat& a);
    friend bool operator==(const IntMat& a, const IntMat& b);

private:
    int rows_ = 0, cols_ = 0;
    std::vector<mpz_class> e_;
};

IntMat hstack(const IntMat& a, const IntMat& b);
IntMat vstack(const IntMat& a, const IntMat& b);

// Gram matrix b^T b of the columns of b.
IntMat gram(const IntMat& b);

// Nonnegative residue in [0, m).
mpz_class mod_floor(const mpz_class& a, const mpz_class& m);

// x*a ≡ gcd(a,m) pattern: returns inverse of a mod m if gcd(a,m)=1.
bool invert_mod(const mpz_class& a, const mpz_class& m, mpz_class& out);

// Minimal exact rational matrix used by the exact solvers.
class RatMat {
public:
    RatMat() = default;
    RatMat(int rows, int cols) : rows_(rows), cols_(cols), e_(std::size_t(rows) * cols) {}
    explicit RatMat(const IntMat& a);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    mpq_class& at(int i, int j) { return e_[std::size_t(i) * cols_ + j]; }
    const mpq_class& at(int i, int j) const { return e_[std::size_t(i) * cols_ + j]; }

    bool is_integral() const;
    IntMat to_int() const;  // throws std::logic_error on non-integral entries

private:
    int rows_ = 0, cols_ = 0;
    std::vector<mpq_class> e_;
};

// Solves a x = b exactly over Q (a square nonsingular). Throws Singular.
RatMat solve_exact(const IntMat& a, const IntMat& b);

// Inverse of a matrix in GL_n(Z); throws NotUnimodular if |det| != 1.
IntMat inverse_unimodular(const IntMat& a);

// True if val fits a signed 64-bit integer.
bool fits_ll(const mpz_class& v);
long long to_ll(const mpz_class& v);

}  // namespace primlat
