#include "primlat/intmat.hpp"

#include <sstream>

namespace primlat {

IntMat IntMat::identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
    int r = int(rows.size());
    int c = r ? int(rows.begin()->size()) : 0;
    IntMat m(r, c);
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (long long v : row) m.at(i, j++) = zz(v);
        ++i;
    }
    return m;
}

IntMat IntMat::row_vector(const std::vector<long long>& v) {
    IntMat m(1, int(v.size()));
    for (int j = 0; j < int(v.size()); ++j) m.at(0, j) = zz(v[j]);
    return m;
}

IntMat IntMat::diagonal(const std::vector<mpz_class>& d) {
    IntMat m(int(d.size()), int(d.size()));
    for (int i = 0; i < int(d.size()); ++i) m.at(i, i) = d[i];
    return m;
}

IntMat IntMat::transpose() const {
    IntMat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMat IntMat::block(int r0, int c0, int nr, int nc) const {
    IntMat b(nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) b.at(i, j) = at(r0 + i, c0 + j);
    return b;
}

IntMat IntMat::reduced_mod(const mpz_class& k) const {
    IntMat r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = mod_floor(at(i, j), k);
    return r;
}

bool IntMat::is_zero() const {
    for (const auto& v : e_)
        if (v != 0) return false;
    return true;
}

void IntMat::swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void IntMat::swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void IntMat::negate_row(int i) {
    for (int c = 0; c < cols_; ++c) at(i, c) = -at(i, c);
}

void IntMat::negate_col(int j) {
    for (int r = 0; r < rows_; ++r) at(r, j) = -at(r, j);
}

std::string IntMat::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? ",[" : "[");
        for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

IntMat operator*(const IntMat& a, const IntMat& b) {
    IntMat r(a.rows_, b.cols_);
    mpz_class t;
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            const mpz_class& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols_; ++j) {
                t = aik * b.at(k, j);
                r.at(i, j) += t;
            }
        }
    return r;
}

IntMat operator+(const IntMat& a, const IntMat& b) {
    IntMat r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
    return r;
}

IntMat operator-(const IntMat& a, const IntMat& b) {
    IntMat r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
    return r;
}

IntMat operator-(const IntMat& a) {
    IntMat r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = -a.e_[i];
    return r;
}

IntMat operator*(const mpz_class& c, const IntMat& a) {
    IntMat r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = c * a.e_[i];
    return r;
}

bool operator==(const IntMat& a, const IntMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
}

IntMat hstack(const IntMat& a, const IntMat& b) {
    IntMat r(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
    }
    return r;
}

IntMat vstack(const IntMat& a, const IntMat& b) {
    IntMat r(a.rows() + b.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.at(a.rows() + i, j) = b.at(i, j);
    return r;
}

IntMat gram(const IntMat& b) { return b.transpose() * b; }

mpz_class mod_floor(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

bool invert_mod(const mpz_class& a, const mpz_class& m, mpz_class& out) {
    if (m == 1) {
        out = 0;
        return true;
    }
    return mpz_invert(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) != 0;
}

mpz_class IntMat::det() const {
    if (rows_ != cols_) throw NotSquare();
    int n = rows_;
    if (n == 0) return 1;
    IntMat m = *this;
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                mpz_class num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                mpz_divexact(m.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            m.at(i, k) = 0;
        }
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : mpz_class(-m.at(n - 1, n - 1));
}

RatMat::RatMat(const IntMat& a) : rows_(a.rows()), cols_(a.cols()), e_(std::size_t(rows_) * cols_) {
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) at(i, j) = mpq_class(a.at(i, j));
}

bool RatMat::is_integral() const {
    for (const auto& v : e_)
        if (v.get_den() != 1) return false;
    return true;
}

IntMat RatMat::to_int() const {
    IntMat r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            if (at(i, j).get_den() != 1) throw std::logic_error("non-integral rational matrix");
            r.at(i, j) = at(i, j).get_num();
        }
    return r;
}

RatMat solve_exact(const IntMat& a, const IntMat& b) {
    if (a.rows() != a.cols()) throw NotSquare();
    int n = a.rows(), w = b.cols();
    RatMat m(n, n + w);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m.at(i, j) = mpq_class(a.at(i, j));
        for (int j = 0; j < w; ++j) m.at(i, n + j) = mpq_class(b.at(i, j));
    }
    for (int k = 0; k < n; ++k) {
        int p = -1;
        for (int i = k; i < n; ++i)
            if (m.at(i, k) != 0) { p = i; break; }
        if (p < 0) throw Singular();
        if (p != k)
            for (int j = 0; j < n + w; ++j) std::swap(m.at(k, j), m.at(p, j));
        mpq_class inv = 1 / m.at(k, k);
        for (int j = k; j < n + w; ++j) m.at(k, j) *= inv;
        for (int i = 0; i < n; ++i) {
            if (i == k || m.at(i, k) == 0) continue;
            mpq_class f = m.at(i, k);
            for (int j = k; j < n + w; ++j) m.at(i, j) -= f * m.at(k, j);
        }
    }
    RatMat x(n, w);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < w; ++j) x.at(i, j) = m.at(i, n + j);
    return x;
}

IntMat inverse_unimodular(const IntMat& a) {
    mpz_class d = a.det();
    if (d != 1 && d != -1) throw NotUnimodular();
    RatMat inv = solve_exact(a, IntMat::identity(a.rows()));
    return inv.to_int();
}

bool fits_ll(const mpz_class& v) { return v.fits_slong_p() || mpz_sizeinbase(v.get_mpz_t(), 2) <= 62; }

long long to_ll(const mpz_class& v) {
    if (!fits_ll(v)) throw std::overflow_error("value does not fit 64 bits");
    // get_si is enough on LP64; route through string for portability of rare big cases
    if (v.fits_slong_p()) return v.get_si();
    return std::stoll(v.get_str());
}

}  // namespace primlat
