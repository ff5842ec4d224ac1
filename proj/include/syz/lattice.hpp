#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace syz {

using Integer = mpz_class;
using Rational = mpq_class;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rational make_rational(const Integer& num, const Integer& den);
inline Rational rat(long num, long den = 1) { return make_rational(num, den); }
Rational parse_rational(const std::string& text);
std::string to_string(const Integer& v);
std::string to_string(const Rational& v);

template <class T>
class Vec {
public:
    Vec() = default;
    explicit Vec(std::size_t n) : e_(n, T(0)) {}
    Vec(std::initializer_list<T> init) : e_(init) {}
    explicit Vec(std::vector<T> entries) : e_(std::move(entries)) {}

    std::size_t dim() const { return e_.size(); }
    T& operator[](std::size_t i) { return e_[i]; }
    const T& operator[](std::size_t i) const { return e_[i]; }
    const std::vector<T>& entries() const { return e_; }
    auto begin() const { return e_.begin(); }
    auto end() const { return e_.end(); }
    void push_back(const T& v) { e_.push_back(v); }

    bool is_zero() const {
        for (const auto& x : e_)
            if (x != 0) return false;
        return true;
    }

    friend bool operator==(const Vec& a, const Vec& b) { return a.e_ == b.e_; }
    friend bool operator<(const Vec& a, const Vec& b) { return a.e_ < b.e_; }

    friend Vec operator+(const Vec& a, const Vec& b) {
        check_same(a, b);
        Vec r(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
        return r;
    }
    friend Vec operator-(const Vec& a, const Vec& b) {
        check_same(a, b);
        Vec r(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
        return r;
    }
    friend Vec operator-(const Vec& a) {
        Vec r(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) r.e_[i] = -a.e_[i];
        return r;
    }
    friend Vec operator*(const T& s, const Vec& a) {
        Vec r(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) r.e_[i] = s * a.e_[i];
        return r;
    }

private:
    static void check_same(const Vec& a, const Vec& b) {
        if (a.dim() != b.dim()) throw Error("vector dimension mismatch");
    }
    std::vector<T> e_;
};

using IntVec = Vec<Integer>;
using RatVec = Vec<Rational>;

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
    if (a.dim() != b.dim()) throw Error("vector dimension mismatch");
    T s = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, T(0)) {}
    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        r_ = rows.size();
        c_ = r_ ? rows.begin()->size() : 0;
        for (const auto& row : rows) {
            if (row.size() != c_) throw Error("ragged matrix literal");
            for (const auto& x : row) a_.push_back(x);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static Matrix from_rows(const std::vector<Vec<T>>& rows, std::size_t cols) {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].dim() != cols) throw Error("row length mismatch");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }
    static Matrix from_columns(const std::vector<Vec<T>>& cols, std::size_t rows) {
        Matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].dim() != rows) throw Error("column length mismatch");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    Vec<T> row(std::size_t i) const {
        Vec<T> v(c_);
        for (std::size_t j = 0; j < c_; ++j) v[j] = (*this)(i, j);
        return v;
    }
    Vec<T> col(std::size_t j) const {
        Vec<T> v(r_);
        for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    Matrix transpose() const {
        Matrix t(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_square() const { return r_ == c_; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.c_ != b.r_) throw Error("matrix product dimension mismatch");
        Matrix p(a.r_, b.c_);
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t k = 0; k < a.c_; ++k) {
                if (a(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.c_; ++j) p(i, j) += a(i, k) * b(k, j);
            }
        return p;
    }
    friend Vec<T> operator*(const Matrix& a, const Vec<T>& v) {
        if (a.c_ != v.dim()) throw Error("matrix-vector dimension mismatch");
        Vec<T> r(a.r_);
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t j = 0; j < a.c_; ++j) r[i] += a(i, j) * v[j];
        return r;
    }
    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) throw Error("matrix sum dimension mismatch");
        Matrix s(a.r_, a.c_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) s.a_[i] = a.a_[i] + b.a_[i];
        return s;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) throw Error("matrix difference dimension mismatch");
        Matrix s(a.r_, a.c_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) s.a_[i] = a.a_[i] - b.a_[i];
        return s;
    }

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<T> a_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

RatVec to_rational(const IntVec& v);
RatMatrix to_rational(const IntMatrix& m);
bool is_integral(const RatVec& v);
bool is_integral(const RatMatrix& m);
// Throws if any entry has a nontrivial denominator.
IntVec to_integer(const RatVec& v);
IntMatrix to_integer(const RatMatrix& m);

// Bareiss fraction-free elimination.
Integer det(const IntMatrix& m);
Rational det(const RatMatrix& m);
bool is_unimodular(const IntMatrix& m);
std::size_t rank(const RatMatrix& m);
std::size_t rank(const IntMatrix& m);

// Inverse over Q; throws on singular input.
RatMatrix inverse(const RatMatrix& m);
// Inverse over Z; throws unless unimodular.
IntMatrix inverse_unimodular(const IntMatrix& m);

struct SolveResult {
    enum class Status { Unique, NoSolution, NonUnique };
    Status status = Status::NoSolution;
    RatVec x;
    bool ok() const { return status == Status::Unique; }
};

SolveResult solve_rational(const IntMatrix& a, const RatVec& b);
SolveResult solve_rational(const RatMatrix& a, const RatVec& b);

struct SmithInvariants {
    std::size_t rank = 0;
    std::vector<Integer> factors;
};

SmithInvariants smith_invariants(const IntMatrix& a);

// Row echelon form over Z with U*a = h, U unimodular.
struct RowEchelon {
    IntMatrix h;
    IntMatrix u;
    std::vector<std::size_t> pivot_cols;
};

RowEchelon integer_row_echelon(const IntMatrix& a);

// Solves x*a = d over Z (d in the integer row span of a).
std::optional<IntVec> solve_row_span(const IntMatrix& a, const IntVec& d);

Integer gcd_of(const IntVec& v);
IntVec primitive_part(const IntVec& v);
bool is_primitive(const IntVec& v);

// Completes linearly independent primitive-span vectors to a basis of Z^n.
// Columns of the result: the given vectors first, then the complement.
IntMatrix extend_to_basis(const std::vector<IntVec>& vs, std::size_t n);

// Feasibility of {x : eq_rows x = eq_rhs, le_rows x <= le_rhs} over Q by
// Gaussian substitution followed by Fourier-Motzkin elimination.
bool polyhedron_feasible(const std::vector<RatVec>& eq_rows, const std::vector<Rational>& eq_rhs,
                         const std::vector<RatVec>& le_rows, const std::vector<Rational>& le_rhs);

std::string format(const IntVec& v);
std::string format(const RatVec& v);
std::string format(const IntMatrix& m);
std::string format(const RatMatrix& m);

}  // namespace syz
