#pragma once

#include <string>
#include <vector>

#include "tqf/checked.hpp"
#include "tqf/rational.hpp"

namespace tqf {

using Vec = std::vector<i64>;

// Dense row-major integer matrix. Dimensions stay desk-scale (rank <= ~8);
// all arithmetic is overflow-checked.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<i64> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
    Mat(int r, int c, std::vector<i64> data) : rows(r), cols(c), a(std::move(data)) {}

    i64& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    i64 operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool is_square() const { return rows == cols; }

    static Mat identity(int n);
    static Mat diag(const Vec& d);
    static Mat from_rows(const std::vector<Vec>& rows_in);
    static Mat from_cols(const std::vector<Vec>& cols_in);

    Vec col(int j) const;
    Vec row(int i) const;
    void set_col(int j, const Vec& v);

    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
    friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }
};

Mat transpose(const Mat& m);
Mat mul(const Mat& x, const Mat& y);
Vec mul(const Mat& m, const Vec& v);
Mat mul_scalar(const Mat& m, i64 c);
Mat add(const Mat& x, const Mat& y);
Mat neg(const Mat& m);

bool is_symmetric(const Mat& m);

// Exact determinant (fraction-free elimination).
i128 det(const Mat& m);

// Leading principal minors det(m[0..k) x [0..k)), k = 1..n.
std::vector<i128> leading_minors(const Mat& m);

// adj(m) with m * adj(m) = det(m) * I. Entries must fit in 64 bits.
Mat adjugate(const Mat& m);

// Inverse of a matrix with det = +-1.
Mat unimodular_inverse(const Mat& m);

// Solves m * x = rhs over the rationals; throws if m is singular.
std::vector<Rat> solve_rational(const Mat& m, const Vec& rhs);

i64 dot(const Vec& x, const Vec& y);

// x^t * g * y for a symmetric g.
i64 bilinear(const Mat& g, const Vec& x, const Vec& y);

Vec add(const Vec& x, const Vec& y);
Vec sub(const Vec& x, const Vec& y);
Vec neg(const Vec& v);
Vec mul_scalar(const Vec& v, i64 c);
bool is_zero(const Vec& v);

std::string to_string(const Mat& m);  // rows joined by ';', entries by ','
std::string to_string(const Vec& v);

}  // namespace tqf
