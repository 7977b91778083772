#include "tqf/matrix.hpp"

#include <sstream>
#include <utility>

namespace tqf {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat Mat::diag(const Vec& d) {
    Mat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows_in) {
    Mat m(static_cast<int>(rows_in.size()), rows_in.empty() ? 0 : static_cast<int>(rows_in[0].size()));
    for (int i = 0; i < m.rows; ++i) {
        if (static_cast<int>(rows_in[i].size()) != m.cols)
            throw DimensionMismatchError("ragged row list");
        for (int j = 0; j < m.cols; ++j) m(i, j) = rows_in[i][j];
    }
    return m;
}

Mat Mat::from_cols(const std::vector<Vec>& cols_in) {
    Mat m(cols_in.empty() ? 0 : static_cast<int>(cols_in[0].size()), static_cast<int>(cols_in.size()));
    for (int j = 0; j < m.cols; ++j) {
        if (static_cast<int>(cols_in[j].size()) != m.rows)
            throw DimensionMismatchError("ragged column list");
        for (int i = 0; i < m.rows; ++i) m(i, j) = cols_in[j][i];
    }
    return m;
}

Vec Mat::col(int j) const {
    Vec v(rows);
    for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
}

Vec Mat::row(int i) const {
    Vec v(cols);
    for (int j = 0; j < cols; ++j) v[j] = (*this)(i, j);
    return v;
}

void Mat::set_col(int j, const Vec& v) {
    if (static_cast<int>(v.size()) != rows) throw DimensionMismatchError();
    for (int i = 0; i < rows; ++i) (*this)(i, j) = v[i];
}

Mat transpose(const Mat& m) {
    Mat t(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
    return t;
}

Mat mul(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw DimensionMismatchError("matrix product shape");
    Mat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < y.cols; ++j) {
            i128 s = 0;
            for (int k = 0; k < x.cols; ++k)
                s = add128(s, mul128(x(i, k), y(k, j)));
            r(i, j) = narrow64(s);
        }
    return r;
}

Vec mul(const Mat& m, const Vec& v) {
    if (m.cols != static_cast<int>(v.size())) throw DimensionMismatchError("matrix-vector shape");
    Vec r(m.rows);
    for (int i = 0; i < m.rows; ++i) {
        i128 s = 0;
        for (int j = 0; j < m.cols; ++j) s = add128(s, mul128(m(i, j), v[j]));
        r[i] = narrow64(s);
    }
    return r;
}

Mat mul_scalar(const Mat& m, i64 c) {
    Mat r = m;
    for (auto& e : r.a) e = mul64(e, c);
    return r;
}

Mat add(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw DimensionMismatchError();
    Mat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = add64(r.a[i], y.a[i]);
    return r;
}

Mat neg(const Mat& m) {
    Mat r = m;
    for (auto& e : r.a) e = sub64(0, e);
    return r;
}

bool is_symmetric(const Mat& m) {
    if (!m.is_square()) return false;
    for (int i = 0; i < m.rows; ++i)
        for (int j = i + 1; j < m.cols; ++j)
            if (m(i, j) != m(j, i)) return false;
    return true;
}

// Bareiss fraction-free elimination; divisions are exact.
static i128 det_bareiss(std::vector<i128> w, int n) {
    if (n == 0) return 1;
    i128 prev = 1;
    int sign = 1;
    auto at = [&](int i, int j) -> i128& { return w[static_cast<size_t>(i) * n + j]; };
    for (int k = 0; k < n - 1; ++k) {
        if (at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                at(i, j) = sub128(mul128(at(k, k), at(i, j)), mul128(at(i, k), at(k, j))) / prev;
        prev = at(k, k);
    }
    return sign * at(n - 1, n - 1);
}

i128 det(const Mat& m) {
    if (!m.is_square()) throw DimensionMismatchError("determinant of non-square matrix");
    std::vector<i128> w(m.a.begin(), m.a.end());
    return det_bareiss(std::move(w), m.rows);
}

std::vector<i128> leading_minors(const Mat& m) {
    if (!m.is_square()) throw DimensionMismatchError();
    std::vector<i128> out;
    for (int k = 1; k <= m.rows; ++k) {
        std::vector<i128> w;
        w.reserve(static_cast<size_t>(k) * k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) w.push_back(m(i, j));
        out.push_back(det_bareiss(std::move(w), k));
    }
    return out;
}

Mat adjugate(const Mat& m) {
    if (!m.is_square()) throw DimensionMismatchError();
    int n = m.rows;
    Mat adj(n, n);
    if (n == 0) return adj;
    if (n == 1) {
        adj(0, 0) = 1;
        return adj;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<i128> w;
            w.reserve(static_cast<size_t>(n - 1) * (n - 1));
            for (int r = 0; r < n; ++r) {
                if (r == i) continue;
                for (int c = 0; c < n; ++c) {
                    if (c == j) continue;
                    w.push_back(m(r, c));
                }
            }
            i128 cof = det_bareiss(std::move(w), n - 1);
            if ((i + j) % 2 != 0) cof = -cof;
            adj(j, i) = narrow64(cof);
        }
    return adj;
}

Mat unimodular_inverse(const Mat& m) {
    i128 d = det(m);
    if (d != 1 && d != -1) throw NonPositiveError("matrix is not unimodular");
    Mat adj = adjugate(m);
    if (d == -1) adj = neg(adj);
    return adj;
}

std::vector<Rat> solve_rational(const Mat& m, const Vec& rhs) {
    if (!m.is_square() || m.rows != static_cast<int>(rhs.size()))
        throw DimensionMismatchError("solve shape");
    i128 d = det(m);
    if (d == 0) throw NonPositiveError("singular system");
    Mat adj = adjugate(m);
    std::vector<Rat> x(m.rows);
    for (int i = 0; i < m.rows; ++i) {
        i128 s = 0;
        for (int j = 0; j < m.cols; ++j) s = add128(s, mul128(adj(i, j), rhs[j]));
        x[i] = Rat(s, d);
    }
    return x;
}

i64 dot(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw DimensionMismatchError();
    i128 s = 0;
    for (size_t i = 0; i < x.size(); ++i) s = add128(s, mul128(x[i], y[i]));
    return narrow64(s);
}

i64 bilinear(const Mat& g, const Vec& x, const Vec& y) {
    if (g.rows != static_cast<int>(x.size()) || g.cols != static_cast<int>(y.size()))
        throw DimensionMismatchError();
    i128 s = 0;
    for (int i = 0; i < g.rows; ++i)
        for (int j = 0; j < g.cols; ++j)
            s = add128(s, mul128(g(i, j), mul128(x[i], y[j])));
    return narrow64(s);
}

Vec add(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw DimensionMismatchError();
    Vec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = add64(x[i], y[i]);
    return r;
}

Vec sub(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw DimensionMismatchError();
    Vec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = sub64(x[i], y[i]);
    return r;
}

Vec neg(const Vec& v) {
    Vec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = sub64(0, v[i]);
    return r;
}

Vec mul_scalar(const Vec& v, i64 c) {
    Vec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = mul64(v[i], c);
    return r;
}

bool is_zero(const Vec& v) {
    for (i64 e : v)
        if (e != 0) return false;
    return true;
}

std::string to_string(const Mat& m) {
    std::ostringstream os;
    for (int i = 0; i < m.rows; ++i) {
        if (i) os << ';';
        for (int j = 0; j < m.cols; ++j) {
            if (j) os << ',';
            os << m(i, j);
        }
    }
    return os.str();
}

std::string to_string(const Vec& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    return os.str();
}

}  // namespace tqf
