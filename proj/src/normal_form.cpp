#include "tqf/normal_form.hpp"

#include <utility>
#include <vector>

namespace tqf {

namespace {

// Working copy over 128-bit words; narrowing happens once at the end.
struct Work {
    int rows, cols;
    std::vector<i128> a;
    Work(const Mat& m) : rows(m.rows), cols(m.cols), a(m.a.begin(), m.a.end()) {}
    Work(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
    i128& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    i128 at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
    static Work identity(int n) {
        Work w(n, n);
        for (int i = 0; i < n; ++i) w.at(i, i) = 1;
        return w;
    }
    Mat to_mat() const {
        Mat m(rows, cols);
        for (size_t i = 0; i < a.size(); ++i) m.a[i] = narrow64(a[i]);
        return m;
    }
};

i128 round_div(i128 a, i128 b) {
    i128 q = floor_div(a, b);
    i128 r = a - q * b;
    if (2 * r >= abs_val(b)) q += (b > 0 ? 1 : -1);
    return q;
}

void add_col(Work& w, int dst, int src, i128 factor) {
    for (int i = 0; i < w.rows; ++i)
        w.at(i, dst) = add128(w.at(i, dst), mul128(factor, w.at(i, src)));
}

void swap_cols(Work& w, int x, int y) {
    if (x == y) return;
    for (int i = 0; i < w.rows; ++i) std::swap(w.at(i, x), w.at(i, y));
}

void negate_col(Work& w, int x) {
    for (int i = 0; i < w.rows; ++i) w.at(i, x) = -w.at(i, x);
}

void add_row(Work& w, int dst, int src, i128 factor) {
    for (int j = 0; j < w.cols; ++j)
        w.at(dst, j) = add128(w.at(dst, j), mul128(factor, w.at(src, j)));
}

void swap_rows(Work& w, int x, int y) {
    if (x == y) return;
    for (int j = 0; j < w.cols; ++j) std::swap(w.at(x, j), w.at(y, j));
}

void negate_row(Work& w, int x) {
    for (int j = 0; j < w.cols; ++j) w.at(x, j) = -w.at(x, j);
}

Mat drop_zero_columns(const Mat& m) {
    std::vector<Vec> keep;
    for (int j = 0; j < m.cols; ++j) {
        Vec c = m.col(j);
        if (!is_zero(c)) keep.push_back(c);
    }
    if (keep.empty()) return Mat(m.rows, 0);
    return Mat::from_cols(keep);
}

}  // namespace

HnfResult hnf(const Mat& a) {
    Work w(a), t = Work::identity(a.cols);
    int m = a.rows, n = a.cols;
    std::vector<std::pair<int, int>> pivots;  // (row, col)
    int c = 0;
    for (int r = 0; r < m && c < n; ++r) {
        // Euclid across columns >= c on row r until one nonzero entry remains.
        for (;;) {
            int jmin = -1;
            for (int j = c; j < n; ++j) {
                if (w.at(r, j) == 0) continue;
                if (jmin < 0 || abs_val(w.at(r, j)) < abs_val(w.at(r, jmin))) jmin = j;
            }
            if (jmin < 0) break;  // no pivot in this row
            bool others = false;
            for (int j = c; j < n; ++j) {
                if (j == jmin || w.at(r, j) == 0) continue;
                i128 q = round_div(w.at(r, j), w.at(r, jmin));
                add_col(w, j, jmin, -q);
                add_col(t, j, jmin, -q);
                if (w.at(r, j) != 0) others = true;
            }
            if (!others) {
                swap_cols(w, c, jmin);
                swap_cols(t, c, jmin);
                if (w.at(r, c) < 0) {
                    negate_col(w, c);
                    negate_col(t, c);
                }
                pivots.emplace_back(r, c);
                ++c;
                break;
            }
        }
    }
    // Reduce entries left of each pivot into [0, pivot).
    for (auto [pr, pc] : pivots) {
        for (int k = 0; k < pc; ++k) {
            i128 q = floor_div(w.at(pr, k), w.at(pr, pc));
            if (q != 0) {
                add_col(w, k, pc, -q);
                add_col(t, k, pc, -q);
            }
        }
    }
    return {w.to_mat(), t.to_mat()};
}

SnfResult snf(const Mat& a) {
    Work w(a);
    Work u = Work::identity(a.rows), v = Work::identity(a.cols);
    int m = a.rows, n = a.cols;
    int dim = std::min(m, n);
    for (int t = 0; t < dim; ++t) {
        for (;;) {
            int pi = -1, pj = -1;
            for (int i = t; i < m; ++i)
                for (int j = t; j < n; ++j) {
                    if (w.at(i, j) == 0) continue;
                    if (pi < 0 || abs_val(w.at(i, j)) < abs_val(w.at(pi, pj))) {
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) { t = dim; break; }  // trailing block is zero
            swap_rows(w, t, pi);
            swap_rows(u, t, pi);
            swap_cols(w, t, pj);
            swap_cols(v, t, pj);

            bool dirty = false;
            for (int i = t + 1; i < m; ++i) {
                if (w.at(i, t) == 0) continue;
                i128 q = round_div(w.at(i, t), w.at(t, t));
                add_row(w, i, t, -q);
                add_row(u, i, t, -q);
                if (w.at(i, t) != 0) dirty = true;
            }
            for (int j = t + 1; j < n; ++j) {
                if (w.at(t, j) == 0) continue;
                i128 q = round_div(w.at(t, j), w.at(t, t));
                add_col(w, j, t, -q);
                add_col(v, j, t, -q);
                if (w.at(t, j) != 0) dirty = true;
            }
            if (dirty) continue;

            // Pivot divides the whole trailing block, or fold a bad column in.
            int bi = -1, bj = -1;
            for (int i = t + 1; i < m && bi < 0; ++i)
                for (int j = t + 1; j < n; ++j)
                    if (w.at(i, j) % w.at(t, t) != 0) {
                        bi = i;
                        bj = j;
                        break;
                    }
            if (bi < 0) break;
            add_col(w, t, bj, 1);
            add_col(v, t, bj, 1);
        }
        if (t >= dim) break;
    }
    for (int t = 0; t < dim; ++t)
        if (w.at(t, t) < 0) {
            negate_row(w, t);
            negate_row(u, t);
        }
    return {w.to_mat(), u.to_mat(), v.to_mat()};
}

Vec invariant_factors(const Mat& a) {
    SnfResult s = snf(a);
    Vec out;
    for (int i = 0; i < std::min(s.d.rows, s.d.cols); ++i)
        if (s.d(i, i) != 0) out.push_back(s.d(i, i));
    return out;
}

Mat integer_kernel(const Mat& a) {
    HnfResult h = hnf(a);
    std::vector<Vec> basis;
    for (int j = 0; j < h.hnf.cols; ++j)
        if (is_zero(h.hnf.col(j))) basis.push_back(h.transform.col(j));
    if (basis.empty()) return Mat(a.cols, 0);
    return Mat::from_cols(basis);
}

bool in_column_span(const Mat& a, const Vec& v) {
    if (a.rows != static_cast<int>(v.size())) throw DimensionMismatchError();
    std::vector<Vec> cols;
    for (int j = 0; j < a.cols; ++j) cols.push_back(a.col(j));
    cols.push_back(v);
    Mat ext = Mat::from_cols(cols);
    return drop_zero_columns(hnf(a).hnf) == drop_zero_columns(hnf(ext).hnf);
}

Vec reduce_mod_hnf(const Mat& h, Vec v) {
    if (!h.is_square() || h.rows != static_cast<int>(v.size()))
        throw DimensionMismatchError();
    for (int j = 0; j < h.cols; ++j) {
        if (h(j, j) <= 0) throw NonPositiveError("basis is not in full-rank HNF");
        i128 q = floor_div(v[j], h(j, j));
        if (q != 0)
            for (int i = j; i < h.rows; ++i)
                v[i] = narrow64(sub128(v[i], mul128(q, h(i, j))));
    }
    return v;
}

}  // namespace tqf
