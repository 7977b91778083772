#include "tqf/enumerate.hpp"

#include <algorithm>

// Exact lattice-point enumeration.
//
// Coordinates are eliminated innermost-first through the fraction-free
// (Bareiss) elimination of the bordered matrix [[N, z], [z^t, 0]]: after
// eliminating the first L coordinates, the trailing block equals
// D_L * (Schur complement), where D_L is the leading L-minor of N. The
// minimum of the polynomial over the first L coordinates (relaxed to the
// reals) is that scaled quadratic divided by D_L, so the pruning condition
// at each level is an integer quadratic inequality in the current
// coordinate, solved exactly with an integer square root. No floating
// point enters any bound; no solution can be lost to rounding.

namespace tqf {

namespace {

class Engine {
public:
    enum class Mode { CountEq, ListEq, Histogram, Visit };

    Engine(const QuadForm& f, const Vec& shift, EnumBudget* budget)
        : n_(f.dim()), m_(f.dim() + 1), budget_(budget) {
        if (static_cast<int>(shift.size()) != n_)
            throw DimensionMismatchError("shift length does not match form rank");
        // Bordered matrix; border index n carries the linear part.
        std::vector<i128> a(static_cast<size_t>(m_) * m_, 0);
        auto at = [&](int i, int j) -> i128& { return a[static_cast<size_t>(i) * m_ + j]; };
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) at(i, j) = f.gram(i, j);
        for (int i = 0; i < n_; ++i) {
            at(i, n_) = shift[i];
            at(n_, i) = shift[i];
        }
        levels_.resize(n_);
        scale_.resize(n_);
        i128 prev = 1;
        for (int k = 0; k < n_; ++k) {
            scale_[k] = (k == 0) ? 1 : at(k - 1, k - 1);
            auto& h = levels_[k];
            int s = m_ - k;
            h.assign(static_cast<size_t>(s) * s, 0);
            for (int i = 0; i < s; ++i)
                for (int j = 0; j < s; ++j) h[static_cast<size_t>(i) * s + j] = at(k + i, k + j);
            if (k == n_ - 1) break;
            i128 pivot = at(k, k);
            for (int i = k + 1; i < m_; ++i)
                for (int j = k + 1; j < m_; ++j)
                    at(i, j) = sub128(mul128(pivot, at(i, j)), mul128(at(i, k), at(k, j))) / prev;
            prev = pivot;
        }
        x_.assign(n_, 0);
    }

    i64 count_equal(i64 a, bool half) {
        mode_ = Mode::CountEq;
        run(a, a, half);
        return count_;
    }

    std::vector<Vec> list_equal(i64 a, bool half) {
        mode_ = Mode::ListEq;
        run(a, a, half);
        return std::move(out_);
    }

    std::vector<i64> histogram(i64 bound, bool half) {
        mode_ = Mode::Histogram;
        buckets_.assign(static_cast<size_t>(bound) + 1, 0);
        run(bound, bound, half);
        return std::move(buckets_);
    }

    void visit(i64 bound, bool half, const std::function<void(const Vec&, i64)>& fn) {
        mode_ = Mode::Visit;
        fn_ = &fn;
        run(bound, bound, half);
    }

private:
    int n_, m_;
    EnumBudget* budget_;
    std::vector<std::vector<i128>> levels_;  // levels_[L]: scaled Schur data, size (m-L)^2
    std::vector<i128> scale_;                // scale_[L] = leading L-minor of the Gram

    Mode mode_ = Mode::CountEq;
    i64 ub_ = 0;      // upper bound used for pruning
    i64 target_ = 0;  // equality target
    bool half_ = false;
    Vec x_;
    i64 count_ = 0;
    std::vector<Vec> out_;
    std::vector<i64> buckets_;
    const std::function<void(const Vec&, i64)>* fn_ = nullptr;

    i128 h(int L, int i, int j) const {
        int s = m_ - L;
        return levels_[L][static_cast<size_t>(i) * s + j];
    }

    void run(i64 ub, i64 target, bool half) {
        ub_ = ub;
        target_ = target;
        half_ = half;
        count_ = 0;
        descend(n_ - 1, true);
    }

    // Coefficients of the level-L pruning quadratic in x_L, given x_{L+1..n-1}.
    void coeffs(int L, i128& qa, i128& qb, i128& qc) const {
        int s = m_ - L;
        qa = h(L, 0, 0);
        qb = h(L, 0, s - 1);
        for (int j = L + 1; j < n_; ++j) qb = add128(qb, mul128(h(L, 0, j - L), x_[j]));
        qc = h(L, s - 1, s - 1);
        for (int j = L + 1; j < n_; ++j) {
            qc = add128(qc, mul128(2, mul128(h(L, j - L, s - 1), x_[j])));
            for (int k = L + 1; k < n_; ++k)
                qc = add128(qc, mul128(h(L, j - L, k - L), mul128(x_[j], x_[k])));
        }
    }

    // Integer solutions of qa x^2 + 2 qb x + qc <= rhs.
    static bool range_below(i128 qa, i128 qb, i128 qc, i128 rhs, i64& lo, i64& hi) {
        i128 disc = sub128(mul128(qb, qb), mul128(qa, sub128(qc, rhs)));
        if (disc < 0) return false;
        i128 s = isqrt(disc);
        lo = narrow64(ceil_div(-qb - s, qa));
        hi = narrow64(floor_div(-qb + s, qa));
        return lo <= hi;
    }

    void descend(int L, bool prefix_zero) {
        i128 qa, qb, qc;
        coeffs(L, qa, qb, qc);
        if (L == 0) {
            leaf(qa, qb, qc, prefix_zero);
            return;
        }
        i64 lo, hi;
        if (!range_below(qa, qb, qc, mul128(scale_[L], ub_), lo, hi)) return;
        if (half_ && prefix_zero) lo = std::max<i64>(lo, 0);
        for (i64 v = lo; v <= hi; ++v) {
            budget_->charge();
            x_[L] = v;
            descend(L - 1, prefix_zero && v == 0);
        }
        x_[L] = 0;
    }

    void leaf(i128 qa, i128 qb, i128 qc, bool prefix_zero) {
        if (mode_ == Mode::CountEq || mode_ == Mode::ListEq) {
            leaf_equal(qa, qb, qc, prefix_zero);
            return;
        }
        i64 lo, hi;
        if (!range_below(qa, qb, qc, ub_, lo, hi)) return;
        if (half_ && prefix_zero) lo = std::max<i64>(lo, 0);
        if (lo > hi) return;
        // Incremental evaluation: v(x+1) - v(x) = qa (2x + 1) + 2 qb.
        i128 v = add128(mul128(mul128(qa, lo), lo), add128(mul128(2, mul128(qb, lo)), qc));
        i128 dv = add128(mul128(qa, 2 * static_cast<i128>(lo) + 1), mul128(2, qb));
        for (i64 t = lo; t <= hi; ++t) {
            budget_->charge();
            x_[0] = t;
            i64 mult = half_ ? ((prefix_zero && t == 0) ? 1 : 2) : 1;
            i64 value = narrow64(v);
            if (mode_ == Mode::Histogram) {
                if (value >= 0 && value <= ub_) buckets_[static_cast<size_t>(value)] += mult;
            } else {  // Visit
                (*fn_)(x_, value);
            }
            v = add128(v, dv);
            dv = add128(dv, 2 * qa);
        }
        x_[0] = 0;
    }

    void leaf_equal(i128 qa, i128 qb, i128 qc, bool prefix_zero) {
        i128 disc = sub128(mul128(qb, qb), mul128(qa, sub128(qc, target_)));
        if (disc < 0) return;
        i128 s = isqrt(disc);
        if (s * s != disc) return;
        i128 roots[2] = {-qb + s, -qb - s};
        int nroots = (s == 0) ? 1 : 2;
        for (int r = 0; r < nroots; ++r) {
            if (roots[r] % qa != 0) continue;
            budget_->charge();
            i64 root = narrow64(roots[r] / qa);
            i64 mult = 1;
            if (half_) {
                if (prefix_zero) {
                    if (root < 0) continue;
                    mult = (root == 0) ? 1 : 2;
                } else {
                    mult = 2;
                }
            }
            if (mode_ == Mode::CountEq) {
                count_ += mult;
            } else {
                x_[0] = root;
                out_.push_back(x_);
                if (mult == 2) out_.push_back(neg(x_));
                x_[0] = 0;
            }
        }
    }
};

EnumBudget* ensure(EnumBudget* budget, EnumBudget& local) {
    return budget ? budget : &local;
}

}  // namespace

i64 rep_count(const QuadForm& f, i64 k, EnumBudget* budget) {
    if (k < 0) throw NonPositiveError("representation target must be nonnegative");
    EnumBudget local;
    Engine e(f, Vec(f.dim(), 0), ensure(budget, local));
    return e.count_equal(k, /*half=*/true);
}

std::vector<Vec> rep_list(const QuadForm& f, i64 k, EnumBudget* budget) {
    if (k < 0) throw NonPositiveError("representation target must be nonnegative");
    EnumBudget local;
    Engine e(f, Vec(f.dim(), 0), ensure(budget, local));
    return e.list_equal(k, /*half=*/true);
}

ThetaSeries theta_series(const QuadForm& f, i64 upper, EnumBudget* budget) {
    if (upper < 0) throw NonPositiveError("theta upper bound must be nonnegative");
    EnumBudget local;
    Engine e(f, Vec(f.dim(), 0), ensure(budget, local));
    return ThetaSeries{f, upper, e.histogram(upper, /*half=*/true)};
}

i64 shifted_rep_count(const ShiftedTarget& t, i64 a, EnumBudget* budget) {
    EnumBudget local;
    Engine e(t.inner_form, t.shift, ensure(budget, local));
    return e.count_equal(a, /*half=*/false);
}

std::vector<Vec> shifted_rep_list(const ShiftedTarget& t, i64 a, EnumBudget* budget) {
    EnumBudget local;
    Engine e(t.inner_form, t.shift, ensure(budget, local));
    return e.list_equal(a, /*half=*/false);
}

std::vector<std::pair<Vec, i64>> short_vectors(const QuadForm& f, i64 bound, EnumBudget* budget) {
    if (bound < 0) throw NonPositiveError("short-vector bound must be nonnegative");
    EnumBudget local;
    Engine e(f, Vec(f.dim(), 0), ensure(budget, local));
    std::vector<std::pair<Vec, i64>> out;
    e.visit(bound, /*half=*/true, [&](const Vec& x, i64 q) {
        if (q > 0) out.emplace_back(x, q);
    });
    return out;
}

void enumerate_below(const QuadForm& f, const Vec& shift, i64 bound,
                     const std::function<void(const Vec&, i64)>& fn, EnumBudget* budget) {
    EnumBudget local;
    Engine e(f, shift, ensure(budget, local));
    e.visit(bound, /*half=*/false, fn);
}

}  // namespace tqf
