#include "tqf/congruence.hpp"

#include <algorithm>

#include "tqf/normal_form.hpp"

namespace tqf {

CongruenceCondition make_condition(Mat B, Vec w, Vec s) {
    int n = B.rows;
    if (!B.is_square() || static_cast<int>(w.size()) != n || static_cast<int>(s.size()) != n)
        throw DimensionMismatchError("condition pieces disagree in size");
    for (i64 si : s)
        if (si < 1) throw NonPositiveError("moduli must be >= 1");
    return CongruenceCondition{std::move(B), std::move(w), std::move(s)};
}

bool satisfies(const CongruenceCondition& cond, const Vec& x) {
    Vec bx = mul(cond.B, x);
    for (size_t i = 0; i < bx.size(); ++i)
        if (floor_mod(bx[i] - cond.w[i], cond.s[i]) != 0) return false;
    return true;
}

namespace {

Mat stacked_with_moduli(const CongruenceCondition& cond, int sign) {
    // [B | sign * diag(s)], n x 2n
    int n = cond.B.rows;
    Mat m(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m(i, j) = cond.B(i, j);
        m(i, n + i) = sign * cond.s[i];
    }
    return m;
}

}  // namespace

std::optional<Vec> find_residue(const CongruenceCondition& cond) {
    int n = cond.B.rows;
    // Solve [B | diag(s)] (y; t) = w over Z via the Smith form.
    Mat c = stacked_with_moduli(cond, +1);
    SnfResult s = snf(c);
    Vec uw = mul(s.u, cond.w);
    Vec coeff(2 * n, 0);
    for (int i = 0; i < n; ++i) {
        i64 d = s.d(i, i);
        if (d == 0) {
            if (uw[i] != 0) return std::nullopt;
            continue;
        }
        if (uw[i] % d != 0) return std::nullopt;
        coeff[i] = uw[i] / d;
    }
    Vec sol = mul(s.v, coeff);
    Vec y(sol.begin(), sol.begin() + n);
    // Canonicalize modulo the homogeneous solution lattice.
    Mat kernel = kernel_lattice(cond);
    return reduce_mod_hnf(kernel, y);
}

Mat kernel_lattice(const CongruenceCondition& cond) {
    int n = cond.B.rows;
    // {x : Bx = diag(s) t for some t}: project the integer kernel of
    // [B | -diag(s)] onto its x block; the projection is an isomorphism.
    Mat k = integer_kernel(stacked_with_moduli(cond, -1));
    if (k.cols != n) throw Error("internal: homogeneous solution lattice has wrong rank");
    Mat x_part(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) x_part(i, j) = k(i, j);
    return hnf(x_part).hnf;
}

i64 coset_index(const CongruenceCondition& cond, const Vec& y, const Mat& kernel_basis) {
    if (!satisfies(cond, y)) throw NonPositiveError("y is not a residue of the condition");
    std::vector<Rat> c = solve_rational(kernel_basis, y);
    i128 d = 1;
    for (const Rat& ci : c) d = lcm128(d, ci.den);
    return narrow64(d);
}

Mat extended_lattice(const CongruenceCondition& cond, const Vec& y, const Mat& kernel_basis) {
    (void)cond;
    int n = kernel_basis.rows;
    std::vector<Vec> gens;
    gens.push_back(y);
    for (int j = 0; j < n; ++j) gens.push_back(kernel_basis.col(j));
    HnfResult h = hnf(Mat::from_cols(gens));
    Mat basis(n, n);
    for (int j = 0; j < n; ++j) basis.set_col(j, h.hnf.col(j));
    return basis;
}

QuadForm gram_restrict(const QuadForm& f, const Mat& basis) {
    if (basis.rows != f.dim()) throw DimensionMismatchError("basis rows must match form rank");
    return make_form(mul(mul(transpose(basis), f.gram), basis));
}

CongruenceLattices congruence_lattices(const CongruenceCondition& cond) {
    auto y = find_residue(cond);
    if (!y) throw UnsolvableError();
    return congruence_lattices(cond, *y);
}

CongruenceLattices congruence_lattices(const CongruenceCondition& cond, const Vec& y) {
    if (!satisfies(cond, y)) throw NonPositiveError("y is not a residue of the condition");
    CongruenceLattices lat;
    lat.residue_y = y;
    lat.kernel_basis = kernel_lattice(cond);
    lat.extended_basis = extended_lattice(cond, y, lat.kernel_basis);
    lat.index_d = coset_index(cond, y, lat.kernel_basis);
    return lat;
}

i64 congruence_rep_count(const QuadForm& f, i64 a, const CongruenceCondition& cond,
                         EnumBudget* budget) {
    if (f.dim() != cond.B.rows) throw DimensionMismatchError();
    if (a < 0) return 0;
    i64 count = 0;
    for (const Vec& x : rep_list(f, a, budget))
        if (satisfies(cond, x)) ++count;
    return count;
}

ShiftedImage to_shifted(const QuadForm& f, i64 a, const CongruenceCondition& cond) {
    auto y = find_residue(cond);
    if (!y) throw UnsolvableError();
    return to_shifted(f, a, cond, *y);
}

ShiftedImage to_shifted(const QuadForm& f, i64 a, const CongruenceCondition& cond, const Vec& y) {
    ShiftedImage img;
    img.lattices = congruence_lattices(cond, y);
    const Mat& u = img.lattices.kernel_basis;
    img.target.inner_form = gram_restrict(f, u);
    img.target.shift = mul(transpose(u), mul(f.gram, y));
    img.b = sub64(a, evaluate(f, y));
    return img;
}

CongruencePreimage from_shifted(const ShiftedTarget& t, i64 a) {
    const Mat& n_mat = t.inner_form.gram;
    int n = n_mat.rows;
    // Column span of N written as  Z s_1 e_1 + ... + Z s_n e_n  via the
    // Smith form u N v = d: e_i are the columns of u^{-1}, so B' = u.
    SnfResult s = snf(n_mat);
    CongruencePreimage pre;
    Vec moduli(n);
    for (int i = 0; i < n; ++i) moduli[i] = s.d(i, i);
    pre.cond = make_condition(s.u, mul(s.u, t.shift), moduli);
    pre.y = t.shift;
    i64 det_n = narrow64(det(n_mat));
    Mat m_prime = adjugate(n_mat);  // det(N) N^{-1}
    pre.form = make_form(m_prime);
    pre.a = add64(mul64(det_n, a), bilinear(m_prime, t.shift, t.shift));
    return pre;
}

CongruenceReport coset_sum_check(const QuadForm& f, i64 a, const CongruenceCondition& cond,
                                 EnumBudget* budget) {
    CongruenceReport rep;
    CongruenceLattices lat = congruence_lattices(cond);
    QuadForm extended_form = gram_restrict(f, lat.extended_basis);
    i64 lhs = rep_count(extended_form, a, budget);
    i64 rhs = 0;
    for (i64 k = 0; k < lat.index_d; ++k) {
        CongruenceCondition ck = cond;
        ck.w = mul_scalar(cond.w, k);
        rhs = add64(rhs, congruence_rep_count(f, a, ck, budget));
    }
    if (lhs != rhs) {
        rep.ok = false;
        rep.detail = "coset sum mismatch at a=" + std::to_string(a) + ": extended count " +
                     std::to_string(lhs) + " vs coset total " + std::to_string(rhs);
    }
    return rep;
}

CongruenceReport negation_symmetry_check(const QuadForm& f, i64 a, const CongruenceCondition& cond,
                                         EnumBudget* budget) {
    CongruenceReport rep;
    auto fail = [&](const std::string& msg) {
        rep.ok = false;
        rep.detail = msg + " at a=" + std::to_string(a);
    };

    i64 count_w = congruence_rep_count(f, a, cond, budget);
    CongruenceCondition neg_cond = cond;
    neg_cond.w = neg(cond.w);
    if (count_w != congruence_rep_count(f, a, neg_cond, budget))
        fail("negation map is not count-preserving");

    CongruenceLattices lat = congruence_lattices(cond);
    i64 extended_count = rep_count(gram_restrict(f, lat.extended_basis), a, budget);
    i64 kernel_count = rep_count(gram_restrict(f, lat.kernel_basis), a, budget);
    if (rep.ok && lat.index_d == 2 && count_w != sub64(extended_count, kernel_count))
        fail("d=2 elimination formula failed");
    if (rep.ok && lat.index_d == 3) {
        // 3w = 0 (mod s) here, so -w and 2w give the same coset.
        i64 twice = sub64(extended_count, kernel_count);
        if (twice % 2 != 0 || count_w != twice / 2) fail("d=3 halving formula failed");
    }

    if (rep.ok) {
        i64 s_all = 0;
        for (i64 si : cond.s) s_all = gcd_val(s_all, si);
        i64 det_b = narrow64(det(cond.B));
        if (s_all > 1 && gcd_val(det_b, s_all) == 1 && gcd_val(a, s_all) == 1) {
            for (i64 k = 1; k <= lat.index_d && rep.ok; ++k) {
                if (gcd_val(s_all, k) <= 1) continue;
                CongruenceCondition ck = cond;
                ck.w = mul_scalar(cond.w, k);
                if (congruence_rep_count(f, a, ck, budget) != 0)
                    fail("gcd filter predicts zero count for k=" + std::to_string(k));
            }
        }
    }
    return rep;
}

}  // namespace tqf
