#include "tqf/watson.hpp"

#include <utility>

#include "tqf/isometry.hpp"
#include "tqf/normal_form.hpp"

namespace tqf {

bool is_prime(i64 p) {
    if (p < 2) return false;
    for (i64 d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

namespace {

i64 mod_p(i64 v, i64 p) {
    i64 r = v % p;
    return r < 0 ? r + p : r;
}

i64 inv_mod(i64 a, i64 p) {
    // p prime, a not divisible by p
    i64 t = 0, new_t = 1, r = p, new_r = mod_p(a, p);
    while (new_r != 0) {
        i64 q = r / new_r;
        t = t - q * new_t;
        std::swap(t, new_t);
        r = r - q * new_r;
        std::swap(r, new_r);
    }
    return mod_p(t, p);
}

// Basis vectors (entries in [0, p)) of the kernel of m over F_p.
std::vector<Vec> kernel_mod_p(const Mat& m, i64 p) {
    int n = m.rows;
    std::vector<Vec> rows;
    for (int i = 0; i < n; ++i) {
        Vec r(n);
        for (int j = 0; j < n; ++j) r[j] = mod_p(m(i, j), p);
        rows.push_back(r);
    }
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int pr = -1;
        for (int i = rank; i < n; ++i)
            if (rows[i][col] != 0) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(rows[rank], rows[pr]);
        i64 inv = inv_mod(rows[rank][col], p);
        for (int j = 0; j < n; ++j) rows[rank][j] = mod_p(rows[rank][j] * inv, p);
        for (int i = 0; i < n; ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            i64 c = rows[i][col];
            for (int j = 0; j < n; ++j) rows[i][j] = mod_p(rows[i][j] - c * rows[rank][j], p);
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (int col = 0; col < n; ++col) {
        if (is_pivot[col]) continue;
        Vec v(n, 0);
        v[col] = 1;
        for (int i = 0; i < rank; ++i)
            v[pivot_col[i]] = mod_p(-rows[i][col], p);
        basis.push_back(v);
    }
    return basis;
}

// Membership in the transform sublattice, straight from the definition:
// Q(x+z) - Q(z) = Q(x) + 2 B(x, z) must vanish mod p for z = 0 and each
// basis vector, which covers all z by linearity in z.
bool satisfies_definition(const QuadForm& f, const Vec& x, i64 p) {
    if (mod_p(evaluate(f, x), p) != 0) return false;
    Vec mx = mul(f.gram, x);
    for (i64 e : mx)
        if (mod_p(2 * e, p) != 0) return false;
    return true;
}

}  // namespace

Mat lambda_sublattice(const QuadForm& f, i64 p) {
    if (!is_prime(p)) throw NotPrimeError(p);
    int n = f.dim();
    std::vector<Vec> gens;
    for (int i = 0; i < n; ++i) {
        Vec v(n, 0);
        v[i] = narrow64(p);
        gens.push_back(v);  // p Z^n is always contained
    }
    if (p == 2) {
        // The linear conditions 2 B(x, z) = 0 are vacuous mod 2; walk the
        // finite quotient and keep the cosets satisfying the definition.
        for (i64 mask = 1; mask < (i64(1) << n); ++mask) {
            Vec x(n, 0);
            for (int i = 0; i < n; ++i) x[i] = (mask >> i) & 1;
            if (satisfies_definition(f, x, 2)) gens.push_back(x);
        }
    } else {
        // Odd p: 2 is a unit, so the conditions reduce to M x = 0 mod p
        // (which forces Q(x) = 0 mod p as well).
        for (const Vec& v : kernel_mod_p(f.gram, p)) {
            if (!satisfies_definition(f, v, p))
                throw Error("internal: kernel vector fails the sublattice definition");
            gens.push_back(v);
        }
    }
    HnfResult h = hnf(Mat::from_cols(gens));
    Mat basis(n, n);
    for (int j = 0; j < n; ++j) basis.set_col(j, h.hnf.col(j));
    return basis;
}

WatsonStep watson_transform(const QuadForm& f, i64 p, RescaleMode mode) {
    if (!is_prime(p)) throw NotPrimeError(p);
    WatsonStep step;
    step.input = f;
    step.prime = p;
    step.sublattice_basis = lambda_sublattice(f, p);
    Mat restricted = mul(mul(transpose(step.sublattice_basis), f.gram), step.sublattice_basis);

    i64 divisor = 1;
    if (mode == RescaleMode::GlobalGcd) {
        i64 g = 0;
        for (i64 e : restricted.a) g = gcd_val(g, e);
        divisor = g == 0 ? 1 : g;
    } else {
        for (;;) {
            bool all = true;
            for (i64 e : restricted.a)
                if (e % (divisor * p) != 0) { all = false; break; }
            if (!all) break;
            divisor = mul64(divisor, p);
        }
    }
    for (auto& e : restricted.a) e /= divisor;
    step.scale_divisor = divisor;
    step.output = make_form(restricted);
    return step;
}

std::vector<WatsonStep> watson_chain(const QuadForm& f, i64 p, i64 max_steps, RescaleMode mode,
                                     EnumBudget* budget) {
    if (max_steps < 1) throw NonPositiveError("chain needs at least one step");
    std::vector<WatsonStep> chain;
    QuadForm current = f;
    for (i64 s = 0; s < max_steps; ++s) {
        WatsonStep step = watson_transform(current, p, mode);
        chain.push_back(step);
        if (is_isometric(step.output, current, budget)) break;
        current = step.output;
    }
    return chain;
}

}  // namespace tqf
