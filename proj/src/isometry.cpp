#include "tqf/isometry.hpp"

#include <algorithm>
#include <map>

namespace tqf {

namespace {

// Gram-Schmidt data computed exactly from a Gram matrix.
struct Gso {
    std::vector<Rat> b;                 // squared lengths of the orthogonalized basis
    std::vector<std::vector<Rat>> mu;   // mu[i][j], j < i
};

Gso gso_from_gram(const Mat& g) {
    int n = g.rows;
    Gso s;
    s.b.assign(n, Rat(0));
    s.mu.assign(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) {
            Rat v(g(i, j));
            for (int k = 0; k < j; ++k) v = v - s.mu[j][k] * s.mu[i][k] * s.b[k];
            s.mu[i][j] = v / s.b[j];
        }
        Rat v(g(i, i));
        for (int k = 0; k < i; ++k) v = v - s.mu[i][k] * s.mu[i][k] * s.b[k];
        s.b[i] = v;
    }
    return s;
}

void apply_translate(Mat& u, int dst, int src, i64 factor) {
    for (int i = 0; i < u.rows; ++i)
        u(i, dst) = add64(u(i, dst), mul64(factor, u(i, src)));
}

void apply_swap(Mat& u, int x, int y) {
    for (int i = 0; i < u.rows; ++i) std::swap(u(i, x), u(i, y));
}

}  // namespace

ReducedForm reduce_form(const QuadForm& f) {
    int n = f.dim();
    Mat u = Mat::identity(n);
    Mat g = f.gram;
    const Rat delta(99, 100);
    auto refresh = [&]() { g = mul(mul(transpose(u), f.gram), u); };

    int k = 1;
    while (k < n) {
        Gso s = gso_from_gram(g);
        // Size-reduce column k against k-1.
        i128 r = round_rat(s.mu[k][k - 1]);
        if (r != 0) {
            apply_translate(u, k, k - 1, narrow64(-r));
            refresh();
            s = gso_from_gram(g);
        }
        if (s.b[k] >= (delta - s.mu[k][k - 1] * s.mu[k][k - 1]) * s.b[k - 1]) {
            for (int j = k - 2; j >= 0; --j) {
                i128 rj = round_rat(s.mu[k][j]);
                if (rj != 0) {
                    apply_translate(u, k, j, narrow64(-rj));
                    refresh();
                    s = gso_from_gram(g);
                }
            }
            ++k;
        } else {
            apply_swap(u, k, k - 1);
            refresh();
            k = std::max(k - 1, 1);
        }
    }
    return ReducedForm{QuadForm{g}, UnimodularMap{u}};
}

namespace {

// Backtracking over images of the reduced target basis: column j must map to
// a vector of norm target(j,j) with the right inner products against the
// columns already placed. Candidate lists come from a complete short-vector
// enumeration, so the search is exhaustive.
struct MatchSearch {
    const Mat& source;  // reduced Gram to search in
    const Mat& target;  // reduced Gram to realize
    std::vector<std::vector<Vec>> candidates;
    EnumBudget* budget;
    std::vector<Vec> chosen;
    i64 completions = 0;
    bool count_all = false;
    std::optional<Mat> witness;

    MatchSearch(const QuadForm& src, const Mat& tgt, EnumBudget* b)
        : source(src.gram), target(tgt), budget(b) {
        i64 maxnorm = 0;
        for (int j = 0; j < tgt.rows; ++j) maxnorm = std::max(maxnorm, tgt(j, j));
        std::map<i64, std::vector<Vec>> by_norm;
        for (auto& [v, q] : short_vectors(src, maxnorm, budget)) {
            by_norm[q].push_back(v);
            by_norm[q].push_back(neg(v));
        }
        candidates.resize(tgt.rows);
        for (int j = 0; j < tgt.rows; ++j) {
            auto it = by_norm.find(tgt(j, j));
            if (it != by_norm.end()) candidates[j] = it->second;
        }
    }

    bool dfs(int j) {
        if (j == target.rows) {
            ++completions;
            if (!count_all && !witness) witness = Mat::from_cols(chosen);
            return !count_all;
        }
        for (const Vec& v : candidates[j]) {
            budget->charge();
            bool ok = true;
            for (int i = 0; i < j && ok; ++i)
                ok = bilinear(source, chosen[i], v) == target(i, j);
            if (!ok) continue;
            chosen.push_back(v);
            if (dfs(j + 1)) return true;
            chosen.pop_back();
        }
        return false;
    }
};

}  // namespace

std::optional<UnimodularMap> is_isometric(const QuadForm& f, const QuadForm& g,
                                          EnumBudget* budget) {
    if (f.dim() != g.dim()) throw DimensionMismatchError("isometry of unequal ranks");
    if (det(f.gram) != det(g.gram)) return std::nullopt;
    EnumBudget local;
    EnumBudget* b = budget ? budget : &local;

    ReducedForm rf = reduce_form(f);
    ReducedForm rg = reduce_form(g);
    MatchSearch search(rf.form, rg.form.gram, b);
    search.count_all = false;
    if (!search.dfs(0)) return std::nullopt;

    // Map the witness back to the original bases.
    Mat t = mul(mul(rf.transform.matrix, *search.witness),
                unimodular_inverse(rg.transform.matrix));
    if (mul(mul(transpose(t), f.gram), t) != g.gram)
        throw Error("internal: isometry witness failed verification");
    return UnimodularMap{t};
}

i64 aut_order(const QuadForm& f, EnumBudget* budget) {
    EnumBudget local;
    EnumBudget* b = budget ? budget : &local;
    ReducedForm rf = reduce_form(f);
    MatchSearch search(rf.form, rf.form.gram, b);
    search.count_all = true;
    search.dfs(0);
    return search.completions;
}

}  // namespace tqf
