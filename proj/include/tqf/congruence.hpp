#pragma once

#include <optional>

#include "tqf/enumerate.hpp"
#include "tqf/qform.hpp"

namespace tqf {

// Componentwise residue constraint B x = w (mod s), i.e. (Bx)_i = w_i mod s_i.
struct CongruenceCondition {
    Mat B;
    Vec w;
    Vec s;  // s_i >= 1
};

CongruenceCondition make_condition(Mat B, Vec w, Vec s);

bool satisfies(const CongruenceCondition& cond, const Vec& x);

// Some y with B y = w (mod s), canonical (the particular solution reduced
// into the fundamental domain of the solution lattice); nullopt when the
// system is unsolvable.
std::optional<Vec> find_residue(const CongruenceCondition& cond);

// Full-rank HNF basis of the homogeneous solution lattice {x : Bx = 0 (mod s)}.
Mat kernel_lattice(const CongruenceCondition& cond);

// Smallest d >= 1 with d*y inside the kernel lattice span.
i64 coset_index(const CongruenceCondition& cond, const Vec& y, const Mat& kernel_basis);

// HNF basis of Z y + kernel span (smallest free module containing the coset).
Mat extended_lattice(const CongruenceCondition& cond, const Vec& y, const Mat& kernel_basis);

// basis^t M basis as a validated form.
QuadForm gram_restrict(const QuadForm& f, const Mat& basis);

// Bundled residue, kernel, extended basis and index for one condition.
struct CongruenceLattices {
    Vec residue_y;
    Mat kernel_basis;
    Mat extended_basis;
    i64 index_d = 1;
};

CongruenceLattices congruence_lattices(const CongruenceCondition& cond);
// Same structure built around a caller-supplied residue (counts downstream
// must not depend on the choice).
CongruenceLattices congruence_lattices(const CongruenceCondition& cond, const Vec& y);

// |{x : x^t M x = a, Bx = w (mod s)}|, by filtering the norm-a list.
// Negative a counts nothing.
i64 congruence_rep_count(const QuadForm& f, i64 a, const CongruenceCondition& cond,
                         EnumBudget* budget = nullptr);

// The congruence count recast as a quadratic-polynomial count: the solution
// set maps bijectively onto {v : v^t N v + 2 v^t z = b}.
struct ShiftedImage {
    ShiftedTarget target;
    i64 b = 0;
    CongruenceLattices lattices;
};

ShiftedImage to_shifted(const QuadForm& f, i64 a, const CongruenceCondition& cond);
ShiftedImage to_shifted(const QuadForm& f, i64 a, const CongruenceCondition& cond, const Vec& y);

// Converse direction: a congruence-counting problem whose solutions map
// bijectively onto those of v^t N v + 2 v^t z = a.
struct CongruencePreimage {
    QuadForm form;  // det(N) N^{-1}
    i64 a = 0;      // det(N) a + z^t det(N) N^{-1} z
    CongruenceCondition cond;
    Vec y;          // = z
};

CongruencePreimage from_shifted(const ShiftedTarget& t, i64 a);

struct CongruenceReport {
    bool ok = true;
    std::string detail;
};

// Coset decomposition identity: r(a, extended form) equals the sum of the
// congruence counts over the cosets k*w, k = 0..d-1.
CongruenceReport coset_sum_check(const QuadForm& f, i64 a, const CongruenceCondition& cond,
                                 EnumBudget* budget = nullptr);

// Negation symmetry r_{B,w} = r_{B,-w}; the d = 2 and d = 3 elimination
// formulas; and the gcd vanishing filter where its hypotheses hold.
CongruenceReport negation_symmetry_check(const QuadForm& f, i64 a, const CongruenceCondition& cond,
                                         EnumBudget* budget = nullptr);

}  // namespace tqf
