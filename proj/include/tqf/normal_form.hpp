#pragma once

#include "tqf/matrix.hpp"

namespace tqf {

// Column-style Hermite normal form, lower triangular.
//
// Convention (fixed so fixtures are bit-stable): pivots are positive and sit
// on the staircase diagonal, entries in a pivot's row to its left satisfy
// 0 <= h < pivot, zero columns are sorted last. transform is unimodular with
// input * transform = hnf.
struct HnfResult {
    Mat hnf;
    Mat transform;
};

HnfResult hnf(const Mat& a);

// Smith normal form u * a * v = d with u, v unimodular and d diagonal,
// nonnegative, d_i | d_{i+1}.
struct SnfResult {
    Mat d;
    Mat u;
    Mat v;
};

SnfResult snf(const Mat& a);

// Diagonal of snf(a).d restricted to nonzero entries (the invariant factors).
Vec invariant_factors(const Mat& a);

// Basis (as columns) of {x : a x = 0} over the integers.
Mat integer_kernel(const Mat& a);

// True iff v lies in the integer column span of a.
bool in_column_span(const Mat& a, const Vec& v);

// Unique representative of v modulo the column span of a full-rank square
// HNF basis h (entry i reduced into [0, pivot_i) along the staircase).
Vec reduce_mod_hnf(const Mat& h, Vec v);

}  // namespace tqf
