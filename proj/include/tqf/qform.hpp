#pragma once

#include <string>

#include "tqf/matrix.hpp"

namespace tqf {

// Positive definite integral quadratic form, stored as the full symmetric
// Gram matrix M with value x^t M x (off-diagonal entries carry the whole
// cross coefficient halved into two symmetric slots).
struct QuadForm {
    Mat gram;

    int dim() const { return gram.rows; }

    friend bool operator==(const QuadForm& a, const QuadForm& b) { return a.gram == b.gram; }
    friend bool operator!=(const QuadForm& a, const QuadForm& b) { return !(a == b); }
};

// Integer basis change with determinant +-1; witness type for isometries and
// normal-form transformations.
struct UnimodularMap {
    Mat matrix;
};

// Validates symmetry and positive definiteness (all leading principal minors
// positive; the failing index is reported).
QuadForm make_form(const Mat& gram);

QuadForm diagonal_form(const Vec& d);

// x^t M x.
i64 evaluate(const QuadForm& f, const Vec& x);

// Form with Gram c * M.
QuadForm scale_form(const QuadForm& f, i64 c);

std::string to_string(const QuadForm& f);

}  // namespace tqf
