#include "tqf/qform.hpp"

namespace tqf {

QuadForm make_form(const Mat& gram) {
    if (!gram.is_square()) throw DimensionMismatchError("Gram matrix must be square");
    if (!is_symmetric(gram)) throw NotSymmetricError();
    std::vector<i128> minors = leading_minors(gram);
    for (size_t k = 0; k < minors.size(); ++k)
        if (minors[k] <= 0) throw NotPositiveDefiniteError(static_cast<int>(k + 1));
    return QuadForm{gram};
}

QuadForm diagonal_form(const Vec& d) {
    return make_form(Mat::diag(d));
}

i64 evaluate(const QuadForm& f, const Vec& x) {
    if (f.dim() != static_cast<int>(x.size()))
        throw DimensionMismatchError("vector length does not match form rank");
    return bilinear(f.gram, x, x);
}

QuadForm scale_form(const QuadForm& f, i64 c) {
    if (c <= 0) throw NonPositiveError("form scale must be positive");
    return QuadForm{mul_scalar(f.gram, c)};
}

std::string to_string(const QuadForm& f) {
    return to_string(f.gram);
}

}  // namespace tqf
