#include "tqf/bell.hpp"

#include <array>

#include "tqf/isometry.hpp"

namespace tqf {

namespace {

const std::array<SpinorPair, 4>& pairs() {
    static const std::array<SpinorPair, 4> p = {
        SpinorPair{1, diagonal_form({1, 1, 16}),
                   make_form(Mat(3, 3, {2, 0, 1, 0, 2, 1, 1, 1, 5}))},
        SpinorPair{2, diagonal_form({1, 4, 16}),
                   make_form(Mat(3, 3, {4, 0, 0, 0, 4, 2, 0, 2, 5}))},
        SpinorPair{3, diagonal_form({1, 8, 64}),
                   make_form(Mat(3, 3, {4, 0, 2, 0, 8, 0, 2, 0, 17}))},
        SpinorPair{4, diagonal_form({1, 16, 16}),
                   make_form(Mat(3, 3, {4, 2, 2, 2, 9, 1, 2, 1, 9}))},
    };
    return p;
}

void check_pair_index(int i) {
    if (i < 1 || i > 4) throw NonPositiveError("pair index must be in 1..4");
}

// Square-class correction term of the closed form: nonzero only for odd
// square k (the (a, alpha) = (0, 1) branch), with magnitude sqrt(k) times
// the pair's coefficient and a sign from sqrt(k) mod 4 (and k mod 16 for
// the third pair).
i64 square_correction(int i, i64 k) {
    TwoAdicSplit sp = two_adic_split(k);
    if (sp.a != 0 || sp.alpha_res != 1) return 0;
    if (!is_square(k)) return 0;
    i64 root = narrow64(isqrt(k));
    i64 sign = ((root - 1) / 2) % 2 == 0 ? 1 : -1;
    if (i == 3 && ((k - 1) / 8) % 2 != 0) sign = -sign;
    i64 coef = (i == 1) ? 2 : 1;
    return mul64(sign, mul64(coef, root));
}

}  // namespace

QuadForm bell_form(const BellIndex& idx) {
    if (idx.alpha < 0 || idx.beta < 0 || idx.alpha > idx.beta)
        throw OrderViolatedError("bell exponents must satisfy 0 <= alpha <= beta");
    return diagonal_form({1, checked_pow(2, idx.alpha), checked_pow(2, idx.beta)});
}

QuadForm reduced_companion(const BellIndex& idx) {
    i64 last = (idx.alpha + idx.beta) % 2 != 0 ? 2 : 1;
    return diagonal_form({1, 1, last});
}

TwoAdicSplit two_adic_split(i64 k) {
    if (k < 1) throw NonPositiveError("two-adic split needs k >= 1");
    TwoAdicSplit s;
    while (k % 2 == 0) {
        k /= 2;
        ++s.a;
    }
    s.alpha_res = k % 8;
    s.t = k / 8;
    return s;
}

const SpinorPair& spinor_pair(int i) {
    check_pair_index(i);
    return pairs()[static_cast<size_t>(i - 1)];
}

i64 base_rep_count(int i, i64 k, EnumBudget* budget) {
    check_pair_index(i);
    static const QuadForm three_squares = diagonal_form({1, 1, 1});
    static const QuadForm two_squares_double = diagonal_form({1, 1, 2});
    return rep_count(i == 3 ? two_squares_double : three_squares, k, budget);
}

Rat c_table(int i, i64 a, i64 alpha_res) {
    check_pair_index(i);
    if (alpha_res != 1 && alpha_res != 3 && alpha_res != 5 && alpha_res != 7)
        throw NonPositiveError("alpha residue must be odd in 1..7");
    auto is_one_of = [&](i64 aa, i64 rr) { return a == aa && alpha_res == rr; };
    switch (i) {
        case 1:
            if (a >= 4) return Rat(1);
            if (is_one_of(0, 1) || is_one_of(0, 5) || is_one_of(1, 1) || is_one_of(1, 5))
                return Rat(1, 3);
            if (is_one_of(2, 1) || is_one_of(2, 5)) return Rat(2, 3);
            if (a == 3) return Rat(1, 3);
            return Rat(0);
        case 2:
            if (a >= 4) return Rat(1);
            if (is_one_of(0, 1) || is_one_of(0, 5)) return Rat(1, 6);
            if (is_one_of(2, 1) || is_one_of(2, 5)) return Rat(2, 3);
            if (a == 3) return Rat(1, 3);
            return Rat(0);
        case 3:
            if (a >= 7) return Rat(1);
            if (is_one_of(0, 1)) return Rat(1, 4);
            if (is_one_of(2, 1) || is_one_of(2, 3)) return Rat(1, 6);
            if (is_one_of(3, 1)) return Rat(1, 3);
            if (is_one_of(3, 3)) return Rat(1, 2);
            if (a == 4) return Rat(1, 6);
            if (is_one_of(5, 1) || is_one_of(5, 5)) return Rat(1, 3);
            if (is_one_of(5, 3)) return Rat(1);
            if (a == 6) return Rat(1, 3);
            return Rat(0);
        default:  // 4
            if (a >= 4) return Rat(1);
            if (is_one_of(0, 1)) return Rat(1, 6);
            if (is_one_of(2, 1) || is_one_of(2, 5)) return Rat(1, 3);
            return Rat(0);
    }
}

i64 r_closed_form(int i, i64 k) {
    return r_closed_form(i, k, base_rep_count(i, k));
}

i64 r_closed_form(int i, i64 k, i64 base_count) {
    check_pair_index(i);
    if (k < 1) throw NonPositiveError("closed form needs k >= 1");
    TwoAdicSplit sp = two_adic_split(k);
    Rat value = c_table(i, sp.a, sp.alpha_res) * Rat(base_count) + Rat(square_correction(i, k));
    if (!value.is_integer() || value < Rat(0))
        throw NonIntegerResultError("closed form gave " + value.str() + " at k=" + std::to_string(k));
    return value.as_int();
}

i64 spinor_difference(int i, i64 k) {
    check_pair_index(i);
    if (k < 1) throw NonPositiveError("spinor difference needs k >= 1");
    return mul64(2, square_correction(i, k));
}

Rat genus_average(int i, i64 k, EnumBudget* budget) {
    const SpinorPair& p = spinor_pair(i);
    if (k < 0) throw NonPositiveError("genus average needs k >= 0");
    static const std::array<std::pair<i64, i64>, 4> orders = [] {
        std::array<std::pair<i64, i64>, 4> o{};
        for (int j = 0; j < 4; ++j)
            o[j] = {aut_order(pairs()[j].lattice), aut_order(pairs()[j].partner)};
        return o;
    }();
    auto [o1, o2] = orders[static_cast<size_t>(i - 1)];
    Rat w1(1, o1), w2(1, o2);
    Rat total = w1 * Rat(rep_count(p.lattice, k, budget)) + w2 * Rat(rep_count(p.partner, k, budget));
    return total / (w1 + w2);
}

CheckReport halving_identities_check(i64 upper, EnumBudget* budget) {
    CheckReport rep;
    if (upper < 1) return rep;  // vacuous
    ThetaSeries even_side = theta_series(diagonal_form({1, 1, 2}), 2 * upper + 1, budget);
    ThetaSeries square_side = theta_series(diagonal_form({1, 1, 1}), 4 * upper + 2, budget);
    for (i64 k = 1; k <= upper; ++k) {
        if (even_side.counts[static_cast<size_t>(2 * k)] != square_side.counts[static_cast<size_t>(k)]) {
            rep.ok = false;
            rep.counterexample = k;
            rep.detail = "r(2k,<1,1,2>) != r(k,<1,1,1>) at k=" + std::to_string(k);
            return rep;
        }
        if (3 * even_side.counts[static_cast<size_t>(2 * k + 1)] !=
            square_side.counts[static_cast<size_t>(4 * k + 2)]) {
            rep.ok = false;
            rep.counterexample = k;
            rep.detail = "3 r(2k+1,<1,1,2>) != r(4k+2,<1,1,1>) at k=" + std::to_string(k);
            return rep;
        }
    }
    return rep;
}

}  // namespace tqf
