#pragma once

#include "tqf/enumerate.hpp"
#include "tqf/rational.hpp"

namespace tqf {

// Diagonal form x^2 + 2^alpha y^2 + 2^beta z^2, alpha <= beta.
struct BellIndex {
    i64 alpha = 0;
    i64 beta = 0;
};

// 2-adic decomposition k = 2^a (8t + alpha_res) with alpha_res in {1,3,5,7}.
struct TwoAdicSplit {
    i64 a = 0;
    i64 alpha_res = 1;
    i64 t = 0;
};

// One of the four built-in genus-mates pairs: the diagonal lattice and the
// single class of the other spinor genus in its genus.
struct SpinorPair {
    int index;            // 1..4
    QuadForm lattice;     // diagonal representative
    QuadForm partner;     // the other spinor genus (one class)
};

QuadForm bell_form(const BellIndex& idx);

// x^2 + y^2 + 2^sgn(alpha+beta) z^2 where sgn(a) = 1 for odd a, 0 otherwise.
QuadForm reduced_companion(const BellIndex& idx);

TwoAdicSplit two_adic_split(i64 k);

const SpinorPair& spinor_pair(int i);  // i in 1..4

// r(k, <1,1,1>) and r(k, <1,1,2>); which one a pair uses.
i64 base_rep_count(int i, i64 k, EnumBudget* budget = nullptr);

// Genus-mean constant c_i(a, alpha_res); zero off the tabulated rows.
Rat c_table(int i, i64 a, i64 alpha_res);

// Closed-form value of r(k, L_i); throws NonIntegerResult on a
// transcription bug (never for the shipped table).
i64 r_closed_form(int i, i64 k);
i64 r_closed_form(int i, i64 k, i64 base_count);  // with r_j(k) precomputed

// Closed-form value of r(k, L_i) - r(k, L_i'): twice the square-class
// correction term; the only nonzero case is odd square k with a 2 sqrt(k)
// magnitude and parity-determined sign.
i64 spinor_difference(int i, i64 k);

// Weighted genus average of the representation numbers over the two
// classes, weights 1/o; computed from enumeration, not from the table.
Rat genus_average(int i, i64 k, EnumBudget* budget = nullptr);

struct CheckReport {
    bool ok = true;
    i64 counterexample = -1;
    std::string detail;
};

// Verifies r(2k, <1,1,2>) = r(k, <1,1,1>) and
// 3 r(2k+1, <1,1,2>) = r(4k+2, <1,1,1>) for all k <= upper.
CheckReport halving_identities_check(i64 upper, EnumBudget* budget = nullptr);

}  // namespace tqf
