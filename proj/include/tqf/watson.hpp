#pragma once

#include <vector>

#include "tqf/enumerate.hpp"
#include "tqf/qform.hpp"

namespace tqf {

// How the restricted Gram matrix is rescaled to a primitive lattice.
enum class RescaleMode {
    PowerOfP,   // divide by the largest power of p dividing every entry (default)
    GlobalGcd,  // divide by the full gcd of the entries (experimental)
};

struct WatsonStep {
    QuadForm input;
    i64 prime = 2;
    Mat sublattice_basis;   // columns express the sublattice in the input basis
    i64 scale_divisor = 1;  // content removed from the restricted Gram
    QuadForm output;
};

bool is_prime(i64 p);

// HNF basis of {x in Z^n : Q(x+z) = Q(z) mod p for all z}, equivalently
// Q(x) = 0 and 2 B(x, z) = 0 mod p.
Mat lambda_sublattice(const QuadForm& f, i64 p);

WatsonStep watson_transform(const QuadForm& f, i64 p,
                            RescaleMode mode = RescaleMode::PowerOfP);

// Iterates the transform, feeding each output into the next step, until the
// output is isometric to its input (fixed point, included) or max_steps.
std::vector<WatsonStep> watson_chain(const QuadForm& f, i64 p, i64 max_steps,
                                     RescaleMode mode = RescaleMode::PowerOfP,
                                     EnumBudget* budget = nullptr);

}  // namespace tqf
