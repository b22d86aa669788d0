#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Hypothesis sets of the comparison-principle statements T1..T8 and the
// critical exponent q* = n(alpha-1)/(n-alpha). Boundary comparisons are
// exact (epsilon 0); callers supply exact values where criticality matters.
//
//   T1: n = 1, 1 < alpha <= 2, q > 0            -> ordered pairs coincide
//   T2: n = 2, alpha = 2, q > 0                 -> ordered pairs coincide
//   T3: n >= 2, 1 < alpha <= 2, n > alpha,
//       alpha-1 < q <= q*, q >= 1               -> ordered pairs coincide
//   T4: same but q > q*, q >= 1                 -> growth of (u-v)^{q-nu} bounded
//   T5: corollary of T4 (power-gap pairs excluded)
//   T6: corollary of T4 (constant-gap pairs excluded)
//   T7: n >= 2, 1 < alpha <= 2, n > alpha, 0 < q <= 1
//                                               -> T7-family growth bounded
//   T8: n >= 3, alpha = 2, q = 1                -> no strictly ordered pairs

namespace liouville {

struct RegimeQuery {
    int n = 1;
    double alpha = 2.0;
    double q = 1.0;
};

enum class Theorem { T1, T2, T3, T4, T5, T6, T7, T8 };
std::string_view theorem_name(Theorem t);

struct RegimeDecision {
    std::vector<Theorem> applicable;  // ascending tag order
    std::optional<double> critical_q;  // n(alpha-1)/(n-alpha), present iff n > alpha
    std::vector<std::pair<Theorem, std::string>> notes;
    // the region n > alpha, alpha-1 < q < 1, q <= q* is not settled by any
    // catalogued statement; classify reports it instead of guessing
    bool uncovered_gap = false;
    std::string gap_note;
};

// n(alpha-1)/(n-alpha); empty when n <= alpha (the exponent is undefined)
std::optional<double> critical_exponent(int n, double alpha);

RegimeDecision classify(const RegimeQuery& query);

}  // namespace liouville
