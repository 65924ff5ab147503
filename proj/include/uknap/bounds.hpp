#pragma once

#include <string>
#include <utility>
#include <vector>

#include "uknap/rat.hpp"

namespace uknap::bounds {

// a_1 = 2, a_{n+1} = a_n(a_n - 1) + 1; equivalently a_n = 1 + prod_{i<n} a_i.
// Doubly exponential: a_7 = 10650056950807, a_8 ~ 1.13e26.
Int sylvester(int n);
std::vector<Int> sylvester_table(int upto);  // a_1 .. a_upto

// S_N = sum_{n<=N} 1/(a_n - 1), with S_0 = 0. Strictly increasing in N and
// converging to the optimal general-instance competitive ratio from below.
Rat partial_sum_S(int N);

// T_N = a_N/(a_N - 1)^2 + S_{N-1}. Strictly decreasing in N, bounds the same
// limit from above, and satisfies T_N - S_N = 1/(a_N - 1)^2 exactly.
Rat t_value(int N);

// Certified bracket (lo, hi) with lo < S_infinity <= hi, where
// lo = S_{depth+1} and hi = T_depth. The upper side is certified inside the
// function by the halving tail bound: a_{n+1} - 1 = a_n(a_n - 1) >= 2(a_n - 1)
// for a_n >= 2, so sum_{n>M} 1/(a_n - 1) <= 2/(a_{M+1} - 1), and with
// M = depth + 2 the inequality S_M + 2/(a_{M+1} - 1) <= T_depth is checked in
// exact arithmetic. depth = 5 already pins the limit inside
// (1.69103, 1.69104).
std::pair<Rat, Rat> s_infinity_bracket(int depth);

struct IdentityCheck {
  std::string label;
  bool passed;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_passed() const;
};

// Verifies, in exact arithmetic:
//   - a_{n+1} = a_n(a_n - 1) + 1 against the independent product form
//     a_{n+1} = 1 + prod_{i<=n} a_i, for n = 1..N;
//   - the telescoping identity 1/(a_n - 1) = 1 - sum_{j<n} 1/a_j, n = 1..N;
//   - ((a_N - 1)^2 / a_N) * (1 - S_{N-1}/T_N) = 1/T_N  (equality);
//   - (a_k(a_k - 1)/(a_k + 1)) * (1 - S_{k-1}/T_N) > 1/T_N, k = 1..N (strict).
IdentityReport check_identities(int N);

// Ascending coefficients of the degree-N polynomial whose largest root in
// (1, 2) is the adversarial lower bound c_N:
//   P(c) = prod_{i=1..N} (c - 1/(a_i - 1))
//        - 1/2 * prod_{i=3..N} (c - 1/(a_i - 1))
//        - (c - 1/2) * sum_{i=3..N} [ 1/(a_i - 1) * prod_{j=i+1..N} (c - 1/(a_j - 1)) ].
// Requires N >= 3.
std::vector<Rat> root_polynomial(int N);

Rat evaluate_polynomial(const std::vector<Rat>& coeffs, const Rat& x);

struct LowerBoundSolution {
  int N = 0;
  // Certified root bracket: P(c_lo) <= 0 <= P(c_hi) with a sign change across
  // it (or c_lo == c_hi when the scan hits the root exactly).
  Rat c_lo, c_hi;
  Rat c;  // bracket midpoint, the reported ratio
  // v[i] is the value scale v_{i+1}; v.front() = v_1, v.back() = v_N = 1.
  // Reconstructed at c: v_i = (c - 1/(a_{i+1} - 1)) v_{i+1} for i >= 2, and
  // v_1 = v_2 / (c - 1/2). All positive.
  std::vector<Rat> v;
  // Exact defect of each defining equation at (c, v), in order: the N - 2
  // recurrence rows c = (v_{i-1} + v_i/(a_i - 1))/v_i for i = 3..N, then
  // c = (v_2 + v_1/2)/v_1, then c = (v_2 + v_1/2 + sum v_i/(a_i - 1))/v_2.
  // The first N - 1 vanish identically by construction; the last equals
  // P(c) / ((c - 1/2) v_2) and is bounded by `tolerance`.
  std::vector<Rat> residuals;
  // (c_hi - c_lo) * L where L bounds |d residual / dc| over the bracket:
  // L = L_P / ((c_lo - 1/2) v_2(c_lo)) with L_P = sum_k k |p_k| 2^(k-1), a
  // coarse sup of |P'| on (1, 2].
  Rat tolerance;
};

// Bisects P to a bracket narrower than `precision` (after an initial
// descending scan from 2 at step 1/64 to find the sign change) and
// reconstructs the value scales and residuals. Requires N >= 3 and
// precision > 0; throws std::runtime_error if no sign change exists in
// (1, 2], std::invalid_argument on bad arguments.
LowerBoundSolution lower_bound_cN(int N, const Rat& precision);

}  // namespace uknap::bounds
