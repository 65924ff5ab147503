#include "uknap/bounds.hpp"

#include <stdexcept>

namespace uknap::bounds {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

std::vector<Int> sylvester_table(int upto) {
  require(upto >= 1, "sylvester: index must be >= 1");
  std::vector<Int> a;
  a.reserve(static_cast<std::size_t>(upto));
  a.push_back(2);
  for (int n = 2; n <= upto; ++n) {
    const Int& prev = a.back();
    a.push_back(prev * (prev - 1) + 1);
  }
  return a;
}

Int sylvester(int n) { return sylvester_table(n).back(); }

Rat partial_sum_S(int N) {
  require(N >= 0, "partial_sum_S: N must be >= 0");
  if (N == 0) return Rat(0);
  Rat s = 0;
  for (const Int& a : sylvester_table(N)) s += make_rat(Int(1), a - 1);
  return s;
}

Rat t_value(int N) {
  require(N >= 1, "t_value: N must be >= 1");
  Int aN = sylvester(N);
  Int den = (aN - 1) * (aN - 1);
  return make_rat(aN, den) + partial_sum_S(N - 1);
}

std::pair<Rat, Rat> s_infinity_bracket(int depth) {
  require(depth >= 1, "s_infinity_bracket: depth must be >= 1");
  Rat lo = partial_sum_S(depth + 1);
  Rat hi = t_value(depth);
  // Certify hi: the limit is S_M + (tail after M), and the tail obeys the
  // halving bound sum_{n>M} 1/(a_n - 1) <= 2/(a_{M+1} - 1) because
  // a_{n+1} - 1 = a_n(a_n - 1) >= 2(a_n - 1). So it suffices that
  // S_M + 2/(a_{M+1} - 1) <= hi, checked exactly at M = depth + 2.
  int M = depth + 2;
  Rat tail_bound = make_rat(Int(2), sylvester(M + 1) - 1);
  if (!(partial_sum_S(M) + tail_bound <= hi)) {
    throw std::runtime_error("s_infinity_bracket: tail certificate failed");
  }
  if (!(lo < hi)) throw std::runtime_error("s_infinity_bracket: empty bracket");
  return {lo, hi};
}

bool IdentityReport::all_passed() const {
  for (const IdentityCheck& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

IdentityReport check_identities(int N) {
  require(N >= 1, "check_identities: N must be >= 1");
  IdentityReport report;
  std::vector<Int> a = sylvester_table(N + 1);

  // Recursion vs product form: a_{n+1} = 1 + prod_{i<=n} a_i.
  Int prod = 1;
  for (int n = 1; n <= N; ++n) {
    prod *= a[static_cast<std::size_t>(n - 1)];
    bool ok = a[static_cast<std::size_t>(n)] == prod + 1;
    report.checks.push_back({"a_" + std::to_string(n + 1) + " recursion = product form", ok});
  }

  // Telescoping: 1/(a_n - 1) = 1 - sum_{j<n} 1/a_j.
  Rat one_minus_sum = 1;
  for (int n = 1; n <= N; ++n) {
    Rat lhs = make_rat(Int(1), a[static_cast<std::size_t>(n - 1)] - 1);
    bool ok = lhs == one_minus_sum;
    report.checks.push_back(
        {"1/(a_" + std::to_string(n) + "-1) = 1 - sum_{j<" + std::to_string(n) + "} 1/a_j", ok});
    one_minus_sum -= make_rat(Int(1), a[static_cast<std::size_t>(n - 1)]);
  }

  // Equality at the top index: ((a_N-1)^2/a_N)(1 - S_{N-1}/T_N) = 1/T_N.
  Rat tN = t_value(N);
  {
    Int aN = a[static_cast<std::size_t>(N - 1)];
    Rat lhs = make_rat((aN - 1) * (aN - 1), aN) * (1 - partial_sum_S(N - 1) / tN);
    bool ok = lhs == 1 / tN;
    report.checks.push_back({"((a_N-1)^2/a_N)(1 - S_{N-1}/T_N) = 1/T_N, N=" + std::to_string(N), ok});
  }

  // Strict inequality at every lower index.
  for (int k = 1; k <= N; ++k) {
    Int ak = a[static_cast<std::size_t>(k - 1)];
    Rat lhs = make_rat(ak * (ak - 1), ak + 1) * (1 - partial_sum_S(k - 1) / tN);
    bool ok = lhs > 1 / tN;
    report.checks.push_back(
        {"(a_k(a_k-1)/(a_k+1))(1 - S_{k-1}/T_N) > 1/T_N, k=" + std::to_string(k), ok});
  }

  return report;
}

namespace {

// Multiply ascending-coefficient poly by (x - r).
std::vector<Rat> mul_linear(const std::vector<Rat>& p, const Rat& r) {
  std::vector<Rat> out(p.size() + 1, Rat(0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i + 1] += p[i];
    out[i] -= r * p[i];
  }
  return out;
}

void add_into(std::vector<Rat>& acc, const std::vector<Rat>& p, const Rat& scale) {
  if (acc.size() < p.size()) acc.resize(p.size(), Rat(0));
  for (std::size_t i = 0; i < p.size(); ++i) acc[i] += scale * p[i];
}

}  // namespace

Rat evaluate_polynomial(const std::vector<Rat>& coeffs, const Rat& x) {
  Rat acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

std::vector<Rat> root_polynomial(int N) {
  require(N >= 3, "root_polynomial: N must be >= 3");
  std::vector<Int> a = sylvester_table(N);
  std::vector<Rat> roots;  // 1/(a_i - 1), i = 1..N
  roots.reserve(static_cast<std::size_t>(N));
  for (const Int& ai : a) roots.push_back(make_rat(Int(1), ai - 1));

  std::vector<Rat> prod_all = {Rat(1)};
  for (const Rat& r : roots) prod_all = mul_linear(prod_all, r);

  std::vector<Rat> prod_tail = {Rat(1)};  // prod over i = 3..N
  for (int i = 3; i <= N; ++i) prod_tail = mul_linear(prod_tail, roots[static_cast<std::size_t>(i - 1)]);

  // sum_{i=3..N} 1/(a_i-1) * prod_{j=i+1..N}(c - 1/(a_j-1)), built from the
  // innermost suffix product outward.
  std::vector<Rat> sum_terms = {Rat(0)};
  std::vector<Rat> suffix = {Rat(1)};  // prod over j = i+1..N, starting at i = N
  for (int i = N; i >= 3; --i) {
    add_into(sum_terms, suffix, roots[static_cast<std::size_t>(i - 1)]);
    suffix = mul_linear(suffix, roots[static_cast<std::size_t>(i - 1)]);
  }

  std::vector<Rat> p = prod_all;
  add_into(p, prod_tail, make_rat(-1, 2));
  std::vector<Rat> shifted = mul_linear(sum_terms, make_rat(1, 2));  // (c - 1/2) * sum
  add_into(p, shifted, Rat(-1));
  return p;
}

LowerBoundSolution lower_bound_cN(int N, const Rat& precision) {
  require(N >= 3, "lower_bound_cN: N must be >= 3");
  require(precision > 0, "lower_bound_cN: precision must be positive");
  std::vector<Rat> p = root_polynomial(N);

  // Descending scan from 2 at step 1/64 to bracket the largest sign change.
  const Rat step = make_rat(1, 64);
  Rat hi = 2;
  Rat p_hi = evaluate_polynomial(p, hi);
  if (p_hi <= 0) throw std::runtime_error("lower_bound_cN: expected positive sign at 2");
  Rat lo;
  bool found = false;
  for (int k = 1; k <= 64; ++k) {
    lo = 2 - k * step;
    Rat p_lo = evaluate_polynomial(p, lo);
    if (p_lo <= 0) {
      found = true;
      if (p_lo == 0) hi = lo;  // scan landed on the root exactly
      break;
    }
    hi = lo;
  }
  if (!found) throw std::runtime_error("lower_bound_cN: no sign change in (1, 2]");

  // Bisection, keeping P(lo) <= 0 < P(hi) until the bracket is narrow enough.
  while (hi - lo >= precision) {
    Rat mid = (lo + hi) / 2;
    Rat p_mid = evaluate_polynomial(p, mid);
    if (p_mid == 0) {
      lo = mid;
      hi = mid;
      break;
    }
    if (p_mid > 0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  LowerBoundSolution out;
  out.N = N;
  out.c_lo = lo;
  out.c_hi = hi;
  out.c = (lo + hi) / 2;

  std::vector<Int> a = sylvester_table(N);
  out.v.assign(static_cast<std::size_t>(N), Rat(0));
  out.v[static_cast<std::size_t>(N - 1)] = 1;
  for (int i = N - 1; i >= 2; --i) {
    Rat root_next = make_rat(Int(1), a[static_cast<std::size_t>(i)] - 1);
    out.v[static_cast<std::size_t>(i - 1)] = (out.c - root_next) * out.v[static_cast<std::size_t>(i)];
  }
  out.v[0] = out.v[1] / (out.c - make_rat(1, 2));

  for (int i = 3; i <= N; ++i) {
    const Rat& vi = out.v[static_cast<std::size_t>(i - 1)];
    const Rat& vprev = out.v[static_cast<std::size_t>(i - 2)];
    out.residuals.push_back(out.c - (vprev + vi * make_rat(Int(1), a[static_cast<std::size_t>(i - 1)] - 1)) / vi);
  }
  out.residuals.push_back(out.c - (out.v[1] + out.v[0] / 2) / out.v[0]);
  Rat recovery = out.v[1] + out.v[0] / 2;
  for (int i = 3; i <= N; ++i) {
    recovery += out.v[static_cast<std::size_t>(i - 1)] * make_rat(Int(1), a[static_cast<std::size_t>(i - 1)] - 1);
  }
  out.residuals.push_back(out.c - recovery / out.v[1]);

  // Tolerance: width times a coarse Lipschitz bound. |P'| on (1, 2] is at
  // most sum_k k |p_k| 2^(k-1); the last residual equals P(c)/((c - 1/2) v_2)
  // whose denominator is minimized at the bracket's low end (v_2(c) is a
  // product of increasing positive factors for c > 1).
  Rat lipschitz_p = 0;
  Rat pow2 = 1;  // 2^(k-1) built incrementally
  for (std::size_t k = 1; k < p.size(); ++k) {
    Rat mag = p[k] < 0 ? Rat(-p[k]) : p[k];
    lipschitz_p += Rat(static_cast<long>(k)) * mag * pow2;
    pow2 *= 2;
  }
  Rat v2_at_lo = 1;
  for (int j = 3; j <= N; ++j) {
    v2_at_lo *= (lo - make_rat(Int(1), a[static_cast<std::size_t>(j - 1)] - 1));
  }
  out.tolerance = (hi - lo) * lipschitz_p / ((lo - make_rat(1, 2)) * v2_at_lo);

  return out;
}

}  // namespace uknap::bounds
