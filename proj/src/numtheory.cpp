#include "steinerlab/numtheory.hpp"

#include <stdexcept>

namespace steinerlab {

void BundleShape::require_valid() const {
  if (num_vars < 3) {
    throw std::invalid_argument("BundleShape: need N >= 3, got N = " +
                                std::to_string(num_vars));
  }
  if (untwisted < 1 || twisted < 0) {
    throw std::invalid_argument("BundleShape: need t >= 1 and s >= 0, got s = " +
                                std::to_string(twisted) +
                                ", t = " + std::to_string(untwisted));
  }
}

BigInt chi_end(const BundleShape& shape) {
  shape.require_valid();
  const BigInt s(static_cast<long>(shape.twisted));
  const BigInt t(static_cast<long>(shape.untwisted));
  const BigInt n(static_cast<long>(shape.num_vars));
  return s * s - n * s * t + t * t;
}

std::vector<BigInt> fibonacci_sequence(long long num_vars, long long k_max) {
  if (num_vars < 3) {
    throw std::invalid_argument("fibonacci_sequence: need N >= 3");
  }
  if (k_max < 0) {
    throw std::invalid_argument("fibonacci_sequence: need k_max >= 0");
  }
  std::vector<BigInt> seq;
  seq.reserve(static_cast<std::size_t>(k_max) + 1);
  seq.emplace_back(0);
  if (k_max >= 1) seq.emplace_back(1);
  for (long long k = 2; k <= k_max; ++k) {
    seq.push_back(static_cast<long>(num_vars) * seq[k - 1] - seq[k - 2]);
  }
  return seq;
}

std::vector<PellSolution> pell_solutions(long long num_vars, const BigInt& s_bound) {
  if (num_vars < 3) {
    throw std::invalid_argument("pell_solutions: need N >= 3");
  }
  std::vector<PellSolution> out;
  if (s_bound < 0) return out;
  const long n = static_cast<long>(num_vars);
  const BigInt disc = BigInt(n) * n - 4;
  BigInt r = 2;
  BigInt s = 0;
  while (s <= s_bound) {
    // t = (N*s + r)/2 is integral: r and N*s always share parity.
    BigInt t_num = n * s + r;
    BigInt r_num = disc * s + n * r;
    if (mpz_odd_p(t_num.get_mpz_t()) || mpz_odd_p(r_num.get_mpz_t())) {
      throw std::logic_error("pell_solutions: parity invariant violated");
    }
    out.push_back(PellSolution{r, s, t_num / 2});
    BigInt next_r = r_num / 2;
    s = t_num / 2;
    r = next_r;
  }
  return out;
}

std::vector<std::pair<BigInt, BigInt>> fibonacci_pairs(long long num_vars,
                                                       const BigInt& t_bound) {
  if (num_vars < 3) {
    throw std::invalid_argument("fibonacci_pairs: need N >= 3");
  }
  std::vector<std::pair<BigInt, BigInt>> out;
  BigInt prev = 0;
  BigInt cur = 1;
  while (cur <= t_bound) {
    out.emplace_back(prev, cur);
    BigInt next = static_cast<long>(num_vars) * cur - prev;
    prev = cur;
    cur = next;
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::SimpleGeneric: return "SimpleGeneric";
    case Verdict::Exceptional: return "Exceptional";
    case Verdict::NonSimpleAll: return "NonSimpleAll";
  }
  return "?";
}

std::string ClassifyResult::verdict_label() const {
  if (verdict == Verdict::Exceptional) {
    return "Exceptional(" + std::to_string(fib_index.value()) + ")";
  }
  return to_string(verdict);
}

ClassifyResult classify(const BundleShape& shape) {
  shape.require_valid();
  if (shape.untwisted <= shape.twisted) {
    throw std::invalid_argument("classify: need t > s, got s = " +
                                std::to_string(shape.twisted) +
                                ", t = " + std::to_string(shape.untwisted));
  }

  ClassifyResult res;
  res.chi = chi_end(shape);
  res.is_bundle = shape.is_bundle();

  if (res.chi <= 0) {
    res.verdict = Verdict::SimpleGeneric;
    return res;
  }
  if (res.chi >= 2) {
    res.verdict = Verdict::NonSimpleAll;
    return res;
  }

  // chi = 1: (s,t) must be a consecutive pair of the recurrence. Locate k
  // and check both coordinates rather than trusting that identity blindly.
  res.verdict = Verdict::Exceptional;
  const long nv = static_cast<long>(shape.num_vars);
  BigInt prev = 0;
  BigInt cur = 1;
  long long k = 0;
  while (cur < static_cast<long>(shape.untwisted)) {
    BigInt next = nv * cur - prev;
    prev = cur;
    cur = next;
    ++k;
  }
  if (cur != static_cast<long>(shape.untwisted) || prev != static_cast<long>(shape.twisted)) {
    throw std::logic_error("classify: chi = 1 but (s,t) is not a consecutive "
                           "recurrence pair; shape (" +
                           std::to_string(shape.num_vars) + "," +
                           std::to_string(shape.twisted) + "," +
                           std::to_string(shape.untwisted) + ")");
  }
  res.fib_index = k;
  return res;
}

}  // namespace steinerlab
