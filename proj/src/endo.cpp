#include "steinerlab/endo.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace steinerlab {

std::vector<std::uint64_t> default_primes() {
  return {kDefaultPrimes[0], kDefaultPrimes[1], kDefaultPrimes[2]};
}

namespace {

void check_pencil_slices(const SteinerPencil& p) {
  p.shape.require_valid();
  if (static_cast<long long>(p.slices.size()) != p.shape.num_vars)
    throw std::invalid_argument("pencil has " + std::to_string(p.slices.size()) +
                                " slices for N = " + std::to_string(p.shape.num_vars));
  for (const IntMatrix& m : p.slices)
    if (m.rows != static_cast<std::size_t>(p.shape.untwisted) ||
        m.cols != static_cast<std::size_t>(p.shape.twisted))
      throw std::invalid_argument("pencil slice shape mismatch");
}

}  // namespace

IntertwinerSystem build_system(const SteinerPencil& p) {
  check_pencil_slices(p);
  if (p.shape.twisted < 1) throw std::invalid_argument("build_system: need s >= 1");
  const std::size_t s = static_cast<std::size_t>(p.shape.twisted);
  const std::size_t t = static_cast<std::size_t>(p.shape.untwisted);
  const std::size_t n = p.slices.size();

  IntertwinerSystem sys;
  sys.unknowns = s * s + t * t;
  sys.equations = n * t * s;
  sys.matrix = IntMatrix(sys.equations, sys.unknowns);

  std::size_t row = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const IntMatrix& m = p.slices[i];
    for (std::size_t r = 0; r < t; ++r) {
      for (std::size_t c = 0; c < s; ++c, ++row) {
        // (B*M_i)_{r,c} = sum_q B_{r,q} M_i(q,c)
        for (std::size_t q = 0; q < t; ++q)
          sys.matrix.at(row, s * s + r * t + q) += m.at(q, c);
        // -(M_i*A)_{r,c} = -sum_p M_i(r,p) A_{p,c}
        for (std::size_t a = 0; a < s; ++a)
          sys.matrix.at(row, a * s + c) -= m.at(r, a);
      }
    }
  }
  return sys;
}

IntertwinerSystem build_graded_system(const GradedResolution& res) {
  res.require_valid();
  const std::size_t s = res.twists.size();
  const std::size_t t = static_cast<std::size_t>(res.rows);
  const long long n = res.num_vars;

  // Monomial tables for every degree in play.
  std::map<long long, std::vector<std::vector<int>>> monos;
  std::map<long long, std::map<std::vector<int>, std::size_t>> index_of;
  auto ensure_degree = [&](long long d) {
    if (monos.count(d)) return;
    auto list = monomials_lex(n, d);
    auto& idx = index_of[d];
    for (std::size_t i = 0; i < list.size(); ++i) idx[list[i]] = i;
    monos[d] = std::move(list);
  };
  for (std::size_t j = 0; j < s; ++j) ensure_degree(res.twists[j]);
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = 0; b < s; ++b)
      if (res.twists[b] >= res.twists[a]) ensure_degree(res.twists[b] - res.twists[a]);

  // Unknown offsets for the phi_A blocks, row-major over (target, source).
  const std::size_t kAbsent = static_cast<std::size_t>(-1);
  std::vector<std::size_t> block_offset(s * s, kAbsent);
  std::size_t a_unknowns = 0;
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = 0; b < s; ++b) {
      if (res.twists[b] < res.twists[a]) continue;
      block_offset[a * s + b] = a_unknowns;
      a_unknowns += monos[res.twists[b] - res.twists[a]].size();
    }
  const std::size_t b_base = a_unknowns;

  IntertwinerSystem sys;
  sys.unknowns = a_unknowns + t * t;
  sys.equations = 0;
  for (std::size_t j = 0; j < s; ++j) sys.equations += t * monos[res.twists[j]].size();
  sys.matrix = IntMatrix(sys.equations, sys.unknowns);

  std::size_t eq_base = 0;
  std::vector<int> prod(static_cast<std::size_t>(n));
  for (std::size_t j = 0; j < s; ++j) {
    const long long dj = res.twists[j];
    const std::size_t mc = monos[dj].size();
    const IntMatrix& cj = res.columns[j];
    const auto& target_index = index_of[dj];

    // phi_B side: coefficient of monomial mu in (phi_B * M)_{r,j} is
    // sum_q phi_B(r,q) * cj(mu, q).
    for (std::size_t r = 0; r < t; ++r)
      for (std::size_t mu = 0; mu < mc; ++mu)
        for (std::size_t q = 0; q < t; ++q)
          sys.matrix.at(eq_base + r * mc + mu, b_base + r * t + q) += cj.at(mu, q);

    // phi_A side: (M * phi_A)_{r,j} = sum_a M_{r,a} * phi_A(a, j); the
    // product of a degree-d_a monomial of M with a degree-(d_j - d_a)
    // unknown monomial lands on their exponent sum.
    for (std::size_t a = 0; a < s; ++a) {
      std::size_t off = block_offset[a * s + j];
      if (off == kAbsent) continue;
      const long long da = res.twists[a];
      const auto& m_monos = monos[da];
      const auto& u_monos = monos[dj - da];
      const IntMatrix& ca = res.columns[a];
      for (std::size_t im = 0; im < m_monos.size(); ++im)
        for (std::size_t iu = 0; iu < u_monos.size(); ++iu) {
          for (std::size_t v = 0; v < prod.size(); ++v)
            prod[v] = m_monos[im][v] + u_monos[iu][v];
          std::size_t mu = target_index.at(prod);
          for (std::size_t r = 0; r < t; ++r)
            sys.matrix.at(eq_base + r * mc + mu, off + iu) -= ca.at(im, r);
        }
    }
    eq_base += t * mc;
  }
  return sys;
}

KernelMode parse_kernel_mode(const std::string& name) {
  if (name == "modular") return KernelMode::Modular;
  if (name == "rational") return KernelMode::Rational;
  if (name == "both") return KernelMode::Both;
  throw std::invalid_argument("unknown mode '" + name +
                              "', expected modular, rational, or both");
}

std::string to_string(KernelMode mode) {
  switch (mode) {
    case KernelMode::Modular: return "modular";
    case KernelMode::Rational: return "rational";
    case KernelMode::Both: return "both";
  }
  return "?";
}

namespace {

KernelReport measure_system(const IntertwinerSystem& sys, KernelMode mode,
                            const std::vector<std::uint64_t>& primes) {
  KernelReport rep;
  if (mode != KernelMode::Rational) {
    if (primes.empty())
      throw std::invalid_argument("modular measurement needs at least one prime");
    std::size_t best = sys.unknowns;
    for (std::uint64_t p : primes) {
      std::size_t d = kernel_dim_mod_p(PrimeFieldMatrix::reduce(sys.matrix, p));
      rep.per_prime_dims.emplace_back(p, d);
      best = std::min(best, d);
    }
    rep.dim = best;
  }
  if (mode != KernelMode::Modular)
    rep.rational_dim = kernel_dim_rational(RationalMatrix::from_int(sys.matrix));

  switch (mode) {
    case KernelMode::Rational:
      rep.dim = *rep.rational_dim;
      rep.agreement = true;
      break;
    case KernelMode::Modular: {
      rep.agreement = true;
      for (const auto& [p, d] : rep.per_prime_dims)
        if (d != rep.dim) rep.agreement = false;
      break;
    }
    case KernelMode::Both:
      rep.agreement = rep.dim == *rep.rational_dim;
      break;
  }
  return rep;
}

}  // namespace

KernelReport intertwiner_dim(const SteinerPencil& p, KernelMode mode,
                             const std::vector<std::uint64_t>& primes) {
  check_pencil_slices(p);
  if (p.shape.twisted < 1) throw std::invalid_argument("intertwiner_dim: need s >= 1");
  if (!p.full_column_rank)
    throw std::invalid_argument(
        "intertwiner_dim: pencil is not full column rank, so the kernel "
        "dimension would not measure h0(End E)");
  KernelReport rep = measure_system(build_system(p), mode, primes);
  if (rep.dim < 1)
    throw std::logic_error("intertwiner_dim: identity pair missing from kernel");
  return rep;
}

KernelReport graded_intertwiner_dim(const GradedResolution& r, KernelMode mode,
                                    const std::vector<std::uint64_t>& primes) {
  KernelReport rep = measure_system(build_graded_system(r), mode, primes);
  if (rep.dim < 1)
    throw std::logic_error("graded_intertwiner_dim: identity pair missing from kernel");
  return rep;
}

namespace {

// h(d): dimension of degree-d forms for d >= 0, zero in the window
// -N < d < 0; anything at or below -N is outside the formula's validity.
long long forms_dim(long long num_vars, long long d) {
  if (d >= 0) return monomial_count(num_vars, d);
  if (d > -num_vars) return 0;
  throw std::invalid_argument("chi formula undefined at degree " + std::to_string(d) +
                              " for N = " + std::to_string(num_vars) +
                              " (needs degree > -N)");
}

}  // namespace

BigInt chi_end_graded(long long num_vars, const std::vector<long long>& twists,
                      long long rows) {
  if (num_vars < 3) throw std::invalid_argument("chi_end_graded: need N >= 3");
  if (rows < 1) throw std::invalid_argument("chi_end_graded: need t >= 1");
  if (twists.empty()) throw std::invalid_argument("chi_end_graded: no twists");
  for (long long d : twists) {
    if (d < 1) throw std::invalid_argument("chi_end_graded: twists must be >= 1");
    if (d >= num_vars)
      throw std::invalid_argument("chi_end_graded: twist " + std::to_string(d) +
                                  " needs h below degree -N; only twists < N are supported");
  }
  auto chi_f = [&](long long d) {
    BigInt acc = BigInt(static_cast<long>(rows)) * static_cast<long>(forms_dim(num_vars, d));
    for (long long dj : twists) acc -= static_cast<long>(forms_dim(num_vars, d - dj));
    return acc;
  };
  BigInt total = BigInt(static_cast<long>(rows)) * chi_f(0);
  for (long long dj : twists) total -= chi_f(dj);
  return total;
}

EndoCohomology endo_cohomology(const SteinerPencil& p, KernelMode mode,
                               const std::vector<std::uint64_t>& primes) {
  EndoCohomology out;
  out.chi = chi_end(p.shape);
  out.h0 = intertwiner_dim(p, mode, primes).dim;
  out.h1 = BigInt(static_cast<long>(out.h0)) - out.chi;
  out.h1_conditional = false;
  if (out.h1 < 0) throw std::logic_error("endo_cohomology: negative h1");
  return out;
}

EndoCohomology endo_cohomology(const GradedResolution& r, KernelMode mode,
                               const std::vector<std::uint64_t>& primes) {
  EndoCohomology out;
  out.chi = chi_end_graded(r.num_vars, r.twists, r.rows);
  out.h0 = graded_intertwiner_dim(r, mode, primes).dim;
  out.h1 = BigInt(static_cast<long>(out.h0)) - out.chi;
  out.h1_conditional = !r.all_unit_twists();
  if (out.h1 < 0) throw std::logic_error("endo_cohomology: negative h1");
  return out;
}

}  // namespace steinerlab
