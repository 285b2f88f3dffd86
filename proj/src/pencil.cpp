#include "steinerlab/pencil.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace steinerlab {

SteinerPencil SteinerPencil::from_slices(const BundleShape& shape,
                                         std::vector<IntMatrix> slices) {
  shape.require_valid();
  if (static_cast<long long>(slices.size()) != shape.num_vars) {
    throw std::invalid_argument("from_slices: expected " + std::to_string(shape.num_vars) +
                                " slices, got " + std::to_string(slices.size()));
  }
  for (std::size_t i = 0; i < slices.size(); ++i) {
    if (slices[i].rows != static_cast<std::size_t>(shape.untwisted) ||
        slices[i].cols != static_cast<std::size_t>(shape.twisted)) {
      throw std::invalid_argument(
          "from_slices: slice " + std::to_string(i + 1) + " is " +
          std::to_string(slices[i].rows) + "x" + std::to_string(slices[i].cols) +
          ", expected " + std::to_string(shape.untwisted) + "x" +
          std::to_string(shape.twisted));
    }
  }
  SteinerPencil p;
  p.shape = shape;
  p.slices = std::move(slices);
  p.full_column_rank =
      rank_exact(stack_slices(p)) == static_cast<std::size_t>(shape.twisted);
  return p;
}

IntMatrix stack_slices(const SteinerPencil& p) {
  const std::size_t t = static_cast<std::size_t>(p.shape.untwisted);
  const std::size_t s = static_cast<std::size_t>(p.shape.twisted);
  IntMatrix out(p.slices.size() * t, s);
  for (std::size_t i = 0; i < p.slices.size(); ++i)
    for (std::size_t r = 0; r < t; ++r)
      for (std::size_t c = 0; c < s; ++c) out.at(i * t + r, c) = p.slices[i].at(r, c);
  return out;
}

SteinerPencil sample_pencil(Rng& rng, const BundleShape& shape, long long lo, long long hi) {
  shape.require_valid();
  if (shape.twisted < 1) throw std::invalid_argument("sample_pencil: need s >= 1");
  if (lo >= hi) throw std::invalid_argument("sample_pencil: need lo < hi");
  const std::size_t t = static_cast<std::size_t>(shape.untwisted);
  const std::size_t s = static_cast<std::size_t>(shape.twisted);
  constexpr int kRetries = 16;
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    std::vector<IntMatrix> slices;
    slices.reserve(static_cast<std::size_t>(shape.num_vars));
    for (long long i = 0; i < shape.num_vars; ++i)
      slices.push_back(random_int_matrix(rng, t, s, lo, hi));
    SteinerPencil p = SteinerPencil::from_slices(shape, std::move(slices));
    if (p.full_column_rank) return p;
  }
  throw std::runtime_error("sample_pencil: no full-column-rank pencil after " +
                           std::to_string(kRetries) + " attempts");
}

long long monomial_count(long long num_vars, long long degree) {
  if (num_vars < 1 || degree < 0)
    throw std::invalid_argument("monomial_count: need N >= 1 and degree >= 0");
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(num_vars - 1 + degree),
               static_cast<unsigned long>(num_vars - 1));
  if (!b.fits_slong_p()) throw std::overflow_error("monomial_count: result overflows");
  return b.get_si();
}

namespace {

void monomials_rec(int vars_left, int degree_left, std::vector<int>& prefix,
                   std::vector<std::vector<int>>& out) {
  if (vars_left == 1) {
    prefix.push_back(degree_left);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int e = degree_left; e >= 0; --e) {
    prefix.push_back(e);
    monomials_rec(vars_left - 1, degree_left - e, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> monomials_lex(long long num_vars, long long degree) {
  if (num_vars < 1 || degree < 0)
    throw std::invalid_argument("monomials_lex: need N >= 1 and degree >= 0");
  std::vector<std::vector<int>> out;
  std::vector<int> prefix;
  monomials_rec(static_cast<int>(num_vars), static_cast<int>(degree), prefix, out);
  return out;
}

bool GradedResolution::all_unit_twists() const {
  for (long long d : twists)
    if (d != 1) return false;
  return true;
}

void GradedResolution::require_valid() const {
  if (num_vars < 3) throw std::invalid_argument("GradedResolution: need N >= 3");
  if (rows < 1) throw std::invalid_argument("GradedResolution: need t >= 1");
  if (twists.empty()) throw std::invalid_argument("GradedResolution: no columns");
  for (std::size_t j = 0; j < twists.size(); ++j) {
    if (twists[j] < 1)
      throw std::invalid_argument("GradedResolution: twist " + std::to_string(twists[j]) +
                                  " at column " + std::to_string(j + 1) + ", need >= 1");
    if (j > 0 && twists[j] > twists[j - 1])
      throw std::invalid_argument("GradedResolution: twists must be non-increasing");
  }
  if (columns.size() != twists.size())
    throw std::invalid_argument("GradedResolution: " + std::to_string(columns.size()) +
                                " coefficient blocks for " + std::to_string(twists.size()) +
                                " twists");
  for (std::size_t j = 0; j < columns.size(); ++j) {
    std::size_t want = static_cast<std::size_t>(monomial_count(num_vars, twists[j]));
    if (columns[j].rows != want || columns[j].cols != static_cast<std::size_t>(rows))
      throw std::invalid_argument(
          "GradedResolution: column " + std::to_string(j + 1) + " block is " +
          std::to_string(columns[j].rows) + "x" + std::to_string(columns[j].cols) +
          ", expected " + std::to_string(want) + "x" + std::to_string(rows));
  }
}

GradedResolution sample_graded(Rng& rng, long long num_vars,
                               const std::vector<long long>& twists, long long rows,
                               long long lo, long long hi) {
  if (lo >= hi) throw std::invalid_argument("sample_graded: need lo < hi");
  GradedResolution res;
  res.num_vars = num_vars;
  res.rows = rows;
  res.twists = twists;
  if (num_vars < 3 || rows < 1 || twists.empty())
    res.require_valid();  // produce the precise diagnostic
  for (long long d : twists) {
    if (d < 1) res.require_valid();
    res.columns.emplace_back(random_int_matrix(
        rng, static_cast<std::size_t>(monomial_count(num_vars, d)),
        static_cast<std::size_t>(rows), lo, hi));
  }
  res.require_valid();
  return res;
}

GradedResolution to_graded(const SteinerPencil& p) {
  p.shape.require_valid();
  const std::size_t t = static_cast<std::size_t>(p.shape.untwisted);
  const std::size_t s = static_cast<std::size_t>(p.shape.twisted);
  GradedResolution res;
  res.num_vars = p.shape.num_vars;
  res.rows = p.shape.untwisted;
  res.twists.assign(s, 1);
  for (std::size_t j = 0; j < s; ++j) {
    // Degree-1 monomials in lex order are exactly x_1..x_N, so monomial i
    // corresponds to slice i.
    IntMatrix block(static_cast<std::size_t>(p.shape.num_vars), t);
    for (std::size_t i = 0; i < block.rows; ++i)
      for (std::size_t r = 0; r < t; ++r) block.at(i, r) = p.slices[i].at(r, j);
    res.columns.push_back(std::move(block));
  }
  res.require_valid();
  return res;
}

SteinerPencil to_pencil(const GradedResolution& r) {
  r.require_valid();
  if (!r.all_unit_twists())
    throw std::invalid_argument("to_pencil: all twists must equal 1");
  BundleShape shape{r.num_vars, static_cast<long long>(r.twists.size()), r.rows};
  std::vector<IntMatrix> slices(static_cast<std::size_t>(r.num_vars));
  const std::size_t t = static_cast<std::size_t>(r.rows);
  const std::size_t s = r.twists.size();
  for (std::size_t i = 0; i < slices.size(); ++i) {
    slices[i] = IntMatrix(t, s);
    for (std::size_t j = 0; j < s; ++j)
      for (std::size_t row = 0; row < t; ++row)
        slices[i].at(row, j) = r.columns[j].at(i, row);
  }
  return SteinerPencil::from_slices(shape, std::move(slices));
}

WitnessPencil decomposable_witness(Rng& rng, const BundleShape& shape) {
  shape.require_valid();
  if (shape.twisted < 1)
    throw std::invalid_argument("decomposable_witness: need s >= 1");
  if (shape.untwisted - shape.twisted <= shape.num_vars - 1)
    throw std::invalid_argument(
        "decomposable_witness: need rank t - s > N - 1, got t - s = " +
        std::to_string(shape.untwisted - shape.twisted));
  BundleShape inner{shape.num_vars, shape.twisted, shape.untwisted - 1};
  SteinerPencil base =
      sample_pencil(rng, inner, kDefaultEntryLo, kDefaultEntryHi);
  const std::size_t t = static_cast<std::size_t>(shape.untwisted);
  const std::size_t s = static_cast<std::size_t>(shape.twisted);
  std::vector<IntMatrix> slices;
  for (const IntMatrix& m : base.slices) {
    IntMatrix padded(t, s);
    for (std::size_t r = 0; r + 1 < t; ++r)
      for (std::size_t c = 0; c < s; ++c) padded.at(r, c) = m.at(r, c);
    slices.push_back(std::move(padded));
  }
  WitnessPencil w;
  w.pencil = SteinerPencil::from_slices(shape, std::move(slices));
  w.structure = WitnessStructure::DirectSumWithTrivial;
  w.predicted_extra_dim = 2;
  return w;
}

WitnessPencil block_witness(Rng& rng, long long num_vars, long long n1, long long n2,
                            long long m1, long long m2) {
  if (num_vars < 3) throw std::invalid_argument("block_witness: need N >= 3");
  if (n1 < 1 || n2 < 1 || m1 < 1 || m2 < 1)
    throw std::invalid_argument("block_witness: all block sizes must be >= 1");
  SteinerPencil top = sample_pencil(rng, BundleShape{num_vars, n1, m1},
                                    kDefaultEntryLo, kDefaultEntryHi);
  SteinerPencil bot = sample_pencil(rng, BundleShape{num_vars, n2, m2},
                                    kDefaultEntryLo, kDefaultEntryHi);
  BundleShape shape{num_vars, n1 + n2, m1 + m2};
  std::vector<IntMatrix> slices;
  for (long long i = 0; i < num_vars; ++i) {
    IntMatrix m(static_cast<std::size_t>(m1 + m2), static_cast<std::size_t>(n1 + n2));
    for (long long r = 0; r < m1; ++r)
      for (long long c = 0; c < n1; ++c)
        m.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
            top.slices[static_cast<std::size_t>(i)].at(static_cast<std::size_t>(r),
                                                       static_cast<std::size_t>(c));
    for (long long r = 0; r < m2; ++r)
      for (long long c = 0; c < n2; ++c)
        m.at(static_cast<std::size_t>(m1 + r), static_cast<std::size_t>(n1 + c)) =
            bot.slices[static_cast<std::size_t>(i)].at(static_cast<std::size_t>(r),
                                                       static_cast<std::size_t>(c));
    slices.push_back(std::move(m));
  }
  WitnessPencil w;
  w.pencil = SteinerPencil::from_slices(shape, std::move(slices));
  w.structure = WitnessStructure::BlockDiagonal;
  w.n1 = n1;
  w.n2 = n2;
  w.m1 = m1;
  w.m2 = m2;
  w.predicted_extra_dim = 2;
  return w;
}

namespace {

class Tokenizer {
 public:
  explicit Tokenizer(const std::string& text) : text_(text) {}

  bool next(std::string& tok) {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
    if (pos_ >= text_.size()) return false;
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    tok = text_.substr(start, pos_ - start);
    return true;
  }

  std::string expect(const std::string& what) {
    std::string tok;
    if (!next(tok))
      throw ParseError(line_, "unexpected end of input, expected " + what);
    return tok;
  }

  long long expect_int(const std::string& what) {
    std::string tok = expect(what);
    try {
      std::size_t used = 0;
      long long v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument("junk");
      return v;
    } catch (const ParseError&) {
      throw;
    } catch (...) {
      throw ParseError(line_, "expected " + what + ", got '" + tok + "'");
    }
  }

  void expect_end() {
    std::string tok;
    if (next(tok)) throw ParseError(line_, "trailing data '" + tok + "'");
  }

  std::size_t line() const { return line_; }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace

std::string to_text(const SteinerPencil& p) {
  std::ostringstream out;
  out << "steiner " << p.shape.num_vars << ' ' << p.shape.twisted << ' '
      << p.shape.untwisted << '\n';
  for (const IntMatrix& m : p.slices)
    for (std::size_t r = 0; r < m.rows; ++r) {
      for (std::size_t c = 0; c < m.cols; ++c) out << (c ? " " : "") << m.at(r, c);
      out << '\n';
    }
  return out.str();
}

std::string to_text(const GradedResolution& r) {
  std::ostringstream out;
  out << "graded " << r.num_vars << ' ' << r.rows << '\n';
  for (std::size_t j = 0; j < r.twists.size(); ++j) {
    out << "twist " << r.twists[j] << '\n';
    const IntMatrix& block = r.columns[j];
    for (std::size_t m = 0; m < block.rows; ++m) {
      for (std::size_t c = 0; c < block.cols; ++c) out << (c ? " " : "") << block.at(m, c);
      out << '\n';
    }
  }
  return out.str();
}

SteinerPencil parse_pencil(const std::string& text) {
  Tokenizer tok(text);
  std::string head = tok.expect("'steiner' header");
  if (head != "steiner")
    throw ParseError(tok.line(), "expected 'steiner' header, got '" + head + "'");
  long long n = tok.expect_int("N");
  long long s = tok.expect_int("s");
  long long t = tok.expect_int("t");
  BundleShape shape{n, s, t};
  if (!shape.valid())
    throw ParseError(tok.line(), "invalid header: need N >= 3, s >= 0, t >= 1");
  std::vector<IntMatrix> slices;
  for (long long i = 0; i < n; ++i) {
    IntMatrix m(static_cast<std::size_t>(t), static_cast<std::size_t>(s));
    for (long long r = 0; r < t; ++r)
      for (long long c = 0; c < s; ++c)
        m.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
            tok.expect_int("entry of slice " + std::to_string(i + 1) + ", row " +
                           std::to_string(r + 1) + ", column " + std::to_string(c + 1));
    slices.push_back(std::move(m));
  }
  tok.expect_end();
  return SteinerPencil::from_slices(shape, std::move(slices));
}

GradedResolution parse_graded(const std::string& text) {
  Tokenizer tok(text);
  std::string head = tok.expect("'graded' header");
  if (head != "graded")
    throw ParseError(tok.line(), "expected 'graded' header, got '" + head + "'");
  GradedResolution res;
  res.num_vars = tok.expect_int("N");
  res.rows = tok.expect_int("t");
  if (res.num_vars < 3 || res.rows < 1)
    throw ParseError(tok.line(), "invalid header: need N >= 3 and t >= 1");
  std::string word;
  while (tok.next(word)) {
    if (word != "twist")
      throw ParseError(tok.line(), "expected 'twist', got '" + word + "'");
    long long d = tok.expect_int("twist degree");
    if (d < 1) throw ParseError(tok.line(), "twist must be >= 1, got " + std::to_string(d));
    if (!res.twists.empty() && d > res.twists.back())
      throw ParseError(tok.line(), "twists must be non-increasing");
    std::size_t column = res.twists.size() + 1;
    long long count = monomial_count(res.num_vars, d);
    IntMatrix block(static_cast<std::size_t>(count), static_cast<std::size_t>(res.rows));
    for (long long m = 0; m < count; ++m)
      for (long long c = 0; c < res.rows; ++c)
        block.at(static_cast<std::size_t>(m), static_cast<std::size_t>(c)) =
            tok.expect_int("coefficient of column " + std::to_string(column) +
                           ", monomial " + std::to_string(m + 1) + ", row " +
                           std::to_string(c + 1));
    res.twists.push_back(d);
    res.columns.push_back(std::move(block));
  }
  if (res.twists.empty()) throw ParseError(tok.line(), "no columns");
  res.require_valid();
  return res;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace steinerlab
