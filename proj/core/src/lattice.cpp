#include "dsw/lattice.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "dsw/error.hpp"
#include "dsw/rational.hpp"

namespace dsw {

namespace {

__extension__ using Wide = __int128;

Int narrow(Wide v, const char* where) {
  if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min())
    throw Error(ErrorKind::invalid_argument, std::string(where) + ": 64-bit overflow");
  return static_cast<Int>(v);
}

void check_size(const char* where, std::size_t expected, std::size_t actual) {
  if (expected != actual)
    throw_dimension_mismatch(where, expected, actual);
}

Integer to_integer(Int v) { return Integer(static_cast<long>(v)); }

using IntegerMatrix = std::vector<std::vector<Integer>>;

// Rank of a rational matrix by Gaussian elimination.
std::size_t rank_of(std::vector<std::vector<Rational>> m) {
  std::size_t rows = m.size();
  std::size_t cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0)
      ++p;
    if (p == rows)
      continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0)
        continue;
      Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j)
        m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

// Row-style Hermite normal form: positive pivots, entries above each pivot
// reduced into [0, pivot). Zero rows are dropped.
IntegerMatrix hermite_normal_form(IntegerMatrix m) {
  std::size_t rows = m.size();
  std::size_t cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // Euclid on column c among rows r..end until a single nonzero remains.
    for (;;) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (m[i][c] != 0 && (best == rows || abs(m[i][c]) < abs(m[best][c])))
          best = i;
      if (best == rows)
        break;
      std::swap(m[best], m[r]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (m[i][c] == 0)
          continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
        for (std::size_t j = c; j < cols; ++j)
          m[i][j] -= q * m[r][j];
        if (m[i][c] != 0)
          done = false;
      }
      if (done)
        break;
    }
    if (m[r][c] == 0)
      continue;
    if (m[r][c] < 0)
      for (auto& x : m[r])
        x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
      if (q != 0)
        for (std::size_t j = c; j < cols; ++j)
          m[i][j] -= q * m[r][j];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  m.resize(r);
  return m;
}

// Integral kernel {x : a x = 0} via unimodular column operations. The
// returned basis spans a saturated sublattice.
IntegerMatrix integer_kernel(IntegerMatrix a, std::size_t n) {
  IntegerMatrix u(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    u[i][i] = 1;
  auto combine = [&](std::size_t p, std::size_t c, const Integer& x, const Integer& y,
                     const Integer& s, const Integer& t) {
    // col_p <- x col_p + y col_c ; col_c <- s col_p + t col_c
    auto apply = [&](IntegerMatrix& m) {
      for (auto& row : m) {
        Integer np = x * row[p] + y * row[c];
        Integer nc = s * row[p] + t * row[c];
        row[p] = std::move(np);
        row[c] = std::move(nc);
      }
    };
    apply(a);
    apply(u);
  };
  std::size_t piv = 0;
  for (std::size_t r = 0; r < a.size() && piv < n; ++r) {
    for (std::size_t c = piv + 1; c < n; ++c) {
      if (a[r][c] == 0)
        continue;
      Integer g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a[r][piv].get_mpz_t(),
                 a[r][c].get_mpz_t());
      Integer s = -a[r][c] / g;
      Integer t = a[r][piv] / g;
      combine(piv, c, x, y, s, t);
    }
    if (a[r][piv] != 0)
      ++piv;
  }
  IntegerMatrix kernel;
  for (std::size_t c = piv; c < n; ++c) {
    std::vector<Integer> v(n);
    for (std::size_t i = 0; i < n; ++i)
      v[i] = u[i][c];
    kernel.push_back(std::move(v));
  }
  return kernel;
}

} // namespace

// ---------------------------------------------------------------------------
// LatticeVector / Mod2Class

LatticeVector LatticeVector::unit(std::size_t rank, std::size_t j) {
  LatticeVector v = zero(rank);
  v.coords.at(j) = 1;
  return v;
}

bool LatticeVector::is_zero() const noexcept {
  return std::all_of(coords.begin(), coords.end(), [](Int x) { return x == 0; });
}

LatticeVector& LatticeVector::operator+=(const LatticeVector& o) {
  check_size("LatticeVector::operator+", size(), o.size());
  for (std::size_t j = 0; j < size(); ++j)
    coords[j] = narrow(Wide(coords[j]) + o.coords[j], "LatticeVector::operator+");
  return *this;
}

LatticeVector& LatticeVector::operator-=(const LatticeVector& o) {
  check_size("LatticeVector::operator-", size(), o.size());
  for (std::size_t j = 0; j < size(); ++j)
    coords[j] = narrow(Wide(coords[j]) - o.coords[j], "LatticeVector::operator-");
  return *this;
}

LatticeVector operator-(LatticeVector a) {
  for (auto& x : a.coords)
    x = -x;
  return a;
}

LatticeVector operator*(Int k, LatticeVector a) {
  for (auto& x : a.coords)
    x = narrow(Wide(k) * x, "LatticeVector::operator*");
  return a;
}

std::string to_string(const LatticeVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < v.size(); ++j)
    os << (j ? "," : "") << v[j];
  os << ')';
  return os.str();
}

Mod2Class::Mod2Class(std::vector<std::uint8_t> b) : bits(std::move(b)) {
  for (auto& x : bits)
    if (x > 1)
      throw Error(ErrorKind::invalid_argument, "Mod2Class: bits must be 0 or 1");
}

Mod2Class Mod2Class::reduce(const LatticeVector& v) {
  std::vector<std::uint8_t> bits(v.size());
  for (std::size_t j = 0; j < v.size(); ++j)
    bits[j] = static_cast<std::uint8_t>(v[j] & 1);
  return Mod2Class(std::move(bits));
}

LatticeVector Mod2Class::lift() const {
  std::vector<Int> c(bits.begin(), bits.end());
  return LatticeVector(std::move(c));
}

// ---------------------------------------------------------------------------
// IntersectionForm

IntersectionForm::IntersectionForm(std::vector<std::vector<Int>> gram,
                                   std::vector<std::string> basis_labels)
    : rank_(gram.size()), labels_(std::move(basis_labels)) {
  gram_.reserve(rank_ * rank_);
  for (std::size_t i = 0; i < rank_; ++i) {
    if (gram[i].size() != rank_)
      throw Error(ErrorKind::invalid_argument,
                  "intersection form: row " + std::to_string(i + 1) + " has " +
                      std::to_string(gram[i].size()) + " entries, expected " +
                      std::to_string(rank_));
    gram_.insert(gram_.end(), gram[i].begin(), gram[i].end());
  }
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = i + 1; j < rank_; ++j)
      if (gram[i][j] != gram[j][i])
        throw Error(ErrorKind::invalid_argument,
                    "intersection form: not symmetric at (" + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + ")");
  if (!labels_.empty() && labels_.size() != rank_)
    throw Error(ErrorKind::invalid_argument, "intersection form: label count differs from rank");
  Int det = determinant(gram);
  if (det != 1 && det != -1)
    throw Error(ErrorKind::invalid_argument,
                "intersection form: not unimodular (determinant " + std::to_string(det) + ")");
}

std::vector<std::vector<Int>> IntersectionForm::gram() const {
  std::vector<std::vector<Int>> g(rank_);
  for (std::size_t i = 0; i < rank_; ++i)
    g[i].assign(gram_.begin() + static_cast<std::ptrdiff_t>(i * rank_),
                gram_.begin() + static_cast<std::ptrdiff_t>((i + 1) * rank_));
  return g;
}

IntersectionForm hyperbolic_plane() { return IntersectionForm({{0, 1}, {1, 0}}); }

IntersectionForm e8_form() {
  // Bourbaki labelling: chain 1-3-4-5-6-7-8, node 2 attached to node 4.
  std::vector<std::vector<Int>> g(8, std::vector<Int>(8, 0));
  for (int i = 0; i < 8; ++i)
    g[i][i] = 2;
  const int edges[][2] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
  for (auto [a, b] : edges)
    g[a][b] = g[b][a] = -1;
  return IntersectionForm(std::move(g));
}

IntersectionForm diagonal_form(const std::vector<Int>& entries) {
  std::vector<std::vector<Int>> g(entries.size(), std::vector<Int>(entries.size(), 0));
  for (std::size_t i = 0; i < entries.size(); ++i)
    g[i][i] = entries[i];
  return IntersectionForm(std::move(g));
}

IntersectionForm negated(const IntersectionForm& form) {
  auto g = form.gram();
  for (auto& row : g)
    for (auto& x : row)
      x = -x;
  return IntersectionForm(std::move(g), form.basis_labels());
}

IntersectionForm direct_sum(const std::vector<IntersectionForm>& summands) {
  std::size_t n = 0;
  for (const auto& s : summands)
    n += s.rank();
  std::vector<std::vector<Int>> g(n, std::vector<Int>(n, 0));
  std::size_t off = 0;
  for (const auto& s : summands) {
    for (std::size_t i = 0; i < s.rank(); ++i)
      for (std::size_t j = 0; j < s.rank(); ++j)
        g[off + i][off + j] = s(i, j);
    off += s.rank();
  }
  return IntersectionForm(std::move(g));
}

IntersectionForm k3_form() {
  auto h = hyperbolic_plane();
  auto me8 = negated(e8_form());
  return direct_sum({h, h, h, me8, me8});
}

// ---------------------------------------------------------------------------
// Pairings and parity

Int pairing(const IntersectionForm& form, const LatticeVector& u, const LatticeVector& v) {
  check_size("pairing", form.rank(), u.size());
  check_size("pairing", form.rank(), v.size());
  Wide acc = 0;
  for (std::size_t i = 0; i < form.rank(); ++i) {
    if (u[i] == 0)
      continue;
    Wide row = 0;
    for (std::size_t j = 0; j < form.rank(); ++j)
      row += Wide(form(i, j)) * v[j];
    acc += Wide(u[i]) * row;
  }
  return narrow(acc, "pairing");
}

std::vector<Int> dual_pairings(const IntersectionForm& form, const LatticeVector& k) {
  check_size("dual_pairings", form.rank(), k.size());
  std::vector<Int> kappa(form.rank());
  for (std::size_t j = 0; j < form.rank(); ++j) {
    Wide acc = 0;
    for (std::size_t i = 0; i < form.rank(); ++i)
      acc += Wide(k[i]) * form(i, j);
    kappa[j] = narrow(acc, "dual_pairings");
  }
  return kappa;
}

SignatureDecomposition signature_decomposition(const IntersectionForm& form) {
  const std::size_t n = form.rank();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m[i][j] = Rational(static_cast<long>(form(i, j)));

  auto swap_index = [&](std::size_t a, std::size_t b) {
    std::swap(m[a], m[b]);
    for (auto& row : m)
      std::swap(row[a], row[b]);
  };
  // v_a <- v_a + v_b as a congruence (row and column).
  auto add_index = [&](std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < n; ++j)
      m[a][j] += m[b][j];
    for (std::size_t i = 0; i < n; ++i)
      m[i][a] += m[i][b];
  };

  SignatureDecomposition out;
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t j = k + 1;
      while (j < n && m[j][j] == 0)
        ++j;
      if (j < n) {
        swap_index(k, j);
      } else {
        j = k + 1;
        while (j < n && m[k][j] == 0)
          ++j;
        if (j == n)
          continue; // degenerate direction; impossible for unimodular forms
        add_index(k, j); // new diagonal is 2 m[k][j] != 0
      }
    }
    const Rational pivot = m[k][k];
    // Schur complement on the trailing block.
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0)
        continue;
      Rational f = m[i][k] / pivot;
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] -= f * m[k][j];
    }
    for (std::size_t i = k + 1; i < n; ++i)
      m[i][k] = m[k][i] = 0;
    if (pivot > 0)
      ++out.b_plus;
    else
      ++out.b_minus;
  }
  out.sigma = out.b_plus - out.b_minus;
  return out;
}

bool is_even(const IntersectionForm& form) {
  for (std::size_t i = 0; i < form.rank(); ++i)
    if (form(i, i) % 2 != 0)
      return false;
  return true;
}

bool is_characteristic(const IntersectionForm& form, const LatticeVector& k) {
  auto kappa = dual_pairings(form, k);
  for (std::size_t j = 0; j < form.rank(); ++j)
    if (((kappa[j] - form(j, j)) % 2) != 0)
      return false;
  return true;
}

LatticeVector characteristic_representative(const IntersectionForm& form) {
  // Solve G x = diag(G) over GF(2); G is invertible mod 2 because det = +-1.
  const std::size_t n = form.rank();
  std::vector<std::vector<std::uint8_t>> a(n, std::vector<std::uint8_t>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      a[i][j] = static_cast<std::uint8_t>(form(i, j) & 1);
    a[i][n] = static_cast<std::uint8_t>(form(i, i) & 1);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && !a[p][c])
      ++p;
    if (p == n)
      throw Error(ErrorKind::invalid_argument, "characteristic_representative: form singular mod 2");
    std::swap(a[p], a[c]);
    for (std::size_t i = 0; i < n; ++i)
      if (i != c && a[i][c])
        for (std::size_t j = c; j <= n; ++j)
          a[i][j] ^= a[c][j];
  }
  LatticeVector x = LatticeVector::zero(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = a[i][n];
  return x;
}

bool congruent_mod2(const IntersectionForm& form, const LatticeVector& w, const LatticeVector& lambda,
                    const Mod2Class& w2) {
  check_size("congruent_mod2", form.rank(), w.size());
  check_size("congruent_mod2", form.rank(), lambda.size());
  check_size("congruent_mod2", form.rank(), w2.size());
  for (std::size_t j = 0; j < form.rank(); ++j) {
    Int d = w[j] - lambda[j];
    if (static_cast<std::uint8_t>(d & 1) != w2.bits[j])
      return false;
  }
  return true;
}

Int determinant(const std::vector<std::vector<Int>>& in) {
  const std::size_t n = in.size();
  if (n == 0)
    return 1;
  IntegerMatrix m(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (in[i].size() != n)
      throw Error(ErrorKind::invalid_argument, "determinant: matrix not square");
    for (std::size_t j = 0; j < n; ++j)
      m[i][j] = to_integer(in[i][j]);
  }
  // Bareiss fraction-free elimination.
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0)
        ++p;
      if (p == n)
        return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = m[k][k];
  }
  Integer det = m[n - 1][n - 1];
  if (sign < 0)
    det = -det;
  return to_int64(det);
}

std::size_t rational_rank(const std::vector<LatticeVector>& vectors) {
  if (vectors.empty())
    return 0;
  std::vector<std::vector<Rational>> m;
  for (const auto& v : vectors) {
    check_size("rational_rank", vectors.front().size(), v.size());
    std::vector<Rational> row;
    for (Int x : v.coords)
      row.emplace_back(static_cast<long>(x));
    m.push_back(std::move(row));
  }
  return rank_of(std::move(m));
}

// ---------------------------------------------------------------------------
// Sublattice

Sublattice::Sublattice(IntersectionForm parent, std::vector<LatticeVector> basis)
    : parent_(std::move(parent)), basis_(std::move(basis)) {
  for (const auto& b : basis_)
    check_size("Sublattice", parent_.rank(), b.size());
  if (rational_rank(basis_) != basis_.size())
    throw Error(ErrorKind::invalid_argument, "Sublattice: basis vectors are linearly dependent");
  const std::size_t k = basis_.size();
  induced_.resize(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j)
      induced_[i * k + j] = induced_[j * k + i] = pairing(parent_, basis_[i], basis_[j]);
}

Sublattice Sublattice::whole(const IntersectionForm& form) {
  std::vector<LatticeVector> basis;
  for (std::size_t j = 0; j < form.rank(); ++j)
    basis.push_back(LatticeVector::unit(form.rank(), j));
  return Sublattice(form, std::move(basis));
}

Int Sublattice::pairing_of(std::span<const Int> a, std::span<const Int> b) const {
  check_size("Sublattice::pairing_of", rank(), a.size());
  check_size("Sublattice::pairing_of", rank(), b.size());
  const std::size_t k = rank();
  Wide acc = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (a[i] == 0)
      continue;
    Wide row = 0;
    for (std::size_t j = 0; j < k; ++j)
      row += Wide(induced_[i * k + j]) * b[j];
    acc += Wide(a[i]) * row;
  }
  return narrow(acc, "Sublattice::pairing_of");
}

Int Sublattice::square_of(std::span<const Int> coords) const { return pairing_of(coords, coords); }

LatticeVector Sublattice::to_ambient(std::span<const Int> coords) const {
  check_size("Sublattice::to_ambient", rank(), coords.size());
  LatticeVector v = LatticeVector::zero(parent_.rank());
  for (std::size_t i = 0; i < rank(); ++i)
    if (coords[i] != 0)
      v += coords[i] * basis_[i];
  return v;
}

Sublattice orthogonal_complement(const IntersectionForm& form,
                                 const std::vector<LatticeVector>& spanning_set) {
  const std::size_t n = form.rank();
  IntegerMatrix a;
  for (const auto& b : spanning_set) {
    auto kappa = dual_pairings(form, b);
    std::vector<Integer> row;
    row.reserve(n);
    for (Int x : kappa)
      row.push_back(to_integer(x));
    a.push_back(std::move(row));
  }
  IntegerMatrix kernel = hermite_normal_form(integer_kernel(std::move(a), n));
  std::vector<LatticeVector> basis;
  for (const auto& row : kernel) {
    LatticeVector v = LatticeVector::zero(n);
    for (std::size_t j = 0; j < n; ++j)
      v[j] = to_int64(row[j]);
    basis.push_back(std::move(v));
  }
  return Sublattice(form, std::move(basis));
}

} // namespace dsw
