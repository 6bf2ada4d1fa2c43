#pragma once

// Exact arithmetic on integral unimodular lattices (H_2(X;Z)/torsion with its
// intersection form): pairings, signature, characteristic vectors, integral
// orthogonal complements and bounded vector searches.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dsw {

using Int = std::int64_t;

/// Coordinates of a class in the fixed basis of the lattice.
struct LatticeVector {
  std::vector<Int> coords;

  LatticeVector() = default;
  explicit LatticeVector(std::vector<Int> c) : coords(std::move(c)) {}
  LatticeVector(std::initializer_list<Int> c) : coords(c) {}

  static LatticeVector zero(std::size_t rank) { return LatticeVector(std::vector<Int>(rank, 0)); }
  static LatticeVector unit(std::size_t rank, std::size_t j);

  std::size_t size() const noexcept { return coords.size(); }
  Int operator[](std::size_t j) const { return coords[j]; }
  Int& operator[](std::size_t j) { return coords[j]; }
  bool is_zero() const noexcept;

  LatticeVector& operator+=(const LatticeVector& o);
  LatticeVector& operator-=(const LatticeVector& o);
  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend LatticeVector operator-(LatticeVector a);
  friend LatticeVector operator*(Int k, LatticeVector a);

  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
  friend auto operator<=>(const LatticeVector&, const LatticeVector&) = default;
};

std::string to_string(const LatticeVector& v); // "(a,b,c)"

/// A class in H^2(X;Z/2), stored as bits in the same basis.
struct Mod2Class {
  std::vector<std::uint8_t> bits;

  Mod2Class() = default;
  explicit Mod2Class(std::vector<std::uint8_t> b);
  static Mod2Class zero(std::size_t rank) { return Mod2Class(std::vector<std::uint8_t>(rank, 0)); }
  static Mod2Class reduce(const LatticeVector& v);

  std::size_t size() const noexcept { return bits.size(); }
  /// The 0/1 integral lift.
  LatticeVector lift() const;

  friend bool operator==(const Mod2Class&, const Mod2Class&) = default;
};

/// Symmetric unimodular integral bilinear form given by its Gram matrix.
/// Construction rejects non-square, non-symmetric or non-unimodular input.
class IntersectionForm {
public:
  IntersectionForm() = default;
  explicit IntersectionForm(std::vector<std::vector<Int>> gram,
                            std::vector<std::string> basis_labels = {});

  std::size_t rank() const noexcept { return rank_; }
  Int operator()(std::size_t i, std::size_t j) const { return gram_[i * rank_ + j]; }
  std::vector<std::vector<Int>> gram() const;
  const std::vector<std::string>& basis_labels() const noexcept { return labels_; }

  friend bool operator==(const IntersectionForm& a, const IntersectionForm& b) {
    return a.rank_ == b.rank_ && a.gram_ == b.gram_;
  }

private:
  std::size_t rank_ = 0;
  std::vector<Int> gram_;
  std::vector<std::string> labels_;
};

// Standard building blocks.
IntersectionForm hyperbolic_plane();
/// Positive definite E8 (Cartan matrix); negate with `negated`.
IntersectionForm e8_form();
IntersectionForm diagonal_form(const std::vector<Int>& entries);
IntersectionForm negated(const IntersectionForm& form);
IntersectionForm direct_sum(const std::vector<IntersectionForm>& summands);
/// 3H + 2(-E8), the intersection form of a K3 surface.
IntersectionForm k3_form();

Int pairing(const IntersectionForm& form, const LatticeVector& u, const LatticeVector& v);
inline Int square(const IntersectionForm& form, const LatticeVector& u) { return pairing(form, u, u); }

/// kappa_j = pairing(K, e_j): the linear form <K, h> in the h-coordinates.
std::vector<Int> dual_pairings(const IntersectionForm& form, const LatticeVector& k);

struct SignatureDecomposition {
  Int sigma = 0;
  Int b_plus = 0;
  Int b_minus = 0;
  friend bool operator==(const SignatureDecomposition&, const SignatureDecomposition&) = default;
};

/// Exact congruence diagonalization over Q.
SignatureDecomposition signature_decomposition(const IntersectionForm& form);

bool is_even(const IntersectionForm& form);

/// K.x == x.x (mod 2) for every basis vector x.
bool is_characteristic(const IntersectionForm& form, const LatticeVector& k);

/// The unique characteristic class mod 2, as its 0/1 lift (solved over GF(2)).
LatticeVector characteristic_representative(const IntersectionForm& form);

/// (w - lambda) mod 2 == w2, componentwise.
bool congruent_mod2(const IntersectionForm& form, const LatticeVector& w,
                    const LatticeVector& lambda, const Mod2Class& w2);

/// Determinant of an integer matrix (fraction-free elimination, exact).
Int determinant(const std::vector<std::vector<Int>>& m);

/// Rank over Q of a list of integer vectors.
std::size_t rational_rank(const std::vector<LatticeVector>& vectors);

/// A sublattice of a parent form, given by an integral basis in parent
/// coordinates. The induced Gram matrix need not be unimodular.
class Sublattice {
public:
  Sublattice() = default;
  Sublattice(IntersectionForm parent, std::vector<LatticeVector> basis);
  static Sublattice whole(const IntersectionForm& form);

  const IntersectionForm& parent() const noexcept { return parent_; }
  const std::vector<LatticeVector>& basis() const noexcept { return basis_; }
  std::size_t rank() const noexcept { return basis_.size(); }
  Int induced(std::size_t i, std::size_t j) const { return induced_[i * basis_.size() + j]; }
  /// Quadratic value of a vector given in sublattice coordinates.
  Int square_of(std::span<const Int> coords) const;
  Int pairing_of(std::span<const Int> a, std::span<const Int> b) const;
  LatticeVector to_ambient(std::span<const Int> coords) const;

private:
  IntersectionForm parent_;
  std::vector<LatticeVector> basis_;
  std::vector<Int> induced_;
};

/// Saturated integral basis (Hermite normal form) of
/// { v : pairing(v, b) = 0 for all b in spanning_set }.
Sublattice orthogonal_complement(const IntersectionForm& form,
                                 const std::vector<LatticeVector>& spanning_set);

// ---------------------------------------------------------------------------
// Bounded searches. Coordinates range over [-bound, bound] in the sublattice
// basis. Enumeration order is deterministic: by support size, then sup-norm,
// then support set, then coordinate values ordered 1, -1, 2, -2, ...
// "Not found" only ever means "not found within the bound".

enum class SearchStatus { found, not_found_within_bound, budget_exhausted };

const char* to_string(SearchStatus s) noexcept;

struct SearchOptions {
  Int bound = 20;
  /// Cooperative cancellation: maximum number of visited candidates.
  std::uint64_t budget = 50'000'000;
  bool allow_zero = false;
};

template <class T>
struct SearchResult {
  SearchStatus status = SearchStatus::not_found_within_bound;
  std::optional<T> witness;
  std::uint64_t visited = 0;

  bool found() const noexcept { return status == SearchStatus::found; }
};

struct HyperbolicPair {
  LatticeVector e;
  LatticeVector f;
};

/// Returned pairs always satisfy e^2 = f^2 = 0 and e.f = 1 (ambient coordinates).
SearchResult<HyperbolicPair> find_hyperbolic_pair(const Sublattice& sub, const SearchOptions& opts = {});

/// Returned vector (ambient coordinates) always has the requested square.
SearchResult<LatticeVector> find_vector_with_square(const Sublattice& sub, Int target,
                                                    const SearchOptions& opts = {});

/// Walks every nonzero coordinate vector of the box [-bound, bound]^dim in the
/// order documented above.
class BoxEnumerator {
public:
  BoxEnumerator(std::size_t dim, Int bound);
  /// Advances to the next vector; false when the box is exhausted.
  bool next();
  std::span<const Int> current() const noexcept { return current_; }

private:
  bool advance_digits();
  bool advance_support();
  void load_support();

  std::size_t dim_;
  Int bound_;
  std::size_t support_size_ = 0;
  Int shell_ = 0;
  std::vector<std::size_t> support_;
  std::vector<Int> digits_;
  std::vector<Int> current_;
  bool started_ = false;
};

} // namespace dsw
