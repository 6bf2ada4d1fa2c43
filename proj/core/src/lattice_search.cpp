#include "dsw/lattice.hpp"

#include <algorithm>

#include "dsw/error.hpp"

namespace dsw {

namespace {

// Alphabet index t -> coordinate value: 0->1, 1->-1, 2->2, 3->-2, ...
Int digit_value(Int t) { return (t / 2 + 1) * (t % 2 == 0 ? 1 : -1); }

void check_bound(const SearchOptions& opts) {
  if (opts.bound < 1)
    throw Error(ErrorKind::invalid_argument, "search bound must be >= 1");
}

} // namespace

const char* to_string(SearchStatus s) noexcept {
  switch (s) {
  case SearchStatus::found:
    return "found";
  case SearchStatus::not_found_within_bound:
    return "not-found-within-bound";
  case SearchStatus::budget_exhausted:
    return "budget-exhausted";
  }
  return "?";
}

BoxEnumerator::BoxEnumerator(std::size_t dim, Int bound) : dim_(dim), bound_(bound), current_(dim, 0) {}

void BoxEnumerator::load_support() {
  support_.resize(support_size_);
  for (std::size_t i = 0; i < support_size_; ++i)
    support_[i] = i;
  digits_.assign(support_size_, 0);
}

bool BoxEnumerator::advance_digits() {
  const Int alphabet = 2 * shell_;
  for (std::size_t i = support_size_; i-- > 0;) {
    if (++digits_[i] < alphabet)
      return true;
    digits_[i] = 0;
  }
  return false;
}

bool BoxEnumerator::advance_support() {
  const std::size_t k = support_size_;
  for (std::size_t i = k; i-- > 0;) {
    if (support_[i] < dim_ - k + i) {
      ++support_[i];
      for (std::size_t j = i + 1; j < k; ++j)
        support_[j] = support_[j - 1] + 1;
      return true;
    }
  }
  return false;
}

bool BoxEnumerator::next() {
  if (dim_ == 0 || bound_ < 1)
    return false;
  auto step = [this]() -> bool {
    if (advance_digits())
      return true;
    if (advance_support())
      return true;
    load_support();
    if (++shell_ <= bound_)
      return true;
    shell_ = 1;
    if (++support_size_ <= dim_) {
      load_support();
      return true;
    }
    return false;
  };
  // A tuple belongs to the current shell iff some coordinate has |value| == shell.
  auto in_shell = [this] {
    const Int min_index = 2 * (shell_ - 1);
    return std::any_of(digits_.begin(), digits_.end(), [&](Int d) { return d >= min_index; });
  };

  if (!started_) {
    started_ = true;
    support_size_ = 1;
    shell_ = 1;
    load_support();
  } else if (!step()) {
    return false;
  }
  while (!in_shell())
    if (!step())
      return false;

  std::fill(current_.begin(), current_.end(), 0);
  for (std::size_t i = 0; i < support_size_; ++i)
    current_[support_[i]] = digit_value(digits_[i]);
  return true;
}

SearchResult<LatticeVector> find_vector_with_square(const Sublattice& sub, Int target,
                                                    const SearchOptions& opts) {
  check_bound(opts);
  SearchResult<LatticeVector> result;
  if (target == 0 && opts.allow_zero) {
    result.status = SearchStatus::found;
    result.witness = LatticeVector::zero(sub.parent().rank());
    return result;
  }
  BoxEnumerator it(sub.rank(), opts.bound);
  while (it.next()) {
    if (++result.visited > opts.budget) {
      result.status = SearchStatus::budget_exhausted;
      return result;
    }
    if (sub.square_of(it.current()) == target) {
      result.status = SearchStatus::found;
      result.witness = sub.to_ambient(it.current());
      return result;
    }
  }
  result.status = SearchStatus::not_found_within_bound;
  return result;
}

SearchResult<HyperbolicPair> find_hyperbolic_pair(const Sublattice& sub, const SearchOptions& opts) {
  check_bound(opts);
  SearchResult<HyperbolicPair> result;
  const std::size_t k = sub.rank();
  BoxEnumerator outer(k, opts.bound);
  std::vector<Int> e_dual(k);
  while (outer.next()) {
    if (++result.visited > opts.budget) {
      result.status = SearchStatus::budget_exhausted;
      return result;
    }
    auto e = outer.current();
    if (sub.square_of(e) != 0)
      continue;
    for (std::size_t j = 0; j < k; ++j) {
      Int acc = 0;
      for (std::size_t i = 0; i < k; ++i)
        acc += e[i] * sub.induced(i, j);
      e_dual[j] = acc;
    }
    BoxEnumerator inner(k, opts.bound);
    while (inner.next()) {
      if (++result.visited > opts.budget) {
        result.status = SearchStatus::budget_exhausted;
        return result;
      }
      auto f = inner.current();
      Int ef = 0;
      for (std::size_t j = 0; j < k; ++j)
        ef += e_dual[j] * f[j];
      if (ef != 1 || sub.square_of(f) != 0)
        continue;
      result.status = SearchStatus::found;
      result.witness = HyperbolicPair{sub.to_ambient(e), sub.to_ambient(f)};
      return result;
    }
  }
  result.status = SearchStatus::not_found_within_bound;
  return result;
}

} // namespace dsw
