#pragma once

#include <type_traits>
#include <utility>
#include <map>
#include <vector>

#include "prebloch/field.hpp"
#include "prebloch/error.hpp"

namespace prebloch {

/// Dense matrix over an exact field, row-major.
template <Field F>
class DenseMatrix {
 public:
  using Elem = typename F::value_type;

  DenseMatrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, field_.zero()) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Elem& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Elem& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  /// Reduced row echelon form in place; returns the pivot columns.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t piv = r;
      while (piv < rows_ && F::is_zero(at(piv, c))) ++piv;
      if (piv == rows_) continue;
      if (piv != r)
        for (std::size_t j = 0; j < cols_; ++j) std::swap(at(piv, j), at(r, j));
      Elem inv = inverse(at(r, c));
      for (std::size_t j = c; j < cols_; ++j) at(r, j) = at(r, j) * inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || F::is_zero(at(i, c))) continue;
        Elem f = at(i, c);
        for (std::size_t j = c; j < cols_; ++j) at(i, j) = at(i, j) - f * at(r, j);
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  /// Basis of {v : M v = 0}, one vector per free column.
  std::vector<std::vector<Elem>> nullspace() const {
    DenseMatrix m = *this;
    auto pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Elem>> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<Elem> v(cols_, field_.zero());
      v[free] = field_.one();
      for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m.at(i, free);
      basis.push_back(std::move(v));
    }
    return basis;
  }

 private:
  F field_;
  std::size_t rows_, cols_;
  std::vector<Elem> a_;
};

using QMatrix = DenseMatrix<RationalField>;

/// Exact basis of the Q-relations among the images of the generators:
/// all c with map(sum c_i g_i) = 0. The image type must expose terms() as a
/// key -> rational map; images of differing arity are a shape mismatch.
template <class Gen, class MapFn>
std::vector<std::vector<mpq_class>> kernel_basis(const std::vector<Gen>& gens, MapFn&& map) {
  using Image = decltype(map(gens.front()));
  using Key = typename std::decay_t<decltype(std::declval<Image>().terms())>::key_type;
  if constexpr (requires(const Gen& g) { g.arity(); }) {
    for (const auto& g : gens)
      if (g.arity() != gens.front().arity()) throw Error(ErrorCode::ShapeMismatch, "generators of differing arity");
  }
  std::vector<Image> images;
  images.reserve(gens.size());
  for (const auto& g : gens) images.push_back(map(g));
  std::map<Key, std::size_t> index;
  for (const auto& im : images) {
    if constexpr (requires(const Image& x) { x.arity(); }) {
      if (im.arity() != images.front().arity() && !im.is_zero() && !images.front().is_zero())
        throw Error(ErrorCode::ShapeMismatch, "images of differing arity");
    }
    for (const auto& [k, c] : im.terms()) index.try_emplace(k, index.size());
  }
  QMatrix m(RationalField{}, index.size(), gens.size());
  for (std::size_t j = 0; j < images.size(); ++j)
    for (const auto& [k, c] : images[j].terms()) m.at(index.at(k), j) = c;
  return m.nullspace();
}

}  // namespace prebloch
