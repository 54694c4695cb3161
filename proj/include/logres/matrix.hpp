#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "logres/scalar.hpp"

namespace logres {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Dense d_W x d_W matrix of Gaussian rationals; an element of End(W).
class MatrixW {
 public:
  MatrixW() = default;
  explicit MatrixW(int dim) : dim_(dim), entries_(static_cast<std::size_t>(dim) * dim) {
    if (dim < 1) throw std::invalid_argument("matrix dimension must be positive");
  }

  static MatrixW identity(int dim, const Scalar& diag = 1) {
    MatrixW m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = diag;
    return m;
  }

  int dim() const { return dim_; }

  Scalar& operator()(int r, int c) { return entries_[static_cast<std::size_t>(r) * dim_ + c]; }
  const Scalar& operator()(int r, int c) const {
    return entries_[static_cast<std::size_t>(r) * dim_ + c];
  }

  bool is_zero() const {
    for (const auto& e : entries_)
      if (!e.is_zero()) return false;
    return true;
  }

  /// True when the matrix is c * identity; c is written to `c` on success.
  bool is_scalar(Scalar* c = nullptr) const {
    for (int r = 0; r < dim_; ++r)
      for (int k = 0; k < dim_; ++k)
        if (r != k && !(*this)(r, k).is_zero()) return false;
    for (int r = 1; r < dim_; ++r)
      if (!((*this)(r, r) == (*this)(0, 0))) return false;
    if (c != nullptr) *c = (*this)(0, 0);
    return true;
  }

  Scalar trace() const {
    Scalar t;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  MatrixW& operator+=(const MatrixW& o) {
    check(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }
  MatrixW& operator-=(const MatrixW& o) {
    check(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
    return *this;
  }
  MatrixW& operator*=(const Scalar& s) {
    for (auto& e : entries_) e *= s;
    return *this;
  }

  friend MatrixW operator+(MatrixW a, const MatrixW& b) { return a += b; }
  friend MatrixW operator-(MatrixW a, const MatrixW& b) { return a -= b; }
  friend MatrixW operator-(MatrixW a) {
    for (auto& e : a.entries_) e = -e;
    return a;
  }
  friend MatrixW operator*(MatrixW a, const Scalar& s) { return a *= s; }
  friend MatrixW operator*(const Scalar& s, MatrixW a) { return a *= s; }

  friend MatrixW operator*(const MatrixW& a, const MatrixW& b) {
    a.check(b);
    if (a.dim_ == 1) {
      MatrixW m(1);
      m.entries_[0] = a.entries_[0] * b.entries_[0];
      return m;
    }
    MatrixW m(a.dim_);
    for (int r = 0; r < a.dim_; ++r)
      for (int k = 0; k < a.dim_; ++k) {
        const Scalar& ark = a(r, k);
        if (ark.is_zero()) continue;
        for (int c = 0; c < a.dim_; ++c) m(r, c) += ark * b(k, c);
      }
    return m;
  }

  friend bool operator==(const MatrixW& a, const MatrixW& b) {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

  std::string str() const {
    if (dim_ == 1) return entries_[0].str();
    std::string s = "[";
    for (int r = 0; r < dim_; ++r) {
      s += r ? "; " : "";
      for (int c = 0; c < dim_; ++c) s += (c ? ", " : "") + (*this)(r, c).str();
    }
    return s + "]";
  }

 private:
  void check(const MatrixW& o) const {
    if (dim_ != o.dim_) {
      throw DimensionMismatch("End(W) dimension mismatch: " + std::to_string(dim_) + " vs " +
                              std::to_string(o.dim_));
    }
  }

  int dim_ = 1;
  std::vector<Scalar> entries_ = std::vector<Scalar>(1);
};

inline MatrixW commutator(const MatrixW& a, const MatrixW& b) { return a * b - b * a; }

}  // namespace logres
