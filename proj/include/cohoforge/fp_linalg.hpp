#pragma once

// Exact dense linear algebra over the prime field GF(p).
//
// Rows are packed into 64-bit words: one bit per entry when p == 2, one byte
// per entry otherwise. All row reductions use the same pivot rule (leftmost
// column, earliest row), so every basis produced here is reproducible.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "cohoforge/errors.hpp"

namespace cohoforge {

bool is_prime(std::uint32_t n);

/// Multiplicative inverse of a nonzero residue modulo the prime p.
std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);

/// Dense vector over GF(p), one byte per entry.
class FpVector {
 public:
  FpVector() = default;
  FpVector(std::uint32_t p, std::size_t size);
  /// Entries are reduced modulo p (negative values wrap).
  FpVector(std::uint32_t p, std::initializer_list<int> values);

  std::uint32_t prime() const { return p_; }
  std::size_t size() const { return v_.size(); }
  std::uint32_t operator[](std::size_t i) const { return v_[i]; }
  void set(std::size_t i, std::uint32_t value) { v_[i] = static_cast<std::uint8_t>(value % p_); }
  const std::vector<std::uint8_t>& entries() const { return v_; }

  bool is_zero() const;
  /// this += c * other
  void add_scaled(const FpVector& other, std::uint32_t c);
  void scale(std::uint32_t c);
  /// Sum of all entries modulo p.
  std::uint32_t total() const;
  std::uint32_t dot(const FpVector& other) const;

  FpVector& operator+=(const FpVector& other);
  FpVector& operator-=(const FpVector& other);
  friend FpVector operator+(FpVector a, const FpVector& b) { return a += b; }
  friend FpVector operator-(FpVector a, const FpVector& b) { return a -= b; }
  friend bool operator==(const FpVector& a, const FpVector& b) {
    return a.p_ == b.p_ && a.v_ == b.v_;
  }

 private:
  std::uint32_t p_ = 2;
  std::vector<std::uint8_t> v_;
};

class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols);

  static FpMatrix identity(std::uint32_t p, std::size_t n);
  static FpMatrix from_rows(std::uint32_t p, std::size_t cols, const std::vector<FpVector>& rows);
  static FpMatrix from_values(std::uint32_t p, std::initializer_list<std::initializer_list<int>> rows);

  std::uint32_t prime() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint32_t get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, std::uint32_t value);
  FpVector row(std::size_t r) const;
  void set_row(std::size_t r, const FpVector& v);
  std::vector<FpVector> row_vectors() const;

  FpMatrix transpose() const;
  bool is_zero() const;

  FpMatrix operator*(const FpMatrix& rhs) const;
  /// M * x for a column vector x of length cols().
  FpVector operator*(const FpVector& x) const;
  /// x * M for a row vector x of length rows().
  FpVector left_multiply(const FpVector& x) const;

  friend bool operator==(const FpMatrix& a, const FpMatrix& b);

 private:
  const std::uint64_t* row_ptr(std::size_t r) const { return data_.data() + r * words_; }
  std::uint64_t* row_ptr(std::size_t r) { return data_.data() + r * words_; }

  std::uint32_t p_ = 2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> data_;
};

/// A subspace of GF(p)^ambient held by its reduced row-echelon basis.
class Subspace {
 public:
  Subspace() = default;
  /// The zero subspace.
  Subspace(std::uint32_t p, std::size_t ambient);
  /// Span of the given rows (any matrix with `ambient` columns).
  static Subspace span(const FpMatrix& rows);
  static Subspace span(std::uint32_t p, std::size_t ambient, const std::vector<FpVector>& rows);
  static Subspace whole(std::uint32_t p, std::size_t ambient);

  std::uint32_t prime() const { return p_; }
  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return pivots_.size(); }
  const FpMatrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool member(const FpVector& v) const;
  /// Coefficients of v in the rref basis, or nullopt if v is not in the span.
  std::optional<FpVector> coordinates(const FpVector& v) const;
  /// v with every pivot coordinate cleared; zero iff v is a member.
  FpVector reduce(const FpVector& v) const;
  bool contains(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  friend class SpanBuilder;
  std::uint32_t p_ = 2;
  std::size_t ambient_ = 0;
  FpMatrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Incremental semi-echelon span with optional companion columns.
///
/// Every inserted row has `left` columns that take part in pivoting and
/// `right` trailing columns that are carried along by the same row
/// operations. Leading entries are normalized to 1.
class SpanBuilder {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  SpanBuilder(std::uint32_t p, std::size_t left, std::size_t right = 0);

  std::uint32_t prime() const { return p_; }
  std::size_t left() const { return left_; }
  std::size_t right() const { return right_; }
  std::size_t rank() const { return pivot_cols_.size(); }

  /// Adds v (length left) to the span; true iff it was not already a member.
  bool add(const FpVector& v);
  /// Adds (v | companion). If v reduces to zero, the reduced companion part
  /// is written to `residue` (when given) and false is returned.
  bool add(const FpVector& v, const FpVector& companion, FpVector* residue = nullptr);
  bool contains(const FpVector& v) const;

  /// Expresses v as a combination of the inserted rows' companion parts:
  /// returns the companion-space vector c with v = sum(coeff_i * left_i) and
  /// c = sum(coeff_i * companion_i), or nullopt when v is not in the span.
  std::optional<FpVector> express(const FpVector& v) const;

  Subspace subspace() const;

 private:
  std::vector<std::uint64_t> pack(const FpVector& left, const FpVector* companion) const;
  std::size_t reduce(std::uint64_t* row) const;
  FpVector unpack_right(const std::uint64_t* row) const;
  FpVector unpack_left(const std::uint64_t* row) const;

  std::uint32_t p_;
  std::size_t left_;
  std::size_t right_;
  std::size_t words_;
  std::vector<std::uint64_t> rows_;
  std::vector<std::size_t> pivot_cols_;
  std::vector<std::int64_t> row_of_pivot_;
};

/// Solves x * M = y for a fixed M and many right-hand sides, and exposes the
/// left kernel {x : x * M = 0} found along the way.
class RowSolver {
 public:
  explicit RowSolver(const FpMatrix& m);

  std::size_t rank() const { return builder_.rank(); }
  std::size_t domain_dim() const { return domain_; }
  std::size_t codomain_dim() const { return codomain_; }
  /// Reduced row-echelon basis of the left kernel.
  const Subspace& left_kernel() const { return kernel_; }
  std::optional<FpVector> solve(const FpVector& y) const;

 private:
  std::size_t domain_;
  std::size_t codomain_;
  SpanBuilder builder_;
  Subspace kernel_;
};

struct RrefResult {
  FpMatrix matrix;  // nonzero rows only
  std::vector<std::size_t> pivots;
};

RrefResult rref(const FpMatrix& m);
std::size_t rank(const FpMatrix& m);
/// Right kernel {x : m x = 0}.
Subspace kernel_basis(const FpMatrix& m);
/// Column space of m.
Subspace image_basis(const FpMatrix& m);
/// Some x with m x = rhs, or nullopt.
std::optional<FpVector> solve(const FpMatrix& m, const FpVector& rhs);
bool member(const Subspace& s, const FpVector& v);
Subspace sum(const Subspace& a, const Subspace& b);

}  // namespace cohoforge
