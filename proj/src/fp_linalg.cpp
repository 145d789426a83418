#include "cohoforge/fp_linalg.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

#include "cohoforge/errors.hpp"

namespace cohoforge {

namespace {

std::size_t words_for(std::uint32_t p, std::size_t width) {
  return p == 2 ? (width + 63) / 64 : (width + 7) / 8;
}

std::uint8_t* bytes(std::uint64_t* row) { return reinterpret_cast<std::uint8_t*>(row); }
const std::uint8_t* bytes(const std::uint64_t* row) {
  return reinterpret_cast<const std::uint8_t*>(row);
}

std::uint32_t get_entry(const std::uint64_t* row, std::uint32_t p, std::size_t c) {
  if (p == 2) return (row[c / 64] >> (c % 64)) & 1u;
  return bytes(row)[c];
}

void set_entry(std::uint64_t* row, std::uint32_t p, std::size_t c, std::uint32_t v) {
  if (p == 2) {
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    if (v & 1u)
      row[c / 64] |= bit;
    else
      row[c / 64] &= ~bit;
    return;
  }
  bytes(row)[c] = static_cast<std::uint8_t>(v);
}

template <std::uint32_t P>
void add_scaled_fixed(std::uint8_t* dst, const std::uint8_t* src, std::uint32_t c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t s = dst[i] + c * src[i];
    dst[i] = static_cast<std::uint8_t>(s % P);
  }
}

void add_scaled_generic(std::uint8_t* dst, const std::uint8_t* src, std::uint32_t c, std::size_t n,
                        std::uint32_t p) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = static_cast<std::uint8_t>((dst[i] + c * src[i]) % p);
}

// dst[from..) += c * src[from..), where `from` is a column index.
void add_scaled_row(std::uint64_t* dst, const std::uint64_t* src, std::uint32_t p, std::uint32_t c,
                    std::size_t words, std::size_t from = 0) {
  if (c == 0) return;
  if (p == 2) {
    for (std::size_t w = from / 64; w < words; ++w) dst[w] ^= src[w];
    return;
  }
  std::uint8_t* d = bytes(dst) + from;
  const std::uint8_t* s = bytes(src) + from;
  const std::size_t n = words * 8 - from;
  switch (p) {
    case 3: add_scaled_fixed<3>(d, s, c, n); break;
    case 5: add_scaled_fixed<5>(d, s, c, n); break;
    case 7: add_scaled_fixed<7>(d, s, c, n); break;
    default: add_scaled_generic(d, s, c, n, p); break;
  }
}

void scale_row(std::uint64_t* row, std::uint32_t p, std::uint32_t c, std::size_t words) {
  if (p == 2 || c == 1) return;
  std::uint8_t* b = bytes(row);
  for (std::size_t i = 0; i < words * 8; ++i) b[i] = static_cast<std::uint8_t>((b[i] * c) % p);
}

std::uint32_t reduce_int(long long v, std::uint32_t p) {
  long long r = v % static_cast<long long>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

void check_prime(std::uint32_t p) {
  if (!is_prime(p) || p > 251) throw std::invalid_argument("modulus must be a prime below 256");
}

}  // namespace

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  a %= p;
  if (a == 0) throw std::domain_error("zero has no inverse");
  std::uint32_t result = 1, base = a, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

// ---------------------------------------------------------------- FpVector

FpVector::FpVector(std::uint32_t p, std::size_t size) : p_(p), v_(size, 0) { check_prime(p); }

FpVector::FpVector(std::uint32_t p, std::initializer_list<int> values) : p_(p) {
  check_prime(p);
  v_.reserve(values.size());
  for (int x : values) v_.push_back(static_cast<std::uint8_t>(reduce_int(x, p)));
}

bool FpVector::is_zero() const {
  return std::all_of(v_.begin(), v_.end(), [](std::uint8_t x) { return x == 0; });
}

void FpVector::add_scaled(const FpVector& other, std::uint32_t c) {
  if (other.size() != size()) throw DimensionMismatch("vector length mismatch");
  c %= p_;
  if (c == 0) return;
  for (std::size_t i = 0; i < v_.size(); ++i)
    v_[i] = static_cast<std::uint8_t>((v_[i] + c * other.v_[i]) % p_);
}

void FpVector::scale(std::uint32_t c) {
  c %= p_;
  for (auto& x : v_) x = static_cast<std::uint8_t>(x * c % p_);
}

std::uint32_t FpVector::total() const {
  std::uint64_t s = 0;
  for (auto x : v_) s += x;
  return static_cast<std::uint32_t>(s % p_);
}

std::uint32_t FpVector::dot(const FpVector& other) const {
  if (other.size() != size()) throw DimensionMismatch("vector length mismatch");
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < v_.size(); ++i) s += static_cast<std::uint64_t>(v_[i]) * other.v_[i];
  return static_cast<std::uint32_t>(s % p_);
}

FpVector& FpVector::operator+=(const FpVector& other) {
  add_scaled(other, 1);
  return *this;
}

FpVector& FpVector::operator-=(const FpVector& other) {
  add_scaled(other, p_ - 1);
  return *this;
}

// ---------------------------------------------------------------- FpMatrix

FpMatrix::FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), words_(words_for(p, cols)), data_(rows * words_, 0) {
  check_prime(p);
}

FpMatrix FpMatrix::identity(std::uint32_t p, std::size_t n) {
  FpMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FpMatrix FpMatrix::from_rows(std::uint32_t p, std::size_t cols, const std::vector<FpVector>& rows) {
  FpMatrix m(p, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

FpMatrix FpMatrix::from_values(std::uint32_t p,
                               std::initializer_list<std::initializer_list<int>> rows) {
  const std::size_t cols = rows.size() ? rows.begin()->size() : 0;
  FpMatrix m(p, rows.size(), cols);
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != cols) throw DimensionMismatch("ragged matrix literal");
    std::size_t c = 0;
    for (int v : row) m.set(r, c++, reduce_int(v, p));
    ++r;
  }
  return m;
}

std::uint32_t FpMatrix::get(std::size_t r, std::size_t c) const { return get_entry(row_ptr(r), p_, c); }

void FpMatrix::set(std::size_t r, std::size_t c, std::uint32_t value) {
  set_entry(row_ptr(r), p_, c, value % p_);
}

FpVector FpMatrix::row(std::size_t r) const {
  FpVector v(p_, cols_);
  const auto* src = row_ptr(r);
  for (std::size_t c = 0; c < cols_; ++c) v.set(c, get_entry(src, p_, c));
  return v;
}

void FpMatrix::set_row(std::size_t r, const FpVector& v) {
  if (v.size() != cols_ || v.prime() != p_) throw DimensionMismatch("row does not fit matrix");
  auto* dst = row_ptr(r);
  std::fill(dst, dst + words_, 0);
  for (std::size_t c = 0; c < cols_; ++c)
    if (v[c]) set_entry(dst, p_, c, v[c]);
}

std::vector<FpVector> FpMatrix::row_vectors() const {
  std::vector<FpVector> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix t(p_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (auto v = get(r, c)) t.set(c, r, v);
  return t;
}

bool FpMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::uint64_t w) { return w == 0; });
}

FpMatrix FpMatrix::operator*(const FpMatrix& rhs) const {
  if (cols_ != rhs.rows_ || p_ != rhs.p_) throw DimensionMismatch("matrix product shape mismatch");
  FpMatrix out(p_, rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k)
      if (auto a = get(r, k)) add_scaled_row(out.row_ptr(r), rhs.row_ptr(k), p_, a, out.words_);
  return out;
}

FpVector FpMatrix::operator*(const FpVector& x) const {
  if (x.size() != cols_) throw DimensionMismatch("matrix-vector shape mismatch");
  FpVector out(p_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t s = 0;
    for (std::size_t c = 0; c < cols_; ++c) s += static_cast<std::uint64_t>(get(r, c)) * x[c];
    out.set(r, static_cast<std::uint32_t>(s % p_));
  }
  return out;
}

FpVector FpMatrix::left_multiply(const FpVector& x) const {
  if (x.size() != rows_) throw DimensionMismatch("vector-matrix shape mismatch");
  std::vector<std::uint64_t> acc(words_, 0);
  for (std::size_t r = 0; r < rows_; ++r)
    if (x[r]) add_scaled_row(acc.data(), row_ptr(r), p_, x[r], words_);
  FpVector out(p_, cols_);
  for (std::size_t c = 0; c < cols_; ++c) out.set(c, get_entry(acc.data(), p_, c));
  return out;
}

bool operator==(const FpMatrix& a, const FpMatrix& b) {
  return a.p_ == b.p_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

// ---------------------------------------------------------------- SpanBuilder

SpanBuilder::SpanBuilder(std::uint32_t p, std::size_t left, std::size_t right)
    : p_(p), left_(left), right_(right), words_(words_for(p, left + right)),
      row_of_pivot_(left, -1) {
  check_prime(p);
}

std::vector<std::uint64_t> SpanBuilder::pack(const FpVector& left, const FpVector* companion) const {
  if (left.size() != left_ || left.prime() != p_) throw DimensionMismatch("span row length mismatch");
  std::vector<std::uint64_t> row(words_, 0);
  for (std::size_t c = 0; c < left_; ++c)
    if (left[c]) set_entry(row.data(), p_, c, left[c]);
  if (companion) {
    if (companion->size() != right_) throw DimensionMismatch("companion length mismatch");
    for (std::size_t c = 0; c < right_; ++c)
      if ((*companion)[c]) set_entry(row.data(), p_, left_ + c, (*companion)[c]);
  }
  return row;
}

// Clears pivot columns left to right until the first nonzero non-pivot
// column, which is returned (npos if the left part vanishes).
std::size_t SpanBuilder::reduce(std::uint64_t* row) const {
  if (p_ == 2) {
    const std::size_t left_words = (left_ + 63) / 64;
    for (std::size_t w = 0; w < left_words; ++w) {
      std::uint64_t mask = ~std::uint64_t{0};
      if (w == left_words - 1 && left_ % 64) mask = (std::uint64_t{1} << (left_ % 64)) - 1;
      for (;;) {
        const std::uint64_t bits = row[w] & mask;
        if (!bits) break;
        const std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        const auto r = row_of_pivot_[c];
        if (r < 0) return c;
        add_scaled_row(row, rows_.data() + static_cast<std::size_t>(r) * words_, p_, 1, words_, c);
      }
    }
    return npos;
  }
  auto* b = bytes(row);
  for (std::size_t c = 0; c < left_; ++c) {
    if (!b[c]) continue;
    const auto r = row_of_pivot_[c];
    if (r < 0) return c;
    add_scaled_row(row, rows_.data() + static_cast<std::size_t>(r) * words_, p_, p_ - b[c], words_, c);
  }
  return npos;
}

FpVector SpanBuilder::unpack_right(const std::uint64_t* row) const {
  FpVector v(p_, right_);
  for (std::size_t c = 0; c < right_; ++c) v.set(c, get_entry(row, p_, left_ + c));
  return v;
}

FpVector SpanBuilder::unpack_left(const std::uint64_t* row) const {
  FpVector v(p_, left_);
  for (std::size_t c = 0; c < left_; ++c) v.set(c, get_entry(row, p_, c));
  return v;
}

bool SpanBuilder::add(const FpVector& v) {
  if (right_ != 0) return add(v, FpVector(p_, right_));
  auto row = pack(v, nullptr);
  const std::size_t c = reduce(row.data());
  if (c == npos) return false;
  scale_row(row.data(), p_, inverse_mod(get_entry(row.data(), p_, c), p_), words_);
  row_of_pivot_[c] = static_cast<std::int64_t>(pivot_cols_.size());
  pivot_cols_.push_back(c);
  rows_.insert(rows_.end(), row.begin(), row.end());
  return true;
}

bool SpanBuilder::add(const FpVector& v, const FpVector& companion, FpVector* residue) {
  auto row = pack(v, &companion);
  const std::size_t c = reduce(row.data());
  if (c == npos) {
    if (residue) *residue = unpack_right(row.data());
    return false;
  }
  scale_row(row.data(), p_, inverse_mod(get_entry(row.data(), p_, c), p_), words_);
  row_of_pivot_[c] = static_cast<std::int64_t>(pivot_cols_.size());
  pivot_cols_.push_back(c);
  rows_.insert(rows_.end(), row.begin(), row.end());
  return true;
}

bool SpanBuilder::contains(const FpVector& v) const {
  auto row = pack(v, nullptr);
  return reduce(row.data()) == npos;
}

std::optional<FpVector> SpanBuilder::express(const FpVector& v) const {
  auto row = pack(v, nullptr);
  if (reduce(row.data()) != npos) return std::nullopt;
  // row = v - sum(a_i * (left_i | comp_i)) with a vanishing left part, so the
  // right part holds -sum(a_i * comp_i).
  FpVector out = unpack_right(row.data());
  out.scale(p_ - 1);
  return out;
}

Subspace SpanBuilder::subspace() const {
  // Back-substitute the semi-echelon rows into reduced form.
  std::vector<std::size_t> order(pivot_cols_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pivot_cols_[a] < pivot_cols_[b]; });

  std::vector<std::uint64_t> rows(rows_);
  auto row_at = [&](std::size_t i) { return rows.data() + i * words_; };
  for (std::size_t k = order.size(); k-- > 0;) {
    const std::size_t src = order[k];
    const std::size_t col = pivot_cols_[src];
    for (std::size_t j = 0; j < k; ++j) {
      auto* dst = row_at(order[j]);
      const auto a = get_entry(dst, p_, col);
      if (a) add_scaled_row(dst, row_at(src), p_, p_ - a, words_, col);
    }
  }

  Subspace s(p_, left_);
  s.basis_ = FpMatrix(p_, order.size(), left_);
  for (std::size_t k = 0; k < order.size(); ++k) {
    s.basis_.set_row(k, unpack_left(row_at(order[k])));
    s.pivots_.push_back(pivot_cols_[order[k]]);
  }
  return s;
}

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(std::uint32_t p, std::size_t ambient)
    : p_(p), ambient_(ambient), basis_(p, 0, ambient) {}

Subspace Subspace::span(const FpMatrix& rows) {
  SpanBuilder b(rows.prime(), rows.cols());
  for (std::size_t r = 0; r < rows.rows(); ++r) b.add(rows.row(r));
  return b.subspace();
}

Subspace Subspace::span(std::uint32_t p, std::size_t ambient, const std::vector<FpVector>& rows) {
  SpanBuilder b(p, ambient);
  for (const auto& r : rows) b.add(r);
  return b.subspace();
}

Subspace Subspace::whole(std::uint32_t p, std::size_t ambient) {
  return span(FpMatrix::identity(p, ambient));
}

FpVector Subspace::reduce(const FpVector& v) const {
  if (v.size() != ambient_) throw DimensionMismatch("vector does not live in the ambient space");
  FpVector out = v;
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const auto a = out[pivots_[i]];
    if (a) out.add_scaled(basis_.row(i), p_ - a);
  }
  return out;
}

std::optional<FpVector> Subspace::coordinates(const FpVector& v) const {
  if (v.size() != ambient_) throw DimensionMismatch("vector does not live in the ambient space");
  FpVector coeff(p_, pivots_.size());
  FpVector rest = v;
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const auto a = v[pivots_[i]];
    coeff.set(i, a);
    if (a) rest.add_scaled(basis_.row(i), p_ - a);
  }
  if (!rest.is_zero()) return std::nullopt;
  return coeff;
}

bool Subspace::member(const FpVector& v) const { return coordinates(v).has_value(); }

bool Subspace::contains(const Subspace& other) const {
  for (std::size_t r = 0; r < other.basis_.rows(); ++r)
    if (!member(other.basis_.row(r))) return false;
  return true;
}

// ---------------------------------------------------------------- RowSolver

RowSolver::RowSolver(const FpMatrix& m)
    : domain_(m.rows()), codomain_(m.cols()), builder_(m.prime(), m.cols(), m.rows()) {
  const std::uint32_t p = m.prime();
  SpanBuilder kernel(p, domain_);
  FpVector unit(p, domain_);
  FpVector residue;
  for (std::size_t r = 0; r < domain_; ++r) {
    unit.set(r, 1);
    if (!builder_.add(m.row(r), unit, &residue)) kernel.add(residue);
    unit.set(r, 0);
  }
  kernel_ = kernel.subspace();
}

std::optional<FpVector> RowSolver::solve(const FpVector& y) const {
  if (y.size() != codomain_) throw DimensionMismatch("right-hand side has wrong length");
  return builder_.express(y);
}

// ---------------------------------------------------------------- free functions

RrefResult rref(const FpMatrix& m) {
  Subspace s = Subspace::span(m);
  return {s.basis(), s.pivots()};
}

std::size_t rank(const FpMatrix& m) { return Subspace::span(m).dim(); }

Subspace kernel_basis(const FpMatrix& m) { return RowSolver(m.transpose()).left_kernel(); }

Subspace image_basis(const FpMatrix& m) { return Subspace::span(m.transpose()); }

std::optional<FpVector> solve(const FpMatrix& m, const FpVector& rhs) {
  if (rhs.size() != m.rows()) throw DimensionMismatch("right-hand side has wrong length");
  return RowSolver(m.transpose()).solve(rhs);
}

bool member(const Subspace& s, const FpVector& v) { return s.member(v); }

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient() || a.prime() != b.prime())
    throw DimensionMismatch("subspaces live in different spaces");
  SpanBuilder builder(a.prime(), a.ambient());
  for (std::size_t r = 0; r < a.dim(); ++r) builder.add(a.basis().row(r));
  for (std::size_t r = 0; r < b.dim(); ++r) builder.add(b.basis().row(r));
  return builder.subspace();
}

}  // namespace cohoforge
