#include "regenlab/matrix.hpp"

#include <algorithm>

#include "regenlab/errors.hpp"
#include "regenlab/rng.hpp"

namespace regenlab {

namespace {

// In-place reduced row echelon form over the leftmost `pivot_cols` columns.
// Returns pivot columns in order; rows beyond the pivot count are zero on the
// pivot-column side afterwards.
std::vector<std::size_t> rref(const GaloisField& f, std::vector<std::uint16_t>& a,
                              std::size_t rows, std::size_t cols, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p * cols + c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[p * cols + j], a[r * cols + j]);
    }
    const std::uint16_t piv_inv = f.inv(a[r * cols + c]);
    for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = f.mul(a[r * cols + j], piv_inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const std::uint16_t factor = a[i * cols + c];
      if (factor == 0) continue;
      for (std::size_t j = c; j < cols; ++j)
        a[i * cols + j] = f.add(a[i * cols + j], f.mul(factor, a[r * cols + j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

FieldMatrix::FieldMatrix(const GaloisField& f, std::size_t rows, std::size_t cols)
    : field_(&f), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

FieldMatrix FieldMatrix::identity(const GaloisField& f, std::size_t n) {
  FieldMatrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FieldMatrix FieldMatrix::random(const GaloisField& f, std::size_t rows, std::size_t cols,
                                std::uint64_t seed) {
  FieldMatrix m(f, rows, cols);
  Rng rng(seed);
  const std::uint16_t mask = f.max_element();
  for (auto& v : m.a_) v = static_cast<std::uint16_t>(rng.next()) & mask;
  return m;
}

FieldMatrix FieldMatrix::random_full_rank(const GaloisField& f, std::size_t rows,
                                          std::size_t cols, std::uint64_t seed) {
  const std::size_t want = std::min(rows, cols);
  for (int attempt = 0; attempt < 256; ++attempt) {
    FieldMatrix m = random(f, rows, cols, mix_seed(seed, std::uint64_t(attempt)));
    if (m.rank() == want) return m;
  }
  throw Error(Errc::InvalidParams, "could not draw a full-rank matrix");
}

void FieldMatrix::append_row(std::span<const std::uint16_t> row) {
  if (row.size() != cols_) throw Error(Errc::InvalidParams, "row width mismatch");
  a_.insert(a_.end(), row.begin(), row.end());
  ++rows_;
}

void FieldMatrix::append_rows(const FieldMatrix& other) {
  if (other.cols_ != cols_) throw Error(Errc::InvalidParams, "column count mismatch");
  a_.insert(a_.end(), other.a_.begin(), other.a_.end());
  rows_ += other.rows_;
}

FieldMatrix FieldMatrix::operator*(const FieldMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error(Errc::InvalidParams, "dimension mismatch in multiply");
  const GaloisField& f = *field_;
  FieldMatrix out(f, rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t t = 0; t < cols_; ++t) {
      const std::uint16_t v = at(i, t);
      if (v == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        out.a_[i * rhs.cols_ + j] =
            f.add(out.a_[i * rhs.cols_ + j], f.mul(v, rhs.at(t, j)));
      }
    }
  }
  return out;
}

std::size_t FieldMatrix::rank() const {
  std::vector<std::uint16_t> a = a_;
  return rref(*field_, a, rows_, cols_, cols_).size();
}

FieldMatrix::SolveResult FieldMatrix::solve(const FieldMatrix& rhs, bool require_unique) const {
  if (rhs.rows_ != rows_) throw Error(Errc::InvalidParams, "rhs row count mismatch");
  const GaloisField& f = *field_;
  const std::size_t w = cols_ + rhs.cols_;
  std::vector<std::uint16_t> aug(rows_ * w, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) aug[i * w + j] = at(i, j);
    for (std::size_t j = 0; j < rhs.cols_; ++j) aug[i * w + cols_ + j] = rhs.at(i, j);
  }
  const std::vector<std::size_t> pivots = rref(f, aug, rows_, w, cols_);

  // A row that is zero on the A side but not on the b side is a contradiction.
  for (std::size_t i = pivots.size(); i < rows_; ++i) {
    for (std::size_t j = cols_; j < w; ++j) {
      if (aug[i * w + j] != 0) return {SolveStatus::NoSolution, FieldMatrix(f, 0, 0)};
    }
  }
  if (require_unique && pivots.size() < cols_)
    return {SolveStatus::UnderDetermined, FieldMatrix(f, 0, 0)};

  FieldMatrix x(f, cols_, rhs.cols_);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    for (std::size_t j = 0; j < rhs.cols_; ++j) x.set(pivots[r], j, aug[r * w + cols_ + j]);
  }
  return {SolveStatus::Ok, x};
}

}  // namespace regenlab
