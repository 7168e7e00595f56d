#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "regenlab/gf.hpp"

namespace regenlab {

enum class SolveStatus { Ok, NoSolution, UnderDetermined };

// Dense row-major matrix over a GF(2^w) field. Value semantics throughout;
// rank/solve work on internal copies and never mutate the receiver.
class FieldMatrix {
 public:
  FieldMatrix(const GaloisField& f, std::size_t rows, std::size_t cols);

  static FieldMatrix identity(const GaloisField& f, std::size_t n);
  static FieldMatrix random(const GaloisField& f, std::size_t rows, std::size_t cols,
                            std::uint64_t seed);
  // Redraws until rank equals min(rows, cols).
  static FieldMatrix random_full_rank(const GaloisField& f, std::size_t rows, std::size_t cols,
                                      std::uint64_t seed);

  const GaloisField& field() const { return *field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint16_t at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::uint16_t v) { a_[r * cols_ + c] = v; }
  std::span<const std::uint16_t> row(std::size_t r) const {
    return {a_.data() + r * cols_, cols_};
  }

  void append_row(std::span<const std::uint16_t> row);
  void append_rows(const FieldMatrix& other);

  FieldMatrix operator*(const FieldMatrix& rhs) const;

  std::size_t rank() const;

  struct SolveResult {
    SolveStatus status;
    FieldMatrix x;  // cols(A) x cols(b); meaningful only when status == Ok
  };

  // Solves A * x = rhs. With require_unique, a consistent system with
  // rank < cols reports UnderDetermined; otherwise free variables are zeroed.
  SolveResult solve(const FieldMatrix& rhs, bool require_unique = true) const;

 private:
  const GaloisField* field_;
  std::size_t rows_, cols_;
  std::vector<std::uint16_t> a_;
};

}  // namespace regenlab
