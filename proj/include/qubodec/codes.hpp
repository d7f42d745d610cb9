#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qubodec {

/// Binary vector, one bit per byte (values 0/1). Index 0 is the first
/// transmitted bit everywhere: files, vectors, QUBO variables.
using BitVec = std::vector<uint8_t>;

std::string to_bit_string(const BitVec& bits);
BitVec bit_vec_from_string(const std::string& s);

/// Raised by the file loaders; line() is the 1-based line the problem was found on.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Raised by derive_generator when H has a trivial nullspace (rank == n).
class NoCodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sparse binary parity-check matrix over GF(2) with Tanner-graph adjacency
/// kept on both sides. Immutable after construction.
class ParityCheckMatrix {
 public:
  ParityCheckMatrix(int rows, int cols, const std::vector<std::pair<int, int>>& entries);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  std::size_t num_entries() const noexcept { return num_entries_; }
  double density() const noexcept;

  /// check_adjacency()[i] = sorted variable indices of check i.
  const std::vector<std::vector<int>>& check_adjacency() const noexcept { return check_adj_; }
  /// variable_adjacency()[j] = sorted check indices touching variable j.
  const std::vector<std::vector<int>>& variable_adjacency() const noexcept { return var_adj_; }

  int check_degree(int check) const { return static_cast<int>(check_adj_.at(check).size()); }

  /// Sorted (check, variable) entry set, for round-trip tests and serialization.
  std::vector<std::pair<int, int>> entries() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::size_t num_entries_ = 0;
  std::vector<std::vector<int>> check_adj_;
  std::vector<std::vector<int>> var_adj_;
};

/// Rows span the nullspace of the H they were derived from; systematic up to
/// the recorded column positions (codeword bit at message_position(i) equals
/// message bit i).
class GeneratorMatrix {
 public:
  GeneratorMatrix(int n, std::vector<BitVec> rows, std::vector<int> message_positions,
                  int h_rank);

  int k() const noexcept { return static_cast<int>(rows_.size()); }
  int n() const noexcept { return n_; }
  const BitVec& row(int i) const { return rows_.at(i); }
  const std::vector<BitVec>& rows() const noexcept { return rows_; }

  /// Original-column index holding message bit i in every encoded codeword.
  const std::vector<int>& message_positions() const noexcept { return message_positions_; }
  /// GF(2) rank of the H used for the derivation; < H.rows() means H had
  /// redundant rows that were dropped.
  int h_rank() const noexcept { return h_rank_; }

 private:
  int n_;
  std::vector<BitVec> rows_;
  std::vector<int> message_positions_;
  int h_rank_;
};

/// Parse the alist format (header "n m", max degrees, degree lists, then
/// per-variable and per-check adjacency, 1-based). Trailing zero padding in
/// fixed-width variants is ignored. Errors carry the offending line number.
ParityCheckMatrix parse_alist(std::istream& in);
ParityCheckMatrix parse_alist_file(const std::string& path);
void write_alist(const ParityCheckMatrix& h, std::ostream& out);

/// Dense 0/1 text loader for tiny test matrices: one row per line, bits
/// separated by whitespace or written as a contiguous 01 string.
ParityCheckMatrix parse_dense(std::istream& in);

/// Gaussian elimination over GF(2) with column pivoting. Dependent rows of H
/// are dropped (k = n - rank); the column permutation is undone so every row g
/// of the result satisfies H·gᵀ = 0 against the original H.
GeneratorMatrix derive_generator(const ParityCheckMatrix& h);

/// c = m·G over GF(2).
BitVec encode(const BitVec& message, const GeneratorMatrix& g);

/// H·cᵀ over GF(2); component i is the parity of c restricted to check i.
BitVec syndrome(const BitVec& word, const ParityCheckMatrix& h);

bool is_codeword(const BitVec& word, const ParityCheckMatrix& h);

}  // namespace qubodec
