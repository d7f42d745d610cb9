#include "qubodec/codes.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

namespace qubodec {

std::string to_bit_string(const BitVec& bits) {
  std::string s;
  s.reserve(bits.size());
  for (uint8_t b : bits) s.push_back(b ? '1' : '0');
  return s;
}

BitVec bit_vec_from_string(const std::string& s) {
  BitVec bits;
  bits.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("bit string contains non-binary character");
    bits.push_back(c == '1' ? 1 : 0);
  }
  return bits;
}

ParseError::ParseError(const std::string& msg, int line)
    : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}

ParityCheckMatrix::ParityCheckMatrix(int rows, int cols,
                                     const std::vector<std::pair<int, int>>& entries)
    : rows_(rows), cols_(cols) {
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("matrix dimensions must be positive");
  check_adj_.resize(rows);
  var_adj_.resize(cols);
  std::set<std::pair<int, int>> seen;
  for (auto [check, var] : entries) {
    if (check < 0 || check >= rows || var < 0 || var >= cols)
      throw std::invalid_argument("entry (" + std::to_string(check) + "," + std::to_string(var) +
                                  ") out of bounds for " + std::to_string(rows) + "x" +
                                  std::to_string(cols) + " matrix");
    if (!seen.insert({check, var}).second) continue;  // entry set semantics
    check_adj_[check].push_back(var);
    var_adj_[var].push_back(check);
  }
  num_entries_ = seen.size();
  for (auto& a : check_adj_) std::sort(a.begin(), a.end());
  for (auto& a : var_adj_) std::sort(a.begin(), a.end());
}

double ParityCheckMatrix::density() const noexcept {
  return static_cast<double>(num_entries_) / (static_cast<double>(rows_) * cols_);
}

std::vector<std::pair<int, int>> ParityCheckMatrix::entries() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(num_entries_);
  for (int c = 0; c < rows_; ++c)
    for (int v : check_adj_[c]) out.emplace_back(c, v);
  return out;
}

GeneratorMatrix::GeneratorMatrix(int n, std::vector<BitVec> rows,
                                 std::vector<int> message_positions, int h_rank)
    : n_(n), rows_(std::move(rows)), message_positions_(std::move(message_positions)),
      h_rank_(h_rank) {
  for (const auto& r : rows_)
    if (static_cast<int>(r.size()) != n_)
      throw std::invalid_argument("generator row length mismatch");
  if (message_positions_.size() != rows_.size())
    throw std::invalid_argument("one message position per generator row required");
}

namespace {

// Line-oriented integer reader so parse errors can name the offending line.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-empty line split into ints; returns false at EOF.
  bool next(std::vector<long>& out) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      std::istringstream ss(line);
      out.clear();
      long v = 0;
      while (ss >> v) out.push_back(v);
      std::string trailing;
      if (ss.clear(), ss >> trailing)
        throw ParseError("non-numeric token '" + trailing + "'", line_no_);
      if (!out.empty()) return true;
    }
    return false;
  }

  std::vector<long> expect(std::size_t count, const std::string& what) {
    std::vector<long> vals;
    if (!next(vals)) throw ParseError("unexpected end of file while reading " + what, line_no_);
    if (vals.size() != count)
      throw ParseError("expected " + std::to_string(count) + " values for " + what + ", got " +
                           std::to_string(vals.size()),
                       line_no_);
    return vals;
  }

  int line_no() const noexcept { return line_no_; }

 private:
  std::istream& in_;
  int line_no_ = 0;
};

// One alist adjacency line: exactly `degree` nonzero 1-based indices, then
// optional zero padding. Returns 0-based indices.
std::vector<int> parse_adjacency_line(LineReader& reader, int degree, long limit,
                                      const std::string& what) {
  std::vector<long> vals;
  if (!reader.next(vals))
    throw ParseError("unexpected end of file while reading " + what, reader.line_no());
  std::vector<int> out;
  bool in_padding = false;
  for (long v : vals) {
    if (v == 0) {
      in_padding = true;
      continue;
    }
    if (in_padding)
      throw ParseError("nonzero index after zero padding in " + what, reader.line_no());
    if (v < 1 || v > limit)
      throw ParseError("index " + std::to_string(v) + " out of range [1," +
                           std::to_string(limit) + "] in " + what,
                       reader.line_no());
    out.push_back(static_cast<int>(v) - 1);
  }
  if (static_cast<int>(out.size()) != degree)
    throw ParseError(what + " lists " + std::to_string(out.size()) + " entries but the degree list says " +
                         std::to_string(degree),
                     reader.line_no());
  std::vector<int> sorted = out;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ParseError("duplicate index in " + what, reader.line_no());
  return out;
}

}  // namespace

ParityCheckMatrix parse_alist(std::istream& in) {
  LineReader reader(in);
  auto header = reader.expect(2, "header (n m)");
  long n = header[0], m = header[1];
  if (n <= 0 || m <= 0) throw ParseError("dimensions must be positive", reader.line_no());
  reader.expect(2, "max degrees");

  auto var_degrees = reader.expect(static_cast<std::size_t>(n), "variable degree list");
  auto check_degrees = reader.expect(static_cast<std::size_t>(m), "check degree list");
  for (long d : var_degrees)
    if (d < 0) throw ParseError("negative variable degree", reader.line_no());
  for (long d : check_degrees)
    if (d < 0) throw ParseError("negative check degree", reader.line_no());

  std::set<std::pair<int, int>> from_vars;
  for (long v = 0; v < n; ++v) {
    auto checks = parse_adjacency_line(reader, static_cast<int>(var_degrees[v]), m,
                                       "adjacency of variable " + std::to_string(v + 1));
    for (int c : checks) from_vars.insert({c, static_cast<int>(v)});
  }
  std::set<std::pair<int, int>> from_checks;
  int first_check_line = reader.line_no() + 1;
  for (long c = 0; c < m; ++c) {
    auto vars = parse_adjacency_line(reader, static_cast<int>(check_degrees[c]), n,
                                     "adjacency of check " + std::to_string(c + 1));
    for (int v : vars) from_checks.insert({static_cast<int>(c), v});
  }
  if (from_vars != from_checks)
    throw ParseError("variable and check adjacency lists disagree (lines " +
                         std::to_string(first_check_line) + " onward)",
                     reader.line_no());

  std::vector<std::pair<int, int>> entries(from_checks.begin(), from_checks.end());
  return ParityCheckMatrix(static_cast<int>(m), static_cast<int>(n), entries);
}

ParityCheckMatrix parse_alist_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open code file: " + path);
  return parse_alist(in);
}

void write_alist(const ParityCheckMatrix& h, std::ostream& out) {
  const auto& checks = h.check_adjacency();
  const auto& vars = h.variable_adjacency();
  std::size_t max_var_deg = 0, max_check_deg = 0;
  for (const auto& a : vars) max_var_deg = std::max(max_var_deg, a.size());
  for (const auto& a : checks) max_check_deg = std::max(max_check_deg, a.size());
  out << h.cols() << ' ' << h.rows() << '\n';
  out << max_var_deg << ' ' << max_check_deg << '\n';
  for (std::size_t j = 0; j < vars.size(); ++j) out << vars[j].size() << " \n"[j + 1 == vars.size()];
  for (std::size_t i = 0; i < checks.size(); ++i)
    out << checks[i].size() << " \n"[i + 1 == checks.size()];
  for (const auto& a : vars) {
    for (std::size_t t = 0; t < a.size(); ++t) out << a[t] + 1 << " \n"[t + 1 == a.size()];
    if (a.empty()) out << '\n';
  }
  for (const auto& a : checks) {
    for (std::size_t t = 0; t < a.size(); ++t) out << a[t] + 1 << " \n"[t + 1 == a.size()];
    if (a.empty()) out << '\n';
  }
}

ParityCheckMatrix parse_dense(std::istream& in) {
  std::vector<std::pair<int, int>> entries;
  std::string line;
  int row = 0, cols = -1, line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::vector<int> bits;
    std::string tok;
    while (ss >> tok) {
      if (tok.size() > 1) {
        for (char c : tok) {
          if (c != '0' && c != '1') throw ParseError("expected 0/1, got '" + tok + "'", line_no);
          bits.push_back(c - '0');
        }
      } else if (tok == "0" || tok == "1") {
        bits.push_back(tok[0] - '0');
      } else {
        throw ParseError("expected 0/1, got '" + tok + "'", line_no);
      }
    }
    if (bits.empty()) continue;
    if (cols == -1) cols = static_cast<int>(bits.size());
    if (static_cast<int>(bits.size()) != cols)
      throw ParseError("row length " + std::to_string(bits.size()) + " differs from " +
                           std::to_string(cols),
                       line_no);
    for (int j = 0; j < cols; ++j)
      if (bits[j]) entries.emplace_back(row, j);
    ++row;
  }
  if (row == 0) throw ParseError("empty matrix", line_no);
  return ParityCheckMatrix(row, cols, entries);
}

GeneratorMatrix derive_generator(const ParityCheckMatrix& h) {
  const int m = h.rows(), n = h.cols();
  std::vector<BitVec> work(m, BitVec(n, 0));
  for (int i = 0; i < m; ++i)
    for (int j : h.check_adjacency()[i]) work[i][j] = 1;

  // Reduced row echelon form with column pivoting; perm tracks the column
  // order so pivot columns occupy positions 0..rank-1.
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  int rank = 0;
  for (int pos = 0; pos < n && rank < m; ++pos) {
    int pivot = -1;
    for (int r = rank; r < m; ++r)
      if (work[r][perm[pos]]) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(work[pivot], work[rank]);
    for (int r = 0; r < m; ++r) {
      if (r == rank || !work[r][perm[pos]]) continue;
      for (int j = 0; j < n; ++j) work[r][j] ^= work[rank][j];
    }
    std::swap(perm[rank], perm[pos]);
    ++rank;
  }

  const int k = n - rank;
  if (k == 0) throw NoCodeError("rank(H) = n: the nullspace is trivial, no code exists");

  // In permuted column order the first `rank` rows read [I | A]; the nullspace
  // basis is [Aᵀ | I], written back through perm to target the original H.
  std::vector<BitVec> rows(k, BitVec(n, 0));
  std::vector<int> message_positions(k);
  for (int i = 0; i < k; ++i) {
    for (int r = 0; r < rank; ++r) rows[i][perm[r]] = work[r][perm[rank + i]];
    rows[i][perm[rank + i]] = 1;
    message_positions[i] = perm[rank + i];
  }
  return GeneratorMatrix(n, std::move(rows), std::move(message_positions), rank);
}

BitVec encode(const BitVec& message, const GeneratorMatrix& g) {
  if (static_cast<int>(message.size()) != g.k())
    throw std::invalid_argument("message length " + std::to_string(message.size()) +
                                " does not match k = " + std::to_string(g.k()));
  BitVec c(g.n(), 0);
  for (int i = 0; i < g.k(); ++i) {
    if (!message[i]) continue;
    const BitVec& row = g.row(i);
    for (int j = 0; j < g.n(); ++j) c[j] ^= row[j];
  }
  return c;
}

BitVec syndrome(const BitVec& word, const ParityCheckMatrix& h) {
  if (static_cast<int>(word.size()) != h.cols())
    throw std::invalid_argument("word length " + std::to_string(word.size()) +
                                " does not match block length " + std::to_string(h.cols()));
  BitVec s(h.rows(), 0);
  for (int i = 0; i < h.rows(); ++i) {
    uint8_t parity = 0;
    for (int j : h.check_adjacency()[i]) parity ^= word[j];
    s[i] = parity;
  }
  return s;
}

bool is_codeword(const BitVec& word, const ParityCheckMatrix& h) {
  BitVec s = syndrome(word, h);
  return std::all_of(s.begin(), s.end(), [](uint8_t b) { return b == 0; });
}

}  // namespace qubodec
