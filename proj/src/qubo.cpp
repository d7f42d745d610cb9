#include "qubodec/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qubodec {

Qubo::Qubo(int num_vars, int num_codeword_vars, std::vector<double> linear,
           std::vector<std::tuple<int, int, double>> quadratic, double offset,
           std::vector<CheckAncillas> layout)
    : num_vars_(num_vars),
      num_codeword_vars_(num_codeword_vars),
      linear_(std::move(linear)),
      quadratic_(std::move(quadratic)),
      offset_(offset),
      layout_(std::move(layout)) {
  if (num_vars_ < 0 || num_codeword_vars_ < 0 || num_codeword_vars_ > num_vars_)
    throw std::invalid_argument("inconsistent variable counts");
  if (!linear_.empty() && linear_.size() != static_cast<std::size_t>(num_vars_))
    throw std::invalid_argument("linear coefficient count does not match num_vars");
  linear_.resize(num_vars_, 0.0);
  for (auto& [i, j, v] : quadratic_) {
    if (i > j) std::swap(i, j);
    if (i == j) throw std::invalid_argument("self-pair in quadratic terms");
    if (i < 0 || j >= num_vars_) throw std::invalid_argument("quadratic index out of range");
    (void)v;
  }
  std::sort(quadratic_.begin(), quadratic_.end());
  // Merge repeated (i, j) keys, then drop exact zeros.
  std::size_t out = 0;
  for (std::size_t in = 0; in < quadratic_.size(); ++in) {
    if (out > 0 && std::get<0>(quadratic_[out - 1]) == std::get<0>(quadratic_[in]) &&
        std::get<1>(quadratic_[out - 1]) == std::get<1>(quadratic_[in])) {
      std::get<2>(quadratic_[out - 1]) += std::get<2>(quadratic_[in]);
    } else {
      quadratic_[out++] = quadratic_[in];
    }
  }
  quadratic_.resize(out);
  std::erase_if(quadratic_, [](const auto& t) { return std::get<2>(t) == 0.0; });
  neighbors_.resize(num_vars_);
  for (const auto& [i, j, v] : quadratic_) {
    neighbors_[i].emplace_back(j, v);
    neighbors_[j].emplace_back(i, v);
  }
}

double Qubo::flip_delta(const BitVec& bits, int i) const {
  double field = linear_[i];
  for (const auto& [j, coeff] : neighbors_[i])
    if (bits[j]) field += coeff;
  return bits[i] ? -field : field;
}

Qubo build_distance_metric(const std::vector<double>& posteriors) {
  const int n = static_cast<int>(posteriors.size());
  std::vector<double> linear(n);
  double offset = 0.0;
  for (int i = 0; i < n; ++i) {
    const double p = posteriors[i];
    if (!(p > 0.0 && p < 1.0))
      throw std::invalid_argument("posterior " + std::to_string(p) + " at index " +
                                  std::to_string(i) + " is outside (0,1)");
    linear[i] = 1.0 - 2.0 * p;
    offset += p * p;
  }
  return Qubo(n, n, std::move(linear), {}, offset, {});
}

int ancilla_width(int degree) {
  const int top = degree / 2;  // L_e must reach ⌊d/2⌋
  int width = 0;
  while ((1 << width) < top + 1) ++width;
  return width;
}

Qubo build_constraint_metric(const ParityCheckMatrix& h) {
  const int n = h.cols();
  std::vector<double> linear;
  std::map<std::pair<int, int>, double> quad;
  std::vector<CheckAncillas> layout;

  int next_ancilla = n;
  for (int c = 0; c < h.rows(); ++c) {
    const int degree = h.check_degree(c);
    if (degree < 2)
      throw std::invalid_argument("check " + std::to_string(c) + " has degree " +
                                  std::to_string(degree) + "; every check needs degree >= 2");
    CheckAncillas group;
    group.check = c;
    for (int t = 0; t < ancilla_width(degree); ++t) group.vars.push_back(next_ancilla++);

    // Weighted variables of ((Σ q_j) − 2·Σ 2^t a_t)², expanded with x² = x.
    std::vector<std::pair<int, double>> terms;
    for (int v : h.check_adjacency()[c]) terms.emplace_back(v, 1.0);
    for (std::size_t t = 0; t < group.vars.size(); ++t)
      terms.emplace_back(group.vars[t], -2.0 * static_cast<double>(1 << t));

    linear.resize(next_ancilla, 0.0);
    for (std::size_t a = 0; a < terms.size(); ++a) {
      linear[terms[a].first] += terms[a].second * terms[a].second;
      for (std::size_t b = a + 1; b < terms.size(); ++b) {
        auto key = std::minmax(terms[a].first, terms[b].first);
        quad[{key.first, key.second}] += 2.0 * terms[a].second * terms[b].second;
      }
    }
    layout.push_back(std::move(group));
  }
  linear.resize(next_ancilla, 0.0);

  std::vector<std::tuple<int, int, double>> quadratic;
  quadratic.reserve(quad.size());
  for (const auto& [key, v] : quad) quadratic.emplace_back(key.first, key.second, v);
  return Qubo(next_ancilla, n, std::move(linear), std::move(quadratic), 0.0, std::move(layout));
}

Qubo compose(const Qubo& distance, const Qubo& constraint, double w1, double w2) {
  if (!(w1 > 0.0) || !(w2 > 0.0))
    throw std::invalid_argument("Lagrange weights must be positive");
  if (distance.num_vars() != distance.num_codeword_vars())
    throw std::invalid_argument("distance fragment must not own ancilla variables");
  if (distance.num_codeword_vars() != constraint.num_codeword_vars())
    throw std::invalid_argument("fragments disagree on the codeword variable count");

  const int num_vars = constraint.num_vars();
  std::vector<double> linear(num_vars, 0.0);
  for (int i = 0; i < distance.num_vars(); ++i) linear[i] = w1 * distance.linear()[i];
  for (int i = 0; i < num_vars; ++i) linear[i] += w2 * constraint.linear()[i];

  std::map<std::pair<int, int>, double> quad;
  for (const auto& [i, j, v] : distance.quadratic()) quad[{i, j}] += w1 * v;
  for (const auto& [i, j, v] : constraint.quadratic()) quad[{i, j}] += w2 * v;
  std::vector<std::tuple<int, int, double>> quadratic;
  quadratic.reserve(quad.size());
  for (const auto& [key, v] : quad) quadratic.emplace_back(key.first, key.second, v);

  return Qubo(num_vars, constraint.num_codeword_vars(), std::move(linear), std::move(quadratic),
              w1 * distance.offset() + w2 * constraint.offset(), constraint.layout());
}

double energy(const BitVec& assignment, const Qubo& q) {
  if (static_cast<int>(assignment.size()) != q.num_vars())
    throw std::invalid_argument("assignment length " + std::to_string(assignment.size()) +
                                " does not match num_vars = " + std::to_string(q.num_vars()));
  double e = q.offset();
  for (int i = 0; i < q.num_vars(); ++i)
    if (assignment[i]) e += q.linear()[i];
  for (const auto& [i, j, v] : q.quadratic())
    if (assignment[i] && assignment[j]) e += v;
  return e;
}

namespace {

void write_double(std::ostream& out, double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, res.ptr - buf);
}

}  // namespace

void write_qubo(const Qubo& q, std::ostream& out) {
  out << "c qubodec sparse qubo\n";
  out << "p qubo " << q.num_vars() << ' ' << q.num_codeword_vars() << '\n';
  out << "offset ";
  write_double(out, q.offset());
  out << '\n';
  for (int i = 0; i < q.num_vars(); ++i) {
    if (q.linear()[i] == 0.0) continue;
    out << i << ' ' << i << ' ';
    write_double(out, q.linear()[i]);
    out << '\n';
  }
  for (const auto& [i, j, v] : q.quadratic()) {
    out << i << ' ' << j << ' ';
    write_double(out, v);
    out << '\n';
  }
}

Qubo read_qubo(std::istream& in) {
  std::string line;
  int line_no = 0;
  int num_vars = -1, num_codeword_vars = -1;
  double offset = 0.0;
  std::vector<double> linear;
  std::vector<std::tuple<int, int, double>> quadratic;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string head;
    if (!(ss >> head)) continue;
    if (head == "c") continue;
    if (head == "p") {
      std::string kind;
      if (!(ss >> kind >> num_vars) || kind != "qubo" || num_vars <= 0)
        throw ParseError("malformed problem line", line_no);
      if (!(ss >> num_codeword_vars)) num_codeword_vars = num_vars;
      linear.assign(num_vars, 0.0);
      continue;
    }
    if (head == "offset") {
      if (!(ss >> offset)) throw ParseError("malformed offset line", line_no);
      continue;
    }
    if (num_vars < 0) throw ParseError("coefficient before problem line", line_no);
    int i = 0, j = 0;
    double v = 0.0;
    try {
      i = std::stoi(head);
    } catch (const std::exception&) {
      throw ParseError("unexpected token '" + head + "'", line_no);
    }
    if (!(ss >> j >> v)) throw ParseError("malformed coefficient line", line_no);
    if (i < 0 || j < 0 || i >= num_vars || j >= num_vars)
      throw ParseError("variable index out of range", line_no);
    if (i == j)
      linear[i] += v;
    else
      quadratic.emplace_back(i, j, v);
  }
  if (num_vars < 0) throw ParseError("missing problem line", line_no);
  return Qubo(num_vars, num_codeword_vars, std::move(linear), std::move(quadratic), offset, {});
}

}  // namespace qubodec
