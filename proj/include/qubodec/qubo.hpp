#pragma once

#include <iosfwd>
#include <tuple>
#include <vector>

#include "qubodec/codes.hpp"

namespace qubodec {

/// Ancilla block of one check node. vars[t] carries place value 2^t, so the
/// encoded value is L_e = Σ_t 2^t · assignment[vars[t]].
struct CheckAncillas {
  int check = 0;
  std::vector<int> vars;
};

/// Upper-triangular quadratic form over binary variables plus a constant
/// offset, so energy() reproduces the modeled objective exactly. Variables
/// 0..num_codeword_vars-1 are codeword bits; the rest are ancillas grouped by
/// check. Immutable once built.
class Qubo {
 public:
  Qubo() = default;
  Qubo(int num_vars, int num_codeword_vars, std::vector<double> linear,
       std::vector<std::tuple<int, int, double>> quadratic, double offset,
       std::vector<CheckAncillas> layout);

  int num_vars() const noexcept { return num_vars_; }
  int num_codeword_vars() const noexcept { return num_codeword_vars_; }
  double offset() const noexcept { return offset_; }
  const std::vector<double>& linear() const noexcept { return linear_; }
  /// Sorted, i < j, zero coefficients elided.
  const std::vector<std::tuple<int, int, double>>& quadratic() const noexcept {
    return quadratic_;
  }
  const std::vector<CheckAncillas>& layout() const noexcept { return layout_; }

  /// neighbors()[i] = (j, coeff) for every quadratic term touching i; the
  /// cached flip-delta view used by the samplers.
  const std::vector<std::vector<std::pair<int, double>>>& neighbors() const noexcept {
    return neighbors_;
  }

  /// Energy change of flipping variable i in `bits` (computed before the flip).
  double flip_delta(const BitVec& bits, int i) const;

 private:
  int num_vars_ = 0;
  int num_codeword_vars_ = 0;
  std::vector<double> linear_;
  std::vector<std::tuple<int, int, double>> quadratic_;
  double offset_ = 0.0;
  std::vector<CheckAncillas> layout_;
  std::vector<std::vector<std::pair<int, double>>> neighbors_;
};

/// Distance metric Σ_i (q_i − p_i)² over codeword bits: linear coefficient
/// (1 − 2p_i) on q_i plus offset Σ p_i². Exact for every binary assignment.
Qubo build_distance_metric(const std::vector<double>& posteriors);

/// Parity-constraint metric: for each check of degree d, ⌈log2(⌊d/2⌋+1)⌉
/// ancilla bits encode L_e and the quadratic expansion of
/// ((Σ_{j∈check} q_j) − 2·L_e)² is added. Zero energy exactly when every
/// check has even parity and its L_e equals half the check's integer sum.
Qubo build_constraint_metric(const ParityCheckMatrix& h);

/// F = w1·distance + w2·constraint, coefficient-wise including offsets; the
/// constraint fragment's ancilla layout is carried through.
Qubo compose(const Qubo& distance, const Qubo& constraint, double w1, double w2);

/// offset + Σ linear over set bits + Σ quadratic over set pairs.
double energy(const BitVec& assignment, const Qubo& q);

/// Number of ancilla bits for a check of degree d.
int ancilla_width(int degree);

/// Sparse text format: 'c' comment lines, one 'p qubo <num_vars> <num_codeword_vars>'
/// line, one 'offset <value>' line, then 'i j value' per coefficient (i = j
/// for linear terms).
void write_qubo(const Qubo& q, std::ostream& out);
Qubo read_qubo(std::istream& in);

}  // namespace qubodec
