#include "qubodec/bp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qubodec {

std::vector<double> channel_llrs(const ReceivedVector& r) {
  std::vector<double> llrs(r.samples.size());
  const double scale = 2.0 / (r.sigma * r.sigma);
  for (std::size_t i = 0; i < llrs.size(); ++i) llrs[i] = scale * r.samples[i];
  return llrs;
}

namespace {

double clip(double x) { return std::clamp(x, -kLlrClip, kLlrClip); }

}  // namespace

DecodeResult bp_decode(const ReceivedVector& r, const ParityCheckMatrix& h, int max_iters) {
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  const int n = h.cols();
  const int m = h.rows();
  if (static_cast<int>(r.samples.size()) != n)
    throw std::invalid_argument("received vector length does not match the code");

  // Flat edge arrays in check-major order.
  const auto& checks = h.check_adjacency();
  const int num_edges = h.num_entries();
  std::vector<int> edge_var(num_edges);
  std::vector<std::vector<int>> check_edges(m), var_edges(n);
  {
    int e = 0;
    for (int c = 0; c < m; ++c) {
      for (int v : checks[c]) {
        edge_var[e] = v;
        check_edges[c].push_back(e);
        var_edges[v].push_back(e);
        ++e;
      }
    }
  }

  const std::vector<double> llr = channel_llrs(r);
  std::vector<double> var_to_check(num_edges);
  std::vector<double> check_to_var(num_edges, 0.0);
  for (int e = 0; e < num_edges; ++e) var_to_check[e] = clip(llr[edge_var[e]]);

  BitVec bits(n, 0);
  std::vector<double> prefix, suffix;
  int iterations = 0;
  bool valid = false;
  for (int iter = 1; iter <= max_iters; ++iter) {
    iterations = iter;

    // Check update: tanh product rule with per-edge exclusion via
    // prefix/suffix products (no division, robust near zero).
    for (int c = 0; c < m; ++c) {
      const auto& edges = check_edges[c];
      const std::size_t deg = edges.size();
      prefix.assign(deg + 1, 1.0);
      suffix.assign(deg + 1, 1.0);
      for (std::size_t i = 0; i < deg; ++i)
        prefix[i + 1] = prefix[i] * std::tanh(0.5 * var_to_check[edges[i]]);
      for (std::size_t i = deg; i-- > 0;)
        suffix[i] = std::tanh(0.5 * var_to_check[edges[i]]) * suffix[i + 1];
      for (std::size_t i = 0; i < deg; ++i)
        check_to_var[edges[i]] = clip(2.0 * std::atanh(prefix[i] * suffix[i + 1]));
    }

    // Variable update and hard decision.
    for (int v = 0; v < n; ++v) {
      double total = llr[v];
      for (int e : var_edges[v]) total += check_to_var[e];
      bits[v] = total < 0.0 ? 1 : 0;
      for (int e : var_edges[v]) var_to_check[e] = clip(total - check_to_var[e]);
    }

    if (is_codeword(bits, h)) {
      valid = true;
      break;
    }
  }

  DecodeResult result;
  result.bits = std::move(bits);
  result.valid = valid;
  result.selection = Selection::kHardDecision;
  result.distance = euclidean_distance(result.bits, r.samples);
  result.energy = std::numeric_limits<double>::quiet_NaN();
  result.candidates_considered = 0;
  result.iterations = iterations;
  return result;
}

}  // namespace qubodec
