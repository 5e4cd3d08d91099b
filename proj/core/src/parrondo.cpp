#include "ratchet/parrondo.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ratchet/errors.hpp"

namespace ratchet {

namespace {

constexpr int kMaxStates = 64;

using Matrix = std::vector<double>;  // row-major LxL

Matrix chain_matrix(const std::vector<double>& q) {
  const int L = static_cast<int>(q.size());
  Matrix P(static_cast<size_t>(L) * L, 0.0);
  for (int j = 0; j < L; ++j) {
    P[static_cast<size_t>(j) * L + (j + 1) % L] += q[j];
    P[static_cast<size_t>(j) * L + (j + L - 1) % L] += 1.0 - q[j];
  }
  return P;
}

Matrix multiply(const Matrix& A, const Matrix& B, int L) {
  Matrix C(static_cast<size_t>(L) * L, 0.0);
  for (int i = 0; i < L; ++i) {
    for (int k = 0; k < L; ++k) {
      double a = A[static_cast<size_t>(i) * L + k];
      if (a == 0.0) continue;
      for (int j = 0; j < L; ++j) {
        C[static_cast<size_t>(i) * L + j] += a * B[static_cast<size_t>(k) * L + j];
      }
    }
  }
  return C;
}

// Left fixed probability vector of a row-stochastic matrix: solves
// (I - P^T) pi = 0 with the last equation replaced by sum(pi) = 1,
// by Gaussian elimination with partial pivoting.
std::vector<double> stationary_solve(const Matrix& P, int L) {
  std::vector<double> A(static_cast<size_t>(L) * L);
  std::vector<double> b(L, 0.0);
  for (int i = 0; i < L; ++i) {
    for (int j = 0; j < L; ++j) {
      A[static_cast<size_t>(i) * L + j] =
          (i == j ? 1.0 : 0.0) - P[static_cast<size_t>(j) * L + i];
    }
  }
  for (int j = 0; j < L; ++j) A[static_cast<size_t>(L - 1) * L + j] = 1.0;
  b[L - 1] = 1.0;

  for (int col = 0; col < L; ++col) {
    int pivot = col;
    for (int r = col + 1; r < L; ++r) {
      if (std::fabs(A[static_cast<size_t>(r) * L + col]) >
          std::fabs(A[static_cast<size_t>(pivot) * L + col])) {
        pivot = r;
      }
    }
    if (std::fabs(A[static_cast<size_t>(pivot) * L + col]) < 1e-300) {
      throw NumericalError("singular stationary system (chain not irreducible?)");
    }
    if (pivot != col) {
      for (int j = 0; j < L; ++j) {
        std::swap(A[static_cast<size_t>(pivot) * L + j], A[static_cast<size_t>(col) * L + j]);
      }
      std::swap(b[pivot], b[col]);
    }
    for (int r = col + 1; r < L; ++r) {
      double f = A[static_cast<size_t>(r) * L + col] / A[static_cast<size_t>(col) * L + col];
      if (f == 0.0) continue;
      for (int j = col; j < L; ++j) {
        A[static_cast<size_t>(r) * L + j] -= f * A[static_cast<size_t>(col) * L + j];
      }
      b[r] -= f * b[col];
    }
  }
  std::vector<double> pi(L);
  for (int r = L - 1; r >= 0; --r) {
    double s = b[r];
    for (int j = r + 1; j < L; ++j) s -= A[static_cast<size_t>(r) * L + j] * pi[j];
    pi[r] = s / A[static_cast<size_t>(r) * L + r];
  }
  return pi;
}

bool irreducible(const Matrix& P, int L) {
  auto reach = [&](bool transpose) {
    std::vector<char> seen(L, 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w = 0; w < L; ++w) {
        double e = transpose ? P[static_cast<size_t>(w) * L + v]
                             : P[static_cast<size_t>(v) * L + w];
        if (e > 0.0 && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    for (char s : seen) {
      if (!s) return false;
    }
    return true;
  };
  return reach(false) && reach(true);
}

std::vector<double> up_probs(const GameSpec& spec, char game, double mix_c) {
  std::vector<double> q(spec.L);
  for (int j = 0; j < spec.L; ++j) {
    double pb = j < spec.l ? spec.p0 : spec.p1;
    double v = 0.0;
    switch (game) {
      case 'A': v = spec.p; break;
      case 'B': v = pb; break;
      case 'M': v = mix_c * spec.p + (1.0 - mix_c) * pb; break;
    }
    if (!(v > 0.0 && v < 1.0)) {
      throw NumericalError("effective up-probability outside (0,1)");
    }
    q[j] = v;
  }
  return q;
}

double drift(const std::vector<double>& pi, const std::vector<double>& q) {
  double r = 0.0;
  for (size_t j = 0; j < q.size(); ++j) r += pi[j] * (2.0 * q[j] - 1.0);
  return r;
}

}  // namespace

GameSpec GameSpec::from_rho(double rho, int l, int L, double eps) {
  if (L < 2 || l < 1 || l >= L || std::gcd(l, L) != 1) {
    throw std::invalid_argument("require 1 <= l < L with gcd(l, L) = 1");
  }
  GameSpec g;
  g.l = l;
  g.L = L;
  g.eps = eps;
  g.rho = rho;
  g.p = game_a_prob(eps);
  auto [p0, p1] = game_b_probs(rho, l, L, eps);
  g.p0 = p0;
  g.p1 = p1;
  if (eps == 0.0) {
    auto fairness = is_fair_B(p0, p1, l, L);
    if (std::fabs(fairness.log_residual) > 1e-12) {
      throw NumericalError("unbiased (p0,p1) fail the fairness identity");
    }
  }
  return g;
}

PlaySchedule PlaySchedule::mixture(double c) {
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("mixture weight must lie in (0,1)");
  return {Kind::kMixture, c, {}};
}

PlaySchedule PlaySchedule::from_pattern(std::string word) {
  if (word.empty()) throw std::invalid_argument("empty play pattern");
  for (char ch : word) {
    if (ch != 'A' && ch != 'B') throw std::invalid_argument("pattern may contain only A and B");
  }
  return {Kind::kPattern, 0.5, std::move(word)};
}

double game_a_prob(double eps) {
  if (!(std::fabs(eps) < 0.5)) throw std::invalid_argument("|eps| must be < 1/2");
  return 0.5 - eps;
}

std::pair<double, double> game_b_probs(double rho, int l, int L, double eps) {
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in (0,1)");
  double alpha = static_cast<double>(l) / L;
  double powed = std::pow(rho, (1.0 - alpha) / alpha);
  double p0 = powed / (1.0 + powed) - eps;
  double p1 = 1.0 / (1.0 + rho) - eps;
  if (!(p0 > 0.0 && p0 < 1.0 && p1 > 0.0 && p1 < 1.0)) {
    throw NumericalError("game B probabilities outside (0,1)");
  }
  return {p0, p1};
}

FairnessReport is_fair_B(double p0, double p1, int l, int L) {
  if (!(p0 > 0.0 && p0 < 1.0 && p1 > 0.0 && p1 < 1.0)) {
    throw std::invalid_argument("probabilities must lie in (0,1)");
  }
  double residual = l * std::log((1.0 - p0) / p0) + (L - l) * std::log((1.0 - p1) / p1);
  return {residual, std::fabs(residual) < 1e-10};
}

double long_run_rate(const GameSpec& spec, const PlaySchedule& schedule) {
  if (spec.L > kMaxStates) throw std::invalid_argument("L > 64 unsupported");
  switch (schedule.kind) {
    case PlaySchedule::Kind::kSingleA:
      // homogeneous walk: the stationary distribution is uniform
      return 2.0 * spec.p - 1.0;
    case PlaySchedule::Kind::kSingleB: {
      auto q = up_probs(spec, 'B', 0.0);
      auto pi = stationary_solve(chain_matrix(q), spec.L);
      return drift(pi, q);
    }
    case PlaySchedule::Kind::kMixture: {
      auto q = up_probs(spec, 'M', schedule.c);
      auto pi = stationary_solve(chain_matrix(q), spec.L);
      return drift(pi, q);
    }
    case PlaySchedule::Kind::kPattern: {
      const int L = spec.L;
      std::vector<std::vector<double>> qs;
      Matrix period;
      for (size_t t = 0; t < schedule.pattern.size(); ++t) {
        auto q = up_probs(spec, schedule.pattern[t], 0.0);
        Matrix P = chain_matrix(q);
        period = t == 0 ? P : multiply(period, P, L);
        qs.push_back(std::move(q));
      }
      if (!irreducible(period, L)) {
        throw NumericalError("pattern chain over one period is not irreducible");
      }
      std::vector<double> entry = stationary_solve(period, L);
      double total = 0.0;
      for (const auto& q : qs) {
        total += drift(entry, q);
        // advance the phase-entry distribution by this game's step
        std::vector<double> next(L, 0.0);
        for (int j = 0; j < L; ++j) {
          next[(j + 1) % L] += entry[j] * q[j];
          next[(j + L - 1) % L] += entry[j] * (1.0 - q[j]);
        }
        entry.swap(next);
      }
      return total / static_cast<double>(schedule.pattern.size());
    }
  }
  throw std::logic_error("unreachable schedule kind");
}

}  // namespace ratchet
