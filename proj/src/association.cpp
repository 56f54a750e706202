#include "bptrack/association.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace bptrack {
namespace {

void validate(const AssocInput& in) {
  const std::size_t m_count = in.xi0.size();
  for (double v : in.xi0) {
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("association: xi0 entries must be finite and >= 0");
  }
  for (const auto& row : in.beta) {
    if (row.size() != m_count + 1)
      throw std::invalid_argument("association: beta row length must be M + 1");
    bool any_positive = false;
    for (double v : row) {
      if (!std::isfinite(v) || v < 0.0)
        throw std::invalid_argument("association: beta entries must be finite and >= 0");
      any_positive = any_positive || v > 0.0;
    }
    if (!any_positive)
      throw std::invalid_argument("association: beta row has no positive entry");
  }
}

// Exclusion scans: for arrays c, d of length n (1-based in the math), produce
//   prod_excl[i]  = prod_{j != i} d[j]
//   sum_excl[i]   = sum_{j != i} c[j] * prod_{l != i, l != j} d[l]
// in O(n) without division, so zero entries are handled exactly.
struct ExclusionScan {
  std::vector<double> prod_excl;
  std::vector<double> sum_excl;

  ExclusionScan(const std::vector<double>& c, const std::vector<double>& d) {
    const std::size_t n = d.size();
    std::vector<double> lp(n + 1, 1.0), ls(n + 1, 0.0), rp(n + 1, 1.0), rs(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      lp[i + 1] = lp[i] * d[i];
      ls[i + 1] = ls[i] * d[i] + c[i] * lp[i];
    }
    for (std::size_t i = n; i-- > 0;) {
      rp[i] = rp[i + 1] * d[i];
      rs[i] = rs[i + 1] * d[i] + c[i] * rp[i + 1];
    }
    prod_excl.resize(n);
    sum_excl.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      prod_excl[i] = lp[i] * rp[i + 1];
      sum_excl[i] = ls[i] * rp[i + 1] + lp[i] * rs[i + 1];
    }
  }
};

}  // namespace

AssocOutput run_association(const AssocInput& in, int max_iter, double tol) {
  validate(in);
  if (max_iter < 1) throw std::invalid_argument("association: max_iter must be >= 1");
  if (!(tol >= 0.0)) throw std::invalid_argument("association: tol must be >= 0");

  const std::size_t K = in.beta.size();
  const std::size_t M = in.xi0.size();

  // Messages are two-valued: nu_eq[k][m] is the measurement-to-object message
  // at a_k = m, nu_ne[k][m] its value at every other a_k; zeta_* mirror that
  // for the object-to-measurement direction at b_m = k versus b_m != k.
  std::vector<std::vector<double>> nu_eq(K, std::vector<double>(M, 1.0));
  std::vector<std::vector<double>> nu_ne(K, std::vector<double>(M, 1.0));
  std::vector<std::vector<double>> zeta_eq(K, std::vector<double>(M, 1.0));
  std::vector<std::vector<double>> zeta_ne(K, std::vector<double>(M, 1.0));

  int iterations = 0;
  for (int it = 0; it < max_iter; ++it) {
    ++iterations;
    double delta = 0.0;

    // Object-bound messages from the current zeta.
    for (std::size_t m = 0; m < M; ++m) {
      std::vector<double> c(K), d(K);
      for (std::size_t k = 0; k < K; ++k) {
        c[k] = zeta_eq[k][m];
        d[k] = zeta_ne[k][m];
      }
      ExclusionScan scan(c, d);
      for (std::size_t k = 0; k < K; ++k) {
        double eq = scan.prod_excl[k];
        double ne = in.xi0[m] * scan.prod_excl[k] + scan.sum_excl[k];
        // The message table has one entry at a_k = m and M entries elsewhere.
        const double sum = eq + static_cast<double>(M) * ne;
        if (sum > 0.0) {
          eq /= sum;
          ne /= sum;
        } else {
          eq = ne = 1.0 / static_cast<double>(M + 1);
        }
        delta = std::max({delta, std::abs(eq - nu_eq[k][m]), std::abs(ne - nu_ne[k][m])});
        nu_eq[k][m] = eq;
        nu_ne[k][m] = ne;
      }
    }

    // Measurement-bound messages from the fresh nu.
    for (std::size_t k = 0; k < K; ++k) {
      std::vector<double> cb(M), f(M);
      for (std::size_t m = 0; m < M; ++m) {
        cb[m] = in.beta[k][m + 1] * nu_eq[k][m];
        f[m] = nu_ne[k][m];
      }
      ExclusionScan scan(cb, f);
      for (std::size_t m = 0; m < M; ++m) {
        double eq = in.beta[k][m + 1] * scan.prod_excl[m];
        double ne = in.beta[k][0] * scan.prod_excl[m] + scan.sum_excl[m];
        const double sum = eq + static_cast<double>(K) * ne;
        if (sum > 0.0) {
          eq /= sum;
          ne /= sum;
        } else {
          eq = ne = 1.0 / static_cast<double>(K + 1);
        }
        zeta_eq[k][m] = eq;
        zeta_ne[k][m] = ne;
      }
    }

    if (delta < tol) break;
  }

  AssocOutput out;
  out.iterations = iterations;

  out.eta.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    ExclusionScan scan(nu_eq[k], nu_ne[k]);
    auto& row = out.eta[k];
    row.resize(M + 1);
    double all = 1.0;
    for (std::size_t m = 0; m < M; ++m) all *= nu_ne[k][m];
    row[0] = all;
    for (std::size_t m = 0; m < M; ++m) row[m + 1] = nu_eq[k][m] * scan.prod_excl[m];
    double sum = 0.0;
    for (double v : row) sum += v;
    if (sum > 0.0)
      for (double& v : row) v /= sum;
  }

  out.varsigma.resize(M);
  for (std::size_t m = 0; m < M; ++m) {
    std::vector<double> c(K), d(K);
    for (std::size_t k = 0; k < K; ++k) {
      c[k] = zeta_eq[k][m];
      d[k] = zeta_ne[k][m];
    }
    ExclusionScan scan(c, d);
    auto& row = out.varsigma[m];
    row.resize(K + 1);
    double all = 1.0;
    for (std::size_t k = 0; k < K; ++k) all *= d[k];
    row[0] = all;
    for (std::size_t k = 0; k < K; ++k) row[k + 1] = c[k] * scan.prod_excl[k];
    double sum = 0.0;
    for (double v : row) sum += v;
    if (sum > 0.0)
      for (double& v : row) v /= sum;
  }

  return out;
}

std::pair<std::vector<std::vector<double>>, std::vector<std::vector<double>>>
exact_association_marginals(const AssocInput& in) {
  validate(in);
  const std::size_t K = in.beta.size();
  const std::size_t M = in.xi0.size();
  if (M > 62) throw std::invalid_argument("exact_association_marginals: M too large");

  std::vector<std::vector<double>> marg_a(K, std::vector<double>(M + 1, 0.0));
  std::vector<std::vector<double>> marg_b(M, std::vector<double>(K + 1, 0.0));
  std::vector<int> assign(K, 0);
  double total = 0.0;

  // Depth-first over all consistent maps; `used` tracks taken measurements.
  auto recurse = [&](auto&& self, std::size_t k, std::uint64_t used, double weight) -> void {
    if (weight == 0.0) return;
    if (k == K) {
      double w = weight;
      for (std::size_t m = 0; m < M; ++m)
        if (!(used >> m & 1)) w *= in.xi0[m];
      if (w == 0.0) return;
      total += w;
      for (std::size_t kk = 0; kk < K; ++kk)
        marg_a[kk][static_cast<std::size_t>(assign[kk])] += w;
      for (std::size_t m = 0; m < M; ++m) {
        std::size_t b = 0;
        for (std::size_t kk = 0; kk < K; ++kk)
          if (assign[kk] == static_cast<int>(m) + 1) b = kk + 1;
        marg_b[m][b] += w;
      }
      return;
    }
    assign[k] = 0;
    self(self, k + 1, used, weight * in.beta[k][0]);
    for (std::size_t m = 0; m < M; ++m) {
      if (used >> m & 1) continue;
      assign[k] = static_cast<int>(m) + 1;
      self(self, k + 1, used | (std::uint64_t{1} << m), weight * in.beta[k][m + 1]);
    }
    assign[k] = 0;
  };
  recurse(recurse, 0, 0, 1.0);

  if (total == 0.0)
    throw std::invalid_argument("exact_association_marginals: all maps have zero weight");
  for (auto& row : marg_a)
    for (double& v : row) v /= total;
  for (auto& row : marg_b)
    for (double& v : row) v /= total;
  return {marg_a, marg_b};
}

std::vector<std::vector<double>> association_marginals(const AssocInput& in,
                                                       const AssocOutput& out) {
  std::vector<std::vector<double>> marg(in.beta.size());
  for (std::size_t k = 0; k < in.beta.size(); ++k) {
    auto& row = marg[k];
    row.resize(in.beta[k].size());
    double sum = 0.0;
    for (std::size_t a = 0; a < row.size(); ++a) {
      row[a] = in.beta[k][a] * out.eta[k][a];
      sum += row[a];
    }
    if (sum > 0.0)
      for (double& v : row) v /= sum;
  }
  return marg;
}

}  // namespace bptrack
