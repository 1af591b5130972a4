#include "pvi/pade.hpp"

#include "pvi/linalg.hpp"

namespace pvi {

std::optional<RationalFunction> pade_reconstruct(const Series& f, int max_deg) {
  using GR = GaussianRational;
  if (max_deg < 0) throw InsufficientTerms("negative degree bound");
  const int need = 2 * max_deg + 2;
  if (!f.has_nonzero()) {
    if (f.is_exact() || f.precision() - f.min_exp() >= need) return RationalFunction();
    throw InsufficientTerms("series has no known nonzero coefficient");
  }
  const int v = f.min_exp();
  int n = f.known_order();
  if (n == kExact) n = static_cast<int>(f.stored().size()) + need;
  if (n < need)
    throw InsufficientTerms("rational reconstruction with degree bound " + std::to_string(max_deg) + " needs " +
                            std::to_string(need) + " known coefficients, have " + std::to_string(n));
  std::vector<GR> g(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) g[static_cast<size_t>(j)] = f.coeff(v + j);
  auto gat = [&](int j) { return j < 0 ? GR(0) : g[static_cast<size_t>(j)]; };

  for (int total = 0; total <= 2 * max_deg; ++total) {
    for (int q = 0; q <= total; ++q) {
      const int p = total - q;
      std::vector<GR> d(static_cast<size_t>(q) + 1, GR(0));
      d[0] = GR(1);
      if (q > 0) {
        Matrix<GR> a(static_cast<size_t>(q), std::vector<GR>(static_cast<size_t>(q)));
        std::vector<GR> b(static_cast<size_t>(q));
        for (int r = 0; r < q; ++r) {
          const int j = p + 1 + r;
          for (int i = 1; i <= q; ++i) a[static_cast<size_t>(r)][static_cast<size_t>(i - 1)] = gat(j - i);
          b[static_cast<size_t>(r)] = -gat(j);
        }
        auto sol = solve_linear(std::move(a), std::move(b));
        if (!sol) continue;
        for (int i = 1; i <= q; ++i) d[static_cast<size_t>(i)] = (*sol)[static_cast<size_t>(i - 1)];
      }
      // (g*D)_j must equal N_j for j <= p and vanish for p < j < n.
      std::vector<GR> num(static_cast<size_t>(p) + 1, GR(0));
      bool ok = true;
      for (int j = 0; j < n && ok; ++j) {
        GR acc(0);
        for (int i = 0; i <= std::min(j, q); ++i) acc += d[static_cast<size_t>(i)] * g[static_cast<size_t>(j - i)];
        if (j <= p)
          num[static_cast<size_t>(j)] = acc;
        else if (!acc.is_zero())
          ok = false;
      }
      if (!ok) continue;
      Poly np(std::move(num));
      Poly dp(std::move(d));
      if (v >= 0) return RationalFunction(np.shifted(v), dp);
      return RationalFunction(np, dp.shifted(-v));
    }
  }
  return std::nullopt;
}

}  // namespace pvi
