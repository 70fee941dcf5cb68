#include "sft/structure.hpp"

#include "sft/number_theory.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

namespace sft {

void require_nonnegative_square(const IntMatrix &a, const char *what) {
  if (!a.square())
    throw DimensionError(std::string(what) + ": matrix must be square");
  if (!is_nonnegative(a))
    throw DomainError(std::string(what) + ": matrix must be nonnegative");
}

CoreResult nondegenerate_core(const IntMatrix &a) {
  require_nonnegative_square(a, "nondegenerate_core");
  const std::size_t n = a.rows();
  std::vector<bool> alive(n, true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (!alive[v])
        continue;
      bool in = false, out = false;
      for (std::size_t u = 0; u < n; ++u) {
        if (!alive[u])
          continue;
        out = out || sgn(a(v, u)) > 0;
        in = in || sgn(a(u, v)) > 0;
      }
      if (!in || !out) {
        alive[v] = false;
        changed = true;
      }
    }
  }
  CoreResult r;
  for (std::size_t v = 0; v < n; ++v)
    if (alive[v])
      r.kept.push_back(v);
  r.core = a.select(r.kept, r.kept);
  return r;
}

std::vector<std::vector<std::size_t>> strong_components(const IntMatrix &a) {
  if (!a.square())
    throw DimensionError("strong_components: matrix must be square");
  const std::size_t n = a.rows();
  // Tarjan, iterative enough for desk-scale inputs.
  std::vector<long> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> comps;
  long counter = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w = 0; w < n; ++w) {
      if (a(v, w) == 0)
        continue;
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> comp;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      comps.push_back(std::move(comp));
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] < 0)
      visit(v);
  std::sort(comps.begin(), comps.end(),
            [](const auto &x, const auto &y) { return x[0] < y[0]; });
  return comps;
}

bool is_irreducible(const IntMatrix &a) {
  require_nonnegative_square(a, "is_irreducible");
  if (a.rows() == 0)
    return false;
  if (a.rows() == 1)
    return sgn(a(0, 0)) > 0;
  return strong_components(a).size() == 1;
}

namespace {

// BFS levels from comp[0] inside the component; returns the gcd of
// level(u)+1-level(v) over internal edges u->v (0 if no internal edge).
std::size_t component_period(const IntMatrix &a,
                             const std::vector<std::size_t> &comp,
                             std::vector<long> *levels_out = nullptr) {
  const std::size_t n = a.rows();
  std::vector<bool> member(n, false);
  for (auto v : comp)
    member[v] = true;
  std::vector<long> level(n, -1);
  std::deque<std::size_t> q{comp[0]};
  level[comp[0]] = 0;
  while (!q.empty()) {
    auto u = q.front();
    q.pop_front();
    for (std::size_t v = 0; v < n; ++v)
      if (member[v] && a(u, v) != 0 && level[v] < 0) {
        level[v] = level[u] + 1;
        q.push_back(v);
      }
  }
  long g = 0;
  for (auto u : comp)
    for (auto v : comp)
      if (a(u, v) != 0)
        g = std::gcd(g, std::labs(level[u] + 1 - level[v]));
  if (levels_out)
    *levels_out = std::move(level);
  return static_cast<std::size_t>(g);
}

} // namespace

std::size_t period(const IntMatrix &a) {
  require_nonnegative_square(a, "period");
  std::size_t g = 0;
  for (const auto &comp : strong_components(a))
    g = std::gcd(g, component_period(a, comp));
  return g;
}

std::size_t wielandt_bound(std::size_t n) {
  return n == 0 ? 0 : n * n - 2 * n + 2;
}

namespace kernels {

BoolMatrix support(const IntMatrix &a) {
  BoolMatrix b(a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      b[i * a.cols() + j] = sgn(a(i, j)) != 0;
  return b;
}

BoolMatrix bool_multiply(const BoolMatrix &x, const BoolMatrix &y,
                         std::size_t n) {
  BoolMatrix z(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (!x[i * n + k])
        continue;
      for (std::size_t j = 0; j < n; ++j)
        z[i * n + j] |= y[k * n + j];
    }
  return z;
}

} // namespace kernels

PrimitivityResult is_primitive(const IntMatrix &a) {
  require_nonnegative_square(a, "is_primitive");
  PrimitivityResult r;
  const std::size_t n = a.rows();
  if (n == 0)
    return r;
  if (!is_irreducible(a)) {
    // Find a pair (i, j) with no path i -> j.
    for (std::size_t i = 0; i < n && !r.unreachable; ++i) {
      std::vector<bool> seen(n, false);
      std::deque<std::size_t> q{i};
      while (!q.empty()) {
        auto u = q.front();
        q.pop_front();
        for (std::size_t v = 0; v < n; ++v)
          if (a(u, v) != 0 && !seen[v]) {
            seen[v] = true;
            q.push_back(v);
          }
      }
      for (std::size_t j = 0; j < n; ++j)
        if (!seen[j]) {
          r.unreachable = {i, j};
          break;
        }
    }
    r.period = period(a);
    return r;
  }
  r.period = period(a);
  if (r.period != 1)
    return r;
  // Irreducible and aperiodic: primitive, exponent within the Wielandt bound.
  auto base = kernels::support(a);
  auto p = base;
  for (std::size_t k = 1; k <= wielandt_bound(n); ++k) {
    if (std::all_of(p.begin(), p.end(), [](auto x) { return x != 0; })) {
      r.primitive = true;
      r.exponent = k;
      return r;
    }
    p = kernels::bool_multiply(p, base, n);
  }
  throw InternalError("primitive matrix exceeded the Wielandt bound");
}

CyclicBlockForm cyclic_block_form(const IntMatrix &a) {
  if (!is_irreducible(a))
    throw PreconditionError("cyclic_block_form: matrix is not irreducible");
  const std::size_t n = a.rows();
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::vector<long> level;
  CyclicBlockForm f;
  f.period = component_period(a, all, &level);
  const std::size_t p = f.period;
  std::vector<std::vector<std::size_t>> classes(p);
  for (std::size_t v = 0; v < n; ++v)
    classes[static_cast<std::size_t>(level[v]) % p].push_back(v);
  std::vector<std::size_t> offset(p + 1, 0);
  for (std::size_t c = 0; c < p; ++c) {
    f.class_sizes.push_back(classes[c].size());
    f.permutation.insert(f.permutation.end(), classes[c].begin(),
                         classes[c].end());
    offset[c + 1] = offset[c] + classes[c].size();
  }
  f.permuted = a.select(f.permutation, f.permutation);
  for (std::size_t c = 0; c < p; ++c) {
    std::size_t d = (c + 1) % p;
    f.blocks.push_back(
        f.permuted.block(offset[c], offset[d], classes[c].size(), classes[d].size()));
  }
  for (std::size_t c = 0; c < p; ++c) {
    IntMatrix prod = f.blocks[c];
    for (std::size_t s = 1; s < p; ++s)
      prod = prod * f.blocks[(c + s) % p];
    f.products.push_back(std::move(prod));
  }
  return f;
}

IntMatrix higher_block(const IntMatrix &a, std::size_t k,
                       std::size_t max_vertices) {
  require_nonnegative_square(a, "higher_block");
  if (k == 0)
    throw DomainError("higher_block: k must be at least 1");
  if (k == 1)
    return a;
  const IntMatrix core = nondegenerate_core(a).core;
  const std::size_t n = core.rows();
  // Edge list, row-major then copy index.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (cmp(core(i, j), static_cast<long>(max_vertices)) > 0)
        throw BudgetExceededError("higher_block: too many edges");
      for (long c = 0; c < core(i, j).get_si(); ++c)
        edges.emplace_back(i, j);
    }
  // Words of k-1 edges, built lexicographically by extension.
  std::vector<std::vector<std::size_t>> words;
  for (std::size_t e = 0; e < edges.size(); ++e)
    words.push_back({e});
  for (std::size_t len = 2; len < k; ++len) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto &w : words)
      for (std::size_t e = 0; e < edges.size(); ++e)
        if (edges[w.back()].second == edges[e].first) {
          auto x = w;
          x.push_back(e);
          next.push_back(std::move(x));
          if (next.size() > max_vertices)
            throw BudgetExceededError("higher_block: too many words");
        }
    words.swap(next);
  }
  if (words.size() > max_vertices)
    throw BudgetExceededError("higher_block: too many words");
  const std::size_t m = words.size();
  IntMatrix h(m, m);
  for (std::size_t u = 0; u < m; ++u)
    for (std::size_t v = 0; v < m; ++v) {
      const auto &x = words[u], &y = words[v];
      if (!std::equal(x.begin() + 1, x.end(), y.begin(), y.end() - 1))
        continue;
      if (edges[x.back()].second == edges[y.back()].first)
        h(u, v) = 1;
    }
  return h;
}

Integer path_count(const IntMatrix &a, std::size_t i, std::size_t j,
                   std::size_t n) {
  if (!a.square())
    throw DimensionError("path_count: matrix must be square");
  if (i >= a.rows() || j >= a.cols())
    throw DimensionError("path_count: vertex index out of range");
  return power(a, n)(i, j);
}

PeriodData fix_counts(const IntMatrix &a, std::size_t n) {
  if (!a.square())
    throw DimensionError("fix_counts: matrix must be square");
  PeriodData d;
  IntMatrix p = IntMatrix::identity(a.rows());
  for (std::size_t k = 1; k <= n; ++k) {
    p = p * a;
    d.fix_counts.push_back(trace(p));
  }
  for (std::size_t k = 1; k <= n; ++k)
    d.least_period_counts.push_back(
        net_trace<Integer>(std::span<const Integer>(d.fix_counts), k));
  return d;
}

} // namespace sft
