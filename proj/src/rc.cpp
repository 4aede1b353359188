#include "fermi/rc.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace fermi {

MultiplicityArray MultiplicityArray::rows(int n, const std::vector<int>& row_lengths) {
  MultiplicityArray L;
  L.n = n;
  for (int s : row_lengths) {
    if (s < 1) throw std::invalid_argument("row lengths must be positive");
    ++L.counts[{1, s}];
  }
  return L;
}

bool MultiplicityArray::rows_only() const {
  for (const auto& [key, c] : counts)
    if (key.first != 1) return false;
  return true;
}

int MultiplicityArray::total_boxes() const {
  int t = 0;
  for (const auto& [key, c] : counts) t += key.first * key.second * c;
  return t;
}

std::vector<int> MultiplicityArray::row_lengths() const {
  std::vector<int> r;
  for (const auto& [key, c] : counts)
    if (key.first == 1) r.insert(r.end(), c, key.second);
  std::sort(r.begin(), r.end(), std::greater<>());
  return r;
}

Configuration RiggedConfiguration::config() const {
  Configuration nu;
  for (const auto& part : parts) {
    Partition p;
    for (const auto& r : part) p.push_back(r.length);
    std::sort(p.begin(), p.end(), std::greater<>());
    nu.push_back(p);
  }
  return nu;
}

void RiggedConfiguration::canonicalize() {
  for (auto& part : parts) std::sort(part.begin(), part.end(), std::greater<>());
}

RiggedConfiguration empty_rc(int n) {
  RiggedConfiguration rc;
  rc.n = n;
  rc.parts.assign(n > 0 ? n - 1 : 0, {});
  return rc;
}

namespace {

long q_fn(const Partition& mu, int i) {
  long s = 0;
  for (int x : mu) s += std::min(i, x);
  return s;
}

}  // namespace

long vacancy(const Configuration& nu, const MultiplicityArray& L, int a, int i) {
  if (a < 1 || a > L.n - 1) throw std::out_of_range("vacancy: node index outside 1..n-1");
  if (i < 1) throw std::out_of_range("vacancy: row length must be positive");
  if (static_cast<int>(nu.size()) != L.n - 1) throw std::invalid_argument("vacancy: configuration has wrong rank");
  long p = 0;
  for (const auto& [key, c] : L.counts)
    if (key.first == a) p += static_cast<long>(c) * std::min(i, key.second);
  p -= 2 * q_fn(nu[a - 1], i);
  if (a >= 2) p += q_fn(nu[a - 2], i);
  if (a <= L.n - 2) p += q_fn(nu[a], i);
  return p;
}

std::vector<int> configuration_sizes(const MultiplicityArray& L, const Composition& weight) {
  if (static_cast<int>(weight.size()) > L.n) throw std::invalid_argument("weight longer than rank");
  if (size_of(weight) != L.total_boxes()) throw std::invalid_argument("weight size differs from total boxes of L");
  std::vector<int> sizes;
  int partial = 0;
  for (int a = 1; a <= L.n - 1; ++a) {
    partial += a - 1 < static_cast<int>(weight.size()) ? weight[a - 1] : 0;
    long s = 0;
    for (const auto& [key, c] : L.counts) s += static_cast<long>(key.second) * std::min(a, key.first) * c;
    s -= partial;
    if (s < 0) throw std::invalid_argument("weight incompatible with L (negative configuration size)");
    sizes.push_back(static_cast<int>(s));
  }
  return sizes;
}

Composition rc_weight(const RiggedConfiguration& rc, const MultiplicityArray& L) {
  Composition w;
  long prev = 0;
  for (int a = 1; a <= L.n; ++a) {
    long s = 0;
    for (const auto& [key, c] : L.counts) s += static_cast<long>(key.second) * std::min(a, key.first) * c;
    long nu_a = 0;
    if (a <= L.n - 1)
      for (const auto& r : rc.parts[a - 1]) nu_a += r.length;
    long cum = s - nu_a;
    w.push_back(static_cast<int>(cum - prev));
    prev = cum;
  }
  return w;
}

namespace {

// excess along chains reaching each row from one side; dir = -1 looks at
// lower nodes, +1 at higher nodes
std::vector<std::vector<long>> chain_excess(const RiggedConfiguration& rc, int dir) {
  const int m = static_cast<int>(rc.parts.size());
  std::vector<std::vector<long>> g(m);
  std::vector<std::vector<long>> t(m);
  for (int step = 0; step < m; ++step) {
    int a = dir < 0 ? step : m - 1 - step;
    int b = a + dir;
    g[a].assign(rc.parts[a].size(), 0);
    t[a].assign(rc.parts[a].size(), 0);
    for (size_t r = 0; r < rc.parts[a].size(); ++r) {
      long best = 0;
      if (b >= 0 && b < m)
        for (size_t u = 0; u < rc.parts[b].size(); ++u)
          best = std::max(best, std::min(rc.parts[b][u].length, rc.parts[a][r].length) + t[b][u]);
      g[a][r] = best;
      t[a][r] = best - (rc.parts[a][r].rigging + rc.parts[a][r].length);
    }
  }
  return g;
}

}  // namespace

long lower_bound(const RiggedConfiguration& rc, int a, int row) {
  if (a < 1 || a > static_cast<int>(rc.parts.size())) throw std::out_of_range("lower_bound: node index out of range");
  if (row < 0 || row >= static_cast<int>(rc.parts[a - 1].size())) throw std::out_of_range("lower_bound: row index out of range");
  auto left = chain_excess(rc, -1);
  auto right = chain_excess(rc, +1);
  return -rc.parts[a - 1][row].length + left[a - 1][row] + right[a - 1][row];
}

std::string validate_rc(const RiggedConfiguration& rc, const MultiplicityArray& L, const Composition& weight) {
  if (rc.n != L.n) return "rank mismatch";
  if (static_cast<int>(rc.parts.size()) != L.n - 1) return "wrong number of partitions";
  std::vector<int> sizes;
  try {
    sizes = configuration_sizes(L, weight);
  } catch (const std::exception& e) {
    return e.what();
  }
  Configuration nu = rc.config();
  for (int a = 1; a <= L.n - 1; ++a) {
    const auto& part = rc.parts[a - 1];
    if (size_of(nu[a - 1]) != sizes[a - 1])
      return "partition " + std::to_string(a) + " has size " + std::to_string(size_of(nu[a - 1])) + ", expected " +
             std::to_string(sizes[a - 1]);
    for (size_t r = 0; r < part.size(); ++r) {
      if (part[r].length < 1) return "non-positive row length in partition " + std::to_string(a);
      if (r > 0 && part[r - 1] < part[r]) return "partition " + std::to_string(a) + " is not in canonical order";
      long p = vacancy(nu, L, a, part[r].length);
      if (part[r].rigging > p)
        return "rigging " + std::to_string(part[r].rigging) + " exceeds vacancy " + std::to_string(p) + " in partition " +
               std::to_string(a);
      long lb = lower_bound(rc, a, static_cast<int>(r));
      if (part[r].rigging < lb)
        return "rigging " + std::to_string(part[r].rigging) + " below lower bound " + std::to_string(lb) +
               " in partition " + std::to_string(a);
    }
  }
  return "";
}

std::vector<Configuration> enumerate_configurations(const MultiplicityArray& L, const Composition& weight) {
  std::vector<int> sizes = configuration_sizes(L, weight);
  std::vector<Configuration> out;
  Configuration cur;
  std::function<void(int)> rec = [&](int a) {
    if (a == L.n - 1) {
      // a window is empty when the vacancy is below -i, whatever the riggings
      for (int b = 1; b <= L.n - 1; ++b)
        for (int i : cur[b - 1])
          if (vacancy(cur, L, b, i) < -i) return;
      out.push_back(cur);
      return;
    }
    for (const auto& p : partitions(sizes[a])) {
      cur.push_back(p);
      rec(a + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

namespace {

struct Block {
  int length;
  int mult;
  long vac;
};

std::vector<Block> blocks_of(const Configuration& nu, const MultiplicityArray& L, int a) {
  std::vector<Block> bs;
  for (int i : nu[a - 1]) {
    if (!bs.empty() && bs.back().length == i)
      ++bs.back().mult;
    else
      bs.push_back({i, 1, vacancy(nu, L, a, i)});
  }
  return bs;
}

void enumerate_riggings(const Configuration& nu, const MultiplicityArray& L, bool restricted, int n,
                        std::vector<RiggedConfiguration>& out) {
  const int m = n - 1;
  std::vector<std::vector<Block>> blocks(m);
  for (int a = 1; a <= m; ++a) blocks[a - 1] = blocks_of(nu, L, a);
  RiggedConfiguration cur = empty_rc(n);
  // t-values of finished blocks at the previous level: (length, t)
  std::function<void(int, size_t, std::vector<std::pair<int, long>>&, std::vector<std::pair<int, long>>&)> rec =
      [&](int a, size_t b, std::vector<std::pair<int, long>>& prev, std::vector<std::pair<int, long>>& here) {
        if (a > m) {
          out.push_back(cur);
          return;
        }
        if (b == blocks[a - 1].size()) {
          std::vector<std::pair<int, long>> next;
          rec(a + 1, 0, here, next);
          return;
        }
        const Block& bl = blocks[a - 1][b];
        long g = 0;
        if (!restricted)
          for (const auto& [len, t] : prev) g = std::max(g, std::min(len, bl.length) + t);
        long lo = restricted ? 0 : g - bl.length;
        if (lo > bl.vac) return;
        std::vector<long> labels;
        std::function<void(long)> fill = [&](long hi) {
          if (static_cast<int>(labels.size()) == bl.mult) {
            size_t base = cur.parts[a - 1].size();
            for (long x : labels) cur.parts[a - 1].push_back({bl.length, x});
            here.emplace_back(bl.length, g - (labels.back() + bl.length));
            rec(a, b + 1, prev, here);
            here.pop_back();
            cur.parts[a - 1].resize(base);
            return;
          }
          for (long x = hi; x >= lo; --x) {
            labels.push_back(x);
            fill(x);
            labels.pop_back();
          }
        };
        fill(bl.vac);
      };
  std::vector<std::pair<int, long>> prev, here;
  rec(1, 0, prev, here);
}

std::vector<RiggedConfiguration> enumerate_impl(const MultiplicityArray& L, const Composition& weight, bool restricted) {
  std::vector<RiggedConfiguration> out;
  if (L.n < 1) throw std::invalid_argument("rank must be positive");
  for (const auto& nu : enumerate_configurations(L, weight)) enumerate_riggings(nu, L, restricted, L.n, out);
  return out;
}

}  // namespace

std::vector<RiggedConfiguration> enumerate_rc(const MultiplicityArray& L, const Composition& weight) {
  return enumerate_impl(L, weight, false);
}

std::vector<RiggedConfiguration> enumerate_rc_restricted(const MultiplicityArray& L, const Composition& weight) {
  return enumerate_impl(L, weight, true);
}

long config_cocharge(const Configuration& nu) {
  long total = 0;
  for (size_t a = 0; a < nu.size(); ++a) {
    int mx = nu[a].empty() ? 0 : nu[a][0];
    for (int i = 1; i <= mx; ++i) {
      long al = 0, bl = 0;
      for (int x : nu[a]) al += x >= i;
      if (a + 1 < nu.size())
        for (int x : nu[a + 1]) bl += x >= i;
      total += al * al - al * bl;
    }
  }
  return total;
}

long cocharge(const RiggedConfiguration& rc) {
  long total = config_cocharge(rc.config());
  for (const auto& part : rc.parts)
    for (const auto& r : part) total += r.rigging;
  return total;
}

}  // namespace fermi
