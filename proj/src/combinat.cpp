#include "fermi/combinat.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace fermi {

bool is_partition(const std::vector<int>& v) {
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 1) return false;
    if (i > 0 && v[i] > v[i - 1]) return false;
  }
  return true;
}

int size_of(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

Partition trimmed(const Composition& c) {
  Partition p = c;
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

Partition sorted_partition(const Composition& c) {
  Partition p;
  for (int x : c)
    if (x > 0) p.push_back(x);
  std::sort(p.begin(), p.end(), std::greater<>());
  return p;
}

std::vector<Partition> partitions_in_box(int n, int max_part, int max_len) {
  std::vector<Partition> out;
  Partition cur;
  std::function<void(int, int)> rec = [&](int rem, int bound) {
    if (rem == 0) {
      out.push_back(cur);
      return;
    }
    if (static_cast<int>(cur.size()) == max_len) return;
    for (int p = std::min(rem, bound); p >= 1; --p) {
      cur.push_back(p);
      rec(rem - p, p);
      cur.pop_back();
    }
  };
  if (n >= 0) rec(n, max_part);
  return out;
}

std::vector<Partition> partitions(int n) { return partitions_in_box(n, n, n); }

std::vector<Composition> compositions(int n) {
  std::vector<Composition> out;
  Composition cur;
  std::function<void(int)> rec = [&](int rem) {
    if (rem == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = rem; p >= 1; --p) {
      cur.push_back(p);
      rec(rem - p);
      cur.pop_back();
    }
  };
  if (n >= 0) rec(n);
  return out;
}

std::vector<Composition> weak_compositions(int n, int k) {
  std::vector<Composition> out;
  Composition cur(k, 0);
  std::function<void(int, int)> rec = [&](int i, int rem) {
    if (i == k - 1) {
      cur[i] = rem;
      out.push_back(cur);
      return;
    }
    for (int v = rem; v >= 0; --v) {
      cur[i] = v;
      rec(i + 1, rem - v);
    }
  };
  if (k == 0) {
    if (n == 0) out.push_back({});
    return out;
  }
  rec(0, n);
  return out;
}

long n_statistic(const Partition& mu) {
  long s = 0;
  for (size_t i = 0; i < mu.size(); ++i) s += static_cast<long>(i) * mu[i];
  return s;
}

Partition conjugate(const Partition& p) {
  Partition c;
  for (int j = 1; !p.empty() && j <= p[0]; ++j) {
    int cnt = 0;
    for (int x : p) cnt += x >= j;
    c.push_back(cnt);
  }
  return c;
}

std::vector<Tableau> enumerate_ssyt(const Partition& shape, const Composition& content) {
  if (!is_partition(shape)) throw std::invalid_argument("shape is not a partition");
  for (int x : content)
    if (x < 0) throw std::invalid_argument("negative content");
  if (size_of(shape) != size_of(content)) throw std::invalid_argument("size mismatch");
  std::vector<std::pair<int, int>> cells;  // column by column
  for (int c = 0; !shape.empty() && c < shape[0]; ++c)
    for (size_t r = 0; r < shape.size() && shape[r] > c; ++r) cells.emplace_back(r, c);
  Tableau t(shape.size());
  for (size_t r = 0; r < shape.size(); ++r) t[r].assign(shape[r], 0);
  std::vector<int> rem = content;
  const int n = static_cast<int>(content.size());
  std::vector<Tableau> out;
  std::function<void(size_t)> rec = [&](size_t k) {
    if (k == cells.size()) {
      out.push_back(t);
      return;
    }
    auto [r, c] = cells[k];
    int lo = 1;
    if (c > 0) lo = std::max(lo, t[r][c - 1]);
    if (r > 0) lo = std::max(lo, t[r - 1][c] + 1);
    for (int v = lo; v <= n; ++v) {
      if (rem[v - 1] == 0) continue;
      --rem[v - 1];
      t[r][c] = v;
      rec(k + 1);
      ++rem[v - 1];
    }
    t[r][c] = 0;
  };
  rec(0);
  return out;
}

Word reading_word(const Tableau& t) {
  Word w;
  for (auto it = t.rbegin(); it != t.rend(); ++it) w.insert(w.end(), it->begin(), it->end());
  return w;
}

void row_insert(Tableau& t, int x) {
  for (auto& row : t) {
    auto it = std::upper_bound(row.begin(), row.end(), x);
    if (it == row.end()) {
      row.push_back(x);
      return;
    }
    std::swap(*it, x);
  }
  t.push_back({x});
}

Tableau insertion_tableau(const Word& w) {
  Tableau t;
  for (int x : w) row_insert(t, x);
  return t;
}

Composition content_of(const Word& w) {
  Composition c;
  for (int x : w) {
    if (x < 1) throw std::invalid_argument("letters must be positive");
    if (static_cast<int>(c.size()) < x) c.resize(x, 0);
    ++c[x - 1];
  }
  return c;
}

long charge(const Word& w) {
  Composition c = content_of(w);
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i] == 0 || (i > 0 && c[i] > c[i - 1]))
      throw std::invalid_argument("charge needs dominant content");
  std::vector<int> letters = w;
  std::vector<bool> used(letters.size(), false);
  long total = 0;
  const long len = static_cast<long>(letters.size());
  for (size_t pass = 0; pass < static_cast<size_t>(c.empty() ? 0 : c[0]); ++pass) {
    // standard subword: rightmost free 1, then scan leftward cyclically for 2, 3, ...
    long cur = -1;
    for (long j = len - 1; j >= 0; --j)
      if (!used[j] && letters[j] == 1) {
        cur = j;
        break;
      }
    used[cur] = true;
    long index = 0;
    for (int r = 2;; ++r) {
      long found = -1;
      for (long k = 1; k <= len; ++k) {
        long j = ((cur - k) % len + len) % len;
        if (!used[j] && letters[j] == r) {
          found = j;
          break;
        }
      }
      if (found < 0) break;
      if (found > cur) ++index;
      total += index;
      used[found] = true;
      cur = found;
    }
  }
  return total;
}

IntPolynomial kostka_foulkes(const Partition& lambda, const Partition& mu) {
  if (!is_partition(lambda) || !is_partition(mu)) throw std::invalid_argument("arguments must be partitions");
  if (size_of(lambda) != size_of(mu)) throw std::invalid_argument("size mismatch");
  IntPolynomial k;
  for (const auto& t : enumerate_ssyt(lambda, mu)) k.add_term(charge(reading_word(t)), 1);
  return k;
}

Int kostka_number(const Partition& lambda, const Composition& mu) {
  if (size_of(lambda) != size_of(mu)) throw std::invalid_argument("size mismatch");
  return Int(static_cast<unsigned long>(enumerate_ssyt(lambda, mu).size()));
}

}  // namespace fermi
