#include "fermi/crystals.hpp"

#include <cassert>
#include <functional>
#include <stdexcept>

namespace fermi {

Composition path_content(const Path& p) {
  Composition c(p.n, 0);
  for (const auto& row : p.factors)
    for (int x : row) ++c.at(x - 1);
  return c;
}

std::vector<int> path_shapes(const Path& p) {
  std::vector<int> s;
  for (const auto& row : p.factors) s.push_back(static_cast<int>(row.size()));
  return s;
}

Word path_word(const Path& p) {
  Word w;
  for (auto it = p.factors.rbegin(); it != p.factors.rend(); ++it) w.insert(w.end(), it->begin(), it->end());
  return w;
}

void validate_path(const Path& p) {
  if (p.n < 1) throw std::invalid_argument("rank must be positive");
  for (const auto& row : p.factors) {
    if (row.empty()) throw std::invalid_argument("empty tensor factor");
    for (size_t j = 0; j < row.size(); ++j) {
      if (row[j] < 1 || row[j] > p.n) throw std::invalid_argument("letter outside 1..n");
      if (j > 0 && row[j] < row[j - 1]) throw std::invalid_argument("row factor must be weakly increasing");
    }
  }
}

namespace {

Path with_word(const Path& p, const Word& w) {
  Path r = p;
  size_t pos = 0;
  for (auto it = r.factors.rbegin(); it != r.factors.rend(); ++it)
    for (int& x : *it) x = w[pos++];
  return r;
}

// positions of unpaired i (left part) and unpaired i+1 (right part)
std::pair<std::vector<size_t>, std::vector<size_t>> unpaired(const Word& w, int i) {
  std::vector<size_t> open, free_i;
  for (size_t k = 0; k < w.size(); ++k) {
    if (w[k] == i + 1) {
      open.push_back(k);
    } else if (w[k] == i) {
      if (open.empty())
        free_i.push_back(k);
      else
        open.pop_back();
    }
  }
  return {free_i, open};
}

void check_index(const Path& p, int i) {
  if (i < 1 || i >= p.n) throw std::out_of_range("crystal index outside 1..n-1");
}

}  // namespace

std::optional<Path> e_op(const Path& p, int i) {
  check_index(p, i);
  Word w = path_word(p);
  auto [fi, fip] = unpaired(w, i);
  if (fip.empty()) return std::nullopt;
  w[fip.front()] = i;
  return with_word(p, w);
}

std::optional<Path> f_op(const Path& p, int i) {
  check_index(p, i);
  Word w = path_word(p);
  auto [fi, fip] = unpaired(w, i);
  if (fi.empty()) return std::nullopt;
  w[fi.back()] = i + 1;
  return with_word(p, w);
}

bool is_highest_weight(const Path& p) {
  for (int i = 1; i < p.n; ++i)
    if (e_op(p, i)) return false;
  return true;
}

std::vector<Path> enumerate_paths(const std::vector<int>& shapes, int n, const Composition& weight) {
  if (n < 1) throw std::invalid_argument("rank must be positive");
  if (static_cast<int>(weight.size()) > n) throw std::invalid_argument("weight longer than rank");
  for (int s : shapes)
    if (s < 1) throw std::invalid_argument("row lengths must be positive");
  for (int w : weight)
    if (w < 0) throw std::invalid_argument("negative weight");
  if (size_of(shapes) != size_of(weight)) throw std::invalid_argument("size mismatch between shapes and weight");
  std::vector<int> rem(weight);
  rem.resize(n, 0);
  std::vector<Path> out;
  Path cur{n, {}};
  std::function<void(size_t)> rec = [&](size_t k) {
    if (k == shapes.size()) {
      out.push_back(cur);
      return;
    }
    RowFactor row;
    std::function<void(int)> fill = [&](int lo) {
      if (static_cast<int>(row.size()) == shapes[k]) {
        cur.factors.push_back(row);
        rec(k + 1);
        cur.factors.pop_back();
        return;
      }
      for (int x = lo; x <= n; ++x) {
        if (rem[x - 1] == 0) continue;
        --rem[x - 1];
        row.push_back(x);
        fill(x);
        row.pop_back();
        ++rem[x - 1];
      }
    };
    fill(1);
  };
  rec(0);
  return out;
}

long local_energy(const RowFactor& u, const RowFactor& v) {
  Word w = v;
  w.insert(w.end(), u.begin(), u.end());
  Tableau t = insertion_tableau(w);
  return t.size() > 1 ? static_cast<long>(t[1].size()) : 0;
}

std::pair<RowFactor, RowFactor> r_matrix(const RowFactor& u, const RowFactor& v) {
  Word w = v;
  w.insert(w.end(), u.begin(), u.end());
  Tableau t = insertion_tableau(w);
  std::vector<int> row1 = t[0];
  std::vector<int> row2 = t.size() > 1 ? t[1] : std::vector<int>{};
  // uninsert the horizontal strip shape(t)/(|u|), last created cell first
  RowFactor vp_rev;
  while (row1.size() > u.size()) {
    vp_rev.push_back(row1.back());
    row1.pop_back();
  }
  while (!row2.empty()) {
    int y = row2.back();
    row2.pop_back();
    size_t k = row1.size();
    while (k > 0 && row1[k - 1] >= y) --k;
    assert(k > 0);
    std::swap(row1[k - 1], y);
    vp_rev.push_back(y);
  }
  RowFactor vp(vp_rev.rbegin(), vp_rev.rend());
#ifndef NDEBUG
  Word check = row1;
  check.insert(check.end(), vp.begin(), vp.end());
  assert(insertion_tableau(check) == t);
#endif
  return {vp, row1};
}

long intrinsic_energy(const Path& p) {
  const size_t len = p.factors.size();
  long d = 0;
  for (size_t i = 0; i < len; ++i) {
    RowFactor x = p.factors[i];
    for (size_t j = i + 1; j < len; ++j) {
      d += local_energy(x, p.factors[j]);
      if (j + 1 < len) x = r_matrix(x, p.factors[j]).second;
    }
  }
  return d;
}

}  // namespace fermi
