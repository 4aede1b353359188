#include "fermi/bijection.hpp"

#include <limits>
#include <stdexcept>

namespace fermi {

namespace {

struct State {
  int n;
  std::vector<int> rows;  // tensor factors in order, rightmost last
  std::vector<std::vector<RcRow>> parts;

  MultiplicityArray mult() const { return MultiplicityArray::rows(n, rows); }
  Configuration config() const {
    RiggedConfiguration rc{n, parts};
    return rc.config();
  }
  long vac(int a, int i) const { return vacancy(config(), mult(), a, i); }
};

constexpr long kUnset = std::numeric_limits<long>::min();

void finish(State& s) {
  for (auto& part : s.parts) {
    std::vector<RcRow> kept;
    for (const auto& r : part)
      if (r.length > 0) kept.push_back(r);
    part = kept;
  }
  Configuration nu = s.config();
  MultiplicityArray L = s.mult();
  for (auto& part : s.parts)
    for (auto& r : part)
      if (r.rigging == kUnset) r.rigging = vacancy(nu, L, static_cast<int>(&part - s.parts.data()) + 1, r.length);
  RiggedConfiguration rc{s.n, s.parts};
  rc.canonicalize();
  s.parts = rc.parts;
}

// add a single box carrying letter k to the right end
void delta_inverse(State& s, int k) {
  std::vector<std::pair<int, size_t>> sel;
  long bound = std::numeric_limits<long>::max();
  for (int a = k - 1; a >= 1; --a) {
    auto& part = s.parts[a - 1];
    long best = -1;
    for (size_t idx = 0; idx < part.size(); ++idx) {
      const RcRow& r = part[idx];
      if (r.length <= bound && r.rigging == s.vac(a, r.length))
        if (best < 0 || r.length > part[best].length) best = static_cast<long>(idx);
    }
    if (best < 0) {
      part.push_back({0, 0});
      best = static_cast<long>(part.size()) - 1;
    }
    sel.emplace_back(a, static_cast<size_t>(best));
    bound = part[best].length;
  }
  for (auto [a, idx] : sel) {
    auto& r = s.parts[a - 1][idx];
    ++r.length;
    r.rigging = kUnset;
  }
  s.rows.push_back(1);
  finish(s);
}

// remove the rightmost single box; returns its letter
int delta(State& s) {
  if (s.rows.empty() || s.rows.back() != 1) throw std::logic_error("delta needs a single box at the right end");
  std::vector<std::pair<int, size_t>> sel;
  int ell = 1;
  int letter = s.n;
  for (int a = 1; a <= s.n - 1; ++a) {
    auto& part = s.parts[a - 1];
    long best = -1;
    for (size_t idx = 0; idx < part.size(); ++idx) {
      const RcRow& r = part[idx];
      if (r.length >= ell && r.rigging == s.vac(a, r.length))
        if (best < 0 || r.length < part[best].length) best = static_cast<long>(idx);
    }
    if (best < 0) {
      letter = a;
      break;
    }
    sel.emplace_back(a, static_cast<size_t>(best));
    ell = part[best].length;
  }
  for (auto [a, idx] : sel) {
    auto& r = s.parts[a - 1][idx];
    --r.length;
    r.rigging = kUnset;
  }
  s.rows.pop_back();
  finish(s);
  return letter;
}

void require_rows(const Path& p) {
  validate_path(p);
  for (const auto& row : p.factors)
    if (row.empty()) throw std::invalid_argument("unsupported factor shape");
}

}  // namespace

RiggedConfiguration path_to_rc(const Path& p) {
  require_rows(p);
  State s{p.n, {}, std::vector<std::vector<RcRow>>(p.n - 1)};
  for (const auto& row : p.factors) {
    for (size_t t = 0; t < row.size(); ++t) {
      delta_inverse(s, row[row.size() - 1 - t]);
      if (t > 0) {
        s.rows.pop_back();
        ++s.rows.back();
      }
    }
  }
  return RiggedConfiguration{s.n, s.parts};
}

Path rc_to_path(const RiggedConfiguration& rc, const std::vector<int>& shapes) {
  MultiplicityArray L = MultiplicityArray::rows(rc.n, shapes);
  if (static_cast<int>(rc.parts.size()) != rc.n - 1) throw std::invalid_argument("invalid rigged configuration: wrong rank");
  RiggedConfiguration canon = rc;
  canon.canonicalize();
  Composition w = rc_weight(canon, L);
  for (int x : w)
    if (x < 0) throw std::invalid_argument("invalid rigged configuration: negative weight");
  std::string err = validate_rc(canon, L, w);
  if (!err.empty()) throw std::invalid_argument("invalid rigged configuration: " + err);
  State s{rc.n, shapes, canon.parts};
  std::vector<RowFactor> rev;
  while (!s.rows.empty()) {
    int len = s.rows.back();
    RowFactor row;
    for (int t = 0; t < len; ++t) {
      if (s.rows.back() > 1) {
        --s.rows.back();
        s.rows.push_back(1);
      }
      row.push_back(delta(s));
    }
    rev.push_back(row);
  }
  return Path{rc.n, std::vector<RowFactor>(rev.rbegin(), rev.rend())};
}

StatisticReport check_statistic(const Path& p) {
  StatisticReport r;
  r.energy = intrinsic_energy(p);
  r.cocharge = cocharge(path_to_rc(p));
  r.sign = 1;
  r.shift = r.energy - r.cocharge;
  return r;
}

}  // namespace fermi
