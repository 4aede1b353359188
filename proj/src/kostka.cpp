#include "fermi/kostka.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace fermi {

void KostkaInstance::validate() const {
  if (n < 1) throw std::invalid_argument("rank must be positive");
  if (static_cast<int>(weight.size()) > n) throw std::invalid_argument("weight longer than rank");
  for (int s : shapes)
    if (s < 1) throw std::invalid_argument("row lengths must be positive");
  for (int w : weight)
    if (w < 0) throw std::invalid_argument("negative weight entry");
  if (size_of(shapes) != size_of(weight)) throw std::invalid_argument("weight size differs from total boxes");
}

IntPolynomial apply_normalization(const Normalization& nz, const IntPolynomial& p) {
  return (nz.sign == 1 ? p : p.inverted_q()).shifted(nz.shift);
}

IntPolynomial fermionic_kostka(const KostkaInstance& inst) {
  inst.validate();
  IntPolynomial r;
  for (const auto& rc : enumerate_rc(inst.multiplicities(), inst.weight)) r.add_term(cocharge(rc), 1);
  return r;
}

namespace {

struct Block {
  int length;
  int mult;
  long vac;
};

IntPolynomial window_sum(long lo, long hi, int m) {
  // sum over multisets of m labels in [lo, hi] of q^{sum}
  if (lo > hi) return {};
  return q_binomial(hi - lo + m, m).shifted(m * lo);
}

IntPolynomial config_sum(const Configuration& nu, const MultiplicityArray& L) {
  const int m = L.n - 1;
  std::vector<std::vector<Block>> blocks(m);
  for (int a = 1; a <= m; ++a)
    for (int i : nu[a - 1]) {
      if (!blocks[a - 1].empty() && blocks[a - 1].back().length == i)
        ++blocks[a - 1].back().mult;
      else
        blocks[a - 1].push_back({i, 1, vacancy(nu, L, a, i)});
    }
  std::map<std::pair<int, std::vector<long>>, IntPolynomial> memo;
  // g[b]: excess carried in from lower nodes for block b of node a
  std::function<IntPolynomial(int, const std::vector<long>&)> level = [&](int a, const std::vector<long>& g) {
    auto key = std::make_pair(a, g);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const auto& bs = blocks[a - 1];
    IntPolynomial total;
    if (a == m || blocks[a].empty()) {
      total = IntPolynomial::constant(1);
      for (size_t b = 0; b < bs.size(); ++b) total *= window_sum(g[b] - bs[b].length, bs[b].vac, bs[b].mult);
    } else {
      const auto& up = blocks[a];
      std::map<std::vector<long>, IntPolynomial> by_state;
      std::vector<long> x(bs.size());
      std::function<void(size_t, const IntPolynomial&)> pick = [&](size_t b, const IntPolynomial& w) {
        if (b == bs.size()) {
          std::vector<long> next(up.size(), 0);
          for (size_t c = 0; c < up.size(); ++c)
            for (size_t d = 0; d < bs.size(); ++d)
              next[c] = std::max(next[c], std::min(bs[d].length, up[c].length) + g[d] - x[d] - bs[d].length);
          by_state[next] += w;
          return;
        }
        const Block& bl = bs[b];
        for (long v = g[b] - bl.length; v <= bl.vac; ++v) {
          // minimum label exactly v, the other mult-1 labels in [v, vac]
          x[b] = v;
          pick(b + 1, w * window_sum(v, bl.vac, bl.mult - 1).shifted(v));
        }
      };
      pick(0, IntPolynomial::constant(1));
      for (const auto& [next, w] : by_state) total += w * level(a + 1, next);
    }
    memo.emplace(key, total);
    return total;
  };
  if (m == 0) return IntPolynomial::constant(1);
  if (blocks[0].empty()) {
    // node 1 empty: higher nodes see no excess
    IntPolynomial total = IntPolynomial::constant(1);
    for (int a = 1; a <= m; ++a)
      for (const auto& bl : blocks[a - 1]) total *= window_sum(-bl.length, bl.vac, bl.mult);
    return total;
  }
  return level(1, std::vector<long>(blocks[0].size(), 0));
}

}  // namespace

IntPolynomial fermionic_kostka_closed_form(const KostkaInstance& inst) {
  inst.validate();
  MultiplicityArray L = inst.multiplicities();
  IntPolynomial r;
  for (const auto& nu : enumerate_configurations(L, inst.weight))
    r += config_sum(nu, L).shifted(config_cocharge(nu));
  return r;
}

IntPolynomial restricted_fermionic(const KostkaInstance& inst) {
  inst.validate();
  MultiplicityArray L = inst.multiplicities();
  IntPolynomial r;
  for (const auto& nu : enumerate_configurations(L, inst.weight)) {
    IntPolynomial term = IntPolynomial::constant(1);
    for (int a = 1; a <= L.n - 1 && !term.is_zero(); ++a) {
      const auto& part = nu[a - 1];
      for (size_t k = 0; k < part.size();) {
        size_t e = k;
        while (e < part.size() && part[e] == part[k]) ++e;
        term *= window_sum(0, vacancy(nu, L, a, part[k]), static_cast<int>(e - k));
        k = e;
      }
    }
    r += term.shifted(config_cocharge(nu));
  }
  return r;
}

IntPolynomial path_kostka(const KostkaInstance& inst) {
  inst.validate();
  IntPolynomial r;
  for (const auto& p : enumerate_paths(inst.shapes, inst.n, inst.weight)) r.add_term(intrinsic_energy(p), 1);
  return r;
}

IntPolynomial restricted_kostka(const KostkaInstance& inst) {
  inst.validate();
  Partition w = trimmed(inst.weight);
  if (!is_partition(w)) throw std::invalid_argument("restricted_kostka needs a dominant weight");
  IntPolynomial r;
  for (const auto& p : enumerate_paths(inst.shapes, inst.n, inst.weight))
    if (is_highest_weight(p)) r.add_term(intrinsic_energy(p), 1);
  return r;
}

Normalization fermionic_path_normalization() { return {1, 0}; }

Normalization classical_normalization(const Partition& mu) { return {-1, n_statistic(mu)}; }

namespace {

std::optional<Normalization> solve_normalization(const IntPolynomial& source, const IntPolynomial& target) {
  if (source.is_zero() || target.is_zero()) return std::nullopt;
  std::optional<Normalization> found;
  for (int sign : {1, -1}) {
    IntPolynomial s = sign == 1 ? source : source.inverted_q();
    Normalization nz{sign, target.min_exponent() - s.min_exponent()};
    if (apply_normalization(nz, source) == target) {
      if (found) return std::nullopt;  // ambiguous: the calibration instance must be asymmetric
      found = nz;
    }
  }
  return found;
}

}  // namespace

Calibration calibrate_fermionic_path() {
  KostkaInstance inst{3, {2, 1, 1}, {1, 2, 1}};
  auto nz = solve_normalization(fermionic_kostka(inst), path_kostka(inst));
  if (!nz) throw std::logic_error("fermionic/path calibration failed");
  return {"n=3 shapes 2,1,1 weight 1,2,1", *nz};
}

Calibration calibrate_classical() {
  Partition lambda{4, 2}, mu{2, 2, 1, 1};
  KostkaInstance inst{2, mu, lambda};
  auto nz = solve_normalization(restricted_kostka(inst), kostka_foulkes(lambda, mu));
  if (!nz) throw std::logic_error("classical calibration failed");
  nz->shift -= n_statistic(mu);
  return {"lambda 4,2 mu 2,2,1,1", *nz};
}

IdentityReport compare_sides(const KostkaInstance& inst, const IntPolynomial& fermionic, const IntPolynomial& path) {
  IdentityReport rep;
  rep.instance = inst;
  rep.fermionic = fermionic;
  rep.path = path;
  rep.normalization = fermionic_path_normalization();
  IntPolynomial lhs = apply_normalization(rep.normalization, fermionic);
  rep.equal = lhs == path;
  if (!rep.equal) {
    IntPolynomial diff = lhs - path;
    rep.first_difference = diff.min_exponent();
  }
  return rep;
}

IdentityReport verify_identity(const KostkaInstance& inst) {
  return compare_sides(inst, fermionic_kostka(inst), path_kostka(inst));
}

}  // namespace fermi
