// Copyright 2026 The pnorm-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pnorm/weingarten.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pnorm/channel.hpp"
#include "pnorm/parallel.hpp"

namespace pnorm {

std::string to_string(const Partition& partition) {
  std::string s;
  for (std::size_t i = 0; i < partition.size(); ++i) {
    if (i) s += '+';
    s += std::to_string(partition[i]);
  }
  return s;
}

Permutation::Permutation(int n) : n_(n) {
  if (n < 1 || n > kMaxPermutationSize) throw InvalidArgument("permutation size must be in [1, 4]");
  std::iota(images_.begin(), images_.begin() + n, 0);
}

Permutation::Permutation(std::vector<int> images) : n_(int(images.size())) {
  if (n_ < 1 || n_ > kMaxPermutationSize) throw InvalidArgument("permutation size must be in [1, 4]");
  std::array<bool, kMaxPermutationSize> seen{};
  for (int i = 0; i < n_; ++i) {
    const int v = images[std::size_t(i)];
    if (v < 0 || v >= n_ || seen[std::size_t(v)]) throw InvalidArgument("permutation images must be a bijection");
    seen[std::size_t(v)] = true;
    images_[std::size_t(i)] = v;
  }
}

Permutation Permutation::operator*(const Permutation& other) const {
  if (n_ != other.n_) throw InvalidArgument("composing permutations of different sizes");
  Permutation out(n_);
  for (int i = 0; i < n_; ++i) out.images_[std::size_t(i)] = (*this)(other(i));
  return out;
}

Permutation Permutation::inverse() const {
  Permutation out(n_);
  for (int i = 0; i < n_; ++i) out.images_[std::size_t((*this)(i))] = i;
  return out;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < n_; ++i) {
    if ((*this)(i) != i) return false;
  }
  return true;
}

int Permutation::num_cycles() const { return int(cycle_type(*this).size()); }

std::vector<Permutation> all_permutations(int n) {
  if (n < 1 || n > kMaxPermutationSize) throw InvalidArgument("all_permutations: n must be in [1, 4]");
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

Partition cycle_type(const Permutation& perm) {
  std::array<bool, kMaxPermutationSize> visited{};
  Partition cycles;
  for (int i = 0; i < perm.size(); ++i) {
    if (visited[std::size_t(i)]) continue;
    int len = 0;
    for (int j = i; !visited[std::size_t(j)]; j = perm(j)) {
      visited[std::size_t(j)] = true;
      ++len;
    }
    cycles.push_back(len);
  }
  std::sort(cycles.begin(), cycles.end(), std::greater<>());
  return cycles;
}

WeingartenTable::WeingartenTable(int n, Index d, std::map<Partition, double> values)
    : n_(n), d_(d), values_(std::move(values)) {}

double WeingartenTable::operator()(const Partition& type) const {
  const auto it = values_.find(type);
  if (it == values_.end()) throw InvalidArgument("Weingarten table has no entry for cycle type " + to_string(type));
  return it->second;
}

double WeingartenTable::operator()(const Permutation& perm) const { return (*this)(cycle_type(perm)); }

WeingartenTable weingarten_table(int n, Index d) {
  if (d < n) throw SingularGram("Weingarten Gram matrix is singular for d < n");
  const std::vector<Permutation> perms = all_permutations(n);
  const Index m = Index(perms.size());
  Eigen::MatrixXd gram(m, m);
  Index identity = 0;
  for (Index i = 0; i < m; ++i) {
    if (perms[std::size_t(i)].is_identity()) identity = i;
    for (Index j = 0; j < m; ++j) {
      const Permutation rel = perms[std::size_t(i)] * perms[std::size_t(j)].inverse();
      gram(i, j) = std::pow(double(d), rel.num_cycles());
    }
  }
  const Eigen::VectorXd rhs = Eigen::VectorXd::Unit(m, identity);
  const Eigen::VectorXd wg = gram.fullPivLu().solve(rhs);

  std::map<Partition, double> values;
  for (Index i = 0; i < m; ++i) {
    const Partition type = cycle_type(perms[std::size_t(i)]);
    const auto [it, inserted] = values.emplace(type, wg[i]);
    // Class function: entries of a conjugacy class must agree.
    if (!inserted && std::abs(it->second - wg[i]) > 1e-9 * std::abs(it->second)) {
      throw Error("Weingarten solve is not constant on conjugacy classes");
    }
  }
  return WeingartenTable(n, d, std::move(values));
}

double orthogonality_residual(const WeingartenTable& table) {
  const std::vector<Permutation> perms = all_permutations(table.n());
  double worst = 0.0;
  for (const auto& sigma : perms) {
    double sum = 0.0;
    for (const auto& tau : perms) {
      sum += std::pow(double(table.d()), (sigma * tau.inverse()).num_cycles()) * table(tau);
    }
    worst = std::max(worst, std::abs(sum - (sigma.is_identity() ? 1.0 : 0.0)));
  }
  return worst;
}

double MomentLedger::resum() const {
  double s = 0.0;
  for (const auto& t : terms) s += t.term_value;
  return s;
}

namespace {

// Index components of the summation variables in Tr[rho^2]. Every A index is an
// (E, F) pair, every B index a G value, every S index an (F, G) pair; the E part
// of every input (column) index is pinned to |0> and never enters a class.
enum Var { k1 = 0, k2 = 1, k1p = 2, k2p = 3 };  // unprimed/primed copies 1, 2

constexpr int kNodes = 20;
constexpr int a_e(int v) { return v; }
constexpr int a_f(int v) { return 4 + v; }
constexpr int b_g(int v) { return 8 + v; }
constexpr int s_f(int v) { return 12 + v; }
constexpr int s_g(int v) { return 16 + v; }

// With W(ab, s) = U((a, b), (0, s)) and Psi = W W^dagger / sqrt|S|,
//   Tr rho^2 = |S|^{-2} sum W(a1 b1, s1) conj W(a2 b2, s1)
//                          conj W(a1' b1, s2) W(a2' b2, s2)
//                          W(a1' b1', s3) conj W(a2' b2', s3)
//                          conj W(a1 b1', s4) W(a2 b2', s4).
// Factor k of U / conj U: row (a, b) variables; its column is S variable k.
constexpr std::array<int, 4> kUa{k1, k2p, k1p, k2};
constexpr std::array<int, 4> kUb{k1, k2, k1p, k2p};
constexpr std::array<int, 4> kUbarA{k2, k1p, k2p, k1};
constexpr std::array<int, 4> kUbarB{k2, k1, k2p, k1p};

struct UnionFind {
  std::array<int, kNodes> parent{};
  UnionFind() { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[std::size_t(x)] != x) x = parent[std::size_t(x)] = parent[std::size_t(parent[std::size_t(x)])];
    return x;
  }
  void unite(int x, int y) { parent[std::size_t(find(x))] = find(y); }
};

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw ResourceError("loop weight overflows 64 bits");
  return out;
}

std::uint64_t loop_weight(const RegisterDims& dims, const Permutation& sigma, const Permutation& tau) {
  UnionFind uf;
  for (int k = 0; k < 4; ++k) {
    const int ks = sigma(k);
    uf.unite(a_e(kUa[std::size_t(k)]), a_e(kUbarA[std::size_t(ks)]));
    uf.unite(a_f(kUa[std::size_t(k)]), a_f(kUbarA[std::size_t(ks)]));
    uf.unite(b_g(kUb[std::size_t(k)]), b_g(kUbarB[std::size_t(ks)]));
    const int kt = tau(k);
    uf.unite(s_f(k), s_f(kt));
    uf.unite(s_g(k), s_g(kt));
  }
  std::array<std::uint64_t, kNodes> node_dim{};
  for (int v = 0; v < 4; ++v) {
    node_dim[std::size_t(a_e(v))] = std::uint64_t(dims.e);
    node_dim[std::size_t(a_f(v))] = std::uint64_t(dims.f);
    node_dim[std::size_t(b_g(v))] = std::uint64_t(dims.g);
    node_dim[std::size_t(s_f(v))] = std::uint64_t(dims.f);
    node_dim[std::size_t(s_g(v))] = std::uint64_t(dims.g);
  }
  std::uint64_t w = 1;
  for (int x = 0; x < kNodes; ++x) {
    if (uf.find(x) == x) w = checked_mul(w, node_dim[std::size_t(x)]);
  }
  return w;
}

}  // namespace

AveragePurity average_purity_exact(const RegisterDims& dims) {
  const Index d = dims.total();
  if (d < 4) throw SingularGram("average_purity_exact: needs e*f*g >= 4");
  const WeingartenTable table = weingarten_table(4, d);
  const std::vector<Permutation> perms = all_permutations(4);
  const double prefactor = 1.0 / (double(dims.s()) * double(dims.s()));

  AveragePurity out;
  out.ledger.dims = dims;
  out.ledger.terms.reserve(perms.size() * perms.size());
  for (std::size_t i = 0; i < perms.size(); ++i) {
    for (std::size_t j = 0; j < perms.size(); ++j) {
      LedgerTerm term;
      term.sigma_index = int(i);
      term.tau_index = int(j);
      term.sigma = perms[i];
      term.tau = perms[j];
      term.loop_weight = loop_weight(dims, perms[i], perms[j]);
      term.wg_argument = cycle_type(perms[i] * perms[j].inverse());
      term.wg_value = table(term.wg_argument);
      term.term_value = double(term.loop_weight) * term.wg_value * prefactor;
      out.ledger.terms.push_back(std::move(term));
    }
  }
  // Sum in ledger order so the total is reproducible.
  out.ledger.total = out.ledger.resum();
  out.total = out.ledger.total;
  return out;
}

double dominant_term(const RegisterDims& dims) {
  const double ratio = double(dims.s()) / (double(dims.a()) * double(dims.b()));
  return ratio * ratio;
}

MonteCarloEstimate average_purity_monte_carlo(const RegisterDims& dims, int samples, std::uint64_t seed,
                                              std::uint64_t memory_cap, unsigned threads) {
  if (samples < 2) throw InvalidArgument("average_purity_monte_carlo: need at least 2 samples");
  const auto side = std::uint64_t(dims.total());
  if (side * side > memory_cap) throw ResourceError("average_purity_monte_carlo: (e*f*g)^2 exceeds memory cap");
  std::vector<double> purity(static_cast<std::size_t>(samples));
  parallel_for(std::size_t(samples), threads, [&](std::size_t k) {
    Rng rng(derive_seed(seed, kPuritySampleStream, k));
    const Channel ch = sample_channel(dims, rng);
    purity[k] = apply_product_to_phi(ch, memory_cap).purity();
  });
  MonteCarloEstimate out;
  out.samples = samples;
  out.mean = std::accumulate(purity.begin(), purity.end(), 0.0) / samples;
  double ss = 0.0;
  for (double x : purity) ss += (x - out.mean) * (x - out.mean);
  out.standard_error = std::sqrt(ss / (samples - 1)) / std::sqrt(double(samples));
  return out;
}

void write_ledger_csv(const MomentLedger& ledger, std::ostream& out) {
  const auto old_precision = out.precision(17);
  out << "sigma_index,tau_index,cycle_type,loop_weight,wg_value,term_value\n";
  for (const auto& t : ledger.terms) {
    out << t.sigma_index << ',' << t.tau_index << ',' << to_string(t.wg_argument) << ',' << t.loop_weight << ','
        << t.wg_value << ',' << t.term_value << '\n';
  }
  out.precision(old_precision);
}

}  // namespace pnorm
