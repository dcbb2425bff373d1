#include "eacap/types_toolkit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "eacap/errors.hpp"

namespace eacap {

namespace {

BigInt binomial_big(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;  // exact at every step
  }
  return r;
}

uint64_t composition_count(int n, int parts) {
  // (n + parts - 1 choose parts - 1), saturating at uint64 max
  BigInt c = binomial_big(n + parts - 1, parts - 1);
  if (c > BigInt(std::numeric_limits<uint64_t>::max())) return std::numeric_limits<uint64_t>::max();
  return c.convert_to<uint64_t>();
}

double log2_big(const BigInt& v) {
  if (v <= 0) throw std::invalid_argument("log2 of non-positive integer");
  const size_t bits = boost::multiprecision::msb(v);
  if (bits <= 52) return std::log2(v.convert_to<double>());
  BigInt shifted = v >> (bits - 52);
  return std::log2(shifted.convert_to<double>()) + double(bits - 52);
}

}  // namespace

int TypeDistribution::n() const {
  int s = 0;
  for (int c : counts) s += c;
  return s;
}

std::vector<TypeDistribution> enumerate_types(int n, int alphabet, uint64_t cap) {
  if (n < 0 || alphabet < 1) throw std::invalid_argument("enumerate_types: bad arguments");
  if (composition_count(n, alphabet) > cap)
    throw ResourceCapError("enumerate_types: type count exceeds cap");
  std::vector<TypeDistribution> out;
  std::vector<int> cur(alphabet, 0);
  // lexicographic descent: first coordinate from n down to 0, recursively
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == alphabet - 1) {
      cur[pos] = remaining;
      out.push_back({cur});
      return;
    }
    for (int c = remaining; c >= 0; --c) {
      cur[pos] = c;
      self(self, pos + 1, remaining - c);
    }
  };
  rec(rec, 0, n);
  return out;
}

BigInt type_class_size(const TypeDistribution& t) {
  BigInt r = 1;
  int remaining = t.n();
  for (int c : t.counts) {
    if (c < 0) throw std::invalid_argument("type_class_size: negative count");
    r *= binomial_big(remaining, c);
    remaining -= c;
  }
  return r;
}

double log2_type_class_size(const TypeDistribution& t) { return log2_big(type_class_size(t)); }

double type_entropy(const TypeDistribution& t) {
  const double n = t.n();
  double h = 0.0;
  for (int c : t.counts) {
    if (c == 0) continue;
    const double f = c / n;
    h -= f * std::log2(f);
  }
  return h;
}

double kl_divergence(const std::vector<double>& t, const std::vector<double>& q) {
  if (t.size() != q.size()) throw std::invalid_argument("kl_divergence: size mismatch");
  double d = 0.0;
  for (size_t i = 0; i < t.size(); ++i) {
    if (t[i] == 0.0) continue;  // 0 log 0 = 0
    if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
    d += t[i] * std::log2(t[i] / q[i]);
  }
  return d;
}

double kl_divergence(const TypeDistribution& t, const std::vector<double>& q) {
  const double n = t.n();
  std::vector<double> f(t.counts.size());
  for (size_t i = 0; i < f.size(); ++i) f[i] = t.counts[i] / n;
  return kl_divergence(f, q);
}

double iid_sequence_log2_mass(const TypeDistribution& t, const std::vector<double>& q) {
  if (t.counts.size() != q.size()) throw std::invalid_argument("iid_sequence_log2_mass: size mismatch");
  double l = 0.0;
  for (size_t i = 0; i < q.size(); ++i) {
    if (t.counts[i] == 0) continue;
    if (q[i] <= 0.0) throw std::invalid_argument("iid_sequence_log2_mass: q vanishes on a used symbol");
    l += t.counts[i] * std::log2(q[i]);
  }
  return l;
}

double iid_type_mass(const TypeDistribution& t, const std::vector<double>& q) {
  return std::exp2(log2_type_class_size(t) + iid_sequence_log2_mass(t, q));
}

TailBound tail_bound_check(int n, const std::vector<double>& q, double mu, uint64_t cap) {
  if (mu <= 0.0) throw std::invalid_argument("tail_bound_check: mu must be positive");
  TailBound out;
  for (const TypeDistribution& t : enumerate_types(n, int(q.size()), cap)) {
    if (kl_divergence(t, q) > mu) out.exact_tail += iid_type_mass(t, q);
  }
  out.bound = std::exp2(-double(n) * (mu - q.size() * std::log2(n + 1.0) / n));
  return out;
}

double default_mu(int n, int alphabet) { return (alphabet + 1) * std::log2(n + 1.0) / n; }

namespace {

std::vector<double> positive_schmidt_squares(const PureStateVector& psi) {
  SchmidtDecomposition sd = schmidt_decompose(psi);
  std::vector<double> q;
  for (double c : sd.coefficients)
    if (c > 1e-12) q.push_back(c * c);
  double total = std::accumulate(q.begin(), q.end(), 0.0);
  for (double& x : q) x /= total;
  return q;
}

}  // namespace

RestrictedResource restricted_resource(const PureStateVector& psi, int n, double mu, uint64_t cap) {
  if (n < 1) throw std::invalid_argument("restricted_resource: n must be >= 1");
  RestrictedResource out;
  out.schmidt_q = positive_schmidt_squares(psi);
  out.n = n;
  out.mu = mu;
  const int x = int(out.schmidt_q.size());
  for (const TypeDistribution& t : enumerate_types(n, x, cap)) {
    if (kl_divergence(t, out.schmidt_q) <= mu) {
      out.kept.push_back(t);
      out.weights.push_back(iid_type_mass(t, out.schmidt_q));
    }
  }
  if (out.kept.empty()) throw InfeasibleError("restricted_resource: no type is mu-close to q");
  out.alpha = std::accumulate(out.weights.begin(), out.weights.end(), 0.0);
  for (double& w : out.weights) w /= out.alpha;
  out.fidelity_gap_bound = std::exp2(-0.5 * n * (mu - x * std::log2(n + 1.0) / n));
  return out;
}

SectorDecomposition canonical_sector_decomposition(const PureStateVector& psi, int n, double mu,
                                                   uint64_t type_cap, uint64_t dim_cap) {
  if (psi.dims().size() != 2 || psi.dims()[0] != psi.dims()[1])
    throw std::invalid_argument("canonical_sector_decomposition: resource must live on A (x) A' with equal dims");
  const int d = psi.dims()[0];

  // The construction indexes sectors by sequences over the Schmidt basis;
  // it requires that basis to consist of computational vectors (up to phase).
  SchmidtDecomposition sd = schmidt_decompose(psi);
  std::vector<int> letter_to_basis;  // Schmidt letter -> computational index in A
  std::vector<double> q;
  for (size_t k = 0; k < sd.coefficients.size(); ++k) {
    if (sd.coefficients[k] <= 1e-12) continue;
    int hit_left = -1, hit_right = -1;
    for (int i = 0; i < d; ++i) {
      if (std::abs(sd.left.at(i, int(k))) > 1.0 - 1e-8) hit_left = i;
      if (std::abs(sd.right.at(i, int(k))) > 1.0 - 1e-8) hit_right = i;
    }
    if (hit_left < 0 || hit_right < 0 || hit_left != hit_right)
      throw std::invalid_argument(
          "canonical_sector_decomposition: Schmidt bases must be computational basis vectors");
    letter_to_basis.push_back(hit_left);
    q.push_back(sd.coefficients[k] * sd.coefficients[k]);
  }
  const double qtotal = std::accumulate(q.begin(), q.end(), 0.0);
  for (double& w : q) w /= qtotal;
  const int x = int(q.size());

  double full_dim = std::pow(double(d), n);
  if (full_dim > double(dim_cap))
    throw ResourceCapError("canonical_sector_decomposition: d^n exceeds the dimension cap");

  SectorDecomposition dec;
  dec.total_dim = 1;
  for (int i = 0; i < n; ++i) dec.total_dim *= d;

  std::vector<TypeDistribution> kept;
  std::vector<double> weights;
  double alpha = 0.0;
  for (const TypeDistribution& t : enumerate_types(n, x, type_cap)) {
    if (kl_divergence(t, q) <= mu) {
      kept.push_back(t);
      const double w = iid_type_mass(t, q);
      weights.push_back(w);
      alpha += w;
    }
  }
  if (kept.empty()) throw InfeasibleError("canonical_sector_decomposition: no type is mu-close to q");

  for (size_t ti = 0; ti < kept.size(); ++ti) {
    Sector sec;
    sec.weight = weights[ti] / alpha;
    // enumerate sequences of this type over the Schmidt letters
    std::vector<int> seq(n, 0);
    std::vector<int> remaining = kept[ti].counts;
    auto rec = [&](auto&& self, int pos) -> void {
      if (pos == n) {
        int idx = 0;
        for (int i = 0; i < n; ++i) idx = idx * d + letter_to_basis[seq[i]];
        sec.basis_a.push_back(idx);
        return;
      }
      for (int a = 0; a < x; ++a) {
        if (remaining[a] == 0) continue;
        --remaining[a];
        seq[pos] = a;
        self(self, pos + 1);
        ++remaining[a];
      }
    };
    rec(rec, 0);
    std::sort(sec.basis_a.begin(), sec.basis_a.end());
    sec.basis_ap = sec.basis_a;
    sec.dim = int(sec.basis_a.size());
    dec.sectors.push_back(std::move(sec));
  }
  dec.validate();
  return dec;
}

}  // namespace eacap
