#include "eacap/channels.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "eacap/errors.hpp"

namespace eacap {

namespace {

constexpr double kTpTol = 1e-9;
constexpr double kCpTol = -1e-9;

ComplexOperator choi_matrix(const std::vector<ComplexOperator>& kraus, int d_in, int d_out) {
  // (N (x) id)(Phi) assembled directly from the Kraus operators:
  // Choi = (1/d_in) sum_k vec(K) vec(K)† arranged on B (x) A.
  ComplexOperator c(d_out * d_in, d_out * d_in);
  for (const auto& k : kraus) {
    for (int i = 0; i < d_out; ++i)
      for (int a = 0; a < d_in; ++a)
        for (int j = 0; j < d_out; ++j)
          for (int b = 0; b < d_in; ++b)
            c.at(i * d_in + a, j * d_in + b) += k.at(i, a) * std::conj(k.at(j, b));
  }
  c *= cd(1.0 / d_in, 0.0);
  c.with_dims({d_out, d_in});
  return c;
}

}  // namespace

QuantumChannel::QuantumChannel(std::vector<ComplexOperator> kraus, bool covariant_irreducible_input,
                               std::string name)
    : kraus_(std::move(kraus)), covariant_(covariant_irreducible_input), name_(std::move(name)) {
  if (kraus_.empty()) throw std::invalid_argument("QuantumChannel: empty Kraus set");
  d_out_ = kraus_.front().rows();
  d_in_ = kraus_.front().cols();
  for (const auto& k : kraus_)
    if (k.rows() != d_out_ || k.cols() != d_in_)
      throw std::invalid_argument("QuantumChannel: inconsistent Kraus shapes");
}

ValidationReport validate(const QuantumChannel& ch) {
  ComplexOperator acc(ch.d_in(), ch.d_in());
  for (const auto& k : ch.kraus()) acc += adjoint(k) * k;
  acc -= ComplexOperator::identity(ch.d_in());
  ValidationReport rep;
  rep.trace_preservation_residual = max_abs(acc);
  std::vector<double> ev = herm_eigvals(choi_matrix(ch.kraus(), ch.d_in(), ch.d_out()));
  rep.choi_min_eigenvalue = ev.empty() ? 0.0 : ev.back();
  rep.pass = rep.trace_preservation_residual <= kTpTol && rep.choi_min_eigenvalue >= kCpTol;
  return rep;
}

DensityOperator apply(const QuantumChannel& ch, const DensityOperator& rho) {
  if (rho.dim() != ch.d_in()) throw std::invalid_argument("apply: state dimension != d_in");
  ComplexOperator out(ch.d_out(), ch.d_out());
  for (const auto& k : ch.kraus()) out += k * rho.op() * adjoint(k);
  out.with_dims({ch.d_out()});
  return DensityOperator(std::move(out));
}

DensityOperator apply_left(const QuantumChannel& ch, const DensityOperator& rho) {
  const std::vector<int>& dims = rho.dims();
  if (dims.empty() || dims.front() != ch.d_in())
    throw std::invalid_argument("apply_left: first factor dimension != d_in");
  int rest = 1;
  for (size_t i = 1; i < dims.size(); ++i) rest *= dims[i];
  const ComplexOperator eye_rest = ComplexOperator::identity(rest);
  ComplexOperator out(ch.d_out() * rest, ch.d_out() * rest);
  for (const auto& k : ch.kraus()) {
    const ComplexOperator lifted = tensor(k, eye_rest);
    out += lifted * rho.op() * adjoint(lifted);
  }
  std::vector<int> out_dims = dims;
  out_dims.front() = ch.d_out();
  out.with_dims(out_dims);
  return DensityOperator(std::move(out));
}

QuantumChannel tensor_power(const QuantumChannel& ch, int n, int dim_cap) {
  if (n < 1) throw std::invalid_argument("tensor_power: n must be >= 1");
  double total = 1.0;
  for (int i = 0; i < n; ++i) total *= double(ch.d_in()) * ch.d_out();
  if (total > double(dim_cap))
    throw ResourceCapError("tensor_power: d_in^n * d_out^n exceeds the dimension cap");
  std::vector<ComplexOperator> acc = {ComplexOperator::identity(1)};
  for (int i = 0; i < n; ++i) {
    std::vector<ComplexOperator> next;
    next.reserve(acc.size() * ch.kraus().size());
    for (const auto& a : acc)
      for (const auto& k : ch.kraus()) next.push_back(tensor(a, k));
    acc = std::move(next);
  }
  return QuantumChannel(std::move(acc), ch.covariant_irreducible_input(),
                        ch.name().empty() ? "" : ch.name() + "^" + std::to_string(n));
}

DensityOperator choi(const QuantumChannel& ch) {
  return DensityOperator(choi_matrix(ch.kraus(), ch.d_in(), ch.d_out()));
}

// ---------------------------------------------------------------------------
// Named families

namespace {

ComplexOperator weyl_xz(int d, int x, int z) {
  ComplexOperator m(d, d);
  const double w = 6.283185307179586476925286766559 / d;
  for (int j = 0; j < d; ++j)
    m.at((j + x) % d, j) = std::polar(1.0, w * z * j);
  m.with_dims({d});
  return m;
}

ComplexOperator pauli(char which) {
  ComplexOperator m(2, 2);
  switch (which) {
    case 'I': m.at(0, 0) = 1.0; m.at(1, 1) = 1.0; break;
    case 'X': m.at(0, 1) = 1.0; m.at(1, 0) = 1.0; break;
    case 'Y': m.at(0, 1) = cd(0.0, -1.0); m.at(1, 0) = cd(0.0, 1.0); break;
    case 'Z': m.at(0, 0) = 1.0; m.at(1, 1) = -1.0; break;
  }
  m.with_dims({2});
  return m;
}

}  // namespace

QuantumChannel identity_channel(int d) {
  if (d < 1) throw std::invalid_argument("identity_channel: d must be >= 1");
  return QuantumChannel({ComplexOperator::identity(d)}, true, "identity");
}

QuantumChannel depolarizing_channel(int d, double p) {
  if (d < 2) throw std::invalid_argument("depolarizing_channel: d must be >= 2");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarizing_channel: p must be in [0,1]");
  // (1-p) rho + p Tr(rho) I/d via the Heisenberg-Weyl twirl.
  std::vector<ComplexOperator> kraus;
  const double w0 = 1.0 - p + p / (double(d) * d);
  kraus.push_back(cd(std::sqrt(w0), 0.0) * ComplexOperator::identity(d));
  const double wk = p / (double(d) * d);
  for (int x = 0; x < d; ++x)
    for (int z = 0; z < d; ++z) {
      if (x == 0 && z == 0) continue;
      kraus.push_back(cd(std::sqrt(wk), 0.0) * weyl_xz(d, x, z));
    }
  return QuantumChannel(std::move(kraus), true, "depolarizing");
}

QuantumChannel dephasing_channel(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("dephasing_channel: p must be in [0,1]");
  std::vector<ComplexOperator> kraus;
  kraus.push_back(cd(std::sqrt(1.0 - p), 0.0) * pauli('I'));
  kraus.push_back(cd(std::sqrt(p), 0.0) * pauli('Z'));
  return QuantumChannel(std::move(kraus), true, "dephasing");
}

QuantumChannel qubit_pauli_channel(double px, double py, double pz) {
  const double pi = 1.0 - px - py - pz;
  if (px < 0.0 || py < 0.0 || pz < 0.0 || pi < -1e-12)
    throw std::invalid_argument("qubit_pauli_channel: probabilities must be nonnegative and sum to <= 1");
  std::vector<ComplexOperator> kraus;
  if (pi > 0.0) kraus.push_back(cd(std::sqrt(std::max(pi, 0.0)), 0.0) * pauli('I'));
  if (px > 0.0) kraus.push_back(cd(std::sqrt(px), 0.0) * pauli('X'));
  if (py > 0.0) kraus.push_back(cd(std::sqrt(py), 0.0) * pauli('Y'));
  if (pz > 0.0) kraus.push_back(cd(std::sqrt(pz), 0.0) * pauli('Z'));
  if (kraus.empty()) kraus.push_back(pauli('I'));
  return QuantumChannel(std::move(kraus), true, "qubit_pauli");
}

QuantumChannel amplitude_damping_channel(double gamma) {
  if (gamma < 0.0 || gamma > 1.0)
    throw std::invalid_argument("amplitude_damping_channel: gamma must be in [0,1]");
  ComplexOperator k0(2, 2), k1(2, 2);
  k0.at(0, 0) = 1.0;
  k0.at(1, 1) = std::sqrt(1.0 - gamma);
  k1.at(0, 1) = std::sqrt(gamma);
  return QuantumChannel({k0, k1}, false, "amplitude_damping");
}

QuantumChannel standard_channel(const std::string& name, const ChannelParams& params) {
  if (name == "identity") return identity_channel(params.d);
  if (name == "depolarizing") return depolarizing_channel(params.d, params.p);
  if (name == "dephasing") return dephasing_channel(params.p);
  if (name == "qubit_pauli") return qubit_pauli_channel(params.px, params.py, params.pz);
  if (name == "amplitude_damping") return amplitude_damping_channel(params.gamma);
  throw ParseError("unknown channel name: " + name);
}

std::vector<ComplexOperator> covariance_group(const QuantumChannel& ch) {
  if (!ch.covariant_irreducible_input()) return {};
  std::vector<ComplexOperator> group;
  if (ch.name() == "dephasing" || ch.name() == "qubit_pauli") {
    for (char c : {'I', 'X', 'Y', 'Z'}) group.push_back(pauli(c));
    return group;
  }
  // full Heisenberg-Weyl set
  const int d = ch.d_in();
  for (int x = 0; x < d; ++x)
    for (int z = 0; z < d; ++z) group.push_back(weyl_xz(d, x, z));
  return group;
}

// ---------------------------------------------------------------------------
// Channel specification files

namespace {

using nlohmann::json;

const json& require_field(const json& j, const std::string& key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError("channel file: missing field " + path + key);
  return *it;
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError("channel file: " + path + " must be a number");
  return j.get<double>();
}

int int_at(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError("channel file: " + path + " must be an integer");
  return j.get<int>();
}

}  // namespace

QuantumChannel channel_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("channel file: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("channel file: top level must be an object");
  const json& jkind = require_field(j, "kind", "");
  if (!jkind.is_string()) throw ParseError("channel file: kind must be a string");
  const std::string kind = jkind.get<std::string>();
  if (kind == "named") {
    const json& jn = require_field(j, "name", "");
    if (!jn.is_string()) throw ParseError("channel file: name must be a string");
    ChannelParams params;
    if (j.contains("d")) params.d = int_at(j["d"], "d");
    if (j.contains("p")) params.p = number_at(j["p"], "p");
    if (j.contains("gamma")) params.gamma = number_at(j["gamma"], "gamma");
    if (j.contains("px")) params.px = number_at(j["px"], "px");
    if (j.contains("py")) params.py = number_at(j["py"], "py");
    if (j.contains("pz")) params.pz = number_at(j["pz"], "pz");
    try {
      return standard_channel(jn.get<std::string>(), params);
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("channel file: ") + e.what());
    }
  }
  if (kind == "kraus") {
    const int d_in = int_at(require_field(j, "d_in", ""), "d_in");
    const int d_out = int_at(require_field(j, "d_out", ""), "d_out");
    if (d_in < 1 || d_out < 1) throw ParseError("channel file: d_in/d_out must be >= 1");
    const json& jk = require_field(j, "kraus", "");
    if (!jk.is_array() || jk.empty()) throw ParseError("channel file: kraus must be a nonempty array");
    std::vector<ComplexOperator> kraus;
    for (size_t ki = 0; ki < jk.size(); ++ki) {
      const std::string kp = "kraus[" + std::to_string(ki) + "]";
      const json& jm = jk[ki];
      if (!jm.is_array() || jm.size() != size_t(d_out))
        throw ParseError("channel file: " + kp + " must be an array of " + std::to_string(d_out) + " rows");
      ComplexOperator m(d_out, d_in);
      for (size_t r = 0; r < jm.size(); ++r) {
        const std::string rp = kp + "[" + std::to_string(r) + "]";
        const json& jr = jm[r];
        if (!jr.is_array() || jr.size() != size_t(d_in))
          throw ParseError("channel file: " + rp + " must be an array of " + std::to_string(d_in) + " entries");
        for (size_t c = 0; c < jr.size(); ++c) {
          const std::string cp = rp + "[" + std::to_string(c) + "]";
          const json& je = jr[c];
          if (!je.is_array() || je.size() != 2)
            throw ParseError("channel file: " + cp + " must be a [re,im] pair");
          m.at(int(r), int(c)) = cd(number_at(je[0], cp + "[0]"), number_at(je[1], cp + "[1]"));
        }
      }
      kraus.push_back(std::move(m));
    }
    QuantumChannel ch(std::move(kraus), false, "kraus-file");
    ValidationReport rep = validate(ch);
    if (!rep.pass) {
      std::ostringstream os;
      os << "channel file: Kraus set is not a valid channel (trace-preservation residual "
         << rep.trace_preservation_residual << ", Choi min eigenvalue " << rep.choi_min_eigenvalue
         << ")";
      throw ParseError(os.str());
    }
    return ch;
  }
  throw ParseError("channel file: kind must be \"named\" or \"kraus\"");
}

QuantumChannel load_channel_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("channel file: cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return channel_from_json_text(os.str());
}

}  // namespace eacap
