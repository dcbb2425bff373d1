#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "eacap/capacity.hpp"
#include "eacap/channels.hpp"
#include "eacap/coding.hpp"
#include "eacap/errors.hpp"
#include "eacap/verify.hpp"

namespace {

using namespace eacap;

// 12 significant digits, shortest form
std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct ChannelArgs {
  std::string file;
  std::string named;
  int d = 2;
  double p = -1.0, gamma = -1.0, px = -1.0, py = -1.0, pz = -1.0;

  QuantumChannel build() const {
    if (!file.empty() && !named.empty())
      throw ParseError("give either --channel FILE or --named NAME, not both");
    if (!file.empty()) return load_channel_file(file);
    if (named.empty()) throw ParseError("no channel given: use --channel FILE or --named NAME");
    ChannelParams params;
    params.d = d;
    if (p >= 0.0) params.p = p;
    if (gamma >= 0.0) params.gamma = gamma;
    if (px >= 0.0) params.px = px;
    if (py >= 0.0) params.py = py;
    if (pz >= 0.0) params.pz = pz;
    try {
      return standard_channel(named, params);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
};

void add_channel_flags(CLI::App* cmd, ChannelArgs* args) {
  cmd->add_option("--channel", args->file, "channel specification file (JSON)");
  cmd->add_option("--named", args->named,
                  "named family: identity|depolarizing|dephasing|qubit_pauli|amplitude_damping");
  cmd->add_option("--d", args->d, "input dimension for named families");
  cmd->add_option("--p", args->p, "probability parameter (depolarizing/dephasing)");
  cmd->add_option("--gamma", args->gamma, "damping parameter (amplitude_damping)");
  cmd->add_option("--px", args->px, "Pauli-X probability");
  cmd->add_option("--py", args->py, "Pauli-Y probability");
  cmd->add_option("--pz", args->pz, "Pauli-Z probability");
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw ParseError("cannot open output file: " + path);
  return file;
}

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (...) {
      throw ParseError("bad --n-list entry: " + item);
    }
    if (out.back() < 1) throw ParseError("blocklengths must be >= 1");
  }
  if (out.empty()) throw ParseError("--n-list is empty");
  return out;
}

int cmd_capacity(const ChannelArgs& chan, uint64_t seed, int dim_cap, const std::string& out_path) {
  QuantumChannel ch = chan.build();
  CapacityOptions opts;
  opts.seed = seed;
  if (dim_cap > 0) opts.d_cap = dim_cap;
  CapacityResult res = optimize_capacity(ch, opts);

  std::cout << "c_ea = " << fmt12(res.c_ea) << "\n";
  std::cout << "v_min = " << fmt12(res.v_min) << "\n";
  std::cout << "v_max = " << fmt12(res.v_max) << "\n";
  std::cout << "maximizers = " << res.maximizers.size()
            << (res.maximizer_set_maybe_continuum ? " (possibly a continuum)" : "") << "\n";
  for (size_t i = 0; i < res.maximizers.size(); ++i) {
    std::cout << "maximizer[" << i << "].spectrum =";
    for (double ev : res.maximizers[i].eigenvalues()) std::cout << " " << fmt12(ev);
    std::cout << "\n";
  }
  std::cout << "converged = " << (res.converged ? "true" : "false") << "\n";
  std::cerr << "restarts " << res.restarts << ", exit gradient norm " << fmt12(res.exit_grad_norm)
            << "\n";

  if (!out_path.empty()) {
    nlohmann::json j;
    j["c_ea"] = res.c_ea;
    j["v_min"] = res.v_min;
    j["v_max"] = res.v_max;
    j["converged"] = res.converged;
    j["maximizer_spectra"] = nlohmann::json::array();
    for (const auto& m : res.maximizers) j["maximizer_spectra"].push_back(m.eigenvalues());
    std::ofstream f(out_path);
    if (!f) throw ParseError("cannot open output file: " + out_path);
    f << j.dump(2) << "\n";
  }
  return res.converged ? 0 : 3;
}

int cmd_secondorder(const ChannelArgs& chan, double eps, const std::vector<int>& n_list,
                    uint64_t seed, const std::string& out_path) {
  if (eps <= 0.0 || eps >= 1.0) throw ParseError("--eps must be in (0,1)");
  QuantumChannel ch = chan.build();
  CapacityOptions copts;
  copts.seed = seed;
  CapacityResult cap = optimize_capacity(ch, copts);
  std::vector<RateBound> rows = dispersion_table(ch, cap, eps, n_list);

  std::ofstream file;
  std::ostream& out = open_output(out_path, file);
  out << "n,eps,gaussian_bits,lower_bits,upper_bits,c_ea,v_sel\n";
  bool lower_infeasible = false;
  for (const RateBound& row : rows) {
    if (!row.lower_bits && eps <= 3.0 / std::sqrt(double(row.n))) {
      lower_infeasible = true;
      std::cerr << "warning: rigorous lower bound infeasible at n = " << row.n
                << " (eps <= 3/sqrt(n))\n";
    }
    out << row.n << "," << fmt12(row.eps) << "," << fmt12(row.gaussian_bits) << ","
        << (row.lower_bits ? fmt12(*row.lower_bits) : "") << ","
        << (row.upper_bits ? fmt12(*row.upper_bits) : "") << "," << fmt12(row.c_ea) << ","
        << fmt12(row.v_sel) << "\n";
  }
  return lower_infeasible ? 4 : 0;
}

int cmd_simulate(const ChannelArgs& chan, double eps, double delta, int message_count, int trials,
                 uint64_t seed, int dim_cap, const std::string& out_path) {
  if (eps <= 0.0 || eps >= 1.0) throw ParseError("--eps must be in (0,1)");
  if (delta <= 0.0) delta = eps / 4.0;
  if (trials < 1) throw ParseError("--trials must be >= 1");
  QuantumChannel ch = chan.build();
  if (dim_cap <= 0) dim_cap = 256;
  if (ch.d_out() * ch.d_in() > dim_cap)
    throw ResourceCapError("simulate: output dimension d_out * d_in exceeds the cap (" +
                           std::to_string(dim_cap) + "); raise --dim-cap to proceed");
  SectorDecomposition dec = single_sector(ch.d_in());
  EnsembleReport rep = ensemble_vs_bound(ch, dec, eps, delta, trials, seed, message_count);
  const double hn = hayashi_nagaoka_bound(ch, dec, eps, delta);

  std::ofstream file;
  std::ostream& out = open_output(out_path, file);
  out << "trial,p_succ\n";
  for (int i = 0; i < rep.trials; ++i) out << i << "," << fmt12(rep.per_trial[i]) << "\n";
  out << "# M=" << rep.message_count << " eps=" << fmt12(eps) << " delta=" << fmt12(delta)
      << " mean=" << fmt12(rep.mean_p_succ) << " std_err=" << fmt12(rep.std_err)
      << " pgm_bound=" << fmt12(rep.bound_bits) << " hn_bound=" << fmt12(hn) << "\n";

  std::cerr << "M = " << rep.message_count << " (PGM one-shot bound " << fmt12(rep.bound_bits)
            << " bits, HN bound " << fmt12(hn) << " bits)\n";
  std::cerr << "mean p_succ = " << fmt12(rep.mean_p_succ) << " +- " << fmt12(rep.std_err)
            << " over " << rep.trials << " codes\n";
  std::cerr << "target 1 - eps = " << fmt12(1.0 - eps) << " -> "
            << (rep.meets_bound ? "met" : "NOT met") << "\n";
  std::cerr << "eqi residual " << fmt12(rep.eqi_max_residual) << ", eqii residual "
            << fmt12(rep.eqii_max_residual) << ", cq slack " << fmt12(rep.cq_reduction_slack)
            << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, uint64_t seed, int types_n, int instances,
               bool inject_fault) {
  VerifyOptions opts;
  opts.seed = seed;
  if (types_n > 0) opts.types_n_max = types_n;
  if (instances > 0) opts.entropy_instances = instances;
  opts.inject_fault = inject_fault;

  std::vector<SuiteResult> results;
  if (suite.empty())
    results = run_all_suites(opts);
  else
    results.push_back(run_suite(suite, opts));

  bool all_pass = true;
  for (const SuiteResult& r : results) {
    std::cout << r.name << ": " << (r.pass() ? "PASS" : "FAIL") << " (" << (r.checks - r.failures)
              << "/" << r.checks << " checks)\n";
    for (const std::string& msg : r.messages) std::cerr << "  " << r.name << ": " << msg << "\n";
    all_pass = all_pass && r.pass();
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entanglement-assisted capacity toolkit"};
  app.require_subcommand(1);

  ChannelArgs chan;
  uint64_t seed = 1;
  double eps = 0.5, delta = -1.0;
  int n_single = 0, message_count = 0, trials = 100, dim_cap = 0, types_n = 0, instances = 0;
  std::string n_list_text, out_path, suite;
  bool inject_fault = false;

  CLI::App* capacity = app.add_subcommand("capacity", "maximize the channel mutual information");
  add_channel_flags(capacity, &chan);
  capacity->add_option("--seed", seed, "optimizer seed");
  capacity->add_option("--dim-cap", dim_cap, "input-dimension cap");
  capacity->add_option("--out", out_path, "JSON output file");

  CLI::App* secondorder = app.add_subcommand("secondorder", "Gaussian rate and rigorous bounds");
  add_channel_flags(secondorder, &chan);
  secondorder->add_option("--eps", eps, "error tolerance in (0,1)")->required();
  secondorder->add_option("--n", n_single, "single blocklength");
  secondorder->add_option("--n-list", n_list_text, "comma-separated blocklengths");
  secondorder->add_option("--seed", seed, "optimizer seed");
  secondorder->add_option("--out", out_path, "CSV output file");

  CLI::App* simulate = app.add_subcommand("simulate", "random-coding Monte-Carlo");
  add_channel_flags(simulate, &chan);
  simulate->add_option("--eps", eps, "error tolerance in (0,1)")->required();
  simulate->add_option("--delta", delta, "error-split parameter of the bounds (default eps/4)");
  simulate->add_option("--M", message_count, "message count (default floor(2^bound))");
  simulate->add_option("--trials", trials, "number of sampled codes");
  simulate->add_option("--seed", seed, "master seed")->required();
  simulate->add_option("--dim-cap", dim_cap, "output-dimension cap (default 256)");
  simulate->add_option("--out", out_path, "CSV output file");

  CLI::App* verify = app.add_subcommand("verify", "property suites");
  verify->add_option("--suite", suite, "one of: linalg channels entropy types hw twirl coding");
  verify->add_option("--seed", seed, "suite seed");
  verify->add_option("--n", types_n, "max blocklength for the types suite");
  verify->add_option("--instances", instances, "random instances per entropy check");
  verify->add_flag("--inject-fault", inject_fault, "test-only: perturb a Kraus operator");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (capacity->parsed()) return cmd_capacity(chan, seed, dim_cap, out_path);
    if (secondorder->parsed()) {
      std::vector<int> ns;
      if (!n_list_text.empty())
        ns = parse_n_list(n_list_text);
      else if (n_single >= 1)
        ns.push_back(n_single);
      else
        throw ParseError("secondorder needs --n or --n-list");
      return cmd_secondorder(chan, eps, ns, seed, out_path);
    }
    if (simulate->parsed())
      return cmd_simulate(chan, eps, delta, message_count, trials, seed, dim_cap, out_path);
    if (verify->parsed()) return cmd_verify(suite, seed, types_n, instances, inject_fault);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const ResourceCapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
