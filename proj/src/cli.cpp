#include "graevkit/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <random>

#include "graevkit/ell1_quotient.hpp"
#include "graevkit/error.hpp"
#include "graevkit/free_norm.hpp"
#include "graevkit/graev.hpp"
#include "graevkit/io.hpp"
#include "graevkit/pdf_gns.hpp"
#include "graevkit/transport.hpp"

namespace graevkit {
namespace {

using io::json;

struct Options {
  std::string out_path;
  double tol = kDefaultTolerance;
  std::uint32_t seed = 0;

  std::string space, chain, x, y, mu1, mu2, word, word2, group, map, cert, plan, matrix, function;

  std::size_t points = 20;
  std::size_t dim = 3;
  double p = 2.0;
  std::vector<double> vector;

  std::string norm_kind = "p";
  double mesh = 0.125;
  std::size_t steps = 20;
  std::vector<double> target;
};

// Outcome of a command: the JSON document, a one-line summary and the code.
struct Result {
  json doc;
  std::string summary;
  int code = kExitOk;
};

PointedMetricSpace load_space(const std::string& path) {
  return io::space_from_json(io::read_json_file(path));
}

Result cmd_validate(const Options& o) {
  const auto space = load_space(o.space);
  const auto report = validate_space(space);
  Result r{io::validation_to_json(space, report), "", report.ok ? kExitOk : kExitDomain};
  r.summary = report.ok ? "metric axioms hold"
                        : std::to_string(report.violations.size()) + " axiom(s) violated";
  return r;
}

Result cmd_norm(const Options& o) {
  const auto space = load_space(o.space);
  require_metric(space);
  const auto chain = io::chain_from_json(space, io::read_json_file(o.chain));
  const auto norm = free_norm(space, chain);
  return {{{"norm", to_string(norm)}}, "norm = " + to_string(norm)};
}

Result cmd_dist(const Options& o) {
  const auto space = load_space(o.space);
  require_metric(space);
  const auto x = io::chain_from_json(space, io::read_json_file(o.x));
  const auto y = io::chain_from_json(space, io::read_json_file(o.y));
  const auto d = free_distance(space, x, y);
  return {{{"distance", to_string(d)}}, "distance = " + to_string(d)};
}

Result cmd_kantorovich(const Options& o) {
  const auto space = load_space(o.space);
  require_metric(space);
  const auto mu1 = io::measure_from_json(space, io::read_json_file(o.mu1));
  const auto mu2 = io::measure_from_json(space, io::read_json_file(o.mu2));
  const auto sol = kantorovich_transport(space, mu1, mu2);
  return {{{"distance", to_string(sol.cost)}, {"coupling", io::plan_to_json(space, sol.coupling)}},
          "transportation distance = " + to_string(sol.cost)};
}

Result cmd_graev(const Options& o) {
  const auto space = load_space(o.space);
  require_metric(space);
  const Word u = io::word_from_json(space, io::read_json_file(o.word));
  const Word v = o.word2.empty() ? Word{} : io::word_from_json(space, io::read_json_file(o.word2));
  const auto d = graev_distance(space, u, v);
  const auto witness = integer_witness(space, u - v);
  Result r{{{"distance", to_string(d)}, {"witness", io::plan_to_json(space, witness)}},
           "Graev distance = " + to_string(d)};
  if (!o.group.empty()) {
    if (o.map.empty()) throw ParseError("--group requires --map");
    const auto group = io::metric_group_from_json(io::read_json_file(o.group));
    const auto f = io::point_map_from_json(space, group, io::read_json_file(o.map));
    const auto ext = extend_hom(space, group, f);
    r.doc["image"] = {{"u", group.elements()[ext.hom(u)]}, {"v", group.elements()[ext.hom(v)]}};
    r.doc["lipschitz"] = {{"exhaustive", ext.report.exhaustive},
                          {"pairs_checked", ext.report.pairs_checked},
                          {"violations", ext.report.violations},
                          {"max_ratio", to_string(ext.report.max_ratio)}};
    r.summary += "; extension checked on " + std::to_string(ext.report.pairs_checked) +
                 " pairs, max ratio " + to_string(ext.report.max_ratio);
    if (!ext.report.ok()) r.code = kExitDomain;
  }
  return r;
}

Result cmd_dual_cert(const Options& o) {
  const auto space = load_space(o.space);
  require_metric(space);
  const auto chain = io::chain_from_json(space, io::read_json_file(o.chain));
  const auto cert = solve_transport(space, chain);
  return {io::certificate_to_json(space, cert), "optimal cost = " + to_string(cert.cost)};
}

// Re-checks a certificate without solving anything.
Result cmd_verify(const Options& o) {
  const auto space = load_space(o.space);
  require_metric(space);
  const auto cert = io::certificate_from_json(space, io::read_json_file(o.cert));
  const bool feasible = is_feasible_potential(space, cert.potential);
  const bool optimal = verify_optimality(space, cert.plan, cert.potential);
  const Rational plan_cost = cert.plan.cost(space);
  const bool cost_matches = plan_cost == cert.cost;
  const Rational dual = cert.potential.pair_with(cert.plan.divergence_chain(space));
  bool divergence_matches = true;
  if (!o.chain.empty()) {
    const auto chain = io::chain_from_json(space, io::read_json_file(o.chain));
    divergence_matches = cert.plan.divergence_chain(space) == chain;
  }
  const bool valid = feasible && optimal && cost_matches && divergence_matches;
  json doc{{"valid", valid},
           {"feasible", feasible},
           {"complementary_slackness", optimal},
           {"cost_matches", cost_matches},
           {"divergence_matches", divergence_matches},
           {"primal", to_string(plan_cost)},
           {"dual", to_string(dual)}};
  return {doc, valid ? "certificate verified" : "certificate rejected",
          valid ? kExitOk : kExitDomain};
}

Result cmd_round_plan(const Options& o) {
  const auto space = load_space(o.space);
  require_metric(space);
  json in = io::read_json_file(o.plan);
  if (in.is_object()) in = in.at("plan");
  const auto plan = io::plan_from_json(space, in);
  const auto rounded = round_to_integer_plan(space, plan);
  return {{{"cost", to_string(rounded.cost(space))},
           {"input_cost", to_string(plan.cost(space))},
           {"plan", io::plan_to_json(space, rounded)}},
          "rounded plan cost = " + to_string(rounded.cost(space))};
}

Eigen::MatrixXcd matrix_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("a matrix must be an array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw StructuralError("matrix must be square");
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto& v = row[static_cast<std::size_t>(k)];
      if (v.is_number()) {
        m(i, k) = v.get<double>();
      } else if (v.is_array() && v.size() == 2) {
        m(i, k) = Complex(v[0].get<double>(), v[1].get<double>());
      } else {
        throw ParseError("matrix entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

Result cmd_psd(const Options& o) {
  if (!o.matrix.empty()) {
    const auto res = psd_check(matrix_from_json(io::read_json_file(o.matrix)), o.tol);
    return {{{"is_psd", res.is_psd}, {"min_eigenvalue", res.min_eigenvalue}},
            res.is_psd ? "matrix is PSD" : "matrix is not PSD"};
  }
  // Schoenberg Gram of uniformly random points in [-1, 1]^dim.
  std::mt19937 rng(o.seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::vector<Eigen::VectorXd> pts(o.points, Eigen::VectorXd(static_cast<Eigen::Index>(o.dim)));
  for (auto& x : pts) {
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = coord(rng);
  }
  const auto res = psd_check(schoenberg_gram(pts, o.p), o.tol);
  return {{{"is_psd", res.is_psd},
           {"min_eigenvalue", res.min_eigenvalue},
           {"points", o.points},
           {"dim", o.dim},
           {"p", o.p},
           {"seed", o.seed},
           {"guaranteed", schoenberg_guaranteed(o.p)}},
          res.is_psd ? "Schoenberg Gram is PSD" : "Schoenberg Gram is not PSD"};
}

Result cmd_schoenberg(const Options& o) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(o.vector.size()));
  for (std::size_t i = 0; i < o.vector.size(); ++i) x[static_cast<Eigen::Index>(i)] = o.vector[i];
  const double v = schoenberg_value(x, o.p);
  Result r{{{"value", v}, {"p", o.p}, {"guaranteed", schoenberg_guaranteed(o.p)}},
           "exp(-sum |x_i|^p) = " + std::to_string(v)};
  if (!schoenberg_guaranteed(o.p)) r.summary += " (p outside [1, 2]: positivity not guaranteed)";
  return r;
}

Result cmd_gns(const Options& o) {
  const auto group = io::group_from_json(io::read_json_file(o.group));
  const auto f = io::pd_function_from_json(group, io::read_json_file(o.function));
  const auto model = gns_construct(group, f, o.tol);
  const auto report = verify_representation(model, group, f, o.tol);
  const bool ok = report.ok(o.tol);
  return {io::representation_report_to_json(model, report),
          "GNS dimension " + std::to_string(model.dimension()) +
              (ok ? ", all residuals below tolerance" : ", residuals exceed tolerance"),
          ok ? kExitOk : kExitDomain};
}

Result cmd_quotient_demo(const Options& o) {
  NormedSpaceSpec spec;
  if (o.norm_kind == "max") {
    spec = NormedSpaceSpec::max_norm(o.dim);
  } else if (o.norm_kind == "p") {
    spec = NormedSpaceSpec::p_norm(o.dim, o.p);
  } else {
    throw ParseError("--norm must be 'p' or 'max'");
  }
  const auto net = build_net(spec, o.mesh);

  Eigen::VectorXd x(static_cast<Eigen::Index>(o.dim));
  if (!o.target.empty()) {
    if (o.target.size() != o.dim) throw ParseError("--target needs --dim coordinates");
    for (std::size_t i = 0; i < o.dim; ++i) x[static_cast<Eigen::Index>(i)] = o.target[i];
  } else {
    std::mt19937 rng(o.seed);
    std::normal_distribution<double> gauss;
    do {
      for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = gauss(rng);
    } while (spec.norm(x) == 0.0);
    x *= 0.5 / spec.norm(x);
  }
  const auto pre = greedy_preimage(net, x, o.steps);
  const auto rec = evaluate_preimage(net, pre.terms);
  const double err = spec.norm(rec.value - x);
  std::vector<double> tx(x.data(), x.data() + x.size());
  return {{{"residuals", pre.residuals},
           {"l1_mass", rec.l1_mass},
           {"reconstruction_error", err},
           {"target", tx},
           {"net_size", net.vectors.size()},
           {"mesh", net.mesh}},
          "final residual " + std::to_string(pre.residuals.back()) + " after " +
              std::to_string(o.steps) + " steps"};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"graevkit: transportation norms, Graev metrics and GNS representations"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out_path, "Write the JSON result to this file");
    sub->add_option("--tol", o.tol, "Tolerance for floating point checks")->capture_default_str();
    sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  };

  std::map<CLI::App*, std::function<Result(const Options&)>> handlers;
  auto add = [&](const char* name, const char* help, std::function<Result(const Options&)> fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub);
    handlers[sub] = std::move(fn);
    return sub;
  };

  auto* validate = add("validate", "Check the metric axioms of a space", cmd_validate);
  validate->add_option("--space", o.space)->required();

  auto* norm = add("norm", "Free norm of a chain", cmd_norm);
  norm->add_option("--space", o.space)->required();
  norm->add_option("--chain", o.chain)->required();

  auto* dist = add("dist", "Free distance between two chains", cmd_dist);
  dist->add_option("--space", o.space)->required();
  dist->add_option("--x", o.x)->required();
  dist->add_option("--y", o.y)->required();

  auto* kant = add("kantorovich", "Transportation distance between probability measures",
                   cmd_kantorovich);
  kant->add_option("--space", o.space)->required();
  kant->add_option("--mu1", o.mu1)->required();
  kant->add_option("--mu2", o.mu2)->required();

  auto* graev = add("graev", "Graev distance between words, with an integer witness", cmd_graev);
  graev->add_option("--space", o.space)->required();
  graev->add_option("--word", o.word)->required();
  graev->add_option("--word2", o.word2, "Second word (default: zero)");
  graev->add_option("--group", o.group, "Metric abelian group table for the extension check");
  graev->add_option("--map", o.map, "Point -> group element map");

  auto* cert = add("dual-cert", "Optimal plan, cost and Kantorovich potential", cmd_dual_cert);
  cert->add_option("--space", o.space)->required();
  cert->add_option("--chain", o.chain)->required();

  auto* verify = add("verify", "Re-check a certificate without solving", cmd_verify);
  verify->add_option("--space", o.space)->required();
  verify->add_option("--cert", o.cert)->required();
  verify->add_option("--chain", o.chain, "Also require the plan to realise this chain");

  auto* round = add("round-plan", "Round a plan with integral divergence", cmd_round_plan);
  round->add_option("--space", o.space)->required();
  round->add_option("--plan", o.plan)->required();

  auto* psd = add("psd", "PSD check of a matrix or of a random Schoenberg Gram", cmd_psd);
  psd->add_option("--matrix", o.matrix);
  psd->add_option("--points", o.points)->capture_default_str();
  psd->add_option("--dim", o.dim)->capture_default_str();
  psd->add_option("--p", o.p)->capture_default_str();

  auto* sch = add("schoenberg", "Evaluate exp(-sum |x_i|^p)", cmd_schoenberg);
  sch->add_option("--x", o.vector)->required()->delimiter(',');
  sch->add_option("--p", o.p)->capture_default_str();

  auto* gns = add("gns", "GNS representation of a positive definite function", cmd_gns);
  gns->add_option("--group", o.group)->required();
  gns->add_option("--function", o.function)->required();

  auto* quot = add("quotient-demo", "Greedy l1 preimage trace", cmd_quotient_demo);
  quot->add_option("--dim", o.dim)->capture_default_str();
  quot->add_option("--norm", o.norm_kind, "p or max")->capture_default_str();
  quot->add_option("--p", o.p)->capture_default_str();
  quot->add_option("--mesh", o.mesh)->capture_default_str();
  quot->add_option("--steps", o.steps)->capture_default_str();
  quot->add_option("--target", o.target)->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  CLI::App* chosen = app.get_subcommands().front();
  try {
    Result r = handlers.at(chosen)(o);
    const std::string text = r.doc.dump(2) + "\n";
    if (o.out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(o.out_path, std::ios::binary);
      if (!file) throw ParseError("cannot write '" + o.out_path + "'");
      file << text;
    }
    err << chosen->get_name() << ": " << r.summary << "\n";
    return r.code;
  } catch (const DomainError& e) {
    err << chosen->get_name() << ": " << e.what() << "\n";
    return kExitDomain;
  } catch (const Error& e) {
    err << chosen->get_name() << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const io::json::exception& e) {
    err << chosen->get_name() << ": malformed input: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace graevkit
