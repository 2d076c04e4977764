// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.
//
// usage: graevkit_acceptance [path/to/graevkit]

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "graevkit/ell1_quotient.hpp"
#include "graevkit/free_norm.hpp"
#include "graevkit/graev.hpp"
#include "graevkit/io.hpp"
#include "graevkit/pdf_gns.hpp"
#include "graevkit/transport.hpp"
#include "support/cli_runner.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace graevkit;
using namespace graevkit::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few failures of a criterion.
class Check {
 public:
  void expect(bool ok, const std::function<std::string()>& what) {
    ++checks_;
    if (ok) return;
    if (failures_++ < 3) notes_ << (notes_.tellp() > 0 ? "; " : "") << what();
  }
  std::size_t checks() const { return checks_; }
  Outcome done(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    return {false, summary + ", " + std::to_string(failures_) + " failure(s): " + notes_.str()};
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::ostringstream notes_;
};

std::string describe(const PointedMetricSpace& s, const Chain& c) {
  return "space " + io::space_to_json(s).dump() + " chain " + io::chain_to_json(s, c).dump();
}

// 1 ------------------------------------------------------------------------

Outcome l1_identification() {
  Rng rng(1001);
  Check check;
  for (int t = 0; t < 200; ++t) {
    const auto s = star_space(static_cast<std::size_t>(uniform_int(rng, 1, 20)));
    const Chain c = random_chain(rng, s, 20, 9, t % 2 == 1);
    Rational l1 = 0;
    for (const auto& [p, v] : c.terms()) l1 += abs(v);
    const Rational norm = free_norm(s, c);
    check.expect(norm == l1, [&] { return describe(s, c) + " norm " + to_string(norm); });
  }
  return check.done(std::to_string(check.checks()) + " chains on distance-2 star spaces");
}

// 2 ------------------------------------------------------------------------

Outcome generator_isometry() {
  Rng rng(1002);
  Check check;
  for (int t = 0; t < 50; ++t) {
    const auto s = random_space(rng, static_cast<std::size_t>(uniform_int(rng, 1, 8)), 12, true);
    for (PointIndex a = 0; a < s.size(); ++a) {
      for (PointIndex b = 0; b < s.size(); ++b) {
        const Rational d = free_distance(s, point_chain(s, a), point_chain(s, b));
        check.expect(d == s.distance(a, b), [&] {
          return "pair (" + s.name(a) + "," + s.name(b) + ") gives " + to_string(d);
        });
      }
    }
  }
  return check.done(std::to_string(check.checks()) + " point pairs over 50 spaces");
}

// 3 ------------------------------------------------------------------------

Outcome strong_duality() {
  Rng rng(1003);
  Check check;
  for (int t = 0; t < 500; ++t) {
    const auto s = random_space(rng, static_cast<std::size_t>(uniform_int(rng, 1, 8)), 12, true);
    const Chain c = random_chain(rng, s, 7, 4);
    const auto cert = solve_transport(s, c);
    const auto f = dual_potentials(s, c);
    const bool ok = f.values[s.basepoint()] == 0 && is_feasible_potential(s, f) &&
                    f.pair_with(c) == cert.cost && cert.plan.cost(s) == cert.cost &&
                    cert.plan.divergence_chain(s) == c && verify_optimality(s, cert.plan, f);
    check.expect(ok, [&] { return describe(s, c); });
  }
  return check.done(std::to_string(check.checks()) + " instances, dual = primal exactly");
}

// 4 ------------------------------------------------------------------------

// Every space on {*, 1, 2, 3, 4} with distances in {1, 3/2, 2} (any such
// matrix is a metric), against every integer chain with coefficients in
// [-2, 2]. The optimum is unchanged by relabelling the non-basepoint
// points, so each chain is represented by its sorted coefficient vector:
// (s, c) and (sigma s, sigma c) have the same optimum, and sigma s runs over
// the same family of spaces. Zero coefficients cover the smaller spaces,
// since the solver and the oracle only look at supp(c) and *.
Outcome integer_value_property() {
  const Rational values[3] = {Rational(1), Rational(3, 2), Rational(2)};
  const std::int64_t doubled[3] = {2, 3, 4};

  std::vector<std::array<int, 4>> reps;
  for (int a = -2; a <= 2; ++a)
    for (int b = a; b <= 2; ++b)
      for (int c = b; c <= 2; ++c)
        for (int d = c; d <= 2; ++d) reps.push_back({a, b, c, d});

  std::vector<Chain> chains;
  std::vector<std::vector<std::int64_t>> supplies;
  for (const auto& r : reps) {
    Chain ch;
    std::vector<std::int64_t> sup(5, 0);
    for (int i = 0; i < 4; ++i) {
      ch.add(static_cast<PointIndex>(i + 1), r[i]);
      sup[i + 1] = r[i];
      sup[0] -= r[i];
    }
    chains.push_back(ch);
    supplies.push_back(sup);
  }

  Check check;
  const auto names = point_names(5);
  std::size_t spaces = 0;
  for (int code = 0; code < 59049; ++code) {
    RationalMatrix d(5, std::vector<Rational>(5));
    std::vector<std::vector<std::int64_t>> d2(5, std::vector<std::int64_t>(5, 0));
    int rest = code;
    for (int i = 0; i < 5; ++i) {
      for (int j = i + 1; j < 5; ++j) {
        d[i][j] = d[j][i] = values[rest % 3];
        d2[i][j] = d2[j][i] = doubled[rest % 3];
        rest /= 3;
      }
    }
    const PointedMetricSpace s(names, "*", d);
    ++spaces;
    for (std::size_t k = 0; k < chains.size(); ++k) {
      const Rational exact = free_norm(s, chains[k]);
      const Rational brute = make_rational(brute_force_integer_cost(d2, supplies[k]), 2);
      check.expect(exact == brute, [&] {
        return describe(s, chains[k]) + " solver " + to_string(exact) + " oracle " +
               to_string(brute);
      });
    }
  }
  return check.done(std::to_string(spaces) + " spaces x " + std::to_string(chains.size()) +
                    " chain classes (all 625 chains up to relabelling), " +
                    std::to_string(check.checks()) + " comparisons");
}

// 5 ------------------------------------------------------------------------

// Space with distances in {1, 2} closed under shortest paths, so many arcs
// have a midpoint c with d(a,c) + d(c,b) = d(a,b).
PointedMetricSpace tie_heavy_space(Rng& rng, std::size_t n) {
  RationalMatrix d(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = uniform_int(rng, 1, 2);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return PointedMetricSpace(point_names(n), "*", d);
}

// Splits part of one arc through a midpoint. Keeps divergence and cost.
bool reroute(Rng& rng, const PointedMetricSpace& s, TransportPlan& plan) {
  std::vector<std::tuple<PointIndex, PointIndex, PointIndex>> options;
  for (const auto& [arc, m] : plan.entries()) {
    for (PointIndex c = 0; c < s.size(); ++c) {
      if (c == arc.first || c == arc.second) continue;
      if (s.distance(arc.first, c) + s.distance(c, arc.second) == s.distance(arc.first, arc.second)) {
        options.emplace_back(arc.first, arc.second, c);
      }
    }
  }
  if (options.empty()) return false;
  const auto [a, b, c] = options[static_cast<std::size_t>(uniform_int(rng, 0, options.size() - 1))];
  const Rational m = plan.entries().at({a, b});
  const Rational t = m * make_rational(uniform_int(rng, 1, 5), 6);
  plan.add(a, b, -t);
  plan.add(a, c, t);
  plan.add(c, b, t);
  return true;
}

Outcome matrix_rounding() {
  Rng rng(1005);
  Check check;
  int optimal_inputs = 0;
  for (int t = 0; t < 200; ++t) {
    const bool want_optimal = t % 2 == 0;
    PointedMetricSpace s = random_space(rng, 2);
    TransportPlan plan;
    Rational optimum = -1;
    if (want_optimal) {
      // fractional optimal plan: reroute an integral optimum along ties
      for (;;) {
        s = tie_heavy_space(rng, static_cast<std::size_t>(uniform_int(rng, 3, 8)));
        Word w = random_word(rng, s, 6, 3);
        const auto sol = solve_min_cost(s, w.to_chain());
        plan = sol.plan;
        if (!reroute(rng, s, plan)) continue;
        reroute(rng, s, plan);
        optimum = sol.cost;
        if (!plan.is_integral()) break;
      }
      ++optimal_inputs;
    } else {
      s = random_space(rng, static_cast<std::size_t>(uniform_int(rng, 3, 8)));
      const std::size_t n = s.size();
      plan = TransportPlan(n);
      for (int k = 0; k < 5; ++k) {
        const auto a = static_cast<PointIndex>(uniform_int(rng, 0, n - 1));
        const auto b = static_cast<PointIndex>(uniform_int(rng, 0, n - 1));
        if (a != b) plan.add(a, b, uniform_int(rng, 1, 3));
      }
      while (plan.is_integral()) {
        // fractional mass around a random closed walk keeps divergence integral
        const auto len = uniform_int(rng, 2, 5);
        std::vector<PointIndex> walk;
        for (int k = 0; k < len; ++k) walk.push_back(static_cast<PointIndex>(uniform_int(rng, 0, n - 1)));
        const Rational m = make_rational(uniform_int(rng, 1, 11), 12);
        for (std::size_t k = 0; k < walk.size(); ++k) {
          const auto a = walk[k], b = walk[(k + 1) % walk.size()];
          if (a != b) plan.add(a, b, m);
        }
      }
    }
    const auto rounded = round_to_integer_plan(s, plan);
    check.expect(rounded.is_integral(), [&] { return "non-integral output"; });
    check.expect(rounded.divergence() == plan.divergence(), [&] { return "divergence changed"; });
    check.expect(rounded.cost(s) <= plan.cost(s), [&] { return "cost increased"; });
    if (want_optimal) {
      check.expect(plan.cost(s) == optimum && rounded.cost(s) == optimum,
                   [&] { return "optimal input lost optimality"; });
    }
  }
  return check.done("200 fractional plans (" + std::to_string(optimal_inputs) + " optimal)");
}

// 6 ------------------------------------------------------------------------

Outcome bi_invariance() {
  Rng rng(1006);
  Check check;
  std::size_t pairs = 0, shifts = 0;
  for (int t = 0; t < 20; ++t) {
    const auto s = random_space(rng, static_cast<std::size_t>(uniform_int(rng, 2, 5)), 12, true);
    const auto words = enumerate_words(s, 3, 2);
    const bool all_shifts = s.size() <= 3;
    for (PointIndex a = 0; a < s.size(); ++a) {
      for (PointIndex b = 0; b < s.size(); ++b) {
        const Rational d = graev_distance(s, a == s.basepoint() ? Word{} : Word::generator(a),
                                          b == s.basepoint() ? Word{} : Word::generator(b));
        check.expect(d == s.distance(a, b), [&] { return "restriction fails"; });
      }
    }
    for (const auto& u : words) {
      for (const auto& v : words) {
        ++pairs;
        const Rational d = graev_distance(s, u, v);
        auto shift = [&](const Word& w) {
          ++shifts;
          const Rational e = graev_distance(s, u + w, v + w);
          check.expect(e == d, [&] { return describe(s, (u - v).to_chain()) + " shifted"; });
        };
        if (all_shifts) {
          for (const auto& w : words) shift(w);
        } else {
          for (int k = 0; k < 3; ++k) {
            shift(words[static_cast<std::size_t>(uniform_int(rng, 0, words.size() - 1))]);
          }
        }
      }
    }
  }
  return check.done(std::to_string(pairs) + " word pairs, " + std::to_string(shifts) +
                    " translated pairs (all translates on spaces with <= 2 generators, 3 "
                    "random translates per pair otherwise)");
}

// 7 ------------------------------------------------------------------------

Outcome lipschitz_extension() {
  Rng rng(1007);
  Check check;
  std::size_t pairs = 0;
  for (int t = 0; t < 20; ++t) {
    const auto g = random_metric_group(rng, 12);
    const auto s = random_space(rng, static_cast<std::size_t>(uniform_int(rng, 2, 5)), 4);
    const auto f = random_lipschitz_map(rng, s, g);
    const auto ext = extend_hom(s, g, f);
    check.expect(ext.report.exhaustive && ext.report.ok(), [&] { return "library report failed"; });
    const auto words = enumerate_words(s, 3, 2);
    std::vector<ElementIndex> image;
    for (const auto& w : words) image.push_back(ext.hom(w));
    GraevDistanceCache graev(s);
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (std::size_t j = 0; j < words.size(); ++j) {
        ++pairs;
        const Rational& rho = g.distance(image[i], image[j]);
        check.expect(rho <= graev.distance(words[i], words[j]),
                     [&] { return "pullback exceeds Graev distance"; });
      }
    }
  }
  return check.done(std::to_string(pairs) + " word pairs over 20 groups of order <= 12");
}

// 8 ------------------------------------------------------------------------

Outcome basepoint_and_dagger() {
  Rng rng(1008);
  Check check;
  for (int t = 0; t < 100; ++t) {
    const auto s = random_space(rng, static_cast<std::size_t>(uniform_int(rng, 2, 8)), 12, true);
    const Chain c = random_chain(rng, s, 7);
    const auto target = s.name(static_cast<PointIndex>(uniform_int(rng, 0, s.size() - 1)));
    const auto r = rebase(s, target);
    check.expect(free_norm(r.space, r.transform(c)) == free_norm(s, c),
                 [&] { return "rebase at " + target + ": " + describe(s, c); });
  }
  for (int t = 0; t < 100; ++t) {
    const auto s = random_small_space(rng, static_cast<std::size_t>(uniform_int(rng, 2, 8)));
    const Chain c = random_chain(rng, s, 7);
    check.expect(free_norm(dagger_augment(s), dagger_embed(s, c)) == free_norm(s, c),
                 [&] { return "dagger: " + describe(s, c); });
  }
  return check.done("100 rebased chains, 100 dagger embeddings");
}

// 9 ------------------------------------------------------------------------

Outcome schoenberg_psd() {
  Rng rng(1009);
  Check check;
  double worst = 1.0;
  for (double p : {1.0, 1.5, 2.0}) {
    for (int t = 0; t < 100; ++t) {
      const auto dim = static_cast<Eigen::Index>(uniform_int(rng, 1, 8));
      std::vector<Eigen::VectorXd> pts;
      for (int i = 0; i < 20; ++i) {
        Eigen::VectorXd x(dim);
        for (Eigen::Index k = 0; k < dim; ++k) x[k] = uniform_real(rng, -2, 2);
        pts.push_back(x);
      }
      const double ev = psd_check(schoenberg_gram(pts, p)).min_eigenvalue;
      worst = std::min(worst, ev);
      check.expect(ev >= -1e-9, [&] { return "p=" + std::to_string(p) + " min eig " + std::to_string(ev); });
    }
  }
  std::ostringstream os;
  os << "300 Gram matrices, smallest eigenvalue " << worst;
  return check.done(os.str());
}

// 10 -----------------------------------------------------------------------

Outcome gns_fidelity() {
  Rng rng(1010);
  Check check;
  double worst = 0.0;
  for (int n = 1; n <= 16; ++n) {
    const auto g = FiniteAbelianGroup::cyclic(n);
    for (int t = 0; t < 20; ++t) {
      const auto f = random_pd_function(rng, g);
      const auto model = gns_construct(g, f);
      const auto r = verify_representation(model, g, f);
      worst = std::max({worst, r.unitarity, r.homomorphism, r.recovery, r.cyclicity});
      check.expect(r.ok(1e-9), [&] {
        std::ostringstream os;
        os << "Z_" << n << ": " << r.unitarity << " " << r.homomorphism << " " << r.recovery
           << " " << r.cyclicity;
        return os.str();
      });
    }
  }
  std::ostringstream os;
  os << "320 functions on Z_1..Z_16, largest residual " << worst;
  return check.done(os.str());
}

// 11 -----------------------------------------------------------------------

Outcome greedy_decay() {
  Rng rng(1011);
  Check check;
  double worst_ratio = 0.0, worst_mass = 0.0;
  for (std::size_t k = 1; k <= 4; ++k) {
    for (int which = 0; which < 3; ++which) {
      const auto spec = which == 0   ? NormedSpaceSpec::p_norm(k, 1)
                        : which == 1 ? NormedSpaceSpec::p_norm(k, 2)
                                     : NormedSpaceSpec::max_norm(k);
      const auto net = build_net(spec, 0.125);
      for (int t = 0; t < 50; ++t) {
        Eigen::VectorXd x(static_cast<Eigen::Index>(k));
        do {
          for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = uniform_real(rng, -1, 1);
        } while (spec.norm(x) == 0.0);
        x *= uniform_real(rng, 0.01, 0.5) / spec.norm(x);
        const auto g = greedy_preimage(net, x, 20);
        for (std::size_t n = 1; n < g.residuals.size(); ++n) {
          if (g.residuals[n - 1] == 0.0) break;
          const double ratio = g.residuals[n] / g.residuals[n - 1];
          worst_ratio = std::max(worst_ratio, ratio);
          check.expect(ratio <= 0.55, [&] { return "ratio " + std::to_string(ratio); });
        }
        const double mass = evaluate_preimage(net, g.terms).l1_mass;
        worst_mass = std::max(worst_mass, mass / spec.norm(x));
        check.expect(mass <= 4 * spec.norm(x) + 0.1, [&] { return "l1 mass " + std::to_string(mass); });
      }
    }
  }
  std::ostringstream os;
  os << "600 targets, worst step ratio " << worst_ratio << ", worst mass/norm " << worst_mass;
  return check.done(os.str());
}

// 12 -----------------------------------------------------------------------

CliRun run_binary(const std::string& exe, const std::vector<std::string>& args) {
  std::string cmd = "'" + exe + "'";
  for (const auto& a : args) cmd += " '" + a + "'";
  cmd += " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Outcome cli_round_trip(const std::string& exe) {
  Rng rng(1012);
  Check check;
  TempDir dir;
  auto invoke = [&](const std::vector<std::string>& args) {
    return exe.empty() ? run(args) : run_binary(exe, args);
  };
  for (int t = 0; t < 100; ++t) {
    const auto s = random_space(rng, static_cast<std::size_t>(uniform_int(rng, 1, 8)), 12, true);
    const Chain c = random_chain(rng, s, 7);
    const auto space = dir.write("space.json", io::space_to_json(s));
    const auto chain = dir.write("chain.json", io::chain_to_json(s, c));
    const auto first = invoke({"dual-cert", "--space", space, "--chain", chain});
    const auto second = invoke({"dual-cert", "--space", space, "--chain", chain});
    check.expect(first.code == 0, [&] { return "dual-cert exit " + std::to_string(first.code); });
    check.expect(!first.out.empty() && first.out == second.out,
                 [&] { return "reruns differ for " + describe(s, c); });
    const auto cert = dir.write_text("cert.json", first.out);
    const auto verify = invoke({"verify", "--space", space, "--cert", cert, "--chain", chain});
    const auto again = invoke({"verify", "--space", space, "--cert", cert, "--chain", chain});
    check.expect(verify.code == 0, [&] { return "verify exit " + std::to_string(verify.code) + " for " + describe(s, c); });
    check.expect(verify.out == again.out, [&] { return "verify reruns differ"; });
  }
  return check.done("100 certificates via " + (exe.empty() ? std::string("run_cli") : exe));
}

}  // namespace

int main(int argc, char** argv) {
  const std::string exe = argc > 1 ? argv[1] : "";
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0 means no runtime bound
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "l1 identification on the star space", 5, l1_identification},
      {2, "generator isometry", 0, generator_isometry},
      {3, "strong duality and complementary slackness", 0, strong_duality},
      {4, "integer value property, exhaustive", 60, integer_value_property},
      {5, "matrix rounding", 0, matrix_rounding},
      {6, "bi-invariance and restriction of the Graev metric", 0, bi_invariance},
      {7, "Lipschitz extension into metric groups", 0, lipschitz_extension},
      {8, "basepoint independence and dagger embedding", 0, basepoint_and_dagger},
      {9, "Schoenberg kernels are PSD", 10, schoenberg_psd},
      {10, "GNS representation fidelity", 0, gns_fidelity},
      {11, "greedy l1 preimage decay", 0, greedy_decay},
      {12, "CLI certificate round trip", 0, [&] { return cli_round_trip(exe); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && secs >= c.limit_s) {
      o.pass = false;
      o.detail += ", over the " + std::to_string(static_cast<int>(c.limit_s)) + " s budget";
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.name << " (" << timing
              << "): " << o.detail << std::endl;
    if (!o.pass) ++failed;
  }
  std::cout << (failed == 0 ? "all 12 criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
