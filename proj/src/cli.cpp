#include "cf/cli.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <set>

#include <CLI11.hpp>

#include "cf/certificate.hpp"
#include "cf/error.hpp"
#include "cf/frobenius.hpp"
#include "cf/lowerbound.hpp"
#include "cf/seed.hpp"
#include "cf/showcase.hpp"
#include "cf/text.hpp"
#include "cf/volform.hpp"

namespace cf {

namespace {

using json = nlohmann::ordered_json;

struct Options {
  std::string quiver;
  std::uint64_t prime = 0;
  unsigned e = 1;
  std::size_t depth = 0;
  bool json = false;
  bool timing = false;
  std::size_t budget_terms = Limits{}.max_terms;
  std::size_t budget_seeds = Limits{}.max_seeds;
  std::size_t budget_products = Limits{}.max_products;

  std::vector<std::size_t> path;
  std::size_t vertex = 0;
  int bound = -1;
  int a = 2;
  std::string check;
  std::string num;
  std::string den = "1";
  unsigned degree = 2;

  Limits limits() const { return Limits{budget_terms, budget_seeds, budget_products}; }
};

// Usage-level problem detected after parsing.
struct UsageError : Error {
  using Error::Error;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_flag("--json", o.json, "Structured output");
  cmd->add_flag("--timing", o.timing, "Append wall time to the report");
  cmd->add_option("--budget-terms", o.budget_terms, "Maximum terms per polynomial");
  cmd->add_option("--budget-seeds", o.budget_seeds, "Maximum seeds during exploration");
  cmd->add_option("--budget-products", o.budget_products, "Maximum raw term products");
}

void add_quiver(CLI::App* cmd, Options& o) {
  cmd->add_option("--quiver", o.quiver, "Quiver or seed file")->required();
}

void add_prime(CLI::App* cmd, Options& o, bool required) {
  auto* opt = cmd->add_option("--prime", o.prime, "Prime characteristic");
  if (required) opt->required();
}

Field field_of(const Options& o) { return o.prime == 0 ? Field::rationals() : Field::prime(o.prime); }

std::vector<std::size_t> zero_based(const std::vector<std::size_t>& path, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t v : path) {
    if (v == 0 || v > n) throw UsageError("vertex " + std::to_string(v) + " out of range");
    out.push_back(v - 1);
  }
  return out;
}

std::size_t zero_based(std::size_t v, std::size_t n) {
  if (v == 0 || v > n) throw UsageError("vertex " + std::to_string(v) + " out of range");
  return v - 1;
}

json quiver_json(const Quiver& q) { return json::parse(quiver_to_json(q)); }

json render_all(std::span<const LaurentPoly> polys) {
  json out = json::array();
  for (const auto& p : polys) out.push_back(render(p));
  return out;
}

std::string render_exponents(const Exponents& a) {
  std::string out = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i != 0) out += ",";
    out += std::to_string(a[i]);
  }
  return out + ")";
}

void base_inputs(Certificate& c, const Options& o, const Quiver* q) {
  if (q != nullptr) {
    c.inputs["quiver"] = o.quiver;
    c.inputs["quiver_hash"] = quiver_hash(*q);
  }
}

Certificate cmd_mutate(const Options& o) {
  const QuiverFile file = load_quiver_file(o.quiver);
  const Seed s0 = seed_from_file(file, field_of(o));
  const auto path = zero_based(o.path, s0.size());
  Certificate c;
  c.command = "mutate";
  base_inputs(c, o, &s0.quiver);
  c.inputs["field"] = s0.field().name();
  c.inputs["path"] = render_path(path);
  const Seed out = mutate_along(s0, path, o.limits());
  c.witness["quiver"] = quiver_json(out.quiver);
  c.witness["vars"] = render_all(out.vars);
  c.pass = true;
  return c;
}

Certificate cmd_explore(const Options& o) {
  const QuiverFile file = load_quiver_file(o.quiver);
  const Seed s0 = seed_from_file(file, field_of(o));
  Certificate c;
  c.command = "explore";
  base_inputs(c, o, &s0.quiver);
  c.inputs["field"] = s0.field().name();
  c.inputs["depth"] = o.depth;
  const ExploreResult r = explore(s0, o.depth, o.limits());
  c.witness["seeds"] = r.seeds.size();
  c.witness["levels"] = r.levels;
  c.witness["closure"] = r.closed;
  c.witness["variable_count"] = r.variables.size();
  c.witness["variables"] = render_all(r.variables);
  c.pass = true;
  return c;
}

Certificate cmd_laurent(const Options& o) {
  const QuiverFile file = load_quiver_file(o.quiver);
  const Seed s0 = own_chart(seed_from_file(file, field_of(o)));
  const std::size_t n = s0.size();
  const RationalExpr g(parse_laurent(o.num, s0.field(), n), parse_laurent(o.den, s0.field(), n));
  Certificate c;
  c.command = "laurent";
  base_inputs(c, o, &s0.quiver);
  c.inputs["field"] = s0.field().name();
  c.inputs["expression"] = render(g);
  if (!o.path.empty()) {
    const auto path = zero_based(o.path, n);
    c.inputs["path"] = render_path(path);
    const auto res = express_in_cluster(g, s0, path, o.limits());
    c.witness["expansion"] = res ? render(*res) : "not Laurent";
    c.pass = res.has_value();
    if (!c.pass) c.counterexample = "final division fails along " + render_path(path);
    return c;
  }
  c.inputs["depth"] = o.depth;
  const MembershipVerdict v = upper_membership_sample(g, s0, o.depth, o.limits());
  c.witness["verdict"] = v.in_all_sampled_clusters ? "in all sampled clusters" : "not Laurent";
  c.witness["depth_tested"] = v.depth;
  c.witness["paths_checked"] = v.paths_checked;
  c.pass = v.in_all_sampled_clusters;
  if (v.failing_path) c.counterexample = "not Laurent along " + render_path(*v.failing_path);
  return c;
}

Certificate cmd_split(const Options& o) {
  const QuiverFile file = load_quiver_file(o.quiver);
  const Seed s0 = initial_seed(file.quiver, Field::prime(o.prime));
  const std::size_t n = s0.size();
  std::vector<std::size_t> vertices;
  if (o.vertex != 0) vertices.push_back(zero_based(o.vertex, n));
  else vertices = s0.quiver.mutable_vertices();
  const int bound = o.bound >= 0 ? o.bound : static_cast<int>(2 * o.prime);
  const auto sample = exponent_box(n, bound);
  Certificate c;
  c.command = "split";
  base_inputs(c, o, &s0.quiver);
  c.inputs["prime"] = o.prime;
  c.inputs["exponent_bound"] = bound;
  json per_vertex = json::array();
  c.pass = true;
  for (std::size_t k : vertices) {
    const InvarianceReport r = splitting_invariance_check(s0, k, o.prime, sample, o.limits());
    std::size_t agreeing = 0;
    for (const auto& smp : r.samples) {
      if (smp.equal) {
        ++agreeing;
      } else if (c.pass) {
        c.pass = false;
        c.counterexample = "vertex " + std::to_string(k + 1) + ", alpha " +
                           render_exponents(smp.alpha) + ": " + smp.via_old_cluster +
                           " != " + smp.in_new_cluster;
      }
    }
    json entry;
    entry["vertex"] = k + 1;
    entry["samples"] = r.samples.size();
    entry["agreeing"] = agreeing;
    per_vertex.push_back(entry);
  }
  c.witness["vertices"] = per_vertex;
  return c;
}

Certificate cmd_certify_acyclic(const Options& o) {
  const QuiverFile file = load_quiver_file(o.quiver);
  const Seed s0 = initial_seed(file.quiver, Field::prime(o.prime));
  Certificate c;
  c.command = "certify-acyclic";
  base_inputs(c, o, &s0.quiver);
  c.inputs["prime"] = o.prime;
  try {
    const FregWitness w = freg_witness_sink(s0, o.prime, o.limits());
    c.witness["sink"] = w.sink + 1;
    c.witness["e"] = w.e;
    c.witness["p_plus"] = render(w.plus);
    c.witness["p_minus"] = render(w.minus);
    c.witness["twist"] = render(w.map.twist());
    c.witness["checked_element"] = "x" + std::to_string(w.sink + 1);
    const auto value = w.value.to_laurent(o.limits());
    c.witness["value"] = value ? render(*value) : render(w.value);
    c.pass = w.verified;
    if (!c.pass) c.counterexample = "psi(x_sink) = " + render(w.value);
  } catch (const NotAcyclic& e) {
    c.pass = false;
    c.counterexample = e.what();
  } catch (const NoMutableVertex& e) {
    c.pass = false;
    c.counterexample = e.what();
  }
  return c;
}

Certificate cmd_markov(const Options& o) {
  Certificate c;
  c.command = "markov";
  c.inputs["a"] = o.a;
  c.inputs["check"] = o.check;
  const Field field = field_of(o);
  if (o.prime != 0) c.inputs["prime"] = o.prime;

  if (o.check == "relation") {
    c.witness["M"] = render(markov_M(o.a, field));
    c.pass = markov_relation_holds(o.a, field);
    if (!c.pass) c.counterexample = "x1*x2*x3*M differs from the power sum";
  } else if (o.check == "membership") {
    const std::size_t depth = o.depth == 0 ? 2 : o.depth;
    c.inputs["depth"] = depth;
    const Seed s = markov_seed(o.a, field);
    const MembershipVerdict v = upper_membership_sample(markov_M(o.a, field), s, depth, o.limits());
    c.witness["M"] = render(markov_M(o.a, field));
    c.witness["verdict"] = v.in_all_sampled_clusters ? "in all sampled clusters" : "not Laurent";
    c.witness["depth_tested"] = v.depth;
    c.witness["paths_checked"] = v.paths_checked;
    c.pass = v.in_all_sampled_clusters;
    if (v.failing_path) c.counterexample = "not Laurent along " + render_path(*v.failing_path);
  } else if (o.check == "freg") {
    if (o.a != 2) throw UsageError("the F-regularity certificate is defined for a = 2");
    if (o.prime == 0) throw UsageError("--prime is required for --check freg");
    c.inputs["e"] = o.e;
    const MarkovFregCertificate cert = markov_freg_certificate(o.prime, o.e, o.limits());
    c.witness["twist"] = cert.twist;
    c.witness["checked_element"] = cert.checked_element;
    c.witness["value"] = cert.value;
    c.pass = cert.pass;
    if (!c.pass) c.counterexample = "psi(c) = " + cert.value;
  } else if (o.check == "obstruction") {
    if (o.prime == 0) throw UsageError("--prime is required for --check obstruction");
    c.inputs["e"] = o.e;
    const auto sample = obstruction_sample(o.a);
    c.inputs["sample"] = "x^b*M^c, |b| <= 5, c <= 2, positive degree";
    const ObstructionReport r = graded_obstruction_check(o.a, o.prime, o.e, sample, o.limits());
    c.witness["degree_of_M"] = r.degree_of_M;
    c.witness["M_homogeneous_of_that_degree"] = r.m_degree_matches;
    c.witness["relation_homogeneous"] = r.relation_homogeneous;
    c.witness["samples"] = r.samples.size();
    std::size_t zero = 0;
    for (const auto& s : r.samples) zero += s.image == "0" ? 1 : 0;
    c.witness["zero_images"] = zero;
    c.witness["positive_degree_images"] = r.samples.size() - zero;
    c.witness["scope"] = "sampled positivity only; no statement about all maps is computed";
    c.pass = r.pass();
    for (const auto& s : r.samples) {
      if (!s.positive_or_zero) {
        c.counterexample = "x" + render_exponents(s.monomial.x_powers) + "*M^" +
                           std::to_string(s.monomial.m_power) + " -> " + s.image;
        break;
      }
    }
    if (!c.pass && c.counterexample.empty()) c.counterexample = "grading bookkeeping failed";
  } else if (o.check == "grading") {
    const std::size_t depth = o.depth == 0 ? 4 : o.depth;
    c.inputs["depth"] = depth;
    const ExploreResult r = explore(markov_seed(o.a, field), depth, o.limits());
    bool homogeneous = true;
    std::set<std::int64_t> degrees;
    for (const auto& v : r.variables) {
      const auto d = homogeneous_degree(v);
      homogeneous = homogeneous && d.has_value();
      if (d) degrees.insert(*d);
    }
    const Grading grading{o.a};
    c.witness["degree_of_M"] = grading.degree_of_M();
    c.witness["variables"] = r.variables.size();
    c.witness["all_homogeneous"] = homogeneous;
    c.witness["degrees"] = json(std::vector<std::int64_t>(degrees.begin(), degrees.end()));
    c.pass = homogeneous && (o.a != 2 || cluster_variables_have_degree_one(r));
    if (!c.pass) c.counterexample = "a cluster variable is not homogeneous of the expected degree";
  } else {
    throw UsageError("unknown --check value: " + o.check);
  }
  return c;
}

Certificate cmd_lowerbound(const Options& o) {
  const QuiverFile file = load_quiver_file(o.quiver);
  const Seed s0 = initial_seed(file.quiver, Field::rationals());
  const LowerBoundPresentation pres = lower_bound_generators(s0);
  const auto names = lower_bound_variable_names(pres.rank());
  Certificate c;
  c.command = "lowerbound";
  base_inputs(c, o, &s0.quiver);
  c.inputs["prime"] = o.prime;
  c.inputs["check"] = o.check;
  json rel = json::array();
  for (const auto& g : pres.relations) rel.push_back(render(g, names));
  c.witness["relations"] = rel;
  c.witness["localization_identity"] = localization_identity_holds(pres);
  if (o.check == "split") {
    const LaurentPoly one = LaurentPoly::constant(Field::prime(o.prime), 2 * pres.rank(), 1L);
    const LaurentPoly v = psi_f_apply(pres, one, o.prime, o.limits());
    c.witness["value"] = render(v, names);
    c.pass = v.is_one() && localization_identity_holds(pres);
    if (!c.pass) c.counterexample = "psi(f^(p-1)) = " + render(v, names);
  } else if (o.check == "compat") {
    c.inputs["sample_degree"] = o.degree;
    const auto samples = monomial_samples(pres.rank(), o.degree, o.prime);
    const CompatReport r = compat_check(pres, o.prime, samples, o.limits());
    std::size_t zero = 0;
    for (const auto& s : r.samples) zero += s.image.is_zero() ? 1 : 0;
    c.witness["samples"] = r.samples.size();
    c.witness["zero_images"] = zero;
    c.pass = r.pass();
    for (const auto& s : r.samples) {
      if (!s.divisible) {
        c.counterexample = "g = " + render(s.g, names) + " gives " + render(s.image, names);
        break;
      }
    }
  } else {
    throw UsageError("unknown --check value: " + o.check);
  }
  return c;
}

Certificate cmd_volform(const Options& o) {
  const QuiverFile file = load_quiver_file(o.quiver);
  const Seed s0 = seed_from_file(file, field_of(o));
  const std::size_t k = zero_based(o.vertex, s0.size());
  Certificate c;
  c.command = "volform";
  base_inputs(c, o, &s0.quiver);
  c.inputs["field"] = s0.field().name();
  c.inputs["mutate"] = k + 1;
  try {
    const VolumeSignReport r = volume_form_mutation_sign(s0, k, o.limits());
    const LogVolumeForm jac = log_volume_form(mutate(own_chart(s0), k, o.limits()), o.limits());
    c.witness["mutated_variable"] = r.mutated_variable;
    c.witness["identity"] = r.identity;
    c.witness["sign"] = r.sign;
    c.witness["jacobian_sign"] = jac.sign;
    c.pass = r.identity_holds && jac.sign == r.sign;
    if (!c.pass) c.counterexample = "Jacobian coefficient " + render(jac.coefficient);
  } catch (const VerificationFailed& e) {
    c.pass = false;
    c.counterexample = e.what();
  }
  return c;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact cluster algebra and Frobenius splitting certificates", "cf"};
  app.require_subcommand(1);

  auto* mutate_cmd = app.add_subcommand("mutate", "Mutate a seed along a path");
  add_quiver(mutate_cmd, o);
  add_prime(mutate_cmd, o, false);
  mutate_cmd->add_option("--path", o.path, "1-based mutation path")->delimiter(',');

  auto* explore_cmd = app.add_subcommand("explore", "Breadth-first mutation closure");
  add_quiver(explore_cmd, o);
  add_prime(explore_cmd, o, false);
  explore_cmd->add_option("--depth", o.depth, "Maximum number of mutations")->required();

  auto* laurent_cmd = app.add_subcommand("laurent", "Laurent expansion in other clusters");
  add_quiver(laurent_cmd, o);
  add_prime(laurent_cmd, o, false);
  laurent_cmd->add_option("--num", o.num, "Numerator")->required();
  laurent_cmd->add_option("--den", o.den, "Denominator");
  laurent_cmd->add_option("--depth", o.depth, "Membership sample depth");
  laurent_cmd->add_option("--path", o.path, "Expand in this cluster only")->delimiter(',');

  auto* split_cmd = app.add_subcommand("split", "Cluster independence of the standard splitting");
  add_quiver(split_cmd, o);
  add_prime(split_cmd, o, true);
  split_cmd->add_option("--vertex", o.vertex, "Mutable vertex (default: all)");
  split_cmd->add_option("--bound", o.bound, "Sample |alpha_i| <= bound (default 2p)");

  auto* acyclic_cmd = app.add_subcommand("certify-acyclic", "Sink witness for an acyclic seed");
  add_quiver(acyclic_cmd, o);
  add_prime(acyclic_cmd, o, true);

  auto* markov_cmd = app.add_subcommand("markov", "Markov and generalized Markov checks");
  markov_cmd->add_option("--a", o.a, "Arrow multiplicity a >= 2");
  add_prime(markov_cmd, o, false);
  markov_cmd->add_option("--e", o.e, "Frobenius iterate");
  markov_cmd->add_option("--depth", o.depth, "Depth for membership or grading");
  markov_cmd->add_option("--check", o.check, "Check to run")
      ->required()
      ->check(CLI::IsMember({"relation", "membership", "freg", "obstruction", "grading"}));

  auto* lb_cmd = app.add_subcommand("lowerbound", "Lower bound algebra splitting");
  add_quiver(lb_cmd, o);
  add_prime(lb_cmd, o, true);
  lb_cmd->add_option("--check", o.check, "Check to run")
      ->required()
      ->check(CLI::IsMember({"split", "compat"}));
  lb_cmd->add_option("--degree", o.degree, "Compatibility sample degree");

  auto* vol_cmd = app.add_subcommand("volform", "Log volume form sign under mutation");
  add_quiver(vol_cmd, o);
  add_prime(vol_cmd, o, false);
  vol_cmd->add_option("--mutate", o.vertex, "1-based vertex")->required();

  for (auto* cmd : app.get_subcommands({})) add_common(cmd, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  const std::map<std::string, std::function<Certificate(const Options&)>> commands{
      {"mutate", cmd_mutate},   {"explore", cmd_explore},
      {"laurent", cmd_laurent}, {"split", cmd_split},
      {"certify-acyclic", cmd_certify_acyclic},
      {"markov", cmd_markov},   {"lowerbound", cmd_lowerbound},
      {"volform", cmd_volform},
  };
  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (o.e == 0) throw UsageError("--e must be at least 1");
    if (o.prime != 0 && !is_prime_number(o.prime)) {
      throw UsageError(std::to_string(o.prime) + " is not prime");
    }
    const auto start = std::chrono::steady_clock::now();
    Certificate cert = commands.at(name)(o);
    if (o.timing) {
      cert.wall_time_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
              .count();
    }
    if (o.json) out << cert.to_json().dump(2) << "\n";
    else out << cert.to_text();
    return cert.pass ? kPass : kFail;
  } catch (const ParseError& e) {
    err << "cf: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExceeded& e) {
    err << "cf: " << e.what() << "\n";
    return kUsage;
  } catch (const LaurentViolation& e) {
    err << "cf: " << e.what() << "\n";
    return kFail;
  } catch (const VerificationFailed& e) {
    err << "cf: " << e.what() << "\n";
    return kFail;
  } catch (const std::exception& e) {
    // Usage, hypothesis (BadCharacteristic, MutationAtFrozen, ...) and I/O errors.
    err << "cf: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace cf
